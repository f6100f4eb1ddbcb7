#include "fuzzyucs/evidence.hpp"

#include <stdexcept>
#include <string>

namespace fuzzyucs {

namespace {
constexpr double kNormTolerance = 1e-9;
constexpr double kTotalConflictTolerance = 1e-12;
} // namespace

BeliefAssignment BeliefAssignment::vacuous(int num_classes) {
    if (num_classes < 2) throw std::invalid_argument("frame needs at least 2 classes");
    BeliefAssignment m;
    m.singleton.assign(num_classes, 0.0);
    m.theta = 1.0;
    return m;
}

UnnormalizedAssignment UnnormalizedAssignment::vacuous(int num_classes) {
    if (num_classes < 2) throw std::invalid_argument("frame needs at least 2 classes");
    UnnormalizedAssignment m;
    m.singleton.assign(num_classes, 0.0);
    m.theta = 1.0;
    m.conflict = 0.0;
    return m;
}

BeliefAssignment from_rule(double mu, std::span<const double> v) {
    if (!(mu >= 0.0 && mu <= 1.0))
        throw std::invalid_argument("matching degree outside [0, 1]: " + std::to_string(mu));
    if (v.size() < 2) throw std::invalid_argument("frame needs at least 2 classes");
    double total = 0.0;
    for (double w : v) {
        if (w < 0.0) throw std::invalid_argument("negative class weight");
        total += w;
    }
    if (total > 1.0 + kNormTolerance)
        throw std::invalid_argument("class weights sum above 1: " + std::to_string(total));

    BeliefAssignment m;
    m.singleton.resize(v.size());
    double assigned = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        m.singleton[i] = mu * v[i];
        assigned += m.singleton[i];
    }
    m.theta = 1.0 - assigned;
    if (m.theta < 0.0) m.theta = 0.0; // rounding guard; assigned <= mu <= 1
    return m;
}

UnnormalizedAssignment conjunctive_combine(const UnnormalizedAssignment& acc,
                                           const BeliefAssignment& m) {
    if (acc.singleton.size() != m.singleton.size())
        throw std::invalid_argument("frames of different size");
    UnnormalizedAssignment out;
    out.singleton.resize(acc.singleton.size());
    double surviving = 0.0;
    for (std::size_t i = 0; i < acc.singleton.size(); ++i) {
        // A singleton survives agreement or one side's ignorance.
        out.singleton[i] = acc.singleton[i] * m.singleton[i] +
                           acc.singleton[i] * m.theta +
                           acc.theta * m.singleton[i];
        surviving += out.singleton[i];
    }
    out.theta = acc.theta * m.theta;
    out.conflict = 1.0 - surviving - out.theta;
    if (out.conflict < 0.0) out.conflict = 0.0;
    return out;
}

BeliefAssignment combine_all(std::span<const BeliefAssignment> assignments) {
    if (assignments.empty())
        throw std::invalid_argument("nothing to combine");
    UnnormalizedAssignment acc = UnnormalizedAssignment::vacuous(
        static_cast<int>(assignments.front().singleton.size()));
    for (const BeliefAssignment& m : assignments)
        acc = conjunctive_combine(acc, m);

    BeliefAssignment out;
    out.singleton.assign(acc.singleton.size(), 0.0);
    if (acc.conflict >= 1.0 - kTotalConflictTolerance) {
        // Total conflict: keep the conflicting mass as ignorance instead of
        // dividing by (almost) zero.
        out.theta = 1.0;
        return out;
    }
    double scale = 1.0 / (1.0 - acc.conflict);
    for (std::size_t i = 0; i < acc.singleton.size(); ++i)
        out.singleton[i] = acc.singleton[i] * scale;
    out.theta = acc.theta * scale;
    return out;
}

std::vector<double> pignistic(const BeliefAssignment& assignment) {
    std::vector<double> p(assignment.singleton.size());
    double share = assignment.theta / static_cast<double>(assignment.singleton.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = assignment.singleton[i] + share;
    return p;
}

PowersetMass PowersetMass::from_assignment(const BeliefAssignment& assignment) {
    int n = static_cast<int>(assignment.singleton.size());
    if (n < 2 || n > 5) throw std::invalid_argument("power-set oracle handles 2 to 5 hypotheses");
    PowersetMass m;
    m.num_hypotheses = n;
    m.mass.assign(std::size_t{1} << n, 0.0);
    for (int i = 0; i < n; ++i) m.mass[std::size_t{1} << i] = assignment.singleton[i];
    m.mass.back() = assignment.theta; // full frame = all bits set
    return m;
}

PowersetCombineResult powerset_combine(const PowersetMass& a, const PowersetMass& b) {
    if (a.num_hypotheses != b.num_hypotheses)
        throw std::invalid_argument("frames of different size");
    if (a.num_hypotheses < 2 || a.num_hypotheses > 5)
        throw std::invalid_argument("power-set oracle handles 2 to 5 hypotheses");
    std::size_t subsets = std::size_t{1} << a.num_hypotheses;
    if (a.mass.size() != subsets || b.mass.size() != subsets)
        throw std::invalid_argument("mass map size does not match the frame");
    if (a.mass[0] != 0.0 || b.mass[0] != 0.0)
        throw std::invalid_argument("empty set must carry no mass");

    PowersetCombineResult out;
    out.combined.num_hypotheses = a.num_hypotheses;
    out.combined.mass.assign(subsets, 0.0);
    for (std::size_t sa = 1; sa < subsets; ++sa) {
        if (a.mass[sa] == 0.0) continue;
        for (std::size_t sb = 1; sb < subsets; ++sb) {
            std::size_t meet = sa & sb;
            double product = a.mass[sa] * b.mass[sb];
            if (meet == 0)
                out.conflict += product;
            else
                out.combined.mass[meet] += product;
        }
    }
    return out;
}

} // namespace fuzzyucs
