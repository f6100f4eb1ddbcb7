#include "fuzzyucs/linguistic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fuzzyucs {

LinguisticPartition make_partition(int num_terms) {
    if (num_terms < 2 || num_terms > kMaxTerms)
        throw std::invalid_argument("partition needs between 2 and " + std::to_string(kMaxTerms) +
                                    " terms, got " + std::to_string(num_terms));
    return LinguisticPartition{num_terms};
}

TermSet TermSet::single(int term) {
    if (term < 1 || term > kMaxTerms)
        throw std::invalid_argument("term index out of range: " + std::to_string(term));
    return TermSet(1u << (term - 1));
}

TermSet TermSet::full(int num_terms) {
    if (num_terms < 1 || num_terms > kMaxTerms)
        throw std::invalid_argument("term count out of range: " + std::to_string(num_terms));
    return TermSet(num_terms == kMaxTerms ? ~0u : (1u << num_terms) - 1u);
}

TermSet TermSet::from_mask(std::uint32_t mask) {
    if (mask == 0) throw std::invalid_argument("term set must not be empty");
    return TermSet(mask);
}

TermSet TermSet::toggled(int term) const {
    std::uint32_t flipped = mask_ ^ (1u << (term - 1));
    if (flipped == 0) throw std::invalid_argument("toggle would empty the term set");
    return TermSet(flipped);
}

namespace {

void check_unit_interval(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("value outside [0, 1]: " + std::to_string(x));
}

} // namespace

double term_membership(const LinguisticPartition& partition, int term, double x) {
    if (term < 1 || term > partition.num_terms)
        throw std::invalid_argument("term index out of range: " + std::to_string(term));
    check_unit_interval(x);
    double slope = std::abs(x - partition.peak(term)) / partition.half_width();
    return slope >= 1.0 ? 0.0 : 1.0 - slope;
}

double termset_membership(const LinguisticPartition& partition, TermSet terms, double x) {
    check_unit_interval(x);
    double sum = 0.0;
    for (int term = 1; term <= partition.num_terms; ++term)
        if (terms.contains(term)) sum += term_membership(partition, term, x);
    return sum < 1.0 ? sum : 1.0;
}

double rule_matching_degree(const LinguisticPartition& partition,
                            std::span<const TermSet> antecedent,
                            std::span<const double> x) {
    if (antecedent.size() != x.size())
        throw std::invalid_argument("antecedent and input dimensions differ");
    double product = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (is_missing(x[i])) continue;
        product *= termset_membership(partition, antecedent[i], x[i]);
        if (product == 0.0) return 0.0;
    }
    return product;
}

EncodedValue encode_value(const LinguisticPartition& partition, double x) {
    if (is_missing(x)) return EncodedValue{1, 1, 1.0, 0.0, true};
    check_unit_interval(x);
    double scaled = x * (partition.num_terms - 1);
    int lo = static_cast<int>(scaled) + 1;
    if (lo > partition.num_terms) lo = partition.num_terms; // x == 1.0
    double frac = scaled - (lo - 1);
    EncodedValue v;
    v.lo = lo;
    v.mu_lo = 1.0 - frac;
    if (frac > 0.0 && lo < partition.num_terms) {
        v.hi = lo + 1;
        v.mu_hi = frac;
    } else {
        v.hi = lo;
        v.mu_hi = 0.0;
    }
    return v;
}

std::vector<EncodedValue> encode_row(const LinguisticPartition& partition, std::span<const double> x) {
    std::vector<EncodedValue> encoded;
    encoded.reserve(x.size());
    for (double value : x) encoded.push_back(encode_value(partition, value));
    return encoded;
}

} // namespace fuzzyucs
