#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace fuzzyucs {

// Features may carry missing cells; they are represented as quiet NaN.
inline constexpr double kMissingValue = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double x) { return std::isnan(x); }

// Uniform triangular partition of [0, 1]: num_terms terms, term j (1-based)
// peaks at (j-1)/(num_terms-1) with half-width 1/(num_terms-1). Adjacent
// memberships sum to 1 everywhere (strong partition).
struct LinguisticPartition {
    int num_terms = 5;

    double half_width() const { return 1.0 / (num_terms - 1); }
    double peak(int term) const { return static_cast<double>(term - 1) / (num_terms - 1); }
};

inline constexpr int kMaxTerms = 32; // term sets are 32-bit masks

LinguisticPartition make_partition(int num_terms);

// Nonempty subset of a partition's terms, stored as a bitmask (bit j-1 <->
// term j). The full set acts as Don't Care.
class TermSet {
public:
    static TermSet single(int term);
    static TermSet full(int num_terms);
    static TermSet from_mask(std::uint32_t mask);

    bool contains(int term) const { return (mask_ >> (term - 1)) & 1u; }
    int count() const { return __builtin_popcount(mask_); }
    bool is_full(int num_terms) const { return mask_ == full(num_terms).mask_; }
    std::uint32_t mask() const { return mask_; }

    // Subset inclusion: every term of this set is in other.
    bool is_subset_of(TermSet other) const { return (mask_ & ~other.mask_) == 0; }

    // Term j flipped in or out. Flipping out the last term is invalid here;
    // callers must check count() first.
    TermSet toggled(int term) const;

    bool operator==(const TermSet& other) const = default;

private:
    explicit TermSet(std::uint32_t mask) : mask_(mask) {}
    std::uint32_t mask_ = 0;
};

// Membership of x in a single term's triangle. x must lie in [0, 1] and term
// in [1, num_terms]; violations raise std::invalid_argument.
double term_membership(const LinguisticPartition& partition, int term, double x);

// Membership of x in a term set: bounded sum min(1, sum of the included
// terms' memberships). The full set evaluates to 1 for every x.
double termset_membership(const LinguisticPartition& partition, TermSet terms, double x);

// Matching degree of a rule antecedent: product over variables of the term
// set memberships. Missing cells contribute a factor of 1.
double rule_matching_degree(const LinguisticPartition& partition,
                            std::span<const TermSet> antecedent,
                            std::span<const double> x);

// Precomputed membership information for one input value. At most two terms
// of a strong partition are active at any x, so a term set's membership is
// two bit tests: it is the bounded sum of mu_lo/mu_hi gated by inclusion.
struct EncodedValue {
    int lo = 1;          // active term (peak side)
    int hi = 1;          // second active term; == lo when x sits on a peak
    double mu_lo = 1.0;
    double mu_hi = 0.0;
    bool missing = false;
};

EncodedValue encode_value(const LinguisticPartition& partition, double x);

std::vector<EncodedValue> encode_row(const LinguisticPartition& partition, std::span<const double> x);

inline double termset_membership(TermSet terms, const EncodedValue& v) {
    if (v.missing) return 1.0;
    double degree = 0.0;
    if (terms.contains(v.lo)) degree += v.mu_lo;
    if (v.hi != v.lo && terms.contains(v.hi)) degree += v.mu_hi;
    return degree < 1.0 ? degree : 1.0;
}

inline double rule_matching_degree(std::span<const TermSet> antecedent, std::span<const EncodedValue> x) {
    double product = 1.0;
    for (std::size_t i = 0; i < antecedent.size(); ++i) {
        product *= termset_membership(antecedent[i], x[i]);
        if (product == 0.0) return 0.0;
    }
    return product;
}

} // namespace fuzzyucs
