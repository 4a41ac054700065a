#pragma once

// Redundancy needed so that heralded distillations meet a failure budget.
//
// F(s, n_t, p_f) is the binomial CDF: the probability that at most s of n_t
// independent trials fail. It is a sum over k <= s, not a product.

#include <cstdint>

namespace distillery {

struct ReliabilityParams {
    double p_f = 0.2;    // single distillation failure probability, [0, 1)
    double p_c = 0.001;  // allowed computation failure probability, (0, 1)

    /// Throws DomainError when outside the ranges above.
    void validate() const;
};

struct ExtraCount {
    std::int64_t s = 0;    // additional trials
    std::int64_t n_t = 0;  // total trials

    bool operator==(const ExtraCount&) const = default;
};

/// P[at most s of n_t trials fail]. Throws DomainError if s is outside [0, n_t]
/// or p_f outside [0, 1].
double failure_cdf(std::int64_t s, std::int64_t n_t, double p_f);

/// 1 - failure_cdf, summed over the upper tail directly (no cancellation).
double failure_tail(std::int64_t s, std::int64_t n_t, double p_f);

/// Smallest s with 1 - F(s, n_i + s, p_f) < p_c. n_i == 0 yields {0, 0}.
ExtraCount min_extra_offline(std::int64_t n_i, const ReliabilityParams& p);

/// Smallest s with p_f^(s+1) < p_c, i.e. min_extra_offline with n_i = 1.
ExtraCount min_extra_online(const ReliabilityParams& p);

/// Divides p_c evenly over `guarantees` independent guarantees (union bound).
/// Returns `p` unchanged for guarantees <= 1.
ReliabilityParams split_budget(const ReliabilityParams& p, std::int64_t guarantees);

}  // namespace distillery
