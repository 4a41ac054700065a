#include "distillery/reliability.hpp"

#include "distillery/errors.hpp"

#include <cmath>
#include <string>

namespace distillery {

namespace {

void check_cdf_args(std::int64_t s, std::int64_t n_t, double p_f) {
    if (n_t < 0 || s < 0 || s > n_t) {
        throw DomainError("failure_cdf requires 0 <= s <= n_t (s=" + std::to_string(s) +
                          ", n_t=" + std::to_string(n_t) + ")");
    }
    if (!(p_f >= 0.0 && p_f <= 1.0)) throw DomainError("failure probability must lie in [0, 1]");
}

// C(n,k) p^k (1-p)^(n-k) for 0 < p < 1.
double binomial_term(std::int64_t n, std::int64_t k, double log_p, double log_q) {
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    const double log_c = std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
    return std::exp(log_c + kk * log_p + (nn - kk) * log_q);
}

double sum_terms(std::int64_t lo, std::int64_t hi, std::int64_t n, double p) {
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    double total = 0.0;
    for (std::int64_t k = lo; k <= hi; ++k) total += binomial_term(n, k, log_p, log_q);
    return total;
}

}  // namespace

void ReliabilityParams::validate() const {
    if (!(p_f >= 0.0 && p_f < 1.0)) throw DomainError("p_f must lie in [0, 1)");
    if (!(p_c > 0.0 && p_c < 1.0)) throw DomainError("p_c must lie in (0, 1)");
}

double failure_cdf(std::int64_t s, std::int64_t n_t, double p_f) {
    check_cdf_args(s, n_t, p_f);
    if (s == n_t || p_f == 0.0) return 1.0;
    if (p_f == 1.0) return 0.0;  // s < n_t trials cannot cover n_t certain failures
    const double f = sum_terms(0, s, n_t, p_f);
    return f > 1.0 ? 1.0 : f;
}

double failure_tail(std::int64_t s, std::int64_t n_t, double p_f) {
    check_cdf_args(s, n_t, p_f);
    if (s == n_t || p_f == 0.0) return 0.0;
    if (p_f == 1.0) return 1.0;
    const double t = sum_terms(s + 1, n_t, n_t, p_f);
    return t > 1.0 ? 1.0 : t;
}

ExtraCount min_extra_offline(std::int64_t n_i, const ReliabilityParams& p) {
    p.validate();
    if (n_i < 0) throw DomainError("n_i must be non-negative");
    if (n_i == 0) return {0, 0};
    for (std::int64_t s = 0;; ++s) {
        if (failure_tail(s, n_i + s, p.p_f) < p.p_c) return {s, n_i + s};
    }
}

ExtraCount min_extra_online(const ReliabilityParams& p) { return min_extra_offline(1, p); }

ReliabilityParams split_budget(const ReliabilityParams& p, std::int64_t guarantees) {
    if (guarantees <= 1) return p;
    return {p.p_f, p.p_c / static_cast<double>(guarantees)};
}

}  // namespace distillery
