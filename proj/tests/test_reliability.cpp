#include "distillery/errors.hpp"
#include "distillery/reliability.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace distillery {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_rational pow(const cpp_rational& b, unsigned e) {
    cpp_rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

// Exact P[more than s of n trials fail] for p = num/den.
cpp_rational exact_tail(std::int64_t s, std::int64_t n, std::int64_t num, std::int64_t den) {
    const cpp_rational p(num, den);
    const cpp_rational q = 1 - p;
    cpp_rational total = 0;
    cpp_int choose = 1;
    for (std::int64_t k = 0; k <= n; ++k) {
        if (k > 0) choose = choose * (n - k + 1) / k;
        if (k > s) total += cpp_rational(choose) * pow(p, static_cast<unsigned>(k)) * pow(q, static_cast<unsigned>(n - k));
    }
    return total;
}

// Smallest s with exact tail(s, n_i + s) < num_c / den_c.
std::int64_t exact_min_extra(std::int64_t n_i, std::int64_t num_f, std::int64_t den_f, std::int64_t num_c, std::int64_t den_c) {
    const cpp_rational budget(num_c, den_c);
    for (std::int64_t s = 0;; ++s) {
        if (exact_tail(s, n_i + s, num_f, den_f) < budget) return s;
    }
}

TEST(Reliability, KnownRedundancy) {
    const ReliabilityParams rel{0.2, 0.001};
    EXPECT_EQ(min_extra_offline(14, rel), (ExtraCount{12, 26}));
    EXPECT_EQ(min_extra_offline(28, rel), (ExtraCount{18, 46}));
    EXPECT_EQ(min_extra_online(rel), (ExtraCount{4, 5}));
    EXPECT_EQ(min_extra_offline(7, rel), (ExtraCount{8, 15}));
    EXPECT_EQ(min_extra_offline(0, rel), (ExtraCount{0, 0}));
}

TEST(Reliability, MatchesExactRationalOracle) {
    for (std::int64_t n_i = 1; n_i <= 60; n_i += (n_i < 10 ? 1 : 7)) {
        EXPECT_EQ(min_extra_offline(n_i, {0.2, 0.001}).s, exact_min_extra(n_i, 1, 5, 1, 1000)) << "n_i=" << n_i;
        EXPECT_EQ(min_extra_offline(n_i, {0.1, 0.01}).s, exact_min_extra(n_i, 1, 10, 1, 100)) << "n_i=" << n_i;
    }
}

TEST(Reliability, CdfMatchesExactValues) {
    for (std::int64_t n = 1; n <= 40; n += 3) {
        for (std::int64_t s = 0; s <= n; ++s) {
            const double exact_t = exact_tail(s, n, 1, 5).convert_to<double>();
            EXPECT_NEAR(failure_tail(s, n, 0.2), exact_t, 1e-12 + 1e-9 * exact_t);
            EXPECT_NEAR(failure_cdf(s, n, 0.2), 1.0 - exact_t, 1e-12);
        }
    }
}

TEST(Reliability, EdgeProbabilities) {
    EXPECT_EQ(failure_cdf(0, 5, 0.0), 1.0);
    EXPECT_EQ(failure_cdf(4, 5, 1.0), 0.0);
    EXPECT_EQ(failure_cdf(5, 5, 1.0), 1.0);
    EXPECT_EQ(failure_tail(5, 5, 0.3), 0.0);
    EXPECT_EQ(min_extra_offline(10, {0.0, 0.001}), (ExtraCount{0, 10}));
    EXPECT_THROW((void)failure_cdf(6, 5, 0.2), DomainError);
    EXPECT_THROW((void)failure_cdf(-1, 5, 0.2), DomainError);
    EXPECT_THROW((void)failure_cdf(1, 5, 1.5), DomainError);
    EXPECT_THROW((void)min_extra_offline(3, {1.0, 0.001}), DomainError);
    EXPECT_THROW((void)min_extra_offline(3, {0.2, 0.0}), DomainError);
    EXPECT_THROW((void)min_extra_offline(-1, {}), DomainError);
}

TEST(Reliability, OnlineIsGeometric) {
    // smallest s with p_f^(s+1) < p_c
    for (double pf : {0.05, 0.2, 0.5, 0.9}) {
        for (double pc : {0.1, 0.001, 1e-6}) {
            const auto s = min_extra_online({pf, pc}).s;
            EXPECT_LT(std::pow(pf, s + 1), pc);
            if (s > 0) EXPECT_GE(std::pow(pf, s), pc);
        }
    }
    EXPECT_EQ(min_extra_online({0.5, 0.001}).s, 9);
}

TEST(ReliabilityProperty, CdfMonotone) {
    for (double pf : {0.01, 0.2, 0.6}) {
        for (std::int64_t n = 1; n <= 50; ++n) {
            for (std::int64_t s = 1; s <= n; ++s) EXPECT_GE(failure_cdf(s, n, pf), failure_cdf(s - 1, n, pf));
            if (n > 1) EXPECT_LE(failure_cdf(1, n, pf), failure_cdf(1, n - 1, pf) + 1e-15);
        }
    }
}

TEST(ReliabilityProperty, RedundancyMonotoneInDemand) {
    const ReliabilityParams rel{0.2, 0.001};
    std::int64_t prev = 0;
    for (std::int64_t n_i = 1; n_i <= 200; ++n_i) {
        const auto e = min_extra_offline(n_i, rel);
        EXPECT_GE(e.s, prev);
        EXPECT_EQ(e.n_t, n_i + e.s);
        EXPECT_LT(failure_tail(e.s, e.n_t, 0.2), 0.001);
        if (e.s > 0) EXPECT_GE(failure_tail(e.s - 1, e.n_t - 1, 0.2), 0.001);
        prev = e.s;
    }
}

TEST(Reliability, SplitBudget) {
    EXPECT_DOUBLE_EQ(split_budget({0.2, 0.001}, 4).p_c, 0.00025);
    EXPECT_DOUBLE_EQ(split_budget({0.2, 0.001}, 1).p_c, 0.001);
    EXPECT_DOUBLE_EQ(split_budget({0.2, 0.001}, 0).p_c, 0.001);
}

TEST(ReliabilityProperty, OnlineEqualsSingleOffline) {
    for (double pf : {0.0, 0.01, 0.2, 0.45, 0.7, 0.95}) {
        for (double pc : {0.5, 0.01, 0.001, 1e-9}) EXPECT_EQ(min_extra_online({pf, pc}), min_extra_offline(1, {pf, pc}));
    }
}

TEST(ReliabilityProperty, RedundancyMonotoneInProbabilities) {
    for (std::int64_t n_i : {1, 5, 14, 40}) {
        std::int64_t prev = 0;
        for (double pf = 0.0; pf < 0.6; pf += 0.05) {
            const auto s = min_extra_offline(n_i, {pf, 0.001}).s;
            EXPECT_GE(s, prev) << "n_i=" << n_i << " p_f=" << pf;
            prev = s;
        }
        prev = std::numeric_limits<std::int64_t>::max();
        for (double pc : {1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5}) {
            const auto s = min_extra_offline(n_i, {0.2, pc}).s;
            EXPECT_LE(s, prev) << "n_i=" << n_i << " p_c=" << pc;
            prev = s;
        }
    }
}

}  // namespace
}  // namespace distillery
