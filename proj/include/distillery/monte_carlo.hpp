#pragma once

// Repeated stochastic scheduler runs and their statistics.

#include "distillery/schedulers.hpp"
#include "distillery/table1.hpp"

#include <cstdint>
#include <string>

namespace distillery {

struct MonteCarloConfig {
    Algo algo = Algo::Alaps;
    AlapsStrategy strategy = AlapsStrategy::RepeatUntilSuccess;
    AsapLayout layout = AsapLayout::column();
    std::int64_t runs = 1000;
    std::uint64_t base_seed = 1;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    SchedulerLimits limits;
    SchedulerOptions options;
};

struct Summary {
    double mean = 0.0;
    double stddev = 0.0;  // population
    std::int64_t min = 0;
    std::int64_t p50 = 0;
    std::int64_t p90 = 0;
    std::int64_t p99 = 0;
    std::int64_t max = 0;
};

struct MonteCarloStats {
    std::int64_t runs = 0;
    Summary T;
    Summary S;
    Summary BB;
    TraceCounts totals;
    /// exhausted batches / batches
    double exhaustion_frequency = 0.0;
    /// trials / injected inits
    double mean_trials_per_init = 0.0;
};

/// Run i uses a stochastic oracle seeded with derive_seed(base_seed, i).
/// Results do not depend on the thread count.
MonteCarloStats monte_carlo(const IcmCircuit& c, const CostModel& cm, const ReliabilityParams& rel,
                            const MonteCarloConfig& cfg);

/// Nearest-rank summary of `values` (sorted in place). Empty input gives zeros.
Summary summarize(std::vector<std::int64_t>& values);

std::string stats_to_json(const MonteCarloStats& s);
std::string stats_csv_header();
std::string stats_to_csv_row(const MonteCarloStats& s);

}  // namespace distillery
