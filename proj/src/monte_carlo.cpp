#include "distillery/monte_carlo.hpp"

#include "distillery/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <mutex>
#include <thread>

namespace distillery {

Summary summarize(std::vector<std::int64_t>& values) {
    Summary s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (auto v : values) sum += static_cast<double>(v);
    s.mean = sum / n;
    double sq = 0.0;
    for (auto v : values) sq += (static_cast<double>(v) - s.mean) * (static_cast<double>(v) - s.mean);
    s.stddev = std::sqrt(sq / n);
    const auto rank = [&](double q) {
        const auto k = static_cast<std::size_t>(std::ceil(q * n));
        return values[std::clamp<std::size_t>(k, 1, values.size()) - 1];
    };
    s.min = values.front();
    s.p50 = rank(0.50);
    s.p90 = rank(0.90);
    s.p99 = rank(0.99);
    s.max = values.back();
    return s;
}

MonteCarloStats monte_carlo(const IcmCircuit& c, const CostModel& cm, const ReliabilityParams& rel,
                            const MonteCarloConfig& cfg) {
    if (cfg.runs < 1) throw DomainError("runs must be at least 1");
    rel.validate();
    const auto n = static_cast<std::size_t>(cfg.runs);
    std::vector<Metrics> metrics(n);
    std::vector<TraceCounts> counts(n);

    const auto run_one = [&](std::size_t i) {
        const HeraldOracle oracle = HeraldOracle::stochastic(derive_seed(cfg.base_seed, i), rel.p_f);
        ScheduleResult r;
        switch (cfg.algo) {
        case Algo::Asap: r = schedule_asap(c, cm, rel, cfg.layout, cfg.limits, cfg.options); break;
        case Algo::Alapt: r = schedule_alapt(c, cm, rel, oracle, cfg.limits, cfg.options); break;
        case Algo::Alaps: r = schedule_alaps(c, cm, rel, oracle, cfg.limits, cfg.strategy, cfg.options); break;
        }
        metrics[i] = r.metrics;
        counts[i] = r.counts;
    };

    unsigned threads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k) {
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                    try {
                        run_one(i);
                    } catch (...) {
                        const std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = n;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    MonteCarloStats out;
    out.runs = cfg.runs;
    std::vector<std::int64_t> ts(n);
    std::vector<std::int64_t> ss(n);
    std::vector<std::int64_t> bbs(n);
    for (std::size_t i = 0; i < n; ++i) {
        ts[i] = metrics[i].T;
        ss[i] = metrics[i].S;
        bbs[i] = metrics[i].BB;
        TraceCounts& t = out.totals;
        t.injected_inits += counts[i].injected_inits;
        t.batches += counts[i].batches;
        t.exhausted_batches += counts[i].exhausted_batches;
        t.trials += counts[i].trials;
        t.failures += counts[i].failures;
        t.pool_hits += counts[i].pool_hits;
        t.pool_stored += counts[i].pool_stored;
    }
    out.T = summarize(ts);
    out.S = summarize(ss);
    out.BB = summarize(bbs);
    if (out.totals.batches > 0) {
        out.exhaustion_frequency = static_cast<double>(out.totals.exhausted_batches) / static_cast<double>(out.totals.batches);
    }
    if (out.totals.injected_inits > 0) {
        out.mean_trials_per_init = static_cast<double>(out.totals.trials) / static_cast<double>(out.totals.injected_inits);
    }
    return out;
}

namespace {

nlohmann::ordered_json summary_json(const Summary& s) {
    return {{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"p50", s.p50},
            {"p90", s.p90},   {"p99", s.p99},       {"max", s.max}};
}

}  // namespace

std::string stats_to_json(const MonteCarloStats& s) {
    nlohmann::ordered_json j;
    j["runs"] = s.runs;
    j["T"] = summary_json(s.T);
    j["S"] = summary_json(s.S);
    j["BB"] = summary_json(s.BB);
    j["totals"] = {{"injected_inits", s.totals.injected_inits}, {"batches", s.totals.batches},
                   {"exhausted_batches", s.totals.exhausted_batches}, {"trials", s.totals.trials},
                   {"failures", s.totals.failures}, {"pool_hits", s.totals.pool_hits},
                   {"pool_stored", s.totals.pool_stored}};
    j["exhaustion_frequency"] = s.exhaustion_frequency;
    j["mean_trials_per_init"] = s.mean_trials_per_init;
    return j.dump(2) + "\n";
}

std::string stats_csv_header() {
    std::string h = "runs";
    for (const char* m : {"T", "S", "BB"}) {
        for (const char* f : {"mean", "stddev", "min", "p50", "p90", "p99", "max"}) h += std::string(",") + m + "_" + f;
    }
    return h + ",exhaustion_frequency,mean_trials_per_init\n";
}

std::string stats_to_csv_row(const MonteCarloStats& s) {
    std::ostringstream out;
    out.precision(17);
    out << s.runs;
    for (const Summary* m : {&s.T, &s.S, &s.BB}) {
        out << ',' << m->mean << ',' << m->stddev << ',' << m->min << ',' << m->p50 << ',' << m->p90 << ',' << m->p99 << ','
            << m->max;
    }
    out << ',' << s.exhaustion_frequency << ',' << s.mean_trials_per_init << '\n';
    return out.str();
}

}  // namespace distillery
