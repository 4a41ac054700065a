#pragma once

// Offline ASAP and online ALAPT / ALAPS scheduling of ICM circuits whose
// injected initialisations are realised by heralded distillation trials.
//
// All three share one event-driven list scheduler: an op becomes ready when
// its non-injected wire predecessors have finished, ops are processed in
// (ready time, list position) order, and each is placed first-fit at the
// lowest free wires. An injected initialisation is resolved when its consumer
// is processed; the policy decides where its successful trial comes from.
//
// Circuit ops use wires [0, m). Online distillation footprints start at the
// circuit width W, so the logical wires are never displaced by factories.

#include "distillery/cost_model.hpp"
#include "distillery/icm.hpp"
#include "distillery/layout.hpp"
#include "distillery/oracle.hpp"
#include "distillery/reliability.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace distillery {

struct SchedulerLimits {
    std::optional<Coord> m;  // machine qubits
};

struct AsapLayout {
    /// Parallel trial lanes per distillation type; empty means one lane per
    /// trial (a single column). Trials fold round-robin into the lanes.
    std::optional<std::int64_t> rows;

    static AsapLayout column() { return {}; }
    static AsapLayout matrix(std::int64_t rows) { return {rows}; }
};

enum class AlapsStrategy : std::uint8_t { RepeatUntilSuccess, FixedSequence };

struct SchedulerOptions {
    /// Reuse surplus successful states (online schedulers).
    bool pooling = true;
    /// Split p_c over all independent guarantees instead of granting each the full budget.
    bool global_budget = false;
};

struct BatchStarted {
    DistillType type;
    std::int64_t size;
    Coord t;
};
struct TrialVerdict {
    DistillType type;
    std::int64_t placement;
    bool success;
};
struct PoolHit {
    std::size_t consumer;  // injected op
    std::int64_t placement;
};
struct PoolStored {
    std::int64_t placement;
};
struct OpPlaced {
    std::size_t op;
    std::int64_t placement;
};

using TraceEvent = std::variant<BatchStarted, TrialVerdict, PoolHit, PoolStored, OpPlaced>;

struct ScheduleTrace {
    std::vector<TraceEvent> events;
};

struct TraceCounts {
    std::int64_t injected_inits = 0;
    std::int64_t batches = 0;  // parallel batches or trial sequences
    /// Batches, or the first n_t trials of a sequence, without a success.
    std::int64_t exhausted_batches = 0;
    std::int64_t trials = 0;
    std::int64_t failures = 0;
    std::int64_t pool_hits = 0;
    std::int64_t pool_stored = 0;

    bool operator==(const TraceCounts&) const = default;
};

struct ScheduleResult {
    Schedule schedule;
    Metrics metrics;
    ScheduleTrace trace;
    TraceCounts counts;
};

/// Offline: every redundant trial first, then the circuit. Verdicts are the
/// worst case (exactly n_i successes per type, last).
ScheduleResult schedule_asap(const IcmCircuit& c, const CostModel& cm, const ReliabilityParams& rel,
                             const AsapLayout& layout = AsapLayout::column(), const SchedulerLimits& limits = {},
                             const SchedulerOptions& opts = {});

/// Online, time constrained: one parallel batch of n_t trials per unmet need.
ScheduleResult schedule_alapt(const IcmCircuit& c, const CostModel& cm, const ReliabilityParams& rel,
                              const HeraldOracle& oracle, const SchedulerLimits& limits = {},
                              const SchedulerOptions& opts = {});

/// Online, space constrained: trials run one at a time on a single footprint.
ScheduleResult schedule_alaps(const IcmCircuit& c, const CostModel& cm, const ReliabilityParams& rel,
                              const HeraldOracle& oracle, const SchedulerLimits& limits = {},
                              AlapsStrategy strategy = AlapsStrategy::RepeatUntilSuccess,
                              const SchedulerOptions& opts = {});

/// A scripted oracle replaying the verdicts recorded in `trace`.
HeraldOracle oracle_from_trace(const ScheduleTrace& trace);

}  // namespace distillery
