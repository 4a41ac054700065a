#include "distillery/errors.hpp"
#include "distillery/mct.hpp"
#include "distillery/schedule_io.hpp"
#include "distillery/schedulers.hpp"
#include "distillery/skeleton.hpp"
#include "support/random_icm.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

namespace distillery {
namespace {

const CostModel kCosts = CostModel::defaults();
const ReliabilityParams kRel{0.2, 0.001};

IcmCircuit single_a(std::size_t extra_wires = 0) {
    CircuitBuilder b("single_a", 1 + extra_wires);
    b.inject_a(0);
    for (std::size_t w = 1; w <= extra_wires; ++w) b.basis_init(w).cnot(0, w).measure(w);
    b.measure(0);
    return b.build();
}

// Two A states consumed one after the other through wire 0.
IcmCircuit sequential_a() {
    return CircuitBuilder("seq", 3)
        .basis_init(0)
        .inject_a(1)
        .cnot(0, 1)
        .measure(1)
        .inject_a(2)
        .cnot(0, 2)
        .measure(2)
        .measure(0)
        .build();
}

IcmCircuit counts_circuit(std::size_t n_a, std::size_t n_y) {
    CircuitBuilder b("counts", n_a + n_y);
    for (std::size_t w = 0; w < n_a; ++w) b.inject_a(w).measure(w);
    for (std::size_t w = n_a; w < n_a + n_y; ++w) b.inject_y(w).measure(w);
    return b.build();
}

void expect_valid(const ScheduleResult& r, const IcmCircuit& c, std::optional<Coord> m = std::nullopt) {
    const auto v = validate_schedule(r.schedule, c, kCosts, m);
    for (const auto& x : v) ADD_FAILURE() << c.name() << ": " << x.message;
}

std::size_t count_tag(const Schedule& s, PlacementTag tag) {
    return static_cast<std::size_t>(std::count_if(s.placements.begin(), s.placements.end(),
                                                  [tag](const Placement& p) { return p.tag == tag; }));
}

TEST(Alaps, WorstCaseSingleInitUsesOneFootprint) {
    const IcmCircuit c = single_a();
    const ScheduleResult r = schedule_alaps(c, kCosts, kRel, HeraldOracle::worst_case());
    expect_valid(r, c);
    EXPECT_EQ(r.counts.trials, 5);
    EXPECT_EQ(r.counts.failures, 4);
    EXPECT_EQ(r.counts.batches, 1);
    EXPECT_EQ(r.metrics.S, 1 + 17);
    EXPECT_EQ(r.metrics.T, 5 * 9 + 1);
}

TEST(Alapt, WorstCaseSingleInitUsesOneBatch) {
    const IcmCircuit c = single_a();
    const ScheduleResult r = schedule_alapt(c, kCosts, kRel, HeraldOracle::worst_case());
    expect_valid(r, c);
    EXPECT_EQ(r.counts.trials, 5);
    EXPECT_EQ(r.counts.failures, 4);
    EXPECT_EQ(r.metrics.S, 1 + 85);
    EXPECT_EQ(r.metrics.T, 9 + 1);
}

TEST(OnlineSchedulers, SpaceFollowsCircuitWidth) {
    for (std::size_t extra : {0u, 1u, 4u, 9u}) {
        const IcmCircuit c = single_a(extra);
        const auto w = static_cast<Coord>(c.width());
        EXPECT_EQ(schedule_alaps(c, kCosts, kRel, HeraldOracle::worst_case()).metrics.S, w + 17);
        EXPECT_EQ(schedule_alapt(c, kCosts, kRel, HeraldOracle::worst_case()).metrics.S, w + 85);
    }
}

TEST(Asap, SingleInitCounterexampleToSpaceOrdering) {
    // One lone injection: the online batch sits beside the circuit wires while
    // the offline column reuses them, so S(ALAPT) exceeds S(ASAP) by W.
    const IcmCircuit c = single_a();
    const ScheduleResult asap = schedule_asap(c, kCosts, kRel);
    const ScheduleResult alapt = schedule_alapt(c, kCosts, kRel, HeraldOracle::worst_case());
    expect_valid(asap, c);
    EXPECT_EQ(asap.metrics.S, 85);
    EXPECT_EQ(alapt.metrics.S, 86);
}

TEST(Asap, ColumnSpaceMatchesRedundancy) {
    const IcmCircuit big = counts_circuit(14, 28);
    const ScheduleResult r = schedule_asap(big, kCosts, kRel);
    expect_valid(r, big);
    EXPECT_EQ(r.metrics.S, 26 * 17 + 46 * 9);
    EXPECT_EQ(r.metrics.S, 856);
    EXPECT_EQ(r.counts.trials, 72);
    EXPECT_EQ(r.counts.failures, 30);
    EXPECT_EQ(r.counts.batches, 2);

    const IcmCircuit half = counts_circuit(7, 14);
    EXPECT_EQ(schedule_asap(half, kCosts, kRel).metrics.S, 489);
}

TEST(Asap, MatrixFoldsTrialsIntoLanes) {
    const IcmCircuit c = counts_circuit(14, 28);
    const ScheduleResult r = schedule_asap(c, kCosts, kRel, AsapLayout::matrix(4));
    expect_valid(r, c);
    EXPECT_EQ(r.metrics.S, 4 * 17 + 4 * 9);
    // A: ceil(26/4) = 7 slots of 9; Y: ceil(46/4) = 12 slots of 8
    EXPECT_EQ(r.metrics.T, std::max(7 * 9, 12 * 8) + 1);
    EXPECT_THROW((void)schedule_asap(c, kCosts, kRel, AsapLayout::matrix(0)), DomainError);
}

TEST(Asap, NoInjectionsMeansNoBatches) {
    const IcmCircuit c = CircuitBuilder("plain", 2).basis_init(0).basis_init(1).cnot(0, 1).measure(0).measure(1).build();
    const ScheduleResult r = schedule_asap(c, kCosts, kRel);
    expect_valid(r, c);
    EXPECT_EQ(r.counts.batches, 0);
    EXPECT_EQ(r.metrics.T, 3);
    EXPECT_EQ(r.metrics.S, 2);
}

TEST(Alapt, PoolServesLaterConsumer) {
    const IcmCircuit c = sequential_a();
    const HeraldOracle all_ok = HeraldOracle::scripted(std::vector<bool>(10, true), {});
    const ScheduleResult r = schedule_alapt(c, kCosts, kRel, all_ok);
    expect_valid(r, c);
    EXPECT_EQ(r.counts.batches, 1);
    EXPECT_EQ(r.counts.pool_stored, 1);
    EXPECT_EQ(r.counts.pool_hits, 1);
    ASSERT_EQ(count_tag(r.schedule, PlacementTag::PooledHold), 1u);
    const auto hold = std::find_if(r.schedule.placements.begin(), r.schedule.placements.end(),
                                   [](const Placement& p) { return p.tag == PlacementTag::PooledHold; });
    EXPECT_EQ(hold->box, (Rect{10, 11, 3, 4}));

    const ScheduleResult unpooled = schedule_alapt(c, kCosts, kRel, all_ok, {}, {false, false});
    expect_valid(unpooled, c);
    EXPECT_EQ(unpooled.counts.batches, 2);
    EXPECT_EQ(unpooled.counts.pool_hits, 0);
}

TEST(Alapt, PooledStateIsNotUsedBeforeItExists) {
    // Both states feed the same CNOT: the second request cannot wait on the
    // first batch's surplus, so it launches its own batch and the surplus is
    // released unused.
    const IcmCircuit c = CircuitBuilder("pair", 2).inject_a(0).inject_a(1).cnot(0, 1).measure(0).measure(1).build();
    const HeraldOracle all_ok = HeraldOracle::scripted(std::vector<bool>(10, true), {});
    const ScheduleResult r = schedule_alapt(c, kCosts, kRel, all_ok);
    expect_valid(r, c);
    EXPECT_EQ(r.counts.batches, 2);
    EXPECT_EQ(r.counts.pool_hits, 0);
    EXPECT_EQ(count_tag(r.schedule, PlacementTag::PooledHold), 0u);
}

TEST(Alapt, ExhaustedBatchIsRetried) {
    const IcmCircuit c = single_a();
    const HeraldOracle o = HeraldOracle::scripted({false, false, false, false, false, false, true, false, false, false}, {});
    const ScheduleResult r = schedule_alapt(c, kCosts, kRel, o);
    expect_valid(r, c);
    EXPECT_EQ(r.counts.batches, 2);
    EXPECT_EQ(r.counts.exhausted_batches, 1);
    EXPECT_EQ(r.metrics.T, 2 * 9 + 1);
}

TEST(Alaps, RepeatUntilSuccessStopsAtFirstSuccess) {
    const IcmCircuit c = single_a();
    const ScheduleResult r =
        schedule_alaps(c, kCosts, kRel, HeraldOracle::scripted({false, false, true}, {}));
    expect_valid(r, c);
    EXPECT_EQ(r.counts.trials, 3);
    EXPECT_EQ(r.metrics.T, 3 * 9 + 1);
    EXPECT_EQ(r.counts.exhausted_batches, 0);

    std::vector<bool> long_run(7, false);
    long_run.push_back(true);
    const ScheduleResult slow = schedule_alaps(c, kCosts, kRel, HeraldOracle::scripted(long_run, {}));
    expect_valid(slow, c);
    EXPECT_EQ(slow.counts.trials, 8);
    EXPECT_EQ(slow.counts.exhausted_batches, 1);
}

TEST(Alaps, FixedSequencePoolsSurplus) {
    CircuitBuilder b("spaced", 4);
    b.basis_init(0).basis_init(3).inject_a(1).cnot(0, 1).measure(1);
    for (int i = 0; i < 10; ++i) b.cnot(0, 3);
    b.inject_a(2).cnot(0, 2).measure(2).measure(0).measure(3);
    const IcmCircuit c = b.build();
    const HeraldOracle o = HeraldOracle::scripted({true, true, false, false, false}, {});
    const ScheduleResult r = schedule_alaps(c, kCosts, kRel, o, {}, AlapsStrategy::FixedSequence);
    expect_valid(r, c);
    EXPECT_EQ(r.counts.trials, 5);
    EXPECT_EQ(r.counts.batches, 1);
    EXPECT_EQ(r.counts.pool_hits, 1);
    EXPECT_EQ(r.metrics.S, 4 + 17 + 1);
}

TEST(Schedulers, CapacityLimits) {
    const IcmCircuit c = single_a(2);
    EXPECT_THROW((void)schedule_alaps(c, kCosts, kRel, HeraldOracle::worst_case(), {Coord{19}}), CapacityError);
    expect_valid(schedule_alaps(c, kCosts, kRel, HeraldOracle::worst_case(), {Coord{20}}), c, 20);
    EXPECT_THROW((void)schedule_alapt(c, kCosts, kRel, HeraldOracle::worst_case(), {Coord{87}}), CapacityError);
    expect_valid(schedule_alapt(c, kCosts, kRel, HeraldOracle::worst_case(), {Coord{88}}), c, 88);
    EXPECT_THROW((void)schedule_asap(c, kCosts, kRel, AsapLayout::column(), {Coord{84}}), CapacityError);
    expect_valid(schedule_asap(c, kCosts, kRel, AsapLayout::column(), {Coord{85}}), c, 85);
}

TEST(Schedulers, GlobalBudgetAddsRedundancy) {
    const IcmCircuit c = counts_circuit(10, 0);
    const ScheduleResult local = schedule_alaps(c, kCosts, kRel, HeraldOracle::worst_case());
    const ScheduleResult global = schedule_alaps(c, kCosts, kRel, HeraldOracle::worst_case(), {}, {}, {true, true});
    EXPECT_EQ(local.counts.trials, 10 * 5);
    EXPECT_EQ(global.counts.trials, 10 * 6);
    EXPECT_GT(global.counts.trials, local.counts.trials);
}

TEST(Schedulers, ScriptExhaustionPropagates) {
    EXPECT_THROW((void)schedule_alaps(single_a(), kCosts, kRel, HeraldOracle::scripted({false}, {})), OracleExhausted);
}

TEST(Schedulers, NoFailuresMeansOneTrialPerInit) {
    const IcmCircuit c = expand_to_icm_skeleton(random_mct_circuit(4, 3, 2, 5));
    const ScheduleResult r = schedule_alaps(c, kCosts, {0.0, 0.001}, HeraldOracle::stochastic(3, 0.0));
    expect_valid(r, c);
    EXPECT_EQ(r.counts.trials, r.counts.injected_inits);
    EXPECT_EQ(r.counts.failures, 0);
}

struct SchedulerRun {
    const char* name;
    std::function<ScheduleResult(const IcmCircuit&, const HeraldOracle&)> fn;
};

std::vector<SchedulerRun> all_runs() {
    return {
        {"asap", [](const IcmCircuit& c, const HeraldOracle&) { return schedule_asap(c, kCosts, kRel); }},
        {"asap-matrix",
         [](const IcmCircuit& c, const HeraldOracle&) { return schedule_asap(c, kCosts, kRel, AsapLayout::matrix(3)); }},
        {"alapt", [](const IcmCircuit& c, const HeraldOracle& o) { return schedule_alapt(c, kCosts, kRel, o); }},
        {"alapt-nopool",
         [](const IcmCircuit& c, const HeraldOracle& o) { return schedule_alapt(c, kCosts, kRel, o, {}, {false, false}); }},
        {"alaps-rus", [](const IcmCircuit& c, const HeraldOracle& o) { return schedule_alaps(c, kCosts, kRel, o); }},
        {"alaps-fixed",
         [](const IcmCircuit& c, const HeraldOracle& o) {
             return schedule_alaps(c, kCosts, kRel, o, {}, AlapsStrategy::FixedSequence);
         }},
    };
}

TEST(SchedulerProperty, RandomCircuitsValidateUnderEveryOracle) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const IcmCircuit c = testing::random_icm(seed, 2 + seed % 11, 10 + (seed * 7) % 190);
        for (const SchedulerRun& run : all_runs()) {
            for (const HeraldOracle& o : {HeraldOracle::worst_case(), HeraldOracle::stochastic(seed, 0.3)}) {
                SCOPED_TRACE(std::string(run.name) + " seed " + std::to_string(seed) + " " + o.describe());
                const ScheduleResult r = run.fn(c, o);
                expect_valid(r, c);
                EXPECT_EQ(r.metrics.BB, r.metrics.T * r.metrics.S);
                EXPECT_EQ(r.counts.injected_inits,
                          static_cast<std::int64_t>(circuit_stats(c).n_inject_a + circuit_stats(c).n_inject_y));
            }
        }
    }
}

TEST(SchedulerProperty, ReplayingTheTraceReproducesTheSchedule) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const IcmCircuit c = testing::random_icm(seed + 1000, 3 + seed % 9, 60);
        for (const SchedulerRun& run : all_runs()) {
            const ScheduleResult first = run.fn(c, HeraldOracle::stochastic(seed, 0.35));
            const ScheduleResult replay = run.fn(c, oracle_from_trace(first.trace));
            EXPECT_EQ(export_schedule(first.schedule), export_schedule(replay.schedule)) << run.name << " seed " << seed;
            EXPECT_EQ(first.counts, replay.counts);
        }
    }
}

TEST(SchedulerProperty, WorstCaseOrderingsOnOnlineSchedulers) {
    // Holds for arbitrary circuits: a single footprint is never faster and
    // never wider than a full batch.
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const IcmCircuit c = testing::random_icm(seed + 5000, 2 + seed % 11, 20 + seed % 180);
        const auto st = circuit_stats(c);
        if (st.n_inject_a + st.n_inject_y == 0) continue;
        const ScheduleResult t = schedule_alapt(c, kCosts, kRel, HeraldOracle::worst_case());
        const ScheduleResult s = schedule_alaps(c, kCosts, kRel, HeraldOracle::worst_case());
        EXPECT_LE(t.metrics.T, s.metrics.T) << "seed " << seed;
        EXPECT_LE(s.metrics.S, t.metrics.S) << "seed " << seed;
    }
}

TEST(SchedulerProperty, CircuitOpsStayOnCircuitWires) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const IcmCircuit c = testing::random_icm(seed + 9000, 2 + seed % 11, 80);
        for (const SchedulerRun& run : all_runs()) {
            const ScheduleResult r = run.fn(c, HeraldOracle::stochastic(seed, 0.2));
            const bool online = std::string(run.name).rfind("alap", 0) == 0;
            for (const Placement& p : r.schedule.placements) {
                if (p.tag == PlacementTag::CircuitOp) EXPECT_LE(p.box.w_hi, static_cast<Coord>(c.width()));
                if (online && p.tag != PlacementTag::CircuitOp) EXPECT_GE(p.box.w_lo, static_cast<Coord>(c.width()));
            }
        }
    }
}

TEST(SchedulerProperty, PoolingNeverIncreasesTime) {
    std::mt19937_64 rng(31);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const IcmCircuit c = seed % 2 ? testing::random_icm(seed + 300, 2 + seed % 10, 40 + seed % 120)
                                      : expand_to_icm_skeleton(random_mct_circuit(3 + seed % 4, 1 + seed % 3, 2, seed));
        std::vector<bool> a(4000);
        std::vector<bool> y(4000);
        for (std::size_t k = 0; k < a.size(); ++k) {
            a[k] = rng() % 10 < 6;
            y[k] = rng() % 10 < 6;
        }
        const HeraldOracle script = HeraldOracle::scripted(a, y);
        const SchedulerOptions off{false, false};
        EXPECT_GE(schedule_alapt(c, kCosts, kRel, script, {}, off).metrics.T,
                  schedule_alapt(c, kCosts, kRel, script).metrics.T)
            << "alapt seed " << seed;
        EXPECT_GE(schedule_alaps(c, kCosts, kRel, script, {}, AlapsStrategy::FixedSequence, off).metrics.T,
                  schedule_alaps(c, kCosts, kRel, script, {}, AlapsStrategy::FixedSequence).metrics.T)
            << "alaps seed " << seed;
    }
}

TEST(Asap, MatrixDegenerateRows) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const IcmCircuit c = expand_to_icm_skeleton(random_mct_circuit(3 + seed % 4, 1 + seed % 3, 2, seed));
        const auto st = circuit_stats(c);
        const auto n_a = min_extra_offline(static_cast<std::int64_t>(st.n_inject_a), kRel).n_t;
        const auto n_y = min_extra_offline(static_cast<std::int64_t>(st.n_inject_y), kRel).n_t;
        const ScheduleResult column = schedule_asap(c, kCosts, kRel);
        EXPECT_EQ(export_schedule(schedule_asap(c, kCosts, kRel, AsapLayout::matrix(std::max({n_a, n_y, std::int64_t{1}}))).schedule),
                  export_schedule(column.schedule));
        const ScheduleResult one = schedule_asap(c, kCosts, kRel, AsapLayout::matrix(1));
        expect_valid(one, c);
        Coord phase_width = 0;
        for (const Placement& p : one.schedule.placements) {
            if (p.tag != PlacementTag::CircuitOp) phase_width = std::max(phase_width, p.box.w_hi);
        }
        EXPECT_EQ(phase_width, (st.n_inject_a ? 17 : 0) + (st.n_inject_y ? 9 : 0));
    }
}

}  // namespace
}  // namespace distillery
