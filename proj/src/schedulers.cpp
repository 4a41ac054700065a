#include "distillery/schedulers.hpp"

#include "distillery/errors.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <queue>
#include <tuple>

namespace distillery {

namespace {

std::size_t type_index(DistillType t) { return t == DistillType::A ? 0 : 1; }

struct Acquired {
    std::int64_t producer = 0;
    Coord ready = 0;
    std::optional<std::int64_t> hold;  // pooled hold to close when the consumer starts
};

using AcquireFn = std::function<Acquired(DistillType, Coord, std::size_t)>;

/// Placement bookkeeping shared by all policies. Placement ids equal
/// occupancy handles.
class Engine {
public:
    Engine(const IcmCircuit& c, const CostModel& cm, const SchedulerLimits& limits)
        : circuit_(c), costs_(cm), occ_(limits.m) {
        validate_cost_model(cm);
        if (limits.m && *limits.m < 1) throw CapacityError("wire limit must be positive");
    }

    [[nodiscard]] const IcmCircuit& circuit() const { return circuit_; }
    [[nodiscard]] const CostModel& costs() const { return costs_; }
    [[nodiscard]] Occupancy& occupancy() { return occ_; }
    [[nodiscard]] Coord width() const { return static_cast<Coord>(circuit_.width()); }
    ScheduleTrace& trace() { return trace_; }
    TraceCounts& counts() { return counts_; }

    std::int64_t place(Coord width, Coord duration, Coord earliest, const WireBand& band, OpKind kind,
                       PlacementTag tag, std::optional<std::size_t> op = std::nullopt) {
        const auto h = occ_.place_first_fit(width, duration, earliest, band);
        return record(h, kind, tag, op);
    }

    std::int64_t insert(const Rect& r, OpKind kind, PlacementTag tag) { return record(occ_.insert(r), kind, tag, {}); }

    const Rect& box(std::int64_t id) const { return occ_.rect(static_cast<std::size_t>(id)); }

    void set_tag(std::int64_t id, PlacementTag tag) { placements_.at(static_cast<std::size_t>(id)).tag = tag; }

    /// Ends an open pooled hold at `t`; drops it when nothing was held.
    void close_hold(std::int64_t id, Coord t) {
        const auto h = static_cast<std::size_t>(id);
        if (!occ_.live(h)) return;
        if (t <= occ_.rect(h).t_start) {
            occ_.remove(h);
        } else {
            occ_.truncate(h, std::min(t, occ_.rect(h).t_end));
        }
    }

    void link(std::size_t injected_op, std::int64_t producer) { links_[injected_op] = producer; }

    /// Event-driven list scheduling of every non-injected op, no op starting before `floor`.
    void run(Coord floor, const AcquireFn& acquire);

    ScheduleResult finish() {
        ScheduleResult r;
        for (std::size_t i = 0; i < placements_.size(); ++i) {
            if (!occ_.live(i)) continue;
            Placement p = placements_[i];
            p.box = occ_.rect(i);
            if (p.box.t_end == kOpenEnd) throw Error("internal: pooled hold left open at end of run");
            r.schedule.placements.push_back(std::move(p));
        }
        r.schedule.consumer_links = links_;
        r.metrics = metrics(r.schedule);
        r.trace = std::move(trace_);
        r.counts = counts_;
        return r;
    }

private:
    std::int64_t record(Occupancy::Handle h, OpKind kind, PlacementTag tag, std::optional<std::size_t> op) {
        const auto id = static_cast<std::int64_t>(h);
        placements_.push_back(Placement{id, op, kind, tag, occ_.rect(h)});
        return id;
    }

    const IcmCircuit& circuit_;
    const CostModel& costs_;
    Occupancy occ_;
    std::vector<Placement> placements_;
    std::map<std::size_t, std::int64_t> links_;
    ScheduleTrace trace_;
    TraceCounts counts_;
};

void Engine::run(Coord floor, const AcquireFn& acquire) {
    const IcmCircuit& c = circuit_;
    const std::size_t n = c.size();
    std::vector<std::size_t> pending(n, 0);
    std::vector<Coord> ready(n, floor);

    using Item = std::pair<Coord, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (const Operation& op : c.ops()) {
        if (is_injected(op.kind)) continue;
        for (std::size_t p : c.predecessors(op.id)) {
            if (!is_injected(c.op(p).kind)) ++pending[op.id];
        }
        if (pending[op.id] == 0) queue.emplace(floor, op.id);
    }

    const WireBand circuit_band{0, std::nullopt};
    std::vector<std::int64_t> holds;
    while (!queue.empty()) {
        const auto [t, v] = queue.top();
        queue.pop();
        const Operation& op = c.op(v);

        Coord earliest = t;
        holds.clear();
        for (std::size_t w : op.wires) {
            const auto u = c.predecessor(v, w);
            if (!u || !is_injected(c.op(*u).kind)) continue;
            const Acquired got = acquire(distill_type(c.op(*u).kind), t, *u);
            link(*u, got.producer);
            earliest = std::max(earliest, got.ready);
            if (got.hold) holds.push_back(*got.hold);
        }

        const CostBox cost = effective_cost(costs_, op.kind);
        const std::int64_t id = place(cost.space, cost.time, earliest, circuit_band, op.kind, PlacementTag::CircuitOp, v);
        trace_.events.emplace_back(OpPlaced{v, id});
        const Rect& placed = box(id);
        const Coord start = placed.t_start;
        const Coord end = placed.t_end;
        for (std::int64_t h : holds) close_hold(h, start);

        for (std::size_t s : c.successors(v)) {
            if (is_injected(c.op(s).kind)) continue;
            ready[s] = std::max(ready[s], end);
            if (--pending[s] == 0) queue.emplace(ready[s], s);
        }
    }
}

struct PooledState {
    std::int64_t producer;
    Coord ready;
    std::optional<std::int64_t> hold;
};

/// Surplus successful states per distillation type.
class DistillPool {
public:
    /// Oldest state already heralded at `now`.
    std::optional<PooledState> take(DistillType t, Coord now) {
        auto& q = states_[type_index(t)];
        auto best = q.end();
        for (auto it = q.begin(); it != q.end(); ++it) {
            if (it->ready <= now && (best == q.end() || it->ready < best->ready)) best = it;
        }
        if (best == q.end()) return std::nullopt;
        PooledState s = *best;
        q.erase(best);
        return s;
    }

    void store(DistillType t, PooledState s) { states_[type_index(t)].push_back(s); }
    [[nodiscard]] std::size_t size(DistillType t) const { return states_[type_index(t)].size(); }

    std::deque<PooledState> drain(DistillType t) { return std::exchange(states_[type_index(t)], {}); }

private:
    std::array<std::deque<PooledState>, 2> states_;
};

enum class OnlineMode : std::uint8_t { Alapt, AlapsRus, AlapsFixed };

class OnlinePolicy {
public:
    OnlinePolicy(Engine& engine, const HeraldOracle& oracle, const ReliabilityParams& rel, OnlineMode mode,
                 const SchedulerOptions& opts, const SchedulerLimits& limits)
        : engine_(engine), oracle_(oracle), mode_(mode), opts_(opts) {
        const CircuitStats st = circuit_stats(engine.circuit());
        remaining_ = {static_cast<std::int64_t>(st.n_inject_a), static_cast<std::int64_t>(st.n_inject_y)};
        const auto guarantees = static_cast<std::int64_t>(st.n_inject_a + st.n_inject_y);
        const ReliabilityParams eff = opts.global_budget ? split_budget(rel, guarantees) : rel;
        n_t_ = min_extra_online(eff).n_t;

        const Coord w = engine.width();
        Coord lane = 0;
        if (st.n_inject_a > 0) lane = std::max(lane, effective_cost(engine.costs(), OpKind::InjectedInitA).space);
        if (st.n_inject_y > 0) lane = std::max(lane, effective_cost(engine.costs(), OpKind::InjectedInitY).space);
        if (mode_ == OnlineMode::Alapt) {
            trial_band_ = {w, std::nullopt};
            hold_band_ = {w, std::nullopt};
        } else {
            if (limits.m && lane > 0 && *limits.m < w + lane) {
                throw CapacityError("wire limit " + std::to_string(*limits.m) + " is below circuit width " +
                                    std::to_string(w) + " plus one distillation footprint " + std::to_string(lane));
            }
            trial_band_ = {w, w + lane};
            hold_band_ = {w + lane, std::nullopt};
        }
    }

    [[nodiscard]] std::int64_t n_t() const { return n_t_; }

    Acquired acquire(DistillType type, Coord t, std::size_t consumer) {
        ++engine_.counts().injected_inits;
        --remaining_[type_index(type)];
        Acquired got;
        if (auto pooled = opts_.pooling ? pool_.take(type, t) : std::nullopt) {
            ++engine_.counts().pool_hits;
            engine_.trace().events.emplace_back(PoolHit{consumer, pooled->producer});
            got = {pooled->producer, pooled->ready, pooled->hold};
        } else if (mode_ == OnlineMode::Alapt) {
            got = run_batch(type, t);
        } else if (mode_ == OnlineMode::AlapsRus) {
            got = run_until_success(type, t);
        } else {
            got = run_fixed_sequence(type, t);
        }
        if (remaining_[type_index(type)] == 0) {
            for (const PooledState& s : pool_.drain(type)) {
                if (s.hold) engine_.close_hold(*s.hold, t);
            }
        }
        return got;
    }

private:
    CostBox footprint(DistillType type) const { return effective_cost(engine_.costs(), distill_kind(type)); }

    bool verdict(DistillType type, std::int64_t placement, const BatchPosition& pos) {
        const bool ok = oracle_.sample(type, trial_index_[type_index(type)]++, pos);
        ++engine_.counts().trials;
        if (!ok) ++engine_.counts().failures;
        engine_.set_tag(placement, ok ? PlacementTag::DistillTrialSuccess : PlacementTag::DistillTrialFail);
        engine_.trace().events.emplace_back(TrialVerdict{type, placement, ok});
        return ok;
    }

    void begin_batch(DistillType type, Coord t) {
        ++engine_.counts().batches;
        engine_.trace().events.emplace_back(BatchStarted{type, n_t_, t});
    }

    /// Keeps a surplus success for later consumers while unmet demand remains.
    void offer_surplus(DistillType type, std::int64_t producer) {
        if (!opts_.pooling) return;
        if (static_cast<std::int64_t>(pool_.size(type)) >= remaining_[type_index(type)]) return;
        const Coord ready = engine_.box(producer).t_end;
        const auto spot = engine_.occupancy().find_first_fit(1, kOpenEnd, ready, hold_band_);
        if (!spot || spot->t_start != ready) return;  // nowhere to hold it: discarded
        const auto hold = engine_.insert(*spot, distill_kind(type), PlacementTag::PooledHold);
        pool_.store(type, PooledState{producer, ready, hold});
        ++engine_.counts().pool_stored;
        engine_.trace().events.emplace_back(PoolStored{producer});
    }

    Acquired run_batch(DistillType type, Coord t) {
        const CostBox fp = footprint(type);
        const OpKind kind = distill_kind(type);
        for (Coord earliest = t;;) {
            const auto block = engine_.occupancy().find_first_fit(fp.space * n_t_, fp.time, earliest, trial_band_);
            if (!block) {
                throw CapacityError("no room for a batch of " + std::to_string(n_t_) + " " +
                                    std::string(to_string(type)) + " distillations");
            }
            begin_batch(type, block->t_start);
            std::vector<std::int64_t> ids;
            for (std::int64_t i = 0; i < n_t_; ++i) {
                const Rect r{block->t_start, block->t_end, block->w_lo + i * fp.space, block->w_lo + (i + 1) * fp.space};
                ids.push_back(engine_.insert(r, kind, PlacementTag::DistillTrialFail));
            }
            std::optional<std::int64_t> chosen;
            std::vector<std::int64_t> surplus;
            for (std::int64_t i = 0; i < n_t_; ++i) {
                if (!verdict(type, ids[i], {i, n_t_, 1})) continue;
                if (chosen) {
                    surplus.push_back(ids[i]);
                } else {
                    chosen = ids[i];
                }
            }
            for (std::int64_t id : surplus) offer_surplus(type, id);
            if (chosen) return {*chosen, block->t_end, std::nullopt};
            ++engine_.counts().exhausted_batches;
            earliest = block->t_end;
        }
    }

    std::int64_t place_trial(DistillType type, Coord earliest) {
        const CostBox fp = footprint(type);
        return engine_.place(fp.space, fp.time, earliest, trial_band_, distill_kind(type), PlacementTag::DistillTrialFail);
    }

    Acquired run_until_success(DistillType type, Coord t) {
        Coord earliest = t;
        for (std::int64_t j = 0;; ++j) {
            const std::int64_t id = place_trial(type, earliest);
            if (j == 0) begin_batch(type, engine_.box(id).t_start);
            earliest = engine_.box(id).t_end;
            if (verdict(type, id, {std::min(j, n_t_ - 1), n_t_, 1})) return {id, earliest, std::nullopt};
            if (j + 1 == n_t_) ++engine_.counts().exhausted_batches;
        }
    }

    Acquired run_fixed_sequence(DistillType type, Coord t) {
        for (Coord earliest = t;;) {
            std::vector<std::int64_t> ids;
            for (std::int64_t j = 0; j < n_t_; ++j) {
                ids.push_back(place_trial(type, earliest));
                if (j == 0) begin_batch(type, engine_.box(ids.back()).t_start);
                earliest = engine_.box(ids.back()).t_end;
            }
            std::optional<std::int64_t> chosen;
            std::vector<std::int64_t> surplus;
            for (std::int64_t j = 0; j < n_t_; ++j) {
                if (!verdict(type, ids[j], {j, n_t_, 1})) continue;
                if (chosen) {
                    surplus.push_back(ids[j]);
                } else {
                    chosen = ids[j];
                }
            }
            for (std::int64_t id : surplus) offer_surplus(type, id);
            if (chosen) return {*chosen, engine_.box(*chosen).t_end, std::nullopt};
            ++engine_.counts().exhausted_batches;
        }
    }

    Engine& engine_;
    const HeraldOracle& oracle_;
    OnlineMode mode_;
    SchedulerOptions opts_;
    std::int64_t n_t_ = 1;
    std::array<std::int64_t, 2> remaining_{};
    std::array<std::int64_t, 2> trial_index_{};
    WireBand trial_band_;
    WireBand hold_band_;
    DistillPool pool_;
};

ScheduleResult run_online(const IcmCircuit& c, const CostModel& cm, const ReliabilityParams& rel,
                          const HeraldOracle& oracle, const SchedulerLimits& limits, OnlineMode mode,
                          const SchedulerOptions& opts) {
    rel.validate();
    Engine engine(c, cm, limits);
    OnlinePolicy policy(engine, oracle, rel, mode, opts, limits);
    engine.run(0, [&policy](DistillType type, Coord t, std::size_t consumer) { return policy.acquire(type, t, consumer); });
    return engine.finish();
}

}  // namespace

ScheduleResult schedule_asap(const IcmCircuit& c, const CostModel& cm, const ReliabilityParams& rel,
                             const AsapLayout& layout, const SchedulerLimits& limits, const SchedulerOptions& opts) {
    rel.validate();
    if (layout.rows && *layout.rows < 1) throw DomainError("matrix layout needs at least one row");
    Engine engine(c, cm, limits);
    const CircuitStats st = circuit_stats(c);
    const std::array<std::int64_t, 2> needed = {static_cast<std::int64_t>(st.n_inject_a),
                                                static_cast<std::int64_t>(st.n_inject_y)};
    const std::int64_t types_present = (needed[0] > 0) + (needed[1] > 0);
    const ReliabilityParams eff = opts.global_budget ? split_budget(rel, types_present) : rel;
    const HeraldOracle worst = HeraldOracle::worst_case();

    std::array<std::deque<std::int64_t>, 2> successes;
    Coord wire_offset = 0;
    Coord phase_end = 0;
    for (DistillType type : {DistillType::A, DistillType::Y}) {
        const std::int64_t n_i = needed[type_index(type)];
        if (n_i == 0) continue;
        const std::int64_t n_t = min_extra_offline(n_i, eff).n_t;
        const std::int64_t lanes = layout.rows ? std::min(*layout.rows, n_t) : n_t;
        const OpKind kind = distill_kind(type);
        const CostBox fp = effective_cost(cm, kind);
        ++engine.counts().batches;
        engine.trace().events.emplace_back(BatchStarted{type, n_t, 0});
        for (std::int64_t j = 0; j < n_t; ++j) {
            const Coord lane = j % lanes;
            const Coord slot = j / lanes;
            const Rect r{slot * fp.time, (slot + 1) * fp.time, wire_offset + lane * fp.space,
                         wire_offset + (lane + 1) * fp.space};
            const bool ok = worst.sample(type, j, {j, n_t, n_i});
            const std::int64_t id = engine.insert(r, kind, ok ? PlacementTag::DistillTrialSuccess : PlacementTag::DistillTrialFail);
            ++engine.counts().trials;
            if (!ok) ++engine.counts().failures;
            engine.trace().events.emplace_back(TrialVerdict{type, id, ok});
            if (ok) successes[type_index(type)].push_back(id);
            phase_end = std::max(phase_end, r.t_end);
        }
        wire_offset += lanes * fp.space;
    }

    engine.run(phase_end, [&](DistillType type, Coord, std::size_t) {
        auto& q = successes[type_index(type)];
        const std::int64_t id = q.front();
        q.pop_front();
        ++engine.counts().injected_inits;
        return Acquired{id, engine.box(id).t_end, std::nullopt};
    });
    return engine.finish();
}

ScheduleResult schedule_alapt(const IcmCircuit& c, const CostModel& cm, const ReliabilityParams& rel,
                              const HeraldOracle& oracle, const SchedulerLimits& limits, const SchedulerOptions& opts) {
    return run_online(c, cm, rel, oracle, limits, OnlineMode::Alapt, opts);
}

ScheduleResult schedule_alaps(const IcmCircuit& c, const CostModel& cm, const ReliabilityParams& rel,
                              const HeraldOracle& oracle, const SchedulerLimits& limits, AlapsStrategy strategy,
                              const SchedulerOptions& opts) {
    const OnlineMode mode = strategy == AlapsStrategy::RepeatUntilSuccess ? OnlineMode::AlapsRus : OnlineMode::AlapsFixed;
    return run_online(c, cm, rel, oracle, limits, mode, opts);
}

HeraldOracle oracle_from_trace(const ScheduleTrace& trace) {
    std::vector<bool> a;
    std::vector<bool> y;
    for (const TraceEvent& e : trace.events) {
        if (const auto* v = std::get_if<TrialVerdict>(&e)) (v->type == DistillType::A ? a : y).push_back(v->success);
    }
    return HeraldOracle::scripted(std::move(a), std::move(y));
}

}  // namespace distillery
