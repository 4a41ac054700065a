#include "distillery/layout.hpp"

#include "distillery/errors.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

namespace distillery {

namespace {

constexpr std::array<std::string_view, 4> kTagNames = {"circuit_op", "trial_success", "trial_fail", "pooled_hold"};

Coord window_end(Coord t, Coord duration) { return duration == kOpenEnd ? kOpenEnd : t + duration; }

std::string box_str(const Rect& r) {
    return "[t " + std::to_string(r.t_start) + ".." + (r.t_end == kOpenEnd ? std::string("open") : std::to_string(r.t_end)) +
           ", w " + std::to_string(r.w_lo) + ".." + std::to_string(r.w_hi) + ")";
}

}  // namespace

std::optional<Rect> Occupancy::find_first_fit(Coord width, Coord duration, Coord earliest, const WireBand& band) const {
    if (width < 1 || duration < 1 || earliest < 0) {
        throw DomainError("first-fit request needs width >= 1, duration >= 1, earliest >= 0");
    }
    std::optional<Coord> hi = band.hi;
    if (wire_limit_) hi = hi ? std::min(*hi, *wire_limit_) : *wire_limit_;
    const Coord lo = band.lo;
    if (hi && width > *hi - lo) return std::nullopt;

    // Only boxes still alive after `earliest` and inside the band can block.
    std::vector<const Rect*> blockers;
    std::vector<Coord> candidates{earliest};
    for (std::size_t i = 0; i < rects_.size(); ++i) {
        if (!live_[i]) continue;
        const Rect& r = rects_[i];
        if (r.t_end <= earliest || r.w_hi <= lo || (hi && r.w_lo >= *hi)) continue;
        blockers.push_back(&r);
        if (r.t_end != kOpenEnd) candidates.push_back(r.t_end);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::pair<Coord, Coord>> busy;
    for (Coord t : candidates) {
        const Coord t_end = window_end(t, duration);
        busy.clear();
        for (const Rect* r : blockers) {
            if (r->t_start < t_end && r->t_end > t) busy.emplace_back(r->w_lo, r->w_hi);
        }
        std::sort(busy.begin(), busy.end());
        Coord pos = lo;
        bool found = false;
        for (const auto& [b_lo, b_hi] : busy) {
            if (b_lo - pos >= width) {
                found = true;
                break;
            }
            pos = std::max(pos, b_hi);
        }
        if (!found && hi && pos + width > *hi) continue;
        return Rect{t, t_end, pos, pos + width};
    }
    return std::nullopt;
}

Occupancy::Handle Occupancy::place_first_fit(Coord width, Coord duration, Coord earliest, const WireBand& band) {
    auto r = find_first_fit(width, duration, earliest, band);
    if (!r) {
        throw CapacityError("no room for a box of width " + std::to_string(width) + " within the wire limit");
    }
    rects_.push_back(*r);
    live_.push_back(true);
    return rects_.size() - 1;
}

bool Occupancy::fits(const Rect& r) const {
    if (wire_limit_ && r.w_hi > *wire_limit_) return false;
    for (std::size_t i = 0; i < rects_.size(); ++i) {
        if (live_[i] && rects_[i].overlaps(r)) return false;
    }
    return true;
}

Occupancy::Handle Occupancy::insert(const Rect& r) {
    if (r.t_end <= r.t_start || r.w_hi <= r.w_lo || r.w_lo < 0 || r.t_start < 0) {
        throw DomainError("degenerate rectangle " + box_str(r));
    }
    if (!fits(r)) throw CapacityError("rectangle " + box_str(r) + " collides or exceeds the wire limit");
    rects_.push_back(r);
    live_.push_back(true);
    return rects_.size() - 1;
}

void Occupancy::truncate(Handle h, Coord new_end) {
    Rect& r = rects_.at(h);
    if (!live_[h] || new_end <= r.t_start || new_end > r.t_end) {
        throw DomainError("invalid truncation of " + box_str(r) + " to " + std::to_string(new_end));
    }
    r.t_end = new_end;
}

void Occupancy::remove(Handle h) { live_.at(h) = false; }

std::string_view to_string(PlacementTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

PlacementTag placement_tag_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kTagNames.size(); ++i) {
        if (kTagNames[i] == name) return static_cast<PlacementTag>(i);
    }
    throw ParseError("unknown placement tag '" + std::string(name) + "'");
}

const Placement* Schedule::find(std::int64_t id) const {
    auto it = std::lower_bound(placements.begin(), placements.end(), id,
                               [](const Placement& p, std::int64_t v) { return p.id < v; });
    if (it != placements.end() && it->id == id) return &*it;
    // tolerate unsorted input from hand-built schedules
    for (const Placement& p : placements) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

Metrics metrics(const Schedule& s) {
    Metrics m;
    std::vector<std::pair<Coord, Coord>> events;  // (time, +/- width); ends sort before starts
    events.reserve(s.placements.size() * 2);
    for (const Placement& p : s.placements) {
        m.T = std::max(m.T, p.box.t_end);
        m.S = std::max(m.S, p.box.w_hi);
        events.emplace_back(p.box.t_start, p.box.width());
        events.emplace_back(p.box.t_end, -p.box.width());
    }
    m.BB = m.T * m.S;
    std::sort(events.begin(), events.end());
    Coord current = 0;
    for (const auto& [t, dw] : events) {
        current += dw;
        m.peak_width = std::max(m.peak_width, current);
    }
    return m;
}

std::vector<Violation> validate_schedule(const Schedule& s, const IcmCircuit& c, const CostModel& cm,
                                         std::optional<Coord> wire_limit) {
    std::vector<Violation> out;
    auto report = [&out](ViolationKind k, std::string msg) { out.push_back({k, std::move(msg)}); };

    std::set<std::int64_t> ids;
    std::vector<const Placement*> circuit_box(c.size(), nullptr);
    for (const Placement& p : s.placements) {
        const std::string who = "placement " + std::to_string(p.id);
        if (!ids.insert(p.id).second) report(ViolationKind::Malformed, who + " has a duplicate id");
        const Rect& r = p.box;
        if (r.t_start < 0 || r.w_lo < 0 || r.t_end <= r.t_start || r.w_hi <= r.w_lo || r.t_end == kOpenEnd) {
            report(ViolationKind::Malformed, who + " has a degenerate box " + box_str(r));
            continue;
        }
        if (wire_limit && r.w_hi > *wire_limit) {
            report(ViolationKind::WireLimit, who + " reaches wire " + std::to_string(r.w_hi) + " beyond limit " +
                                                 std::to_string(*wire_limit));
        }
        const CostBox cost = effective_cost(cm, p.kind);
        switch (p.tag) {
            case PlacementTag::CircuitOp: {
                if (!p.op || *p.op >= c.size()) {
                    report(ViolationKind::Malformed, who + " names no valid circuit op");
                    break;
                }
                const Operation& op = c.op(*p.op);
                if (is_injected(op.kind)) {
                    report(ViolationKind::Malformed, who + " boxes injected op " + std::to_string(op.id) +
                                                         "; injected ops are realised by trials");
                    break;
                }
                if (circuit_box[op.id] != nullptr) {
                    report(ViolationKind::DuplicatePlacement, "op " + std::to_string(op.id) + " is placed twice");
                    break;
                }
                circuit_box[op.id] = &p;
                if (p.kind != op.kind || r.duration() != cost.time || r.width() != cost.space) {
                    report(ViolationKind::CostMismatch, who + " does not match the cost box of op " + std::to_string(op.id));
                }
                break;
            }
            case PlacementTag::DistillTrialSuccess:
            case PlacementTag::DistillTrialFail:
                if (!is_injected(p.kind)) {
                    report(ViolationKind::Malformed, who + " is a trial of non-distilled kind " + std::string(to_string(p.kind)));
                } else if (r.duration() != cost.time || r.width() != cost.space) {
                    report(ViolationKind::CostMismatch, who + " trial box differs from the " +
                                                            std::string(to_string(p.kind)) + " cost");
                }
                break;
            case PlacementTag::PooledHold:
                if (r.width() != 1) report(ViolationKind::Malformed, who + " pooled hold is not one wire wide");
                break;
        }
    }

    // Pairwise disjointness: sweep over start times.
    std::vector<const Placement*> by_start;
    by_start.reserve(s.placements.size());
    for (const Placement& p : s.placements) by_start.push_back(&p);
    std::sort(by_start.begin(), by_start.end(), [](const Placement* a, const Placement* b) {
        return std::pair(a->box.t_start, a->id) < std::pair(b->box.t_start, b->id);
    });
    for (std::size_t i = 0; i < by_start.size(); ++i) {
        for (std::size_t j = i + 1; j < by_start.size() && by_start[j]->box.t_start < by_start[i]->box.t_end; ++j) {
            if (by_start[i]->box.overlaps(by_start[j]->box)) {
                report(ViolationKind::Overlap, "placements " + std::to_string(by_start[i]->id) + " and " +
                                                   std::to_string(by_start[j]->id) + " overlap");
            }
        }
    }

    // Every op realised exactly once; injected ops through a successful trial.
    std::vector<const Placement*> realised(c.size(), nullptr);
    std::map<std::int64_t, std::size_t> trial_owner;
    for (const auto& [op_id, pid] : s.consumer_links) {
        if (op_id >= c.size() || !is_injected(c.op(op_id).kind)) {
            report(ViolationKind::BadLink, "link from op " + std::to_string(op_id) + " which is not an injected initialisation");
            continue;
        }
        const Placement* p = s.find(pid);
        if (p == nullptr || p->tag != PlacementTag::DistillTrialSuccess || p->kind != c.op(op_id).kind) {
            report(ViolationKind::BadLink, "op " + std::to_string(op_id) + " links to placement " + std::to_string(pid) +
                                               " which is not a successful " + std::string(to_string(c.op(op_id).kind)) + " trial");
            continue;
        }
        auto [it, fresh] = trial_owner.emplace(pid, op_id);
        if (!fresh) {
            report(ViolationKind::BadLink, "trial " + std::to_string(pid) + " feeds both op " + std::to_string(it->second) +
                                               " and op " + std::to_string(op_id));
        }
        realised[op_id] = p;
    }
    for (const Operation& op : c.ops()) {
        if (is_injected(op.kind)) {
            if (realised[op.id] == nullptr && !s.consumer_links.contains(op.id)) {
                report(ViolationKind::MissingPlacement, "injected op " + std::to_string(op.id) + " has no successful trial");
            }
        } else if (circuit_box[op.id] == nullptr) {
            report(ViolationKind::MissingPlacement, "op " + std::to_string(op.id) + " is not placed");
        } else {
            realised[op.id] = circuit_box[op.id];
        }
    }

    for (std::size_t w = 0; w < c.width(); ++w) {
        const auto& seq = c.wire_ops(w);
        for (std::size_t k = 1; k < seq.size(); ++k) {
            const Placement* u = realised[seq[k - 1]];
            const Placement* v = realised[seq[k]];
            if (u == nullptr || v == nullptr) continue;
            if (v->box.t_start < u->box.t_end) {
                report(ViolationKind::Precedence, "op " + std::to_string(seq[k]) + " starts at " +
                                                      std::to_string(v->box.t_start) + " before op " +
                                                      std::to_string(seq[k - 1]) + " ends at " +
                                                      std::to_string(u->box.t_end) + " on wire " + std::to_string(w));
            }
        }
    }
    return out;
}

}  // namespace distillery
