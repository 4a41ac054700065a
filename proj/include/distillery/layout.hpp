#pragma once

// Space-time placement substrate. Time runs along the horizontal axis, wires
// along the vertical one; every box is a half-open rectangle
// [t_start, t_end) x [w_lo, w_hi).

#include "distillery/cost_model.hpp"
#include "distillery/icm.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace distillery {

using Coord = std::int64_t;

/// t_end of a rectangle whose end is not known yet (a pooled state still held).
inline constexpr Coord kOpenEnd = std::numeric_limits<Coord>::max();

struct Rect {
    Coord t_start = 0;
    Coord t_end = 0;
    Coord w_lo = 0;
    Coord w_hi = 0;

    [[nodiscard]] Coord duration() const { return t_end - t_start; }
    [[nodiscard]] Coord width() const { return w_hi - w_lo; }
    [[nodiscard]] bool overlaps(const Rect& o) const {
        return t_start < o.t_end && o.t_start < t_end && w_lo < o.w_hi && o.w_lo < w_hi;
    }
    bool operator==(const Rect&) const = default;
};

/// Wire range a request may use: [lo, hi), hi unbounded when empty.
struct WireBand {
    Coord lo = 0;
    std::optional<Coord> hi;
};

/// Rectangles placed so far. Confined to one scheduler run.
class Occupancy {
public:
    using Handle = std::size_t;

    explicit Occupancy(std::optional<Coord> wire_limit = std::nullopt) : wire_limit_(wire_limit) {}

    [[nodiscard]] std::optional<Coord> wire_limit() const noexcept { return wire_limit_; }

    /// Lexicographically smallest (t_start, w_lo) anchor with t_start >= earliest
    /// where a width x duration box fits inside `band` (clipped to the wire
    /// limit). `duration == kOpenEnd` asks for a box that never ends.
    [[nodiscard]] std::optional<Rect> find_first_fit(Coord width, Coord duration, Coord earliest,
                                                     const WireBand& band = {}) const;

    /// find_first_fit + insert. Throws CapacityError when the box is wider than
    /// the usable band or no anchor exists.
    Handle place_first_fit(Coord width, Coord duration, Coord earliest, const WireBand& band = {});

    /// Inserts a fixed rectangle. Throws CapacityError on overlap or when it
    /// crosses the wire limit.
    Handle insert(const Rect& r);

    /// Shortens a live rectangle; new_end must lie in (t_start, current end].
    void truncate(Handle h, Coord new_end);
    void remove(Handle h);

    [[nodiscard]] const Rect& rect(Handle h) const { return rects_.at(h); }
    [[nodiscard]] bool live(Handle h) const { return live_.at(h); }
    [[nodiscard]] std::size_t size() const noexcept { return rects_.size(); }

private:
    [[nodiscard]] bool fits(const Rect& r) const;

    std::optional<Coord> wire_limit_;
    std::vector<Rect> rects_;
    std::vector<bool> live_;
};

enum class PlacementTag : std::uint8_t { CircuitOp, DistillTrialSuccess, DistillTrialFail, PooledHold };

std::string_view to_string(PlacementTag tag);
PlacementTag placement_tag_from_string(std::string_view name);

struct Placement {
    std::int64_t id = 0;
    std::optional<std::size_t> op;  // circuit op for CircuitOp placements
    OpKind kind = OpKind::BasisInit;
    PlacementTag tag = PlacementTag::CircuitOp;
    Rect box;

    bool operator==(const Placement&) const = default;
};

struct Schedule {
    std::vector<Placement> placements;  // ascending id
    /// injected-init op id -> id of the successful trial that realised it
    std::map<std::size_t, std::int64_t> consumer_links;

    [[nodiscard]] const Placement* find(std::int64_t id) const;

    bool operator==(const Schedule&) const = default;
};

struct Metrics {
    Coord T = 0;
    Coord S = 0;
    std::int64_t BB = 0;
    /// Largest total width of boxes alive at one instant.
    Coord peak_width = 0;

    bool operator==(const Metrics&) const = default;
};

Metrics metrics(const Schedule& s);

enum class ViolationKind : std::uint8_t {
    Overlap,
    Precedence,
    MissingPlacement,
    DuplicatePlacement,
    CostMismatch,
    BadLink,
    WireLimit,
    Malformed,
};

struct Violation {
    ViolationKind kind;
    std::string message;
};

/// Empty iff boxes are disjoint, every non-injected op has exactly one
/// CircuitOp placement with its cost box, every injected op links to exactly
/// one unshared successful trial of its kind, and wire-order precedence holds.
/// Injected ops have no box of their own: the linked trial is their box.
std::vector<Violation> validate_schedule(const Schedule& s, const IcmCircuit& c, const CostModel& cm,
                                         std::optional<Coord> wire_limit = std::nullopt);

}  // namespace distillery
