#pragma once

#include "distillery/layout.hpp"

#include <string>

namespace distillery {

enum class RenderFormat : std::uint8_t { Svg, Ascii };

struct RenderOptions {
    int cell_px = 4;  // SVG pixels per time or wire unit
};

/// Deterministic drawing of a schedule, time horizontal and wires vertical.
/// Successful trials are green, failed ones red, pooled holds amber.
///
/// ASCII glyphs: b basis init, c CNOT, m measure, S successful trial,
/// x failed trial, ~ pooled hold, . free.
std::string render(const Schedule& s, RenderFormat format, const RenderOptions& opts = {});

}  // namespace distillery
