#include "distillery/render.hpp"

#include <algorithm>
#include <sstream>

namespace distillery {

namespace {

std::string_view fill_for(const Placement& p) {
    switch (p.tag) {
        case PlacementTag::DistillTrialSuccess: return "#2ca02c";
        case PlacementTag::DistillTrialFail: return "#d62728";
        case PlacementTag::PooledHold: return "#ffbf00";
        case PlacementTag::CircuitOp: break;
    }
    switch (p.kind) {
        case OpKind::Cnot: return "#3182bd";
        case OpKind::Measure: return "#636363";
        default: return "#9ecae1";
    }
}

char glyph_for(const Placement& p) {
    switch (p.tag) {
        case PlacementTag::DistillTrialSuccess: return 'S';
        case PlacementTag::DistillTrialFail: return 'x';
        case PlacementTag::PooledHold: return '~';
        case PlacementTag::CircuitOp: break;
    }
    switch (p.kind) {
        case OpKind::Cnot: return 'c';
        case OpKind::Measure: return 'm';
        default: return 'b';
    }
}

std::string render_svg(const Schedule& s, const RenderOptions& opts) {
    const Metrics m = metrics(s);
    const Coord px = std::max(1, opts.cell_px);
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << m.T * px << "\" height=\"" << m.S * px
        << "\" viewBox=\"0 0 " << m.T * px << ' ' << m.S * px << "\">\n"
        << "<title>T=" << m.T << " S=" << m.S << " BB=" << m.BB << "</title>\n";
    for (const Placement& p : s.placements) {
        out << "<rect class=\"box " << to_string(p.tag) << "\" data-id=\"" << p.id << "\" x=\"" << p.box.t_start * px
            << "\" y=\"" << p.box.w_lo * px << "\" width=\"" << p.box.duration() * px << "\" height=\""
            << p.box.width() * px << "\" fill=\"" << fill_for(p) << "\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_ascii(const Schedule& s) {
    const Metrics m = metrics(s);
    std::vector<std::string> rows(static_cast<std::size_t>(m.S), std::string(static_cast<std::size_t>(m.T), '.'));
    for (const Placement& p : s.placements) {
        const char g = glyph_for(p);
        for (Coord w = p.box.w_lo; w < p.box.w_hi; ++w) {
            for (Coord t = p.box.t_start; t < p.box.t_end; ++t) rows[w][t] = g;
        }
    }
    std::ostringstream out;
    out << "T=" << m.T << " S=" << m.S << " BB=" << m.BB << '\n';
    for (const auto& row : rows) out << row << '\n';
    return out.str();
}

}  // namespace

std::string render(const Schedule& s, RenderFormat format, const RenderOptions& opts) {
    return format == RenderFormat::Svg ? render_svg(s, opts) : render_ascii(s);
}

}  // namespace distillery
