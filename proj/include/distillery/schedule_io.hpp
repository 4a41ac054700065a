#pragma once

#include "distillery/layout.hpp"

#include <string>
#include <string_view>

namespace distillery {

/// Schedule export document:
/// `{"placements": [{"id", "op", "kind", "tag", "t_start", "t_end", "w_lo", "w_hi"}],
///   "consumer_links": [{"consumer", "producer"}], "metrics": {"T", "S", "BB", "peak_width"}}`.
/// "op" is null for trials and holds. Output is byte-stable for equal schedules.
std::string export_schedule(const Schedule& s);
Schedule import_schedule(std::string_view text);

}  // namespace distillery
