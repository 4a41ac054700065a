#pragma once

#include "distillery/icm.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace distillery {

/// Space-time footprint of one operation box.
struct CostBox {
    std::int64_t time = 0;   // time units
    std::int64_t space = 0;  // wire units

    bool operator==(const CostBox&) const = default;
};

/// Per-kind box costs. Distilled kinds receive `movement_pad` extra units on
/// both axes so a successful state can be moved onto the circuit.
struct CostModel {
    std::array<CostBox, 5> base{};
    std::int64_t movement_pad = 0;
    std::array<bool, 5> padded{};

    /// A = (7, 15), Y = (6, 7), CNOT = (1, 2), basis init and measure = (1, 1);
    /// pad 2 applied to A and Y.
    static CostModel defaults();

    [[nodiscard]] const CostBox& base_cost(OpKind k) const { return base[static_cast<std::size_t>(k)]; }
    [[nodiscard]] bool is_padded(OpKind k) const { return padded[static_cast<std::size_t>(k)]; }

    bool operator==(const CostModel&) const = default;
};

CostBox effective_cost(const CostModel& model, OpKind kind);

/// Throws ValidationError if any cost is negative or a kind has zero time or space.
void validate_cost_model(const CostModel& model);

/// `{"base": {kind: {"time": int, "space": int}}, "movement_pad": int, "padded_kinds": [kind]}`.
/// Missing members keep their default values.
CostModel parse_cost_model(std::string_view text);
std::string serialize_cost_model(const CostModel& model);

/// Defaults, overridden by the file named in DISTILLERY_COSTS when that variable is set.
CostModel cost_model_from_env();

}  // namespace distillery
