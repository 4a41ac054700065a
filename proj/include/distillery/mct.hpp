#pragma once

// Classical reversible circuits of multi-controlled Toffoli gates.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace distillery {

struct MctGate {
    std::vector<std::size_t> controls;
    std::size_t target = 0;

    bool operator==(const MctGate&) const = default;
};

struct MctCircuit {
    std::size_t width = 0;
    std::vector<MctGate> gates;
    /// Trailing wires [width - ancillae, width) start and end at zero.
    std::size_t ancillae = 0;
    std::vector<std::string> variables;
    /// Optional header sections (.constants, .inputs, ...) keyed without the dot.
    std::map<std::string, std::string> metadata;

    [[nodiscard]] std::size_t toffoli_count() const;
    /// Throws ValidationError on out-of-range wires or a target among its controls.
    void validate() const;
};

/// RevLib `.real` subset: header directives, `.begin`/`.end`, `t<k>` gates.
MctCircuit parse_real(std::string_view text);
std::string serialize_real(const MctCircuit& c);

/// Replaces every gate with n >= 3 controls by the 2n-3 Toffoli V-chain over
/// n-2 clean ancillae appended after the original wires.
MctCircuit decompose_mct(const MctCircuit& c);

/// Bit i of `input` is wire i. Requires width <= 64.
std::uint64_t simulate_permutation(const MctCircuit& c, std::uint64_t input);
/// Throws DomainError when input.size() != width.
std::vector<bool> simulate_permutation(const MctCircuit& c, const std::vector<bool>& input);

/// Random circuit of `gates` gates with up to `max_controls` controls each.
MctCircuit random_mct_circuit(std::size_t width, std::size_t gates, std::size_t max_controls, std::uint64_t seed);

}  // namespace distillery
