#pragma once

// ICM circuits: single-qubit (I)nitialisations, (C)NOTs and (M)easurements.
// Precedence is implied by per-wire operation order.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace distillery {

enum class OpKind : std::uint8_t {
    BasisInit,
    InjectedInitA,
    InjectedInitY,
    Cnot,
    Measure,
};

inline constexpr std::array<OpKind, 5> kAllOpKinds = {
    OpKind::BasisInit, OpKind::InjectedInitA, OpKind::InjectedInitY, OpKind::Cnot, OpKind::Measure};

/// Wire-format name: basis_init, inject_a, inject_y, cnot, measure.
std::string_view to_string(OpKind kind);
OpKind op_kind_from_string(std::string_view name);

constexpr bool is_injected(OpKind k) { return k == OpKind::InjectedInitA || k == OpKind::InjectedInitY; }
constexpr bool is_init(OpKind k) { return k == OpKind::BasisInit || is_injected(k); }
constexpr std::size_t arity(OpKind k) { return k == OpKind::Cnot ? 2 : 1; }

struct Operation {
    std::size_t id = 0;
    OpKind kind = OpKind::BasisInit;
    std::vector<std::size_t> wires;  // control first for Cnot

    bool operator==(const Operation&) const = default;
};

/// Immutable, validated ICM circuit.
///
/// Every wire starts with an initialisation and ends with a measurement;
/// initialisations and measurements appear nowhere else on the wire.
class IcmCircuit {
public:
    /// Throws ValidationError naming the first violated invariant. Operation
    /// ids are reassigned to list positions.
    IcmCircuit(std::string name, std::size_t width, std::vector<Operation> ops);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }
    [[nodiscard]] const std::vector<Operation>& ops() const noexcept { return ops_; }
    [[nodiscard]] const Operation& op(std::size_t id) const { return ops_.at(id); }

    /// Op ids touching `wire`, in execution order.
    [[nodiscard]] const std::vector<std::size_t>& wire_ops(std::size_t wire) const { return wire_ops_.at(wire); }

    /// The op immediately before `op_id` on `wire`, if any.
    [[nodiscard]] std::optional<std::size_t> predecessor(std::size_t op_id, std::size_t wire) const;
    /// The op immediately after `op_id` on `wire`, if any.
    [[nodiscard]] std::optional<std::size_t> successor(std::size_t op_id, std::size_t wire) const;

    /// Distinct wire-derived predecessors / successors.
    [[nodiscard]] std::vector<std::size_t> predecessors(std::size_t op_id) const;
    [[nodiscard]] std::vector<std::size_t> successors(std::size_t op_id) const;

    bool operator==(const IcmCircuit& other) const {
        return name_ == other.name_ && width_ == other.width_ && ops_ == other.ops_;
    }

private:
    std::string name_;
    std::size_t width_;
    std::vector<Operation> ops_;
    std::vector<std::vector<std::size_t>> wire_ops_;
    // position of op within wire_ops_[wire], per operand slot
    std::vector<std::array<std::size_t, 2>> slot_;
};

/// Incremental construction helper; `build()` validates.
class CircuitBuilder {
public:
    CircuitBuilder(std::string name, std::size_t width) : name_(std::move(name)), width_(width) {}

    CircuitBuilder& basis_init(std::size_t w) { return add(OpKind::BasisInit, {w}); }
    CircuitBuilder& inject_a(std::size_t w) { return add(OpKind::InjectedInitA, {w}); }
    CircuitBuilder& inject_y(std::size_t w) { return add(OpKind::InjectedInitY, {w}); }
    CircuitBuilder& cnot(std::size_t control, std::size_t target) { return add(OpKind::Cnot, {control, target}); }
    CircuitBuilder& measure(std::size_t w) { return add(OpKind::Measure, {w}); }
    CircuitBuilder& add(OpKind kind, std::vector<std::size_t> wires);

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] IcmCircuit build() const { return IcmCircuit(name_, width_, ops_); }

private:
    std::string name_;
    std::size_t width_;
    std::vector<Operation> ops_;
};

struct CircuitStats {
    std::size_t width = 0;
    std::size_t n = 0;
    std::size_t n_inject_a = 0;
    std::size_t n_inject_y = 0;

    bool operator==(const CircuitStats&) const = default;
};

CircuitStats circuit_stats(const IcmCircuit& c);

/// Parses the circuit JSON document
/// `{"name": str, "width": int, "ops": [{"kind": ..., "wires": [...]}]}`.
/// Syntax errors raise ParseError with the byte offset; semantic ones ValidationError.
IcmCircuit parse_circuit(std::string_view text);
std::string serialize_circuit(const IcmCircuit& c);

}  // namespace distillery
