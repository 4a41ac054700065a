#include "distillery/icm.hpp"

#include "distillery/errors.hpp"

#include <json.hpp>

#include <algorithm>

namespace distillery {

namespace {

constexpr std::array<std::string_view, 5> kKindNames = {"basis_init", "inject_a", "inject_y", "cnot", "measure"};

std::string wire_label(std::size_t w) { return "wire " + std::to_string(w); }

}  // namespace

std::string_view to_string(OpKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

OpKind op_kind_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) return static_cast<OpKind>(i);
    }
    throw ParseError("unknown operation kind '" + std::string(name) + "'");
}

IcmCircuit::IcmCircuit(std::string name, std::size_t width, std::vector<Operation> ops)
    : name_(std::move(name)), width_(width), ops_(std::move(ops)), wire_ops_(width), slot_(ops_.size()) {
    if (width_ == 0) throw ValidationError("circuit width must be at least 1");

    for (std::size_t i = 0; i < ops_.size(); ++i) {
        Operation& op = ops_[i];
        op.id = i;
        const std::string where = "op " + std::to_string(i) + " (" + std::string(to_string(op.kind)) + ")";
        if (op.wires.size() != arity(op.kind)) {
            throw ValidationError(where + " expects " + std::to_string(arity(op.kind)) + " wire(s), got " +
                                  std::to_string(op.wires.size()));
        }
        for (std::size_t w : op.wires) {
            if (w >= width_) {
                throw ValidationError(where + " references " + wire_label(w) + " outside width " +
                                      std::to_string(width_));
            }
        }
        if (op.kind == OpKind::Cnot && op.wires[0] == op.wires[1]) {
            throw ValidationError(where + " has identical control and target");
        }
        for (std::size_t k = 0; k < op.wires.size(); ++k) {
            auto& seq = wire_ops_[op.wires[k]];
            const std::size_t w = op.wires[k];
            if (seq.empty() && !is_init(op.kind)) {
                throw ValidationError(where + " precedes the initialisation of " + wire_label(w));
            }
            if (!seq.empty() && is_init(op.kind)) {
                throw ValidationError(where + " re-initialises " + wire_label(w));
            }
            if (!seq.empty() && ops_[seq.back()].kind == OpKind::Measure) {
                throw ValidationError(where + " follows the measurement of " + wire_label(w));
            }
            slot_[i][k] = seq.size();
            seq.push_back(i);
        }
    }
    for (std::size_t w = 0; w < width_; ++w) {
        const auto& seq = wire_ops_[w];
        if (seq.empty()) throw ValidationError(wire_label(w) + " has no operations");
        if (ops_[seq.back()].kind != OpKind::Measure) throw ValidationError(wire_label(w) + " is never measured");
    }
}

std::optional<std::size_t> IcmCircuit::predecessor(std::size_t op_id, std::size_t wire) const {
    const Operation& o = op(op_id);
    for (std::size_t k = 0; k < o.wires.size(); ++k) {
        if (o.wires[k] != wire) continue;
        const std::size_t pos = slot_[op_id][k];
        if (pos == 0) return std::nullopt;
        return wire_ops_[wire][pos - 1];
    }
    throw std::out_of_range("op " + std::to_string(op_id) + " does not act on " + wire_label(wire));
}

std::optional<std::size_t> IcmCircuit::successor(std::size_t op_id, std::size_t wire) const {
    const Operation& o = op(op_id);
    for (std::size_t k = 0; k < o.wires.size(); ++k) {
        if (o.wires[k] != wire) continue;
        const std::size_t pos = slot_[op_id][k] + 1;
        if (pos == wire_ops_[wire].size()) return std::nullopt;
        return wire_ops_[wire][pos];
    }
    throw std::out_of_range("op " + std::to_string(op_id) + " does not act on " + wire_label(wire));
}

std::vector<std::size_t> IcmCircuit::predecessors(std::size_t op_id) const {
    std::vector<std::size_t> out;
    for (std::size_t w : op(op_id).wires) {
        if (auto p = predecessor(op_id, w); p && std::find(out.begin(), out.end(), *p) == out.end()) out.push_back(*p);
    }
    return out;
}

std::vector<std::size_t> IcmCircuit::successors(std::size_t op_id) const {
    std::vector<std::size_t> out;
    for (std::size_t w : op(op_id).wires) {
        if (auto s = successor(op_id, w); s && std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
    }
    return out;
}

CircuitBuilder& CircuitBuilder::add(OpKind kind, std::vector<std::size_t> wires) {
    ops_.push_back(Operation{ops_.size(), kind, std::move(wires)});
    return *this;
}

CircuitStats circuit_stats(const IcmCircuit& c) {
    CircuitStats s{c.width(), c.size(), 0, 0};
    for (const Operation& op : c.ops()) {
        if (op.kind == OpKind::InjectedInitA) ++s.n_inject_a;
        if (op.kind == OpKind::InjectedInitY) ++s.n_inject_y;
    }
    return s;
}

IcmCircuit parse_circuit(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("circuit JSON syntax error: ") + e.what(), e.byte);
    }
    try {
        if (!doc.is_object()) throw ValidationError("circuit document must be a JSON object");
        const auto name = doc.value("name", std::string{});
        const auto width_signed = doc.at("width").get<std::int64_t>();
        if (width_signed < 0) throw ValidationError("circuit width must be non-negative");
        std::vector<Operation> ops;
        for (const auto& jop : doc.at("ops")) {
            Operation op;
            op.id = ops.size();
            op.kind = op_kind_from_string(jop.at("kind").get<std::string>());
            for (const auto& jw : jop.at("wires")) {
                const auto w = jw.get<std::int64_t>();
                if (w < 0) throw ValidationError("op " + std::to_string(op.id) + " has a negative wire index");
                op.wires.push_back(static_cast<std::size_t>(w));
            }
            ops.push_back(std::move(op));
        }
        return IcmCircuit(name, static_cast<std::size_t>(width_signed), std::move(ops));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("circuit document: ") + e.what());
    } catch (const ParseError& e) {
        throw ValidationError(e.what());
    }
}

std::string serialize_circuit(const IcmCircuit& c) {
    nlohmann::ordered_json doc;
    doc["name"] = c.name();
    doc["width"] = c.width();
    auto ops = nlohmann::ordered_json::array();
    for (const Operation& op : c.ops()) {
        ops.push_back({{"kind", to_string(op.kind)}, {"wires", op.wires}});
    }
    doc["ops"] = std::move(ops);
    return doc.dump(2) + "\n";
}

}  // namespace distillery
