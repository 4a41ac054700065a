#include "distillery/cost_model.hpp"

#include "distillery/errors.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace distillery {

namespace {

std::size_t idx(OpKind k) { return static_cast<std::size_t>(k); }

}  // namespace

CostModel CostModel::defaults() {
    CostModel m;
    m.base[idx(OpKind::BasisInit)] = {1, 1};
    m.base[idx(OpKind::InjectedInitA)] = {7, 15};
    m.base[idx(OpKind::InjectedInitY)] = {6, 7};
    m.base[idx(OpKind::Cnot)] = {1, 2};
    m.base[idx(OpKind::Measure)] = {1, 1};
    m.movement_pad = 2;
    m.padded[idx(OpKind::InjectedInitA)] = true;
    m.padded[idx(OpKind::InjectedInitY)] = true;
    return m;
}

CostBox effective_cost(const CostModel& model, OpKind kind) {
    CostBox box = model.base_cost(kind);
    if (model.is_padded(kind)) {
        box.time += model.movement_pad;
        box.space += model.movement_pad;
    }
    return box;
}

void validate_cost_model(const CostModel& model) {
    if (model.movement_pad < 0) throw ValidationError("movement_pad must be non-negative");
    for (OpKind k : kAllOpKinds) {
        const CostBox& b = model.base_cost(k);
        if (b.time < 0 || b.space < 0) {
            throw ValidationError("negative cost for " + std::string(to_string(k)));
        }
        const CostBox e = effective_cost(model, k);
        if (e.time == 0 || e.space == 0) {
            throw ValidationError("zero-sized box for schedulable kind " + std::string(to_string(k)));
        }
    }
}

CostModel parse_cost_model(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("cost model JSON syntax error: ") + e.what(), e.byte);
    }
    CostModel m = CostModel::defaults();
    try {
        if (doc.contains("base")) {
            for (const auto& [name, box] : doc.at("base").items()) {
                CostBox& b = m.base[idx(op_kind_from_string(name))];
                b.time = box.value("time", b.time);
                b.space = box.value("space", b.space);
            }
        }
        m.movement_pad = doc.value("movement_pad", m.movement_pad);
        if (doc.contains("padded_kinds")) {
            m.padded = {};
            for (const auto& name : doc.at("padded_kinds")) m.padded[idx(op_kind_from_string(name.get<std::string>()))] = true;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("cost model document: ") + e.what());
    } catch (const ParseError& e) {
        throw ValidationError(e.what());
    }
    validate_cost_model(m);
    return m;
}

std::string serialize_cost_model(const CostModel& model) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json base = nlohmann::ordered_json::object();
    auto padded = nlohmann::ordered_json::array();
    for (OpKind k : kAllOpKinds) {
        base[std::string(to_string(k))] = {{"time", model.base_cost(k).time}, {"space", model.base_cost(k).space}};
        if (model.is_padded(k)) padded.push_back(to_string(k));
    }
    doc["base"] = std::move(base);
    doc["movement_pad"] = model.movement_pad;
    doc["padded_kinds"] = std::move(padded);
    return doc.dump(2) + "\n";
}

CostModel cost_model_from_env() {
    const char* path = std::getenv("DISTILLERY_COSTS");
    if (path == nullptr || *path == '\0') return CostModel::defaults();
    std::ifstream in(path);
    if (!in) throw ValidationError(std::string("cannot open DISTILLERY_COSTS file ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_cost_model(ss.str());
}

}  // namespace distillery
