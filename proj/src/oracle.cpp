#include "distillery/oracle.hpp"

#include "distillery/errors.hpp"

#include <json.hpp>

namespace distillery {

std::string_view to_string(DistillType t) { return t == DistillType::A ? "A" : "Y"; }

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
    return mix64(mix64(base_seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

HeraldOracle HeraldOracle::stochastic(std::uint64_t seed, double p_f_a, double p_f_y) {
    if (!(p_f_a >= 0.0 && p_f_a <= 1.0 && p_f_y >= 0.0 && p_f_y <= 1.0)) {
        throw DomainError("stochastic oracle failure probabilities must lie in [0, 1]");
    }
    HeraldOracle o;
    o.mode_ = OracleMode::Stochastic;
    o.seed_ = seed;
    o.p_f_a_ = p_f_a;
    o.p_f_y_ = p_f_y;
    return o;
}

HeraldOracle HeraldOracle::worst_case() { return HeraldOracle{}; }

HeraldOracle HeraldOracle::scripted(std::vector<bool> a, std::vector<bool> y) {
    HeraldOracle o;
    o.mode_ = OracleMode::Scripted;
    o.script_a_ = std::move(a);
    o.script_y_ = std::move(y);
    return o;
}

bool HeraldOracle::sample(DistillType type, std::int64_t trial_index, const BatchPosition& pos) const {
    switch (mode_) {
        case OracleMode::WorstCase:
            return pos.index >= pos.size - pos.required;
        case OracleMode::Stochastic: {
            const std::uint64_t type_tag = type == DistillType::A ? 0x41 : 0x59;
            const std::uint64_t h = mix64(mix64(mix64(seed_) ^ type_tag) ^ static_cast<std::uint64_t>(trial_index));
            const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
            return u >= p_f(type);
        }
        case OracleMode::Scripted: {
            const auto& s = script(type);
            if (trial_index < 0 || static_cast<std::size_t>(trial_index) >= s.size()) {
                throw OracleExhausted("scripted oracle has no verdict for " + std::string(to_string(type)) + " trial " +
                                      std::to_string(trial_index));
            }
            return s[static_cast<std::size_t>(trial_index)];
        }
    }
    return false;
}

std::string HeraldOracle::describe() const {
    switch (mode_) {
        case OracleMode::WorstCase: return "worst";
        case OracleMode::Stochastic: return "stochastic:" + std::to_string(seed_);
        case OracleMode::Scripted: return "scripted";
    }
    return "";
}

bool sample_verdict(const HeraldOracle& oracle, DistillType type, std::int64_t trial_index, const BatchPosition& pos) {
    return oracle.sample(type, trial_index, pos);
}

HeraldOracle parse_scripted_oracle(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scripted oracle JSON syntax error: ") + e.what(), e.byte);
    }
    auto read = [&doc](const char* key) {
        std::vector<bool> out;
        if (!doc.contains(key)) return out;
        const auto& v = doc.at(key);
        if (!v.is_string()) throw ValidationError(std::string("scripted oracle member ") + key + " must be a string");
        for (char ch : v.get<std::string>()) {
            if (ch == 'S' || ch == 's') out.push_back(true);
            else if (ch == 'F' || ch == 'f') out.push_back(false);
            else if (ch != ' ' && ch != ',') throw ValidationError(std::string("bad verdict character '") + ch + "'");
        }
        return out;
    };
    if (!doc.is_object()) throw ValidationError("scripted oracle document must be an object");
    return HeraldOracle::scripted(read("A"), read("Y"));
}

}  // namespace distillery
