#include "distillery/schedule_io.hpp"

#include "distillery/errors.hpp"

#include <json.hpp>

namespace distillery {

std::string export_schedule(const Schedule& s) {
    using nlohmann::ordered_json;
    ordered_json doc;
    auto placements = ordered_json::array();
    for (const Placement& p : s.placements) {
        ordered_json jp;
        jp["id"] = p.id;
        jp["op"] = p.op ? ordered_json(*p.op) : ordered_json(nullptr);
        jp["kind"] = to_string(p.kind);
        jp["tag"] = to_string(p.tag);
        jp["t_start"] = p.box.t_start;
        jp["t_end"] = p.box.t_end;
        jp["w_lo"] = p.box.w_lo;
        jp["w_hi"] = p.box.w_hi;
        placements.push_back(std::move(jp));
    }
    auto links = ordered_json::array();
    for (const auto& [consumer, producer] : s.consumer_links) {
        links.push_back({{"consumer", consumer}, {"producer", producer}});
    }
    const Metrics m = metrics(s);
    doc["placements"] = std::move(placements);
    doc["consumer_links"] = std::move(links);
    doc["metrics"] = {{"T", m.T}, {"S", m.S}, {"BB", m.BB}, {"peak_width", m.peak_width}};
    return doc.dump(2) + "\n";
}

Schedule import_schedule(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("schedule JSON syntax error: ") + e.what(), e.byte);
    }
    Schedule s;
    try {
        for (const auto& jp : doc.at("placements")) {
            Placement p;
            p.id = jp.at("id").get<std::int64_t>();
            if (!jp.at("op").is_null()) p.op = jp.at("op").get<std::size_t>();
            p.kind = op_kind_from_string(jp.at("kind").get<std::string>());
            p.tag = placement_tag_from_string(jp.at("tag").get<std::string>());
            p.box = Rect{jp.at("t_start").get<Coord>(), jp.at("t_end").get<Coord>(), jp.at("w_lo").get<Coord>(),
                         jp.at("w_hi").get<Coord>()};
            s.placements.push_back(std::move(p));
        }
        for (const auto& jl : doc.at("consumer_links")) {
            s.consumer_links[jl.at("consumer").get<std::size_t>()] = jl.at("producer").get<std::int64_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("schedule document: ") + e.what());
    } catch (const ParseError& e) {
        throw ValidationError(e.what());
    }
    return s;
}

}  // namespace distillery
