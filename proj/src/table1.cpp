#include "distillery/table1.hpp"

#include "distillery/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace distillery {

std::string_view to_string(Variant v) { return v == Variant::Optimised ? "opt" : "unopt"; }

std::string_view to_string(Algo a) {
    switch (a) {
    case Algo::Asap: return "asap";
    case Algo::Alapt: return "alapt";
    case Algo::Alaps: return "alaps";
    }
    return "?";
}

std::string_view to_string(Table1Check c) {
    switch (c) {
    case Table1Check::BoxProduct: return "bb_equals_t_times_s";
    case Table1Check::AsapSpace: return "asap_space";
    case Table1Check::OnlineSpaceGap: return "online_space_gap";
    case Table1Check::YTwiceA: return "y_twice_a";
    }
    return "?";
}

namespace {

constexpr std::array kVariants = {Variant::Optimised, Variant::Unoptimised};
constexpr std::array kAlgos = {Algo::Asap, Algo::Alapt, Algo::Alaps};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string expected_header() {
    std::string h = "circuit,A,Y";
    for (Variant v : kVariants) {
        for (Algo a : kAlgos) {
            for (const char* m : {"T", "S", "BB"}) {
                h += ',';
                h += to_string(v);
                h += '_';
                h += to_string(a);
                h += '_';
                h += m;
            }
        }
    }
    return h;
}

std::optional<std::int64_t> parse_int(const std::string& s, std::size_t line, bool allow_blank) {
    if (s.empty()) {
        if (allow_blank) return std::nullopt;
        throw ParseError("line " + std::to_string(line) + ": empty field");
    }
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line) + ": not an integer: '" + s + "'");
    }
    return v;
}

}  // namespace

std::vector<Table1Row> parse_table1(std::string_view csv) {
    std::istringstream in{std::string(csv)};
    std::string line;
    std::size_t lineno = 0;
    std::vector<Table1Row> rows;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != expected_header()) throw ParseError("unexpected table header");
            header = true;
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 21) throw ParseError("line " + std::to_string(lineno) + ": expected 21 fields");
        Table1Row r;
        r.circuit = f[0];
        r.A = *parse_int(f[1], lineno, false);
        r.Y = *parse_int(f[2], lineno, false);
        std::size_t k = 3;
        for (auto& variant : r.cells) {
            for (auto& cell : variant) {
                cell.T = parse_int(f[k], lineno, true);
                cell.S = *parse_int(f[k + 1], lineno, false);
                cell.BB = *parse_int(f[k + 2], lineno, false);
                k += 3;
            }
        }
        rows.push_back(std::move(r));
    }
    if (!header) throw ParseError("empty table");
    return rows;
}

std::vector<Table1Row> load_table1(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_table1(ss.str());
}

std::size_t Table1Report::rows_passing() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i + 3 < results.size(); i += 4) {
        if (std::all_of(results.begin() + static_cast<std::ptrdiff_t>(i), results.begin() + static_cast<std::ptrdiff_t>(i + 4),
                        [](const Table1CheckResult& r) { return r.pass; })) {
            ++n;
        }
    }
    return n;
}

bool Table1Report::all_pass() const {
    return std::all_of(results.begin(), results.end(), [](const Table1CheckResult& r) { return r.pass; });
}

Table1Report check_table1(const std::vector<Table1Row>& rows, const ReliabilityParams& rel, const CostModel& cm) {
    const std::int64_t wa = effective_cost(cm, OpKind::InjectedInitA).space;
    const std::int64_t wy = effective_cost(cm, OpKind::InjectedInitY).space;
    const std::int64_t gap = min_extra_online(rel).s * wa;

    Table1Report report;
    for (const Table1Row& r : rows) {
        {
            Table1CheckResult res{r.circuit, Table1Check::BoxProduct, true, {}};
            std::string derived;
            for (Variant v : kVariants) {
                for (Algo a : kAlgos) {
                    const Table1Cell& c = r.cell(v, a);
                    const std::string where = std::string(to_string(v)) + "_" + std::string(to_string(a));
                    if (c.T) {
                        if (*c.T * c.S != c.BB) {
                            res.pass = false;
                            res.detail += where + ": " + std::to_string(*c.T) + "*" + std::to_string(c.S) +
                                          " != " + std::to_string(c.BB) + "; ";
                        }
                    } else if (c.S == 0 || c.BB % c.S != 0) {
                        res.pass = false;
                        res.detail += where + ": blank T and S does not divide BB; ";
                    } else {
                        derived += where + " T derived as " + std::to_string(c.BB / c.S) + "; ";
                    }
                }
            }
            res.detail += derived;
            report.results.push_back(std::move(res));
        }
        {
            const ExtraCount ea = min_extra_offline(r.A, rel);
            const ExtraCount ey = min_extra_offline(r.Y, rel);
            const std::int64_t expect = wa * ea.n_t + wy * ey.n_t;
            Table1CheckResult res{r.circuit, Table1Check::AsapSpace, true, "expected " + std::to_string(expect)};
            for (Variant v : kVariants) {
                const std::int64_t got = r.cell(v, Algo::Asap).S;
                if (got != expect) {
                    res.pass = false;
                    res.detail += "; " + std::string(to_string(v)) + " has " + std::to_string(got);
                }
            }
            report.results.push_back(std::move(res));
        }
        {
            Table1CheckResult res{r.circuit, Table1Check::OnlineSpaceGap, true, "expected " + std::to_string(gap)};
            for (Variant v : kVariants) {
                const std::int64_t got = r.cell(v, Algo::Alapt).S - r.cell(v, Algo::Alaps).S;
                if (got != gap) {
                    res.pass = false;
                    res.detail += "; " + std::string(to_string(v)) + " has " + std::to_string(got);
                }
            }
            report.results.push_back(std::move(res));
        }
        {
            const bool ok = r.Y == 2 * r.A;
            report.results.push_back({r.circuit, Table1Check::YTwiceA, ok,
                                      ok ? "" : "A=" + std::to_string(r.A) + " Y=" + std::to_string(r.Y)});
        }
    }
    return report;
}

}  // namespace distillery
