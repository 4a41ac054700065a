#include "distillery/mct.hpp"

#include "distillery/errors.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>

namespace distillery {

std::size_t MctCircuit::toffoli_count() const {
    return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [](const MctGate& g) { return g.controls.size() == 2; }));
}

void MctCircuit::validate() const {
    if (ancillae > width) throw ValidationError("ancilla count exceeds width");
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const MctGate& g = gates[i];
        if (g.target >= width) throw ValidationError("gate " + std::to_string(i) + ": target out of range");
        for (std::size_t k = 0; k < g.controls.size(); ++k) {
            const std::size_t c = g.controls[k];
            if (c >= width) throw ValidationError("gate " + std::to_string(i) + ": control out of range");
            if (c == g.target) throw ValidationError("gate " + std::to_string(i) + ": target is also a control");
            if (std::find(g.controls.begin(), g.controls.begin() + static_cast<std::ptrdiff_t>(k), c) !=
                g.controls.begin() + static_cast<std::ptrdiff_t>(k)) {
                throw ValidationError("gate " + std::to_string(i) + ": repeated control");
            }
        }
    }
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

std::size_t parse_count(const std::string& tok, std::size_t offset) {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size()) throw ParseError("expected a number, got '" + tok + "'", offset);
    return v;
}

}  // namespace

MctCircuit parse_real(std::string_view text) {
    MctCircuit c;
    bool have_numvars = false;
    bool in_body = false;
    bool ended = false;
    std::map<std::string, std::size_t> index;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, nl - pos);
        const std::size_t offset = pos;
        pos = nl + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto toks = split_ws(line);
        if (toks.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        if (ended) throw ParseError("content after .end", offset);
        const std::string& head = toks.front();

        if (!in_body) {
            if (head == ".version" || head == ".constants" || head == ".inputs" || head == ".outputs" ||
                head == ".garbage" || head == ".inputbus" || head == ".outputbus") {
                std::string rest;
                for (std::size_t i = 1; i < toks.size(); ++i) rest += (i > 1 ? " " : "") + toks[i];
                c.metadata[head.substr(1)] = rest;
            } else if (head == ".numvars") {
                if (toks.size() != 2) throw ParseError(".numvars takes one value", offset);
                c.width = parse_count(toks[1], offset);
                have_numvars = true;
            } else if (head == ".variables") {
                if (!have_numvars) throw ParseError(".variables before .numvars", offset);
                if (toks.size() - 1 != c.width) throw ParseError(".variables does not match .numvars", offset);
                for (std::size_t i = 1; i < toks.size(); ++i) {
                    if (!index.emplace(toks[i], i - 1).second) throw ParseError("duplicate variable " + toks[i], offset);
                    c.variables.push_back(toks[i]);
                }
            } else if (head == ".begin") {
                if (!have_numvars) throw ParseError("missing .numvars", offset);
                if (c.variables.empty() && c.width > 0) throw ParseError("missing .variables", offset);
                in_body = true;
            } else {
                throw ParseError("unexpected header line '" + head + "'", offset);
            }
            continue;
        }

        if (head == ".end") {
            ended = true;
            continue;
        }
        if (head.size() < 2 || head[0] != 't') throw UnsupportedGate("unsupported gate '" + head + "'", offset);
        const std::size_t k = parse_count(head.substr(1), offset);
        if (k == 0 || toks.size() - 1 != k) throw ParseError("gate '" + head + "' expects " + head.substr(1) + " operands", offset);
        MctGate g;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const auto it = index.find(toks[i]);
            if (it == index.end()) throw ValidationError("unknown variable '" + toks[i] + "'");
            if (i + 1 == toks.size()) {
                g.target = it->second;
            } else {
                g.controls.push_back(it->second);
            }
        }
        c.gates.push_back(std::move(g));
    }
    if (!in_body) throw ParseError("missing .begin", text.size());
    if (!ended) throw ParseError("missing .end", text.size());
    c.validate();
    return c;
}

std::string serialize_real(const MctCircuit& c) {
    std::vector<std::string> names = c.variables;
    for (std::size_t i = names.size(); i < c.width; ++i) names.push_back("x" + std::to_string(i));
    std::ostringstream out;
    out << ".version 1.0\n.numvars " << c.width << "\n.variables";
    for (const auto& n : names) out << ' ' << n;
    out << '\n';
    for (const auto& [key, value] : c.metadata) {
        if (key != "version") out << '.' << key << ' ' << value << '\n';
    }
    out << ".begin\n";
    for (const MctGate& g : c.gates) {
        out << 't' << g.controls.size() + 1;
        for (std::size_t w : g.controls) out << ' ' << names[w];
        out << ' ' << names[g.target] << '\n';
    }
    out << ".end\n";
    return out.str();
}

MctCircuit decompose_mct(const MctCircuit& c) {
    c.validate();
    std::size_t extra = 0;
    for (const MctGate& g : c.gates) extra = std::max(extra, g.controls.size() >= 3 ? g.controls.size() - 2 : 0);

    MctCircuit out;
    out.width = c.width + extra;
    out.ancillae = c.ancillae + extra;
    out.variables = c.variables;
    if (extra > 0) {
        for (std::size_t i = out.variables.size(); i < c.width; ++i) out.variables.push_back("x" + std::to_string(i));
        for (std::size_t i = 0; i < extra; ++i) out.variables.push_back("anc" + std::to_string(i));
    }
    out.metadata = c.metadata;

    for (const MctGate& g : c.gates) {
        const std::size_t n = g.controls.size();
        if (n <= 2) {
            out.gates.push_back(g);
            continue;
        }
        const auto anc = [&](std::size_t i) { return c.width + i; };
        std::vector<MctGate> chain;
        chain.push_back({{g.controls[0], g.controls[1]}, anc(0)});
        for (std::size_t i = 2; i + 1 < n; ++i) chain.push_back({{g.controls[i], anc(i - 2)}, anc(i - 1)});
        out.gates.insert(out.gates.end(), chain.begin(), chain.end());
        out.gates.push_back({{g.controls[n - 1], anc(n - 3)}, g.target});
        out.gates.insert(out.gates.end(), chain.rbegin(), chain.rend());
    }
    return out;
}

std::uint64_t simulate_permutation(const MctCircuit& c, std::uint64_t input) {
    if (c.width > 64) throw DomainError("packed simulation supports at most 64 wires");
    std::uint64_t s = input;
    for (const MctGate& g : c.gates) {
        std::uint64_t mask = 0;
        for (std::size_t w : g.controls) mask |= std::uint64_t{1} << w;
        if ((s & mask) == mask) s ^= std::uint64_t{1} << g.target;
    }
    return s;
}

std::vector<bool> simulate_permutation(const MctCircuit& c, const std::vector<bool>& input) {
    if (input.size() != c.width) {
        throw DomainError("input has " + std::to_string(input.size()) + " bits, circuit width is " + std::to_string(c.width));
    }
    std::vector<bool> s = input;
    for (const MctGate& g : c.gates) {
        if (std::all_of(g.controls.begin(), g.controls.end(), [&](std::size_t w) { return s[w]; })) s[g.target] = !s[g.target];
    }
    return s;
}

MctCircuit random_mct_circuit(std::size_t width, std::size_t gates, std::size_t max_controls, std::uint64_t seed) {
    if (width < 1) throw DomainError("width must be positive");
    max_controls = std::min(max_controls, width - 1);
    std::mt19937_64 rng(seed);
    MctCircuit c;
    c.width = width;
    std::vector<std::size_t> wires(width);
    for (std::size_t i = 0; i < width; ++i) wires[i] = i;
    for (std::size_t i = 0; i < gates; ++i) {
        std::shuffle(wires.begin(), wires.end(), rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, max_controls)(rng);
        MctGate g;
        g.target = wires[0];
        g.controls.assign(wires.begin() + 1, wires.begin() + 1 + static_cast<std::ptrdiff_t>(k));
        std::sort(g.controls.begin(), g.controls.end());
        c.gates.push_back(std::move(g));
    }
    return c;
}

}  // namespace distillery
