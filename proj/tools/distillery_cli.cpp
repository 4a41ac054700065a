// distillery: command line front end.
//
// Exit codes: 0 success, 1 produced schedule failed validation or a check
// failed, 2 bad input (usage, parse, validation), 3 capacity exceeded.

#include "distillery/cost_model.hpp"
#include "distillery/errors.hpp"
#include "distillery/icm.hpp"
#include "distillery/mct.hpp"
#include "distillery/monte_carlo.hpp"
#include "distillery/reliability.hpp"
#include "distillery/render.hpp"
#include "distillery/schedule_io.hpp"
#include "distillery/schedulers.hpp"
#include "distillery/skeleton.hpp"
#include "distillery/table1.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace distillery;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << content;
}

/// Writes to `path`, or stdout for "" and "-".
void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        write_file(path, content);
    }
}

HeraldOracle parse_oracle(const std::string& spec, double p_f) {
    if (spec == "worst") return HeraldOracle::worst_case();
    if (spec.rfind("stochastic:", 0) == 0) {
        const std::string seed = spec.substr(11);
        if (seed.empty() || !std::all_of(seed.begin(), seed.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            throw ValidationError("bad oracle seed '" + seed + "'");
        }
        return HeraldOracle::stochastic(std::stoull(seed), p_f);
    }
    if (spec.rfind("scripted:", 0) == 0) return parse_scripted_oracle(read_file(spec.substr(9)));
    throw ValidationError("unknown oracle '" + spec + "' (worst, stochastic:SEED, scripted:FILE)");
}

/// Loads a circuit document, or builds a skeleton from a `.real` file.
IcmCircuit load_circuit(const std::string& path) {
    const std::string text = read_file(path);
    if (fs::path(path).extension() == ".real") {
        return expand_to_icm_skeleton(decompose_mct(parse_real(text)), {}, fs::path(path).stem().string());
    }
    return parse_circuit(text);
}

struct RunConfig {
    std::string algo = "asap";
    std::string strategy = "rus";
    std::string oracle = "worst";
    std::int64_t rows = 4;
    double p_f = 0.2;
    double p_c = 0.001;
    std::optional<std::int64_t> m;
    bool no_pool = false;
    bool global_budget = false;
};

ScheduleResult run_scheduler(const RunConfig& cfg, const IcmCircuit& c, const CostModel& cm, const HeraldOracle& oracle) {
    const ReliabilityParams rel{cfg.p_f, cfg.p_c};
    const SchedulerLimits limits{cfg.m};
    const SchedulerOptions opts{!cfg.no_pool, cfg.global_budget};
    const AlapsStrategy strategy = cfg.strategy == "fixed" ? AlapsStrategy::FixedSequence : AlapsStrategy::RepeatUntilSuccess;
    if (cfg.algo == "asap") return schedule_asap(c, cm, rel, AsapLayout::column(), limits, opts);
    if (cfg.algo == "asap-matrix") return schedule_asap(c, cm, rel, AsapLayout::matrix(cfg.rows), limits, opts);
    if (cfg.algo == "alapt") return schedule_alapt(c, cm, rel, oracle, limits, opts);
    return schedule_alaps(c, cm, rel, oracle, limits, strategy, opts);
}

ordered_json counts_json(const TraceCounts& t) {
    return {{"injected_inits", t.injected_inits}, {"batches", t.batches},   {"exhausted_batches", t.exhausted_batches},
            {"trials", t.trials},                 {"failures", t.failures}, {"pool_hits", t.pool_hits},
            {"pool_stored", t.pool_stored}};
}

ordered_json metrics_json(const Metrics& m) {
    return {{"T", m.T}, {"S", m.S}, {"BB", m.BB}, {"peak_width", m.peak_width}};
}

ordered_json config_json(const RunConfig& cfg, const HeraldOracle& oracle, const CostModel& cm, const IcmCircuit& c) {
    ordered_json j;
    j["circuit"] = c.name();
    j["algo"] = cfg.algo;
    if (cfg.algo == "alaps") j["strategy"] = cfg.strategy;
    if (cfg.algo == "asap-matrix") j["rows"] = cfg.rows;
    j["oracle"] = cfg.oracle;
    j["seed"] = oracle.mode() == OracleMode::Stochastic ? ordered_json(oracle.seed()) : ordered_json(nullptr);
    j["reliability"] = {{"p_f", cfg.p_f}, {"p_c", cfg.p_c}};
    j["m"] = cfg.m ? ordered_json(*cfg.m) : ordered_json(nullptr);
    j["pooling"] = !cfg.no_pool;
    j["global_budget"] = cfg.global_budget;
    j["costs"] = ordered_json::parse(serialize_cost_model(cm));
    return j;
}

void add_run_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--algo", cfg.algo, "Scheduler")->check(CLI::IsMember({"asap", "asap-matrix", "alapt", "alaps"}));
    sub->add_option("--strategy", cfg.strategy, "ALAPS strategy")->check(CLI::IsMember({"rus", "fixed"}));
    sub->add_option("--rows", cfg.rows, "Lanes per type for asap-matrix")->check(CLI::PositiveNumber);
    sub->add_option("--pf", cfg.p_f, "Distillation failure probability");
    sub->add_option("--pc", cfg.p_c, "Allowed computation failure probability");
    sub->add_option("--m", cfg.m, "Machine qubit limit");
    sub->add_flag("--no-pool", cfg.no_pool, "Discard surplus successful states");
    sub->add_flag("--global-budget", cfg.global_budget, "Split p_c over all guarantees");
}

int cmd_solve_extra(std::int64_t n_i, double p_f, double p_c, bool online, bool global_budget) {
    ReliabilityParams rel{p_f, p_c};
    rel.validate();
    if (n_i < 0) throw DomainError("--ni must be non-negative");
    ExtraCount e;
    if (online) {
        if (global_budget) rel = split_budget(rel, n_i);
        e = min_extra_online(rel);
    } else {
        e = min_extra_offline(n_i, rel);
    }
    ordered_json j{{"n_i", n_i}, {"p_f", p_f}, {"p_c", p_c}, {"online", online}, {"s", e.s}, {"n_t", e.n_t}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

struct ScheduleArgs {
    std::string circuit;
    std::string out;
    std::string svg;
    std::string report;
};

int cmd_schedule(const RunConfig& cfg, const ScheduleArgs& args) {
    const CostModel cm = cost_model_from_env();
    const IcmCircuit c = load_circuit(args.circuit);
    const HeraldOracle oracle = parse_oracle(cfg.oracle, cfg.p_f);

    const auto t0 = std::chrono::steady_clock::now();
    const ScheduleResult r = run_scheduler(cfg, c, cm, oracle);
    const auto t1 = std::chrono::steady_clock::now();
    const auto violations = validate_schedule(r.schedule, c, cm, cfg.m);

    if (!args.out.empty()) emit(args.out, export_schedule(r.schedule));
    if (!args.svg.empty()) write_file(args.svg, render(r.schedule, RenderFormat::Svg));

    ordered_json report;
    report["config"] = config_json(cfg, oracle, cm, c);
    report["metrics"] = metrics_json(r.metrics);
    report["counts"] = counts_json(r.counts);
    report["valid"] = violations.empty();
    auto v = ordered_json::array();
    for (const Violation& x : violations) v.push_back(x.message);
    report["violations"] = v;
    report["timing_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (!args.report.empty()) {
        emit(args.report, report.dump(2) + "\n");
    } else if (args.out.empty() || args.out == "-") {
        std::cerr << "T=" << r.metrics.T << " S=" << r.metrics.S << " BB=" << r.metrics.BB << '\n';
    } else {
        std::cout << "T=" << r.metrics.T << " S=" << r.metrics.S << " BB=" << r.metrics.BB << '\n';
    }
    for (const Violation& x : violations) std::cerr << "violation: " << x.message << '\n';
    return violations.empty() ? 0 : kExitFailed;
}

struct BenchArgs {
    std::string fixture;
    std::string corpus;
    std::string out;
    std::string report;
    double p_f = 0.2;
    double p_c = 0.001;
};

std::string bench_header() {
    std::string h = "circuit,W,A,Y";
    for (const char* a : {"asap", "alapt", "alaps"}) {
        for (const char* m : {"T", "S", "BB"}) h += std::string(",") + a + "_" + m;
    }
    return h + "\n";
}

int cmd_bench(const BenchArgs& args) {
    const CostModel cm = cost_model_from_env();
    const ReliabilityParams rel{args.p_f, args.p_c};
    rel.validate();
    if (args.corpus.empty() && args.fixture.empty()) throw ValidationError("bench needs --fixture or --corpus");

    int status = 0;
    ordered_json report;
    if (!args.fixture.empty()) {
        if (!fs::exists(args.fixture)) throw ValidationError("fixture not found: " + args.fixture);
        const Table1Report t = check_table1(load_table1(args.fixture), rel, cm);
        auto checks = ordered_json::array();
        for (const Table1CheckResult& r : t.results) {
            checks.push_back({{"circuit", r.circuit}, {"check", to_string(r.check)}, {"pass", r.pass}, {"detail", r.detail}});
        }
        report["fixture"] = {{"path", args.fixture}, {"rows", t.rows()}, {"rows_passing", t.rows_passing()}, {"checks", checks}};
        std::cerr << "fixture: " << t.rows_passing() << "/" << t.rows() << " rows pass all checks\n";
        if (!t.all_pass()) status = kExitFailed;
    }

    if (!args.corpus.empty()) {
        if (!fs::is_directory(args.corpus)) throw ValidationError("corpus directory not found: " + args.corpus);
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(args.corpus)) {
            const auto ext = e.path().extension();
            if (e.is_regular_file() && (ext == ".real" || ext == ".json")) files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        std::string csv = bench_header();
        auto rows = ordered_json::array();
        const HeraldOracle worst = HeraldOracle::worst_case();
        for (const fs::path& f : files) {
            const IcmCircuit c = load_circuit(f.string());
            const CircuitStats st = circuit_stats(c);
            std::ostringstream line;
            line << c.name() << ',' << st.width << ',' << st.n_inject_a << ',' << st.n_inject_y;
            for (const ScheduleResult& r : {schedule_asap(c, cm, rel), schedule_alapt(c, cm, rel, worst),
                                            schedule_alaps(c, cm, rel, worst)}) {
                if (!validate_schedule(r.schedule, c, cm).empty()) status = kExitFailed;
                line << ',' << r.metrics.T << ',' << r.metrics.S << ',' << r.metrics.BB;
            }
            csv += line.str() + "\n";
        }
        emit(args.out, csv);
        report["corpus"] = {{"path", args.corpus}, {"circuits", files.size()}};
    }
    if (!args.report.empty()) write_file(args.report, report.dump(2) + "\n");
    return status;
}

struct McArgs {
    std::string circuit;
    std::int64_t runs = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out;
    std::string csv;
};

int cmd_mc(const RunConfig& cfg, const McArgs& args) {
    const CostModel cm = cost_model_from_env();
    const IcmCircuit c = load_circuit(args.circuit);
    MonteCarloConfig mc;
    mc.algo = cfg.algo == "alapt" ? Algo::Alapt : cfg.algo == "alaps" ? Algo::Alaps : Algo::Asap;
    mc.strategy = cfg.strategy == "fixed" ? AlapsStrategy::FixedSequence : AlapsStrategy::RepeatUntilSuccess;
    if (cfg.algo == "asap-matrix") mc.layout = AsapLayout::matrix(cfg.rows);
    mc.runs = args.runs;
    mc.base_seed = args.seed;
    mc.threads = args.threads;
    mc.limits.m = cfg.m;
    mc.options = {!cfg.no_pool, cfg.global_budget};
    const MonteCarloStats s = monte_carlo(c, cm, {cfg.p_f, cfg.p_c}, mc);
    emit(args.out, stats_to_json(s));
    if (!args.csv.empty()) write_file(args.csv, stats_csv_header() + stats_to_csv_row(s));
    return 0;
}

struct GenArgs {
    std::size_t toffoli = 1;
    std::size_t width = 3;
    std::size_t cnots = 0;
    std::uint64_t seed = 1;
    std::string real;
    std::string out;
};

int cmd_gen(const GenArgs& args) {
    if (args.width < 3 && args.toffoli > 0) throw DomainError("--width must be at least 3 for Toffoli gates");
    if (args.width < 2 && args.cnots > 0) throw DomainError("--width must be at least 2 for CNOT gates");
    MctCircuit toffolis = random_mct_circuit(args.width, args.toffoli, 2, args.seed);
    MctCircuit cnots = random_mct_circuit(args.width, args.cnots, 1, derive_seed(args.seed, 1));
    // force exactly two controls / one control
    for (auto& g : toffolis.gates) {
        while (g.controls.size() < 2) {
            for (std::size_t w = 0; w < args.width && g.controls.size() < 2; ++w) {
                if (w != g.target && std::find(g.controls.begin(), g.controls.end(), w) == g.controls.end()) g.controls.push_back(w);
            }
        }
        std::sort(g.controls.begin(), g.controls.end());
    }
    for (auto& g : cnots.gates) {
        if (g.controls.empty()) g.controls.push_back(g.target == 0 ? 1 : 0);
    }
    MctCircuit c;
    c.width = args.width;
    for (std::size_t i = 0; i < std::max(toffolis.gates.size(), cnots.gates.size()); ++i) {
        if (i < toffolis.gates.size()) c.gates.push_back(toffolis.gates[i]);
        if (i < cnots.gates.size()) c.gates.push_back(cnots.gates[i]);
    }
    if (!args.real.empty()) write_file(args.real, serialize_real(c));
    const std::string name = "gen_t" + std::to_string(args.toffoli) + "_w" + std::to_string(args.width) + "_s" +
                             std::to_string(args.seed);
    emit(args.out, serialize_circuit(expand_to_icm_skeleton(c, {}, name)));
    return 0;
}

int cmd_render(const std::string& schedule, const std::string& format, const std::string& out) {
    const Schedule s = import_schedule(read_file(schedule));
    emit(out, render(s, format == "ascii" ? RenderFormat::Ascii : RenderFormat::Svg));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scheduling of ICM circuits with heralded magic-state distillation"};
    app.require_subcommand(1);

    std::int64_t n_i = 1;
    double se_pf = 0.2;
    double se_pc = 0.001;
    bool se_online = false;
    bool se_global = false;
    auto* solve = app.add_subcommand("solve-extra", "Minimal redundant distillations");
    solve->add_option("--ni", n_i, "Requested states")->required();
    solve->add_option("--pf", se_pf, "Distillation failure probability");
    solve->add_option("--pc", se_pc, "Allowed computation failure probability");
    solve->add_flag("--online", se_online, "Per-request redundancy of the online schedulers");
    solve->add_flag("--global-budget", se_global, "Split p_c over all n_i requests (with --online)");

    RunConfig run_cfg;
    ScheduleArgs sched_args;
    auto* sched = app.add_subcommand("schedule", "Schedule one circuit");
    sched->add_option("--circuit", sched_args.circuit, "Circuit JSON or .real file")->required();
    add_run_options(sched, run_cfg);
    sched->add_option("--oracle", run_cfg.oracle, "worst | stochastic:SEED | scripted:FILE");
    sched->add_option("--out", sched_args.out, "Schedule JSON output");
    sched->add_option("--svg", sched_args.svg, "SVG output");
    sched->add_option("--report", sched_args.report, "Run report JSON output");

    BenchArgs bench_args;
#ifdef DISTILLERY_DEFAULT_FIXTURE
    bench_args.fixture = DISTILLERY_DEFAULT_FIXTURE;
#endif
    auto* bench = app.add_subcommand("bench", "Verify the results fixture and schedule a corpus");
    bench->add_option("--fixture", bench_args.fixture, "Results table CSV (empty string skips)");
    bench->add_option("--corpus", bench_args.corpus, "Directory of .real or circuit JSON files");
    bench->add_option("--out", bench_args.out, "Corpus CSV output");
    bench->add_option("--report", bench_args.report, "Verification report JSON output");
    bench->add_option("--pf", bench_args.p_f, "Distillation failure probability");
    bench->add_option("--pc", bench_args.p_c, "Allowed computation failure probability");

    RunConfig mc_cfg;
    mc_cfg.algo = "alaps";
    McArgs mc_args;
    auto* mc = app.add_subcommand("mc", "Monte Carlo over stochastic oracles");
    mc->add_option("--circuit", mc_args.circuit, "Circuit JSON or .real file")->required();
    add_run_options(mc, mc_cfg);
    mc->add_option("--runs", mc_args.runs, "Number of runs")->check(CLI::PositiveNumber);
    mc->add_option("--seed", mc_args.seed, "Base seed");
    mc->add_option("--threads", mc_args.threads, "Worker threads (0 = all cores)");
    mc->add_option("--out", mc_args.out, "Statistics JSON output");
    mc->add_option("--csv", mc_args.csv, "Statistics CSV output");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate a random Toffoli circuit and its ICM skeleton");
    gen->add_option("--toffoli", gen_args.toffoli, "Toffoli gates");
    gen->add_option("--width", gen_args.width, "Data wires");
    gen->add_option("--cnots", gen_args.cnots, "Additional CNOT gates");
    gen->add_option("--seed", gen_args.seed, "Seed");
    gen->add_option("--real", gen_args.real, ".real output of the reversible circuit");
    gen->add_option("--out", gen_args.out, "Circuit JSON output");

    std::string render_in;
    std::string render_format = "svg";
    std::string render_out;
    auto* rend = app.add_subcommand("render", "Draw an exported schedule");
    rend->add_option("--schedule", render_in, "Schedule JSON")->required();
    rend->add_option("--format", render_format, "svg | ascii")->check(CLI::IsMember({"svg", "ascii"}));
    rend->add_option("--out", render_out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*solve) return cmd_solve_extra(n_i, se_pf, se_pc, se_online, se_global);
        if (*sched) return cmd_schedule(run_cfg, sched_args);
        if (*bench) return cmd_bench(bench_args);
        if (*mc) return cmd_mc(mc_cfg, mc_args);
        if (*gen) return cmd_gen(gen_args);
        if (*rend) return cmd_render(render_in, render_format, render_out);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
