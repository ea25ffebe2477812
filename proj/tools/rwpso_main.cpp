// Command-line front door: solve one instance, run a benchmark suite,
// validate a solution dump, or inspect an instance and a decoded position.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage/config error,
// 3 validation failure. No environment variables are consulted.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwpso/bench.hpp"
#include "rwpso/codec.hpp"
#include "rwpso/engine.hpp"
#include "rwpso/solomon_io.hpp"
#include "rwpso/vrptw.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

bool require_file(const std::string& path, const char* what) {
    if (std::filesystem::exists(path)) return true;
    std::cerr << "error: cannot open " << what << ": " << path << "\n";
    return false;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return true;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write to " << out_path << "\n";
        return false;
    }
    out << text;
    return true;
}

// Parse + optional truncation + semantic build, with usage-class errors.
// Returns nullopt after printing a diagnostic.
std::optional<rwpso::Instance> load_instance(const std::string& path, int customers) {
    if (!require_file(path, "instance file")) return std::nullopt;
    try {
        rwpso::RawInstanceFile raw = rwpso::parse_instance_file(path);
        if (customers > 0) raw = rwpso::truncate(raw, customers);
        return rwpso::build_instance(raw);
    } catch (const std::exception& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return std::nullopt;
    }
}

struct SolveOptions {
    std::string instance_path;
    int customers = 0;
    std::uint64_t seed = 0;
    std::string mode = "rwpso";
    int iters = 1000;
    int particles = 20;
    int archive = 5;
    std::string out_path;
};

int run_solve(const SolveOptions& opt) {
    auto inst = load_instance(opt.instance_path, opt.customers);
    if (!inst) return kExitUsage;

    rwpso::PsoConfig cfg;
    cfg.seed = opt.seed;
    cfg.max_iterations = opt.iters;
    cfg.n_particles = opt.particles;
    cfg.archive_size = opt.archive;
    const rwpso::Mode mode =
        opt.mode == "baseline" ? rwpso::Mode::baseline : rwpso::Mode::rwpso;

    try {
        const rwpso::RunResult result = rwpso::run(*inst, cfg, mode);
        nlohmann::json doc = nlohmann::json::parse(rwpso::run_result_json(result));
        nlohmann::json sol =
            nlohmann::json::parse(rwpso::write_solution(result.best_plan));
        doc["routes"] = std::move(sol["routes"]);
        if (!emit(doc.dump(2) + "\n", opt.out_path)) return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

struct BenchOptions {
    std::string suite_path;
    std::string report_path;
    std::string format = "csv";
    int jobs = 0;
    bool jobs_given = false;
};

int run_bench(const BenchOptions& opt) {
    if (!require_file(opt.suite_path, "suite config")) return kExitUsage;

    rwpso::SuiteSpec spec;
    try {
        const std::string base_dir =
            std::filesystem::path(opt.suite_path).parent_path().string();
        spec = rwpso::parse_suite_config(slurp(opt.suite_path), base_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << opt.suite_path << ": " << e.what() << "\n";
        return kExitUsage;
    }
    if (opt.jobs_given) spec.jobs = opt.jobs;

    rwpso::SuiteReport report;
    try {
        report = rwpso::run_suite(
            spec, [](const std::string& line) { std::cerr << line << "\n"; });
    } catch (const std::exception& e) {
        // run_suite throws only while loading instance files, before any cell
        // executes, so this is a config-class failure.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const rwpso::ReportFormat format = opt.format == "markdown"
                                           ? rwpso::ReportFormat::markdown
                                           : rwpso::ReportFormat::csv;
    if (!emit(rwpso::write_report(report, format), opt.report_path))
        return kExitRuntime;

    for (const rwpso::SuiteRow& row : report.rows)
        if (row.seeds_run > 0) return kExitOk;
    std::cerr << "error: every benchmark cell failed\n";
    return kExitRuntime;
}

struct ValidateOptions {
    std::string instance_path;
    int customers = 0;
    std::string solution_path;
};

int run_validate(const ValidateOptions& opt) {
    auto inst = load_instance(opt.instance_path, opt.customers);
    if (!inst) return kExitUsage;
    if (!require_file(opt.solution_path, "solution file")) return kExitUsage;

    std::vector<std::vector<int>> routes;
    try {
        routes = rwpso::read_solution(slurp(opt.solution_path));
    } catch (const std::exception& e) {
        std::cerr << "error: " << opt.solution_path << ": " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const auto outcome = rwpso::evaluate(*inst, routes);
        if (const auto* plan = std::get_if<rwpso::RoutePlan>(&outcome)) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "feasible: nv=%d td=%.2f\n", plan->nv,
                          plan->td);
            std::cout << buf;
            return kExitOk;
        }
        const auto& reason = std::get<rwpso::InfeasibilityReason>(outcome);
        std::cout << "infeasible: " << rwpso::violation_name(reason.kind)
                  << " at stop " << reason.stop << "\n";
        return kExitValidation;
    } catch (const rwpso::UnknownCustomerId& e) {
        std::cout << "infeasible: coverage (" << e.what() << ")\n";
        return kExitValidation;
    }
}

struct InspectOptions {
    std::string instance_path;
    int customers = 0;
    std::uint64_t seed = 0;
    std::string out_path;
};

int run_inspect(const InspectOptions& opt) {
    auto inst = load_instance(opt.instance_path, opt.customers);
    if (!inst) return kExitUsage;

    const rwpso::EncodingShape shape =
        rwpso::make_shape(*inst, inst->declared_fleet(), rwpso::PsoConfig{}.k_vmax);
    rwpso::Rng rng(opt.seed);
    std::vector<double> position(static_cast<std::size_t>(shape.dims()));
    for (int d = 0; d < shape.dims(); ++d)
        position[static_cast<std::size_t>(d)] =
            rng.uniform(shape.lower[static_cast<std::size_t>(d)],
                        shape.upper[static_cast<std::size_t>(d)]);
    const rwpso::DecodeResult decoded =
        rwpso::decode(*inst, position, shape, rwpso::CostWeights{});

    double total_demand = 0.0;
    for (const rwpso::Customer& c : inst->customers()) total_demand += c.demand;

    std::ostringstream os;
    os << "instance: " << inst->name() << "\n"
       << "customers: " << inst->customer_count() << "\n"
       << "capacity: " << inst->capacity() << "\n"
       << "fleet: " << inst->declared_fleet() << "\n"
       << "horizon: [" << inst->depot_start() << ", " << inst->depot_end() << "]\n"
       << "total demand: " << total_demand << "\n"
       << "decoded sample (seed " << opt.seed << "): nv=" << decoded.plan.nv
       << " td=" << decoded.plan.td << " penalty=" << decoded.plan.penalty << "\n"
       << rwpso::write_solution(decoded.plan);
    if (!emit(os.str(), opt.out_path)) return kExitRuntime;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roulette-wheel PSO solver for vehicle routing with time windows"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand("solve", "Run the solver on one instance");
    solve->add_option("--instance", solve_opt.instance_path, "Solomon instance file")
        ->required();
    solve->add_option("--customers", solve_opt.customers,
                      "Use only the first N customers (default: all)");
    solve->add_option("--seed", solve_opt.seed, "RNG seed (default 0)");
    solve->add_option("--mode", solve_opt.mode, "rwpso or baseline")
        ->check(CLI::IsMember({"rwpso", "baseline"}));
    solve->add_option("--iters", solve_opt.iters, "Iteration count (default 1000)");
    solve->add_option("--particles", solve_opt.particles, "Swarm size (default 20)");
    solve->add_option("--archive", solve_opt.archive,
                      "Top-L archive size (default 5; 1 degenerates to plain gbest)");
    solve->add_option("--out", solve_opt.out_path,
                      "Write the result record here instead of standard output");

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "Run a benchmark suite");
    bench->add_option("--suite", bench_opt.suite_path, "Suite config (key = value lines)")
        ->required();
    bench->add_option("--report", bench_opt.report_path,
                      "Report path (default: standard output)");
    bench->add_option("--format", bench_opt.format, "csv or markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    CLI::Option* jobs_flag =
        bench->add_option("--jobs", bench_opt.jobs, "Worker count (default: cores)");

    ValidateOptions validate_opt;
    CLI::App* validate =
        app.add_subcommand("validate", "Check a solution dump against an instance");
    validate->add_option("--instance", validate_opt.instance_path, "Solomon instance file")
        ->required();
    validate->add_option("--customers", validate_opt.customers,
                         "Use only the first N customers (default: all)");
    validate->add_option("--solution", validate_opt.solution_path, "Solution dump (JSON)")
        ->required();

    InspectOptions inspect_opt;
    CLI::App* inspect =
        app.add_subcommand("inspect", "Summarize an instance and decode one position");
    inspect->add_option("--instance", inspect_opt.instance_path, "Solomon instance file")
        ->required();
    inspect->add_option("--customers", inspect_opt.customers,
                        "Use only the first N customers (default: all)");
    inspect->add_option("--seed", inspect_opt.seed, "Seed for the sampled position");
    inspect->add_option("--out", inspect_opt.out_path,
                        "Write here instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    bench_opt.jobs_given = jobs_flag->count() > 0;

    if (solve->parsed()) return run_solve(solve_opt);
    if (bench->parsed()) return run_bench(bench_opt);
    if (validate->parsed()) return run_validate(validate_opt);
    if (inspect->parsed()) return run_inspect(inspect_opt);
    return kExitUsage;
}
