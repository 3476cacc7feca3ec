#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mtfp/bench.hpp"
#include "mtfp/exhaustive.hpp"
#include "mtfp/ga.hpp"
#include "mtfp/instance_io.hpp"

namespace mtfp::cli {

namespace {

void print_allocation(const ProblemInstance& instance, const Allocation& alloc, std::ostream& out) {
    const std::size_t label_width = std::to_string(instance.individuals()).size() + 2;
    out << std::setw(static_cast<int>(label_width)) << "";
    for (std::size_t k = 0; k < instance.groups(); ++k) out << std::setw(5) << ("G" + std::to_string(k + 1));
    out << "\n";
    for (std::size_t i = 0; i < instance.individuals(); ++i) {
        out << std::left << std::setw(static_cast<int>(label_width)) << ("I" + std::to_string(i + 1)) << std::right;
        for (std::size_t k = 0; k < instance.groups(); ++k) out << std::setw(5) << (alloc.group_of[i] == k ? 1 : 0);
        out << "\n";
    }
}

void print_groups(const Allocation& alloc, std::size_t groups, std::ostream& out) {
    for (std::size_t k = 0; k < groups; ++k) {
        out << "G" << k + 1 << ":";
        for (std::size_t i = 0; i < alloc.group_of.size(); ++i)
            if (alloc.group_of[i] == k) out << " I" << i + 1;
        out << "\n";
    }
}

void print_header(const ProblemInstance& instance, std::ostream& out) {
    out << "instance: " << instance.name << " (n_i=" << instance.individuals() << ", n_j=" << instance.departments()
        << ", n_k=" << instance.groups() << ")\n";
}

template <typename Write>
void write_output(const std::string& path, Write&& write) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    write(file);
    file.flush();
    if (!file) throw std::runtime_error("failed to write '" + path + "'");
}

struct SolveArgs {
    std::string path;
    std::uint64_t seed = 1;
    double K = 20.0;
    std::optional<double> beta, alpha;
    std::optional<std::size_t> population, generations, tournament;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    const auto instance = io::load_instance_file(a.path);
    ga::ParamOverrides over;
    over.beta = a.beta;
    over.alpha = a.alpha;
    over.population = a.population;
    over.generations = a.generations;
    over.tournament_size = a.tournament;
    over.seed = a.seed;
    const auto derived = ga::derive_params(instance, a.K, over);
    if (derived.warning) err << "warning: " << *derived.warning << "\n";
    const auto& p = derived.params;
    const auto result = ga::run(instance, p);

    print_header(instance, out);
    out << std::fixed << std::setprecision(4);
    out << "generations: " << p.generations << "  population: " << p.population << "  beta: " << p.beta
        << "  alpha: " << p.alpha << "  seed: " << p.seed << "\n";
    out << "best fitness: " << result.best_fitness << "\n";
    out << "feasible: " << (result.feasible ? "yes" : "no") << "\n";
    out << "evaluations: " << result.evaluations << "\n";
    out << std::setprecision(3) << "elapsed: " << result.elapsed << " s\n";
    print_groups(result.best_allocation, instance.groups(), out);
    print_allocation(instance, result.best_allocation, out);
    return result.feasible ? kOk : kInfeasible;
}

int cmd_exact(const std::string& path, std::uint64_t budget, std::ostream& out, std::ostream& err) {
    const auto instance = io::load_instance_file(path);
    try {
        const auto result = exact::solve_exact(instance, budget);
        print_header(instance, out);
        out << std::fixed << std::setprecision(4) << "best cohesion: " << result.best_cohesion << "\n";
        out << "feasible allocations: " << result.feasible_count << "\n";
        out << "evaluations: " << result.evaluations << "\n";
        out << std::setprecision(6) << "elapsed: " << result.elapsed << " s\n";
        print_groups(result.best_allocation, instance.groups(), out);
        print_allocation(instance, result.best_allocation, out);
        return kOk;
    } catch (const exact::BudgetExceeded& e) {
        print_header(instance, out);
        out << "best cohesion: N/A\n";
        out << "feasible allocations: " << e.feasible_count() << "\n";
        err << "exhaustive search refused: " << e.what() << "\n";
        return kBudget;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Team formation by sociometric cohesion: GA solver, exhaustive oracle and benchmarks", "mtfp"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run the genetic algorithm on an instance");
    solve_cmd->add_option("instance", solve.path, "Instance document")->required();
    solve_cmd->add_option("--seed", solve.seed, "RNG seed")->capture_default_str();
    solve_cmd->add_option("-K,--K", solve.K, "Generation scale: round(K * n_i * ln n_g)")->capture_default_str();
    solve_cmd->add_option("--beta", solve.beta, "Per-gene crossover swap probability (default 0.2)");
    solve_cmd->add_option("--alpha", solve.alpha, "Per-gene mutation probability (default 1/n_i)");
    solve_cmd->add_option("--population", solve.population, "Population size (default 50)");
    solve_cmd->add_option("--generations", solve.generations, "Generation count (default from K)");
    solve_cmd->add_option("--tournament", solve.tournament, "Tournament size (default 2)");

    std::string exact_path;
    std::uint64_t budget = exact::kDefaultBudget;
    auto* exact_cmd = app.add_subcommand("exact", "Enumerate all feasible allocations for the optimum");
    exact_cmd->add_option("instance", exact_path, "Instance document")->required();
    exact_cmd->add_option("--budget", budget, "Maximum feasible allocations to score")->capture_default_str();

    std::string bench_dir, bench_out;
    bench::BenchOptions bench_opts;
    auto* bench_cmd = app.add_subcommand("bench", "Exhaustive and GA statistics for every instance in a directory");
    bench_cmd->add_option("directory", bench_dir, "Directory of .mtfp documents")->required();
    bench_cmd->add_option("--runs", bench_opts.runs, "GA runs per instance")->capture_default_str();
    bench_cmd->add_option("--seed", bench_opts.base_seed, "Base seed; run r uses seed + r")->capture_default_str();
    bench_cmd->add_option("--budget", bench_opts.budget, "Exhaustive evaluation budget")->capture_default_str();
    bench_cmd->add_option("-K,--K", bench_opts.trials.K, "Generation scale")->capture_default_str();
    bench_cmd->add_option("-o,--output", bench_out, "CSV output path");

    bench::SweepConfig sweep_cfg;
    std::string sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "Time the exhaustive method over random instances");
    sweep_cmd->add_option("--min-individuals", sweep_cfg.min_individuals)->capture_default_str();
    sweep_cmd->add_option("--max-individuals", sweep_cfg.max_individuals)->capture_default_str();
    sweep_cmd->add_option("--min-groups", sweep_cfg.min_groups)->capture_default_str();
    sweep_cmd->add_option("--max-groups", sweep_cfg.max_groups)->capture_default_str();
    sweep_cmd->add_option("--departments", sweep_cfg.departments)->capture_default_str();
    sweep_cmd->add_option("--runs", sweep_cfg.runs, "Instances per cell")->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_cfg.seed)->capture_default_str();
    sweep_cmd->add_option("--min-timing", sweep_cfg.min_timing_seconds, "Seconds of repeated solving per instance")
        ->capture_default_str();
    sweep_cmd->add_option("-o,--output", sweep_out, "CSV output path (default: stdout)");

    io::GeneratorConfig gen_cfg;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance document");
    gen_cmd->add_option("--individuals", gen_cfg.individuals)->capture_default_str();
    gen_cmd->add_option("--departments", gen_cfg.departments)->capture_default_str();
    gen_cmd->add_option("--groups", gen_cfg.groups)->capture_default_str();
    gen_cmd->add_option("--positive-rate", gen_cfg.positive_rate)->capture_default_str();
    gen_cmd->add_option("--negative-rate", gen_cfg.negative_rate)->capture_default_str();
    gen_cmd->add_option("--seed", gen_cfg.seed)->capture_default_str();
    gen_cmd->add_option("--name", gen_cfg.name, "Instance name (default records the configuration)");
    gen_cmd->add_option("-o,--output", gen_out, "Output path (default: stdout)");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check an instance document");
    validate_cmd->add_option("instance", validate_path, "Instance document")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << "run 'mtfp --help' for usage\n";
        return kUsage;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve, out, err);
        if (exact_cmd->parsed()) return cmd_exact(exact_path, budget, out, err);
        if (bench_cmd->parsed()) {
            const auto rows = bench::run_bench(bench_dir, bench_opts);
            bench::print_bench_table(rows, out);
            if (!bench_out.empty()) write_output(bench_out, [&](std::ostream& f) { bench::write_bench_csv(rows, f); });
            return kOk;
        }
        if (sweep_cmd->parsed()) {
            const auto records = bench::run_sweep(sweep_cfg);
            for (const auto& r : records)
                if (!r.note.empty()) err << "warning: n_i=" << r.individuals << " k=" << r.groups << ": " << r.note << "\n";
            if (sweep_out.empty()) {
                bench::write_sweep_csv(records, out);
            } else {
                write_output(sweep_out, [&](std::ostream& f) { bench::write_sweep_csv(records, f); });
            }
            return kOk;
        }
        if (gen_cmd->parsed()) {
            const auto instance = io::generate_instance(gen_cfg);
            if (gen_out.empty()) {
                io::save_instance(instance, out);
            } else {
                write_output(gen_out, [&](std::ostream& f) { io::save_instance(instance, f); });
            }
            return kOk;
        }
        if (validate_cmd->parsed()) {
            const auto instance = io::load_instance_file(validate_path);
            print_header(instance, out);
            out << "valid\n";
            return kOk;
        }
    } catch (const ValidationError& e) {
        err << e.what() << "\n";
        return kValidation;
    } catch (const io::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace mtfp::cli
