#pragma once

/// @file bench.hpp
/// @brief Repeated GA trials, the dataset benchmark table and the exhaustive timing sweep.
///
/// CSV schemas (header row included, comma separated, `.` decimal point,
/// reals written with enough digits to re-parse exactly, empty cell = N/A):
///
/// bench: dataset,individuals,groups,departments,exact_best,exact_time_s,
///        exact_func_eval,ga_max,ga_mean,ga_std,ga_min,ga_time_s,ga_func_eval,
///        ga_feasible_runs,note
///
/// sweep: n_i,k,n_j,runs,runs_kept,mean_time_s,mean_func_eval,note

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtfp/core.hpp"
#include "mtfp/exhaustive.hpp"
#include "mtfp/ga.hpp"

namespace mtfp::bench {

struct TrialStats {
    std::size_t runs = 0;
    double max = 0.0;
    double mean = 0.0;
    double std = 0.0; ///< sample standard deviation (divisor runs - 1)
    double min = 0.0;
    double mean_time = 0.0;         ///< seconds per run
    std::uint64_t evaluations = 0;  ///< per run
    std::size_t feasible_runs = 0;
    std::vector<double> fitness;    ///< best fitness of each run, in seed order
};

/// Aggregates per-run results. Throws InvalidInput with fewer than two runs.
TrialStats summarize(std::span<const double> fitness, std::span<const double> seconds, std::uint64_t evaluations,
                     std::size_t feasible_runs);

struct TrialOptions {
    double K = 20.0;
    ga::ParamOverrides overrides; ///< `seed` is ignored; the trial schedule sets it
};

/// Runs the GA `runs` times with seeds base_seed+1 .. base_seed+runs.
TrialStats run_trials(const ProblemInstance& instance, std::size_t runs, std::uint64_t base_seed,
                      const TrialOptions& options = {});

struct ExactSummary {
    double best = 0.0;
    double time = 0.0; ///< seconds
    std::uint64_t evaluations = 0;
};

struct BenchRow {
    std::string dataset;
    std::size_t individuals = 0;
    std::size_t groups = 0;
    std::size_t departments = 0;
    std::optional<ExactSummary> exact; ///< empty when over budget or failed
    std::optional<TrialStats> ga;
    std::string note;                  ///< budget refusal or error text
};

struct BenchOptions {
    std::size_t runs = 20;
    std::uint64_t base_seed = 0;
    std::uint64_t budget = exact::kDefaultBudget;
    TrialOptions trials;
};

/// One row per `.mtfp` file in `dir`, in file-name order. Failures are
/// recorded in the row's note and the batch continues.
std::vector<BenchRow> run_bench(const std::filesystem::path& dir, const BenchOptions& options);

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out);
std::vector<BenchRow> read_bench_csv(std::istream& in);
/// Human-readable table, fitness to 4 decimals.
void print_bench_table(std::span<const BenchRow> rows, std::ostream& out);

struct SweepConfig {
    std::size_t min_individuals = 5;
    std::size_t max_individuals = 12;
    std::size_t min_groups = 2;
    std::size_t max_groups = 5;
    std::size_t departments = 3;
    std::size_t runs = 20; ///< instances per cell; at least 3
    std::uint64_t seed = 1;
    double positive_rate = 0.4;
    double negative_rate = 0.1;
    /// Each instance is re-solved until this much wall time has accumulated,
    /// and the per-solve average is recorded.
    double min_timing_seconds = 0.002;
};

struct SweepRecord {
    std::size_t individuals = 0;
    std::size_t groups = 0;
    std::size_t departments = 0;
    std::size_t runs = 0;
    std::size_t runs_kept = 0;
    std::optional<double> mean_time;        ///< seconds; empty when skipped
    std::optional<double> mean_evaluations; ///< feasible allocations per instance, mean over all runs
    std::string note;
};

/// Mean after discarding one largest and one smallest value. Needs >= 3 values.
double trimmed_mean(std::vector<double> values);

/// Times solve_exact over random instances for every (individuals, groups)
/// cell. Cells the generator cannot satisfy become skipped records.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

void write_sweep_csv(std::span<const SweepRecord> records, std::ostream& out);
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

} // namespace mtfp::bench
