#include "mtfp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "mtfp/instance_io.hpp"

namespace mtfp::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const std::vector<std::string> kBenchHeader = {
    "dataset",   "individuals", "groups",  "departments", "exact_best", "exact_time_s",  "exact_func_eval", "ga_max",
    "ga_mean",   "ga_std",      "ga_min",  "ga_time_s",   "ga_func_eval", "ga_feasible_runs", "note"};

const std::vector<std::string> kSweepHeader = {"n_i", "k", "n_j", "runs", "runs_kept", "mean_time_s", "mean_func_eval", "note"};

std::string real(double v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

std::string quoted(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << quoted(fields[i]);
    out << "\n";
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields(1);
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

std::vector<std::vector<std::string>> read_rows(std::istream& in, const std::vector<std::string>& header) {
    std::string line;
    if (!std::getline(in, line) || split_row(line) != header) throw std::runtime_error("unexpected CSV header");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_row(line);
        if (fields.size() != header.size()) throw std::runtime_error("CSV row has the wrong number of fields");
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::optional<double> opt_real(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}

std::size_t count(const std::string& s) { return static_cast<std::size_t>(std::stoull(s)); }

} // namespace

TrialStats summarize(std::span<const double> fitness, std::span<const double> seconds, std::uint64_t evaluations,
                     std::size_t feasible_runs) {
    if (fitness.size() < 2) throw InvalidInput("at least two runs are needed for statistics");
    if (seconds.size() != fitness.size()) throw InvalidInput("one timing per run is required");
    TrialStats s;
    s.runs = fitness.size();
    s.fitness.assign(fitness.begin(), fitness.end());
    const auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
    s.min = *lo;
    s.max = *hi;
    const double n = static_cast<double>(s.runs);
    s.mean = std::accumulate(fitness.begin(), fitness.end(), 0.0) / n;
    double ss = 0.0;
    for (double f : fitness) ss += (f - s.mean) * (f - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
    s.mean_time = std::accumulate(seconds.begin(), seconds.end(), 0.0) / n;
    s.evaluations = evaluations;
    s.feasible_runs = feasible_runs;
    return s;
}

TrialStats run_trials(const ProblemInstance& instance, std::size_t runs, std::uint64_t base_seed,
                      const TrialOptions& options) {
    if (runs < 2) throw InvalidInput("at least two runs are needed for statistics");
    auto derived = ga::derive_params(instance, options.K, options.overrides);
    std::vector<double> fitness, seconds;
    std::uint64_t evaluations = 0;
    std::size_t feasible = 0;
    for (std::size_t r = 1; r <= runs; ++r) {
        derived.params.seed = base_seed + r;
        const auto result = ga::run(instance, derived.params);
        fitness.push_back(result.best_fitness);
        seconds.push_back(result.elapsed);
        evaluations = result.evaluations;
        if (result.feasible) ++feasible;
    }
    return summarize(fitness, seconds, evaluations, feasible);
}

std::vector<BenchRow> run_bench(const std::filesystem::path& dir, const BenchOptions& options) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == io::kFileExtension) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<BenchRow> rows;
    for (const auto& file : files) {
        BenchRow row;
        row.dataset = file.stem().string();
        try {
            const auto instance = io::load_instance_file(file.string());
            row.individuals = instance.individuals();
            row.groups = instance.groups();
            row.departments = instance.departments();
            try {
                const auto exact = exact::solve_exact(instance, options.budget);
                row.exact = ExactSummary{exact.best_cohesion, exact.elapsed, exact.evaluations};
            } catch (const exact::BudgetExceeded& e) {
                row.note = "exhaustive N/A: " + std::string(e.what());
            }
            row.ga = run_trials(instance, options.runs, options.base_seed, options.trials);
        } catch (const std::exception& e) {
            row.note = row.note.empty() ? e.what() : row.note + "; " + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out) {
    write_row(out, kBenchHeader);
    for (const auto& r : rows) {
        std::vector<std::string> f = {r.dataset, std::to_string(r.individuals), std::to_string(r.groups),
                                      std::to_string(r.departments)};
        if (r.exact) {
            f.insert(f.end(), {real(r.exact->best), real(r.exact->time), std::to_string(r.exact->evaluations)});
        } else {
            f.insert(f.end(), 3, "");
        }
        if (r.ga) {
            f.insert(f.end(), {real(r.ga->max), real(r.ga->mean), real(r.ga->std), real(r.ga->min),
                               real(r.ga->mean_time), std::to_string(r.ga->evaluations),
                               std::to_string(r.ga->feasible_runs)});
        } else {
            f.insert(f.end(), 7, "");
        }
        f.push_back(r.note);
        write_row(out, f);
    }
}

std::vector<BenchRow> read_bench_csv(std::istream& in) {
    std::vector<BenchRow> rows;
    for (const auto& f : read_rows(in, kBenchHeader)) {
        BenchRow r;
        r.dataset = f[0];
        r.individuals = count(f[1]);
        r.groups = count(f[2]);
        r.departments = count(f[3]);
        if (!f[4].empty()) r.exact = ExactSummary{std::stod(f[4]), std::stod(f[5]), std::stoull(f[6])};
        if (!f[7].empty()) {
            TrialStats s;
            s.max = std::stod(f[7]);
            s.mean = std::stod(f[8]);
            s.std = std::stod(f[9]);
            s.min = std::stod(f[10]);
            s.mean_time = std::stod(f[11]);
            s.evaluations = std::stoull(f[12]);
            s.feasible_runs = count(f[13]);
            r.ga = s;
        }
        r.note = f[14];
        rows.push_back(std::move(r));
    }
    return rows;
}

void print_bench_table(std::span<const BenchRow> rows, std::ostream& out) {
    const auto flags = out.flags();
    out << std::left << std::setw(12) << "dataset" << std::right << std::setw(5) << "n_i" << std::setw(4) << "n_g"
        << std::setw(4) << "n_j" << " | " << std::setw(9) << "best" << std::setw(10) << "time(s)" << std::setw(10)
        << "evals" << " | " << std::setw(8) << "max" << std::setw(8) << "mean" << std::setw(8) << "std"
        << std::setw(8) << "min" << std::setw(10) << "time(s)" << std::setw(9) << "evals" << "\n";
    out << std::fixed;
    for (const auto& r : rows) {
        out << std::left << std::setw(12) << r.dataset << std::right << std::setw(5) << r.individuals << std::setw(4)
            << r.groups << std::setw(4) << r.departments << " | ";
        if (r.exact) {
            out << std::setprecision(4) << std::setw(9) << r.exact->best << std::setprecision(5) << std::setw(10)
                << r.exact->time << std::setw(10) << r.exact->evaluations;
        } else {
            out << std::setw(9) << "N/A" << std::setw(10) << "N/A" << std::setw(10) << "N/A";
        }
        out << " | ";
        if (r.ga) {
            out << std::setprecision(4) << std::setw(8) << r.ga->max << std::setw(8) << r.ga->mean << std::setw(8)
                << r.ga->std << std::setw(8) << r.ga->min << std::setprecision(3) << std::setw(10) << r.ga->mean_time
                << std::setw(9) << r.ga->evaluations;
        } else {
            out << std::setw(8) << "-";
        }
        out << "\n";
        if (!r.note.empty()) out << "    note: " << r.note << "\n";
    }
    out.flags(flags);
}

double trimmed_mean(std::vector<double> values) {
    if (values.size() < 3) throw InvalidInput("trimmed mean needs at least three values");
    std::sort(values.begin(), values.end());
    return std::accumulate(values.begin() + 1, values.end() - 1, 0.0) / static_cast<double>(values.size() - 2);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    if (config.runs < 3) throw InvalidInput("a sweep cell needs at least three runs");
    if (config.min_individuals > config.max_individuals || config.min_groups > config.max_groups)
        throw InvalidInput("sweep ranges are empty");

    std::vector<SweepRecord> records;
    for (std::size_t k = config.min_groups; k <= config.max_groups; ++k) {
        for (std::size_t n = config.min_individuals; n <= config.max_individuals; ++n) {
            SweepRecord rec;
            rec.individuals = n;
            rec.groups = k;
            rec.departments = config.departments;
            rec.runs = config.runs;

            io::GeneratorConfig gen;
            gen.individuals = n;
            gen.groups = k;
            gen.departments = config.departments;
            gen.positive_rate = config.positive_rate;
            gen.negative_rate = config.negative_rate;
            try {
                io::check_config(gen);
            } catch (const InvalidInput& e) {
                rec.note = std::string("skipped: ") + e.what();
                records.push_back(std::move(rec));
                continue;
            }

            std::vector<double> times;
            double evaluations = 0.0;
            for (std::size_t run = 0; run < config.runs; ++run) {
                std::seed_seq seq{config.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                                  static_cast<std::uint64_t>(run)};
                Rng rng(seq);
                const auto instance = io::generate_instance(gen, rng);

                std::size_t reps = 0;
                std::uint64_t evals = 0;
                const auto start = Clock::now();
                do {
                    evals = exact::solve_exact(instance, std::nullopt).evaluations;
                    ++reps;
                } while (seconds_since(start) < config.min_timing_seconds);
                times.push_back(seconds_since(start) / static_cast<double>(reps));
                evaluations += static_cast<double>(evals);
            }
            rec.runs_kept = config.runs - 2;
            rec.mean_time = trimmed_mean(times);
            rec.mean_evaluations = evaluations / static_cast<double>(config.runs);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

void write_sweep_csv(std::span<const SweepRecord> records, std::ostream& out) {
    write_row(out, kSweepHeader);
    for (const auto& r : records) {
        write_row(out, {std::to_string(r.individuals), std::to_string(r.groups), std::to_string(r.departments),
                        std::to_string(r.runs), std::to_string(r.runs_kept), r.mean_time ? real(*r.mean_time) : "",
                        r.mean_evaluations ? real(*r.mean_evaluations) : "", r.note});
    }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
    std::vector<SweepRecord> records;
    for (const auto& f : read_rows(in, kSweepHeader)) {
        SweepRecord r;
        r.individuals = count(f[0]);
        r.groups = count(f[1]);
        r.departments = count(f[2]);
        r.runs = count(f[3]);
        r.runs_kept = count(f[4]);
        r.mean_time = opt_real(f[5]);
        r.mean_evaluations = opt_real(f[6]);
        r.note = f[7];
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace mtfp::bench
