#include "mtfp/ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace mtfp::ga {

namespace {

std::size_t uniform_index(std::size_t n, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

double uniform_unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

} // namespace

Chromosome Chromosome::encode(const Allocation& alloc, std::size_t groups) {
    Chromosome c(alloc.individuals(), groups);
    for (std::size_t i = 0; i < alloc.individuals(); ++i) {
        if (alloc.group_of[i] >= groups) throw InvalidInput("allocation refers to a group outside the encoding");
        c.assign(i, alloc.group_of[i]);
    }
    return c;
}

void Chromosome::assign(std::size_t i, std::size_t group) {
    auto g = gene(i);
    std::fill(g.begin(), g.end(), std::uint8_t{0});
    g[group] = 1;
}

Allocation decode(const Chromosome& chrom) {
    Allocation alloc;
    alloc.group_of.resize(chrom.genes());
    for (std::size_t i = 0; i < chrom.genes(); ++i) {
        const auto g = chrom.gene(i);
        if (std::count(g.begin(), g.end(), std::uint8_t{1}) != 1 ||
            std::any_of(g.begin(), g.end(), [](std::uint8_t b) { return b > 1; })) {
            throw InvariantError("gene " + std::to_string(i + 1) + " is not one-hot");
        }
        alloc.group_of[i] = static_cast<std::size_t>(std::find(g.begin(), g.end(), std::uint8_t{1}) - g.begin());
    }
    return alloc;
}

void check_params(const GAParams& params) {
    if (params.generations < 1) throw InvalidInput("generations must be at least 1");
    if (params.population < 2 || params.population % 2 != 0)
        throw InvalidInput("population must be even and at least 2");
    if (!(params.beta >= 0.0 && params.beta <= 1.0)) throw InvalidInput("beta must lie in [0, 1]");
    if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
    if (params.tournament_size < 1) throw InvalidInput("tournament size must be at least 1");
}

DerivedParams derive_params(const ProblemInstance& instance, double K, const ParamOverrides& overrides) {
    if (!(K > 0.0)) throw InvalidInput("K must be positive");
    const std::size_t n = instance.individuals();
    const std::size_t groups = instance.groups();
    if (n == 0 || groups == 0) throw InvalidInput("instance has no individuals or no groups");

    DerivedParams out;
    const double raw = std::round(K * static_cast<double>(n) * std::log(static_cast<double>(groups)));
    if (raw < 1.0) {
        out.params.generations = 1;
        std::ostringstream os;
        os << "generation formula gives " << raw << " for " << groups << " group(s); using 1 generation";
        out.warning = os.str();
    } else {
        out.params.generations = static_cast<std::size_t>(raw);
    }
    out.params.population = 50;
    out.params.beta = 0.2;
    out.params.alpha = 1.0 / static_cast<double>(n);
    out.params.tournament_size = 2;

    if (overrides.generations) out.params.generations = *overrides.generations;
    if (overrides.population) out.params.population = *overrides.population;
    if (overrides.beta) out.params.beta = *overrides.beta;
    if (overrides.alpha) out.params.alpha = *overrides.alpha;
    if (overrides.tournament_size) out.params.tournament_size = *overrides.tournament_size;
    if (overrides.seed) out.params.seed = *overrides.seed;
    return out;
}

Population init_population(std::size_t count, std::size_t genes, std::size_t groups, Rng& rng) {
    if (groups == 0) throw InvalidInput("at least one group is required");
    Population pop;
    pop.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        Chromosome chrom(genes, groups);
        for (std::size_t i = 0; i < genes; ++i) chrom.assign(i, uniform_index(groups, rng));
        pop.push_back(std::move(chrom));
    }
    return pop;
}

Population tournament_select(std::span<const Chromosome> pop, std::span<const double> fit, Rng& rng,
                             std::size_t tournament_size) {
    if (pop.empty()) throw InvalidInput("cannot select from an empty population");
    if (pop.size() != fit.size()) throw InvalidInput("population and fitness sizes differ");
    if (tournament_size < 1) throw InvalidInput("tournament size must be at least 1");

    Population winners;
    winners.reserve(pop.size());
    std::vector<std::size_t> tied;
    for (std::size_t slot = 0; slot < pop.size(); ++slot) {
        tied.clear();
        for (std::size_t t = 0; t < tournament_size; ++t) {
            const std::size_t pick = uniform_index(pop.size(), rng);
            if (tied.empty() || fit[pick] > fit[tied.front()]) {
                tied.assign(1, pick);
            } else if (fit[pick] == fit[tied.front()]) {
                tied.push_back(pick);
            }
        }
        const std::size_t winner = tied.size() == 1 ? tied.front() : tied[uniform_index(tied.size(), rng)];
        winners.push_back(pop[winner]);
    }
    return winners;
}

Population crossover(Population pop, double beta, Rng& rng) {
    if (pop.size() % 2 != 0) throw InvalidInput("crossover needs an even population");
    for (std::size_t p = 0; p + 1 < pop.size(); p += 2) {
        auto& a = pop[p];
        auto& b = pop[p + 1];
        if (a.genes() != b.genes() || a.groups() != b.groups()) throw InvalidInput("parents differ in shape");
        for (std::size_t i = 0; i < a.genes(); ++i) {
            if (uniform_unit(rng) < beta) {
                auto ga = a.gene(i);
                auto gb = b.gene(i);
                std::swap_ranges(ga.begin(), ga.end(), gb.begin());
            }
        }
    }
    return pop;
}

Population mutate(Population pop, double alpha, Rng& rng) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
    for (auto& chrom : pop)
        for (std::size_t i = 0; i < chrom.genes(); ++i)
            if (uniform_unit(rng) < alpha) chrom.assign(i, uniform_index(chrom.groups(), rng));
    return pop;
}

SolveResult run(const ProblemInstance& instance, const GAParams& params, Rng& rng) {
    require_valid(instance);
    check_params(params);
    const auto start = std::chrono::steady_clock::now();

    SolveResult result;
    result.history.reserve(params.generations);
    bool have_best = false;

    Population pop = init_population(params.population, instance.individuals(), instance.groups(), rng);
    std::vector<double> fit(pop.size());
    for (std::size_t gen = 0; gen < params.generations; ++gen) {
        for (std::size_t c = 0; c < pop.size(); ++c) {
            Allocation alloc = decode(pop[c]);
            fit[c] = fitness(alloc, instance);
            ++result.evaluations;
            if (!have_best || fit[c] > result.best_fitness) {
                result.best_fitness = fit[c];
                result.best_allocation = std::move(alloc);
                have_best = true;
            }
        }
        result.history.push_back(result.best_fitness);

        pop = tournament_select(pop, fit, rng, params.tournament_size);
        pop = crossover(std::move(pop), params.beta, rng);
        pop = mutate(std::move(pop), params.alpha, rng);
    }

    result.feasible = is_feasible(result.best_allocation, instance);
    result.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

SolveResult run(const ProblemInstance& instance, const GAParams& params) {
    Rng rng(params.seed);
    return run(instance, params, rng);
}

} // namespace mtfp::ga
