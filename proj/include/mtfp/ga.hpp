#pragma once

/// @file ga.hpp
/// @brief Genetic algorithm over one-hot group encodings.
///
/// A chromosome holds one gene per individual; each gene is a bit string of
/// length `groups` with exactly one set bit naming the individual's group.
/// Every operator here preserves that property, so the one-group-per-person
/// constraint holds structurally and only the requirement matrix is enforced
/// through the fitness penalty.
///
/// A run consumes a single `Rng` in a fixed order (init, then per generation:
/// selection, crossover, mutation), which makes results reproducible from the
/// seed alone.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtfp/core.hpp"
#include "mtfp/rng.hpp"

namespace mtfp::ga {

/// A gene that does not have exactly one set bit.
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class Chromosome {
  public:
    Chromosome() = default;
    /// All bits cleared; not a valid encoding until every gene is set.
    Chromosome(std::size_t genes, std::size_t groups) : genes_(genes), groups_(groups), bits_(genes * groups, 0) {}

    static Chromosome encode(const Allocation& alloc, std::size_t groups);

    std::size_t genes() const noexcept { return genes_; }
    std::size_t groups() const noexcept { return groups_; }

    std::span<const std::uint8_t> gene(std::size_t i) const { return {bits_.data() + i * groups_, groups_}; }
    std::span<std::uint8_t> gene(std::size_t i) { return {bits_.data() + i * groups_, groups_}; }

    /// Clears gene i and sets the bit for `group`.
    void assign(std::size_t i, std::size_t group);

    friend bool operator==(const Chromosome&, const Chromosome&) = default;

  private:
    std::size_t genes_ = 0;
    std::size_t groups_ = 0;
    std::vector<std::uint8_t> bits_;
};

using Population = std::vector<Chromosome>;

/// Position of the set bit of each gene. Throws InvariantError on a gene that
/// is not one-hot.
Allocation decode(const Chromosome& chrom);

struct GAParams {
    std::size_t generations = 1;
    std::size_t population = 50;
    double beta = 0.2;  ///< per-gene swap probability in crossover
    double alpha = 0.0; ///< per-gene mutation probability
    std::size_t tournament_size = 2;
    std::uint64_t seed = 0;

    friend bool operator==(const GAParams&, const GAParams&) = default;
};

/// Throws InvalidInput if `params` cannot drive a run.
void check_params(const GAParams& params);

/// Optional replacements applied after the formula-derived defaults.
struct ParamOverrides {
    std::optional<std::size_t> generations;
    std::optional<std::size_t> population;
    std::optional<double> beta;
    std::optional<double> alpha;
    std::optional<std::size_t> tournament_size;
    std::optional<std::uint64_t> seed;
};

struct DerivedParams {
    GAParams params;
    /// Set when the generation formula had to be clamped.
    std::optional<std::string> warning;
};

/// Default parameters scaled to the instance:
/// generations = round(K * individuals * ln(groups)) (at least 1),
/// population = 50, beta = 0.2, alpha = 1 / individuals, tournament of 2.
DerivedParams derive_params(const ProblemInstance& instance, double K, const ParamOverrides& overrides = {});

/// `count` chromosomes with each gene's set bit drawn uniformly.
Population init_population(std::size_t count, std::size_t genes, std::size_t groups, Rng& rng);

/// One winner per slot: the fittest of `tournament_size` members drawn
/// uniformly with replacement. Ties go to a uniformly chosen contender.
Population tournament_select(std::span<const Chromosome> pop, std::span<const double> fit, Rng& rng,
                             std::size_t tournament_size = 2);

/// Pairs (0,1), (2,3), ... exchange each gene independently with probability beta.
Population crossover(Population pop, double beta, Rng& rng);

/// Each gene is redrawn uniformly over all groups with probability alpha.
Population mutate(Population pop, double alpha, Rng& rng);

struct SolveResult {
    Allocation best_allocation;
    double best_fitness = 0.0;
    bool feasible = false;
    std::vector<double> history; ///< best-so-far fitness after each generation
    std::uint64_t evaluations = 0;
    double elapsed = 0.0; ///< seconds

    /// Equality ignores `elapsed`.
    friend bool operator==(const SolveResult& a, const SolveResult& b) {
        return a.best_allocation == b.best_allocation && a.best_fitness == b.best_fitness &&
               a.feasible == b.feasible && a.history == b.history && a.evaluations == b.evaluations;
    }
};

/// Runs the generational loop (evaluate, select, cross, mutate) and returns
/// the best individual seen in any evaluated generation.
SolveResult run(const ProblemInstance& instance, const GAParams& params, Rng& rng);

/// Same, seeding a fresh generator from `params.seed`.
SolveResult run(const ProblemInstance& instance, const GAParams& params);

} // namespace mtfp::ga
