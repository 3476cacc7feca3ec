#pragma once

/// @file exhaustive.hpp
/// @brief Exact optimum by enumerating every allocation that meets the requirement matrix.
///
/// Feasible allocations factor by department: each department's members are
/// split among the groups with the sizes of its requirement row, and any
/// combination of per-department splits is feasible. The enumerator walks
/// each department's distinct group-label arrangements in lexicographic order
/// and combines them like an odometer (department 1 varies fastest), so every
/// feasible allocation is produced exactly once and nothing infeasible is
/// scored.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mtfp/core.hpp"

namespace mtfp::exact {

using BigCount = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Product over departments of multinomial(row sum; row entries).
BigCount count_feasible(const ProblemInstance& instance);

/// Raised by solve_exact when the feasible set exceeds the evaluation budget.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(BigCount feasible_count, std::uint64_t budget);

    const BigCount& feasible_count() const noexcept { return count_; }
    std::uint64_t budget() const noexcept { return budget_; }

  private:
    BigCount count_;
    std::uint64_t budget_;
};

/// Streams feasible allocations in a fixed order.
///
///     FeasibleAllocations stream(instance);
///     while (const Allocation* a = stream.next()) use(*a);
class FeasibleAllocations {
  public:
    /// Throws InvalidInput if the instance does not validate.
    explicit FeasibleAllocations(const ProblemInstance& instance);

    /// The next allocation, or nullptr once the stream is exhausted. The
    /// pointer stays valid until the following call.
    const Allocation* next();

  private:
    bool advance();
    void write_department(std::size_t dept);

    std::vector<std::vector<std::size_t>> members_; // individuals per department
    std::vector<std::vector<std::size_t>> labels_;  // current group arrangement per department
    Allocation current_;
    bool started_ = false;
    bool done_ = false;
};

struct ExactResult {
    Allocation best_allocation;
    double best_cohesion = 0.0;
    std::uint64_t feasible_count = 0;
    std::uint64_t evaluations = 0;
    double elapsed = 0.0; ///< seconds
};

/// Scores every feasible allocation and keeps the first maximum. Throws
/// BudgetExceeded when count_feasible exceeds `budget`.
ExactResult solve_exact(const ProblemInstance& instance, std::optional<std::uint64_t> budget = kDefaultBudget);

} // namespace mtfp::exact
