#include "mtfp/exhaustive.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

namespace mtfp::exact {

namespace {

BigCount binomial(std::int64_t n, std::int64_t k) {
    BigCount c = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

std::string budget_message(const BigCount& count, std::uint64_t budget) {
    std::ostringstream os;
    os << "instance has " << count << " feasible allocations, above the evaluation budget of " << budget;
    return os.str();
}

} // namespace

BigCount count_feasible(const ProblemInstance& instance) {
    require_valid(instance);
    const auto& req = instance.req;
    BigCount total = 1;
    for (std::size_t j = 0; j < req.departments(); ++j) {
        std::int64_t remaining = req.row_sum(j);
        for (std::size_t k = 0; k < req.groups(); ++k) {
            total *= binomial(remaining, req(j, k));
            remaining -= req(j, k);
        }
    }
    return total;
}

BudgetExceeded::BudgetExceeded(BigCount feasible_count, std::uint64_t budget)
    : std::runtime_error(budget_message(feasible_count, budget)), count_(std::move(feasible_count)), budget_(budget) {}

FeasibleAllocations::FeasibleAllocations(const ProblemInstance& instance) {
    require_valid(instance);
    const auto& req = instance.req;
    members_.resize(req.departments());
    labels_.resize(req.departments());
    for (std::size_t i = 0; i < instance.individuals(); ++i) members_[instance.depts.dept_of[i]].push_back(i);
    for (std::size_t j = 0; j < req.departments(); ++j) {
        // Sorted labels are the lexicographically first arrangement.
        for (std::size_t k = 0; k < req.groups(); ++k) labels_[j].insert(labels_[j].end(), static_cast<std::size_t>(req(j, k)), k);
    }
    current_.group_of.assign(instance.individuals(), 0);
    for (std::size_t j = 0; j < labels_.size(); ++j) write_department(j);
}

void FeasibleAllocations::write_department(std::size_t dept) {
    const auto& members = members_[dept];
    for (std::size_t m = 0; m < members.size(); ++m) current_.group_of[members[m]] = labels_[dept][m];
}

bool FeasibleAllocations::advance() {
    for (std::size_t j = 0; j < labels_.size(); ++j) {
        // next_permutation wraps back to sorted order when it returns false.
        const bool moved = std::next_permutation(labels_[j].begin(), labels_[j].end());
        write_department(j);
        if (moved) return true;
    }
    return false;
}

const Allocation* FeasibleAllocations::next() {
    if (done_) return nullptr;
    if (!started_) {
        started_ = true;
        return &current_;
    }
    if (!advance()) {
        done_ = true;
        return nullptr;
    }
    return &current_;
}

ExactResult solve_exact(const ProblemInstance& instance, std::optional<std::uint64_t> budget) {
    const BigCount count = count_feasible(instance);
    if (budget && count > *budget) throw BudgetExceeded(count, *budget);
    if (count > std::numeric_limits<std::uint64_t>::max())
        throw BudgetExceeded(count, std::numeric_limits<std::uint64_t>::max());

    const auto start = std::chrono::steady_clock::now();
    ExactResult result;
    FeasibleAllocations stream(instance);
    while (const Allocation* alloc = stream.next()) {
        const double cohesion = general_cohesion(*alloc, instance);
        if (result.evaluations == 0 || cohesion > result.best_cohesion) {
            result.best_cohesion = cohesion;
            result.best_allocation = *alloc;
        }
        ++result.evaluations;
    }
    result.feasible_count = result.evaluations;
    result.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace mtfp::exact
