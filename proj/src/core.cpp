#include "mtfp/core.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace mtfp {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw InvalidInput(what);
}

void check_shapes(const Allocation& alloc, const ProblemInstance& instance) {
    require(alloc.individuals() == instance.individuals(), "allocation size differs from the number of individuals");
    require(instance.depts.dept_of.size() == instance.individuals(),
            "department assignment size differs from the number of individuals");
}

std::vector<std::vector<std::size_t>> members_by_group(const Allocation& alloc, std::size_t groups) {
    std::vector<std::vector<std::size_t>> members(groups);
    for (std::size_t i = 0; i < alloc.group_of.size(); ++i) members[alloc.group_of[i]].push_back(i);
    return members;
}

// Sum of x_ij over ordered pairs of distinct members.
long long pair_sum(std::span<const std::size_t> members, const SociometricMatrix& socio) {
    long long sum = 0;
    for (std::size_t a : members) {
        const auto row = socio.row(a);
        for (std::size_t b : members)
            if (a != b) sum += row[b];
    }
    return sum;
}

std::string join_issues(const std::string& subject, const std::vector<std::string>& issues) {
    std::ostringstream os;
    os << subject << ":";
    for (const auto& issue : issues) os << "\n  " << issue;
    return os.str();
}

} // namespace

ValidationError::ValidationError(const std::string& subject, std::vector<std::string> issues)
    : InvalidInput(join_issues(subject, issues)), issues_(std::move(issues)) {}

void require_valid(const ProblemInstance& instance) {
    auto issues = validate_instance(instance);
    if (!issues.empty()) throw ValidationError("invalid instance '" + instance.name + "'", std::move(issues));
}

SociometricMatrix::SociometricMatrix(std::size_t n, std::vector<int> row_major) : n_(n), values_(std::move(row_major)) {
    require(values_.size() == n * n, "sociometric data does not have n*n entries");
}

RequirementMatrix::RequirementMatrix(std::size_t departments, std::size_t groups, std::vector<std::int64_t> row_major)
    : departments_(departments), groups_(groups), values_(std::move(row_major)) {
    require(values_.size() == departments * groups, "requirement data does not have departments*groups entries");
}

std::int64_t RequirementMatrix::row_sum(std::size_t dept) const {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < groups_; ++k) s += (*this)(dept, k);
    return s;
}

std::int64_t RequirementMatrix::column_sum(std::size_t group) const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < departments_; ++j) s += (*this)(j, group);
    return s;
}

std::int64_t RequirementMatrix::total() const { return std::accumulate(values_.begin(), values_.end(), std::int64_t{0}); }

void check_allocation(const Allocation& alloc, const ProblemInstance& instance) {
    check_shapes(alloc, instance);
    for (std::size_t g : alloc.group_of) require(g < instance.groups(), "allocation refers to a group outside the requirement matrix");
}

double group_cohesion(const Allocation& alloc, const SociometricMatrix& socio, std::size_t group) {
    require(alloc.individuals() == socio.size(), "allocation size differs from the sociometric matrix");
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < alloc.group_of.size(); ++i)
        if (alloc.group_of[i] == group) members.push_back(i);
    if (members.empty()) return 0.0;
    return static_cast<double>(pair_sum(members, socio)) / static_cast<double>(members.size());
}

double general_cohesion(const Allocation& alloc, const ProblemInstance& instance) {
    check_allocation(alloc, instance);
    const auto n = static_cast<double>(instance.individuals());
    double total = 0.0;
    for (const auto& members : members_by_group(alloc, instance.groups())) {
        if (members.empty()) continue;
        const double size = static_cast<double>(members.size());
        const double cohesion = static_cast<double>(pair_sum(members, instance.socio)) / size;
        total += (size / n) * cohesion;
    }
    return total;
}

RequirementMatrix derived_requirements(const Allocation& alloc, const ProblemInstance& instance) {
    check_allocation(alloc, instance);
    RequirementMatrix got(instance.departments(), instance.groups());
    for (std::size_t i = 0; i < alloc.group_of.size(); ++i) {
        const std::size_t dept = instance.depts.dept_of[i];
        require(dept < instance.departments(), "department index outside the requirement matrix");
        ++got(dept, alloc.group_of[i]);
    }
    return got;
}

std::int64_t penalty(const RequirementMatrix& got, const RequirementMatrix& want) {
    require(got.departments() == want.departments() && got.groups() == want.groups(),
            "requirement matrices differ in shape");
    std::int64_t p = 0;
    for (std::size_t j = 0; j < got.departments(); ++j)
        for (std::size_t k = 0; k < got.groups(); ++k) p += std::llabs(got(j, k) - want(j, k));
    return p;
}

double fitness(const Allocation& alloc, const ProblemInstance& instance) {
    const double cohesion = general_cohesion(alloc, instance);
    return cohesion - static_cast<double>(penalty(derived_requirements(alloc, instance), instance.req));
}

bool is_feasible(const Allocation& alloc, const ProblemInstance& instance) {
    return derived_requirements(alloc, instance) == instance.req;
}

std::vector<std::string> validate_instance(const ProblemInstance& instance) {
    std::vector<std::string> issues;
    auto report = [&issues](auto&&... parts) {
        std::ostringstream os;
        (os << ... << parts);
        issues.push_back(os.str());
    };

    const std::size_t n = instance.individuals();
    const auto& socio = instance.socio;
    const auto& req = instance.req;
    if (n == 0) report("sociometric: matrix is empty, at least one individual is required");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int x = socio(i, j);
            if (i == j && x != 0)
                report("sociometric[", i + 1, "][", j + 1, "] = ", x, ": diagonal entries must be 0");
            else if (x < -1 || x > 1)
                report("sociometric[", i + 1, "][", j + 1, "] = ", x, ": entries must be -1, 0 or 1");
        }
    }

    if (req.departments() == 0) report("requirements: at least one department is required");
    if (req.groups() == 0) report("requirements: at least one group is required");
    for (std::size_t j = 0; j < req.departments(); ++j)
        for (std::size_t k = 0; k < req.groups(); ++k)
            if (req(j, k) < 0) report("requirements[", j + 1, "][", k + 1, "] = ", req(j, k), ": headcounts must be non-negative");
    if (req.total() != static_cast<std::int64_t>(n))
        report("requirements: total headcount ", req.total(), " differs from ", n, " individuals");

    const auto& dept_of = instance.depts.dept_of;
    if (dept_of.size() != n) {
        report("departments: ", dept_of.size(), " entries given for ", n, " individuals");
        return issues;
    }
    std::vector<std::int64_t> sizes(req.departments(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (dept_of[i] >= req.departments())
            report("departments[", i + 1, "] = ", dept_of[i] + 1, ": outside 1..", req.departments());
        else
            ++sizes[dept_of[i]];
    }
    for (std::size_t j = 0; j < req.departments(); ++j)
        if (sizes[j] != req.row_sum(j))
            report("departments: department ", j + 1, " has ", sizes[j], " members but its requirement row sums to ",
                   req.row_sum(j));
    return issues;
}

} // namespace mtfp
