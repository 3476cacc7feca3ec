#pragma once

/// @file core.hpp
/// @brief Data model and objective arithmetic for the Multiple Team Formation Problem.
///
/// An instance pairs a sociometric matrix (who chose or rejected whom) with a
/// requirement matrix (how many people each group needs from each department).
/// A candidate solution assigns every individual to exactly one group; its
/// quality is the size-weighted mean of per-group cohesion, and violations of
/// the requirement matrix are charged as an integer penalty.
///
/// Indices are 0-based throughout the library. File formats and printed
/// tables use 1-based labels.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtfp {

/// Raised when arguments disagree in shape or violate a documented precondition.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An instance that fails validation; carries every violation found.
class ValidationError : public InvalidInput {
  public:
    ValidationError(const std::string& subject, std::vector<std::string> issues);
    const std::vector<std::string>& issues() const noexcept { return issues_; }

  private:
    std::vector<std::string> issues_;
};

/// Square matrix of sociometric answers in {-1, 0, +1}.
///
/// Entries are stored as given; `validate_instance` reports out-of-range
/// values and a non-zero diagonal. The matrix is not assumed symmetric.
class SociometricMatrix {
  public:
    SociometricMatrix() = default;
    explicit SociometricMatrix(std::size_t n) : n_(n), values_(n * n, 0) {}
    /// Builds from row-major data. Throws InvalidInput unless data.size() == n*n.
    SociometricMatrix(std::size_t n, std::vector<int> row_major);

    std::size_t size() const noexcept { return n_; }
    int operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    int& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
    std::span<const int> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }

    friend bool operator==(const SociometricMatrix&, const SociometricMatrix&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<int> values_;
};

/// Departments x groups matrix of headcounts.
class RequirementMatrix {
  public:
    RequirementMatrix() = default;
    RequirementMatrix(std::size_t departments, std::size_t groups)
        : departments_(departments), groups_(groups), values_(departments * groups, 0) {}
    /// Builds from row-major data. Throws InvalidInput on a size mismatch.
    RequirementMatrix(std::size_t departments, std::size_t groups, std::vector<std::int64_t> row_major);

    std::size_t departments() const noexcept { return departments_; }
    std::size_t groups() const noexcept { return groups_; }
    std::int64_t operator()(std::size_t dept, std::size_t group) const { return values_[dept * groups_ + group]; }
    std::int64_t& operator()(std::size_t dept, std::size_t group) { return values_[dept * groups_ + group]; }

    std::int64_t row_sum(std::size_t dept) const;
    std::int64_t column_sum(std::size_t group) const;
    std::int64_t total() const;

    friend bool operator==(const RequirementMatrix&, const RequirementMatrix&) = default;

  private:
    std::size_t departments_ = 0;
    std::size_t groups_ = 0;
    std::vector<std::int64_t> values_;
};

/// Department index of every individual.
struct DepartmentAssignment {
    std::vector<std::size_t> dept_of;

    friend bool operator==(const DepartmentAssignment&, const DepartmentAssignment&) = default;
};

struct ProblemInstance {
    std::string name;
    SociometricMatrix socio;
    RequirementMatrix req;
    DepartmentAssignment depts;

    std::size_t individuals() const noexcept { return socio.size(); }
    std::size_t departments() const noexcept { return req.departments(); }
    std::size_t groups() const noexcept { return req.groups(); }

    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// Group index of every individual; the compact form of a 0/1 allocation
/// matrix with exactly one set entry per row.
struct Allocation {
    std::vector<std::size_t> group_of;

    std::size_t individuals() const noexcept { return group_of.size(); }

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Cohesion of one group: the sum of sociometric values over ordered member
/// pairs (i != j), divided by the member count. An empty group scores 0.
double group_cohesion(const Allocation& alloc, const SociometricMatrix& socio, std::size_t group);

/// Sum over groups of (members / individuals) * group_cohesion.
double general_cohesion(const Allocation& alloc, const ProblemInstance& instance);

/// Headcount matrix realised by an allocation: entry (j, k) counts members of
/// department j placed in group k.
RequirementMatrix derived_requirements(const Allocation& alloc, const ProblemInstance& instance);

/// Sum of absolute cell differences between two requirement matrices.
std::int64_t penalty(const RequirementMatrix& got, const RequirementMatrix& want);

/// general_cohesion minus the requirement penalty.
double fitness(const Allocation& alloc, const ProblemInstance& instance);

/// True iff the allocation reproduces the requirement matrix exactly.
bool is_feasible(const Allocation& alloc, const ProblemInstance& instance);

/// Checks every instance invariant and returns one message per violation.
/// An empty result means the instance is valid.
std::vector<std::string> validate_instance(const ProblemInstance& instance);

/// Throws ValidationError if validate_instance reports anything.
void require_valid(const ProblemInstance& instance);

/// Throws InvalidInput unless `alloc` has one in-range group per individual.
void check_allocation(const Allocation& alloc, const ProblemInstance& instance);

} // namespace mtfp
