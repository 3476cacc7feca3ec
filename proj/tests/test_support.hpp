#pragma once

// Fixtures shared by the unit and acceptance suites. Everything here is built
// directly from literal tables or plain <random> draws, never through the
// instance generator or document parser.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mtfp/core.hpp"

namespace mtfp::testing {

inline std::string data_path(const std::string& file) { return std::string(MTFP_DATA_DIR) + "/" + file; }

// Dataset 1 with departments D1={I1..I4}, D2={I5..I7}, D3={I8,I9}, D4={I10}.
inline ProblemInstance dataset1() {
    ProblemInstance inst;
    inst.name = "dataset-1";
    inst.socio = SociometricMatrix(10, {
        0, 1,  0,  0,  1, -1, 1,  1,  1, -1,
        0, 0,  0,  0,  1,  1, 1,  0, -1,  1,
        1, 1,  0,  1, -1,  1, 1, -1,  1,  1,
        1, 1,  1,  0,  0,  1, 1,  1,  1,  1,
        0, 0, -1, -1,  0,  1, 1,  0,  0,  0,
        0, 1,  1,  0,  0,  0, 1, -1,  0,  1,
        1, 1,  0,  0,  0,  0, 0,  1,  1,  0,
        0, 0,  1,  0,  0,  0, 0,  0,  1,  1,
        1, 0,  0,  0,  0,  0, 0,  0,  0,  0,
        0, 1, -1,  0,  0,  1, 1,  0, -1,  0,
    });
    inst.req = RequirementMatrix(4, 3, {
        2, 2, 0,
        2, 1, 0,
        0, 1, 1,
        0, 0, 1,
    });
    inst.depts.dept_of = {0, 0, 0, 0, 1, 1, 1, 2, 2, 3};
    return inst;
}

// Unique exhaustive optimum of dataset 1:
// G1 = {I1, I2, I5, I7}, G2 = {I3, I4, I6, I9}, G3 = {I8, I10}.
inline Allocation dataset1_solution() { return Allocation{{0, 0, 1, 1, 0, 1, 0, 2, 1, 2}}; }

inline Allocation everyone_in(std::size_t n, std::size_t group) { return Allocation{std::vector<std::size_t>(n, group)}; }

// A valid instance of the given shape: sociometric entries uniform over {-1,0,1},
// each individual's (department, group) cell drawn uniformly, then every
// department made non-empty by construction.
inline ProblemInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t departments, std::size_t groups) {
    ProblemInstance inst;
    inst.name = "random";
    inst.socio = SociometricMatrix(n);
    std::uniform_int_distribution<int> entry(-1, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) inst.socio(i, j) = entry(rng);

    std::uniform_int_distribution<std::size_t> pick_dept(0, departments - 1), pick_group(0, groups - 1);
    inst.req = RequirementMatrix(departments, groups);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i < departments ? i : pick_dept(rng);
        inst.depts.dept_of.push_back(j);
        ++inst.req(j, pick_group(rng));
    }
    std::sort(inst.depts.dept_of.begin(), inst.depts.dept_of.end());
    return inst;
}

inline Allocation random_allocation(std::mt19937_64& rng, std::size_t n, std::size_t groups) {
    std::uniform_int_distribution<std::size_t> pick(0, groups - 1);
    Allocation a;
    for (std::size_t i = 0; i < n; ++i) a.group_of.push_back(pick(rng));
    return a;
}

// Dense 0/1 allocation matrix, one row per individual.
inline std::vector<std::vector<int>> dense(const Allocation& a, std::size_t groups) {
    std::vector<std::vector<int>> m(a.individuals(), std::vector<int>(groups, 0));
    for (std::size_t i = 0; i < a.individuals(); ++i) m[i][a.group_of[i]] = 1;
    return m;
}

// Calls visit(allocation) for every one of groups^n assignments.
template <typename Visit>
void for_each_assignment(std::size_t n, std::size_t groups, Visit&& visit) {
    Allocation a{std::vector<std::size_t>(n, 0)};
    while (true) {
        visit(a);
        std::size_t i = 0;
        while (i < n && ++a.group_of[i] == groups) a.group_of[i++] = 0;
        if (i == n) return;
    }
}

} // namespace mtfp::testing
