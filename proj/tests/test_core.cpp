#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mtfp/core.hpp"
#include "test_support.hpp"

using namespace mtfp;
using namespace mtfp::testing;

TEST_CASE("group_cohesion on dataset 1") {
    const auto inst = dataset1();
    const auto sol = dataset1_solution();
    // 12 ordered pairs among {I1, I2, I5, I7} sum to 8.
    CHECK(group_cohesion(sol, inst.socio, 0) == doctest::Approx(2.0).epsilon(1e-12));
    // x(8,10) + x(10,8) = 1 + 0 over 2 members.
    CHECK(group_cohesion(sol, inst.socio, 2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("group_cohesion is zero for a zero matrix and for an empty group") {
    SociometricMatrix zero(6);
    std::mt19937_64 rng(7);
    const auto a = random_allocation(rng, 6, 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(group_cohesion(a, zero, k) == 0.0);
    CHECK(group_cohesion(everyone_in(6, 0), zero, 2) == 0.0);
    CHECK(group_cohesion(everyone_in(10, 0), dataset1().socio, 1) == 0.0);
}

TEST_CASE("group_cohesion rejects a size mismatch") {
    CHECK_THROWS_AS(group_cohesion(everyone_in(4, 0), SociometricMatrix(5), 0), InvalidInput);
}

TEST_CASE("general_cohesion examples") {
    const auto inst = dataset1();
    CHECK(general_cohesion(dataset1_solution(), inst) == doctest::Approx(1.6).epsilon(1e-12));

    auto zero = inst;
    zero.socio = SociometricMatrix(10);
    CHECK(general_cohesion(dataset1_solution(), zero) == 0.0);

    for (std::size_t n : {1u, 2u, 5u, 9u}) {
        ProblemInstance ones;
        ones.socio = SociometricMatrix(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) ones.socio(i, j) = i == j ? 0 : 1;
        ones.req = RequirementMatrix(1, 1, {static_cast<std::int64_t>(n)});
        ones.depts.dept_of.assign(n, 0);
        CHECK(general_cohesion(everyone_in(n, 0), ones) == doctest::Approx(static_cast<double>(n - 1)));
    }
}

TEST_CASE("general_cohesion rejects mismatched allocations") {
    const auto inst = dataset1();
    CHECK_THROWS_AS(general_cohesion(everyone_in(9, 0), inst), InvalidInput);
    CHECK_THROWS_AS(general_cohesion(everyone_in(10, 3), inst), InvalidInput);
}

TEST_CASE("derived_requirements") {
    const auto inst = dataset1();
    CHECK(derived_requirements(dataset1_solution(), inst) == inst.req);

    const auto all_first = derived_requirements(everyone_in(10, 0), inst);
    CHECK(all_first == RequirementMatrix(4, 3, {4, 0, 0, 3, 0, 0, 2, 0, 0, 1, 0, 0}));
    CHECK(all_first.total() == 10);

    ProblemInstance tiny;
    tiny.socio = SociometricMatrix(1);
    tiny.req = RequirementMatrix(1, 1, {1});
    tiny.depts.dept_of = {0};
    CHECK(derived_requirements(everyone_in(1, 0), tiny) == RequirementMatrix(1, 1, {1}));
}

TEST_CASE("penalty") {
    const auto r = dataset1().req;
    CHECK(penalty(r, r) == 0);
    CHECK(penalty(RequirementMatrix(2, 2, {1, 1, 1, 1}), RequirementMatrix(2, 2, {2, 0, 0, 2})) == 4);
    CHECK(penalty(RequirementMatrix(1, 1, {1}), RequirementMatrix(1, 1, {1})) == 0);
    CHECK_THROWS_AS(penalty(RequirementMatrix(2, 2), RequirementMatrix(2, 3)), InvalidInput);
}

TEST_CASE("fitness") {
    const auto inst = dataset1();
    CHECK(fitness(dataset1_solution(), inst) == doctest::Approx(1.6).epsilon(1e-12));
    // Everyone in G1: cohesion 31/10, six people missing from G2/G3 and six extra in G1.
    CHECK(penalty(derived_requirements(everyone_in(10, 0), inst), inst.req) == 12);
    CHECK(general_cohesion(everyone_in(10, 0), inst) == doctest::Approx(3.1).epsilon(1e-12));
    CHECK(fitness(everyone_in(10, 0), inst) == doctest::Approx(3.1 - 12.0).epsilon(1e-12));

    auto zero = inst;
    zero.socio = SociometricMatrix(10);
    CHECK(fitness(dataset1_solution(), zero) == 0.0);
}

TEST_CASE("is_feasible") {
    const auto inst = dataset1();
    CHECK(is_feasible(dataset1_solution(), inst));
    CHECK_FALSE(is_feasible(everyone_in(10, 0), inst));

    ProblemInstance forced;
    forced.socio = SociometricMatrix(4);
    forced.req = RequirementMatrix(1, 1, {4});
    forced.depts.dept_of.assign(4, 0);
    CHECK(is_feasible(everyone_in(4, 0), forced));
}

TEST_CASE("validate_instance") {
    CHECK(validate_instance(dataset1()).empty());

    SUBCASE("out-of-range sociometric entry") {
        auto inst = dataset1();
        inst.socio(2, 5) = 2;
        const auto issues = validate_instance(inst);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].find("sociometric[3][6]") != std::string::npos);
    }
    SUBCASE("non-zero diagonal") {
        auto inst = dataset1();
        inst.socio(4, 4) = 1;
        const auto issues = validate_instance(inst);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].find("sociometric[5][5]") != std::string::npos);
    }
    SUBCASE("row sums disagree with department sizes") {
        auto inst = dataset1();
        inst.req(0, 0) = 1; // D1 now needs 3
        inst.req(1, 0) = 3; // D2 now needs 4
        const auto issues = validate_instance(inst);
        REQUIRE(issues.size() == 2);
        CHECK(issues[0].find("department 1") != std::string::npos);
        CHECK(issues[1].find("department 2") != std::string::npos);
    }
    SUBCASE("negative headcount and wrong total") {
        auto inst = dataset1();
        inst.req(3, 2) = -1;
        const auto issues = validate_instance(inst);
        CHECK(issues.size() == 3); // negative cell, total, D4 size
    }
    SUBCASE("department label out of range") {
        auto inst = dataset1();
        inst.depts.dept_of[9] = 4;
        const auto issues = validate_instance(inst);
        REQUIRE(issues.size() == 2);
        CHECK(issues[0].find("departments[10]") != std::string::npos);
    }
    SUBCASE("require_valid lists everything") {
        auto inst = dataset1();
        inst.socio(0, 1) = 5;
        inst.socio(1, 0) = -3;
        try {
            require_valid(inst);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.issues().size() == 2);
        }
    }
}

TEST_CASE("matrix constructors check sizes") {
    CHECK_THROWS_AS(SociometricMatrix(3, std::vector<int>(8, 0)), InvalidInput);
    CHECK_THROWS_AS(RequirementMatrix(2, 2, std::vector<std::int64_t>(3, 0)), InvalidInput);
}

// ---- properties over random instances ----

namespace {

// Eg from the dense allocation matrix with no grouping shortcuts.
double dense_general_cohesion(const Allocation& a, const ProblemInstance& inst) {
    const auto A = dense(a, inst.groups());
    const std::size_t n = inst.individuals();
    double eg = 0.0;
    for (std::size_t k = 0; k < inst.groups(); ++k) {
        double nk = 0.0;
        for (std::size_t i = 0; i < n; ++i) nk += A[i][k];
        if (nk == 0.0) continue;
        double num = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) num += A[i][k] * A[j][k] * inst.socio(i, j);
        eg += (nk / static_cast<double>(n)) * (num / nk);
    }
    return eg;
}

ProblemInstance permuted(const ProblemInstance& inst, const std::vector<std::size_t>& perm) {
    // Individual perm[i] of the new instance is individual i of the old one.
    auto out = inst;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        out.depts.dept_of[perm[i]] = inst.depts.dept_of[i];
        for (std::size_t j = 0; j < perm.size(); ++j) out.socio(perm[i], perm[j]) = inst.socio(i, j);
    }
    return out;
}

} // namespace

TEST_CASE("property: decomposition, bounds and dense recomputation") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        const std::size_t nj = 1 + rng() % n;
        const std::size_t nk = 1 + rng() % 4;
        const auto inst = random_instance(rng, n, nj, nk);
        REQUIRE(validate_instance(inst).empty());
        const auto a = random_allocation(rng, n, nk);

        const double eg = general_cohesion(a, inst);
        double sum = 0.0;
        for (std::size_t k = 0; k < nk; ++k) {
            const auto members = static_cast<double>(std::count(a.group_of.begin(), a.group_of.end(), k));
            const double ek = group_cohesion(a, inst.socio, k);
            CHECK(ek <= std::max(0.0, members - 1) + 1e-12);
            CHECK(ek >= -std::max(0.0, members - 1) - 1e-12);
            sum += members / static_cast<double>(n) * ek;
        }
        CHECK(std::abs(eg - sum) <= 1e-12);
        CHECK(std::abs(eg - dense_general_cohesion(a, inst)) <= 1e-12);
        CHECK(eg <= static_cast<double>(n - 1) + 1e-12);
        CHECK(eg >= -static_cast<double>(n - 1) - 1e-12);
    }
}

TEST_CASE("property: relabeling individuals changes nothing") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const std::size_t nk = 1 + rng() % 4;
        const auto inst = random_instance(rng, n, 1 + rng() % n, nk);
        const auto a = random_allocation(rng, n, nk);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);

        const auto pinst = permuted(inst, perm);
        Allocation pa{std::vector<std::size_t>(n)};
        for (std::size_t i = 0; i < n; ++i) pa.group_of[perm[i]] = a.group_of[i];

        CHECK(general_cohesion(pa, pinst) == doctest::Approx(general_cohesion(a, inst)).epsilon(1e-12));
        CHECK(fitness(pa, pinst) == doctest::Approx(fitness(a, inst)).epsilon(1e-12));
        CHECK(penalty(derived_requirements(pa, pinst), pinst.req) == penalty(derived_requirements(a, inst), inst.req));
        for (std::size_t k = 0; k < nk; ++k)
            CHECK(group_cohesion(pa, pinst.socio, k) == doctest::Approx(group_cohesion(a, inst.socio, k)).epsilon(1e-12));
    }
}

TEST_CASE("property: relabeling groups consistently changes nothing") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const std::size_t nk = 1 + rng() % 4;
        const auto inst = random_instance(rng, n, 1 + rng() % n, nk);
        const auto a = random_allocation(rng, n, nk);
        std::vector<std::size_t> perm(nk);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);

        auto pinst = inst;
        for (std::size_t j = 0; j < inst.departments(); ++j)
            for (std::size_t k = 0; k < nk; ++k) pinst.req(j, perm[k]) = inst.req(j, k);
        Allocation pa = a;
        for (auto& g : pa.group_of) g = perm[g];

        CHECK(fitness(pa, pinst) == doctest::Approx(fitness(a, inst)).epsilon(1e-12));
        CHECK(is_feasible(pa, pinst) == is_feasible(a, inst));
    }
}

TEST_CASE("property: penalty is a metric-like distance and tracks feasibility") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> cell(0, 4);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        RequirementMatrix a(r, c), b(r, c);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < c; ++k) {
                a(j, k) = cell(rng);
                b(j, k) = trial % 5 == 0 ? a(j, k) : cell(rng);
            }
        CHECK(penalty(a, b) == penalty(b, a));
        CHECK(penalty(a, b) >= 0);
        CHECK((penalty(a, b) == 0) == (a == b));
    }
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const std::size_t nk = 1 + rng() % 3;
        const auto inst = random_instance(rng, n, 1 + rng() % n, nk);
        const auto a = random_allocation(rng, n, nk);
        CHECK(is_feasible(a, inst) == (fitness(a, inst) == general_cohesion(a, inst)));
    }
}
