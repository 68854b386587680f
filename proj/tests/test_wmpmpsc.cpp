#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cover_corpus.hpp"
#include "imin/errors.hpp"
#include "imin/wmpmpsc.hpp"

using namespace imin;
using imin::testing::fractional_gadget;
using imin::testing::ip_optimum;
using imin::testing::random_cover_instance;

namespace {

WmpmpscInstance disjoint_pair_instance() {
    // S1 = {a, b}; C0 = {a}, C1 = {b}, C2 = {a, b}; weights on one element.
    WmpmpscInstance inst;
    inst.s1_count = 2;
    inst.s2_count = 1;
    inst.sets = {
        {{0}, {{0, 1.0}}},
        {{1}, {{0, 1.0}}},
        {{0, 1}, {{0, 0.5}}},
    };
    return inst;
}

}  // namespace

TEST_CASE("formulate_lp shapes rows after the instance") {
    WmpmpscInstance inst;
    inst.s1_count = 2;
    inst.s2_count = 3;
    inst.sets = {
        {{0}, {{0, 0.5}}},
        {{1}, {{1, 0.25}}},
        {{0, 1}, {{2, 1.0}}},
        {{1}, {}},
    };
    const LinearProgram lp = formulate_lp(inst);
    CHECK(lp.num_vars() == 5);
    CHECK(lp.num_rows() == 5);
    CHECK(lp.relations[0] == Relation::Ge);
    CHECK(lp.relations[1] == Relation::Ge);
    for (int row = 2; row < 5; ++row) {
        CHECK(lp.relations[row] == Relation::Le);
        CHECK(lp.coeffs(row, 4) == -1.0);
    }
    CHECK(lp.coeffs(0, 0) == 1.0);
    CHECK(lp.coeffs(2, 0) == 0.5);
    CHECK(std::isinf(lp.upper[4]));
}

TEST_CASE("an uncoverable element surfaces as infeasible") {
    WmpmpscInstance inst;
    inst.s1_count = 2;
    inst.s2_count = 0;
    inst.sets = {{{0}, {}}};
    CHECK(solve(formulate_lp(inst)).status == LpStatus::Infeasible);
    CHECK_THROWS_AS(solve_wmpmpsc(inst), UncoverableError);
    try {
        solve_wmpmpsc(inst);
    } catch (const UncoverableError& e) {
        CHECK(e.elements == std::vector<int>{1});
    }
}

TEST_CASE("all-zero weights give a zero optimum") {
    WmpmpscInstance inst;
    inst.s1_count = 1;
    inst.s2_count = 2;
    inst.sets = {{{0}, {}}, {{0}, {}}};
    const LpSolution sol = solve(formulate_lp(inst));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.z_value == doctest::Approx(0.0));
    const Cover cover = solve_wmpmpsc(inst);
    CHECK(cover.max_weight == 0.0);
}

TEST_CASE("rounding probabilities saturate at one") {
    WmpmpscInstance inst;
    inst.s1_count = 2;
    inst.s2_count = 4;
    inst.sets = {{{0, 1}, {}}};
    const RoundingParams params = RoundingParams::from(inst, 1.0);
    CHECK(params.alpha == doctest::Approx(std::log(4.0) + 1.0));

    Eigen::VectorXd x(3);
    x << 0.3, 0.6, 0.0;
    const Eigen::VectorXd p = rounding_probabilities(x, params);
    CHECK(p[0] == doctest::Approx(0.3 * (std::log(4.0) + 1.0)));  // ~0.7159
    CHECK(p[1] == 1.0);
    CHECK(p[2] == 0.0);
}

TEST_CASE("rounding parameters clamp a zero fractional optimum") {
    WmpmpscInstance inst;
    inst.s1_count = 1;
    inst.s2_count = 1;
    inst.sets = {{{0}, {}}};
    const RoundingParams params = RoundingParams::from(inst, 0.0);
    CHECK(params.z_clamped == 1e-9);
    CHECK(params.beta_r > 1.0);
    CHECK(params.alpha >= 1.0);
}

TEST_CASE("estimator values at certain success and failure") {
    WmpmpscInstance inst;
    inst.s1_count = 1;
    inst.s2_count = 0;
    inst.sets = {{{0}, {}}};
    RoundingParams params = RoundingParams::from(inst, 1.0);
    CHECK(estimator_P(inst, Eigen::VectorXd::Ones(1), params) == doctest::Approx(0.0));
    CHECK(estimator_P(inst, Eigen::VectorXd::Zero(1), params) == doctest::Approx(1.0));
}

TEST_CASE("estimator weight term matches the closed form") {
    // One set, weight 1 on a single element, p = 1, beta_r = 2, alpha*beta_r*z = 1:
    // Bbar = 2^-1 * (1 + (2^1 - 1)) = 1, so the weight product contributes zero.
    WmpmpscInstance inst;
    inst.s1_count = 0;
    inst.s2_count = 1;
    inst.sets = {{{}, {{0, 1.0}}}};
    RoundingParams params;
    params.alpha = 1.0;
    params.beta_r = 2.0;
    params.z_clamped = 0.5;
    CHECK(estimator_P(inst, Eigen::VectorXd::Ones(1), params) == doctest::Approx(1.0));
}

TEST_CASE("integral fractional solutions round to themselves") {
    WmpmpscInstance inst;
    inst.s1_count = 2;
    inst.s2_count = 1;
    inst.sets = {
        {{0}, {{0, 0.2}}},
        {{1}, {{0, 0.2}}},
        {{0, 1}, {{0, 1.0}}},
    };
    Eigen::VectorXd x(3);
    x << 1.0, 1.0, 0.0;

    for (std::uint64_t seed : {1ull, 77ull, 991ull}) {
        const auto cover = randomized_round(inst, x, 0.4, seed);
        REQUIRE(cover.has_value());
        CHECK(cover->chosen == std::vector<int>{0, 1});
        CHECK(cover->max_weight == doctest::Approx(0.4));
    }

    const Cover cover = derandomize(inst, x, 0.4);
    CHECK(cover.chosen == std::vector<int>{0, 1});
}

TEST_CASE("an all-zero fractional vector always rejects") {
    WmpmpscInstance inst;
    inst.s1_count = 1;
    inst.s2_count = 1;
    inst.sets = {{{0}, {{0, 0.5}}}, {{0}, {{0, 0.5}}}};
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK_FALSE(randomized_round(inst, Eigen::VectorXd::Zero(2), 0.5, seed).has_value());
}

TEST_CASE("two identical sets collapse to the first") {
    WmpmpscInstance inst;
    inst.s1_count = 2;
    inst.s2_count = 0;
    inst.sets = {{{0, 1}, {}}, {{0, 1}, {}}};
    Eigen::VectorXd x(2);
    x << 0.5, 0.5;
    DerandTrace trace;
    const Cover cover = derandomize(inst, x, 0.0, &trace);
    CHECK(cover.chosen == std::vector<int>{0});
    CHECK(cover.max_weight == 0.0);
    REQUIRE(trace.estimator_values.size() == 3);
    CHECK(trace.estimator_values.back() == doctest::Approx(0.0));
}

TEST_CASE("solve_wmpmpsc prefers the cheap double cover") {
    const WmpmpscInstance inst = disjoint_pair_instance();
    REQUIRE(ip_optimum(inst) == doctest::Approx(0.5));  // brute force over 8 subsets
    const Cover cover = solve_wmpmpsc(inst);
    CHECK(cover.chosen == std::vector<int>{2});
    CHECK(cover.max_weight == doctest::Approx(0.5));
    CHECK(cover.lp_value == doctest::Approx(0.5));
}

TEST_CASE("empty S1 is vacuously covered") {
    WmpmpscInstance inst;
    inst.s1_count = 0;
    inst.s2_count = 2;
    inst.sets = {{{}, {{0, 1.0}, {1, 0.5}}}};
    const Cover cover = solve_wmpmpsc(inst);
    CHECK(cover.chosen.empty());
    CHECK(cover.max_weight == 0.0);
}

TEST_CASE("a single zero-weight set covers alone") {
    WmpmpscInstance inst;
    inst.s1_count = 3;
    inst.s2_count = 2;
    inst.sets = {{{0, 1, 2}, {}}};
    const Cover cover = solve_wmpmpsc(inst);
    CHECK(cover.chosen == std::vector<int>{0});
    CHECK(cover.max_weight == 0.0);
}

TEST_CASE("derandomization never raises the estimator") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const WmpmpscInstance inst = random_cover_instance(rng, 10);
        LpSolution lp_solution;
        DerandTrace trace;
        const Cover cover = solve_wmpmpsc(inst, &lp_solution, &trace);
        REQUIRE(trace.estimator_values.size() == inst.sets.size() + 1);
        CHECK(trace.estimator_values.front() < 0.8);
        for (size_t i = 1; i < trace.estimator_values.size(); ++i)
            CHECK(trace.estimator_values[i] <= trace.estimator_values[i - 1] + 1e-12);

        // Bound, coverage, and the IP sandwich.
        const RoundingParams params = RoundingParams::from(inst, cover.lp_value);
        CHECK(cover.max_weight <= params.bound() + 1e-9);
        std::vector<bool> covered(inst.s1_count, false);
        for (int j : cover.chosen)
            for (int element : inst.sets[j].covers) covered[element] = true;
        for (bool c : covered) CHECK(c);
        const auto integral = ip_optimum(inst);
        REQUIRE(integral.has_value());
        CHECK(cover.lp_value <= *integral + 1e-6);
        CHECK(cover.max_weight >= *integral - 1e-9);
    }
}

TEST_CASE("covers recompute to their stored maximum weight") {
    std::mt19937_64 rng(151);
    for (int trial = 0; trial < 30; ++trial) {
        const WmpmpscInstance inst = random_cover_instance(rng);
        const Cover cover = solve_wmpmpsc(inst);
        const Eigen::VectorXd acc = accumulated_weights(inst, cover.chosen);
        const double recomputed = acc.size() > 0 ? acc.maxCoeff() : 0.0;
        CHECK(std::abs(recomputed - cover.max_weight) <= 1e-12);
    }
}

TEST_CASE("unit weights reduce to the unweighted membership program") {
    std::mt19937_64 rng(181);
    for (int trial = 0; trial < 20; ++trial) {
        WmpmpscInstance inst = random_cover_instance(rng, 8);
        // Every set weighs 1 on every S2 element: plain membership counting.
        for (WeightedSet& set : inst.sets) {
            set.weights.clear();
            for (int i = 0; i < inst.s2_count; ++i) set.weights.emplace_back(i, 1.0);
        }
        const LpSolution weighted = solve(formulate_lp(inst));

        // Hand-built unweighted relaxation of the same structure.
        const int m = static_cast<int>(inst.sets.size());
        LinearProgram lp;
        lp.objective = Eigen::VectorXd::Zero(m + 1);
        lp.objective[m] = 1.0;
        lp.coeffs = Eigen::MatrixXd::Zero(inst.s1_count + inst.s2_count, m + 1);
        lp.relations.assign(inst.s1_count + inst.s2_count, Relation::Ge);
        lp.rhs = Eigen::VectorXd::Zero(inst.s1_count + inst.s2_count);
        lp.lower = Eigen::VectorXd::Zero(m + 1);
        lp.upper = Eigen::VectorXd::Ones(m + 1);
        lp.upper[m] = std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j)
            for (int element : inst.sets[j].covers) lp.coeffs(element, j) = 1.0;
        for (int i = 0; i < inst.s1_count; ++i) lp.rhs[i] = 1.0;
        for (int i = 0; i < inst.s2_count; ++i) {
            const int row = inst.s1_count + i;
            lp.relations[row] = Relation::Le;
            for (int j = 0; j < m; ++j) lp.coeffs(row, j) = 1.0;
            lp.coeffs(row, m) = -1.0;
        }
        const LpSolution unweighted = solve(lp);
        REQUIRE(weighted.status == LpStatus::Optimal);
        REQUIRE(unweighted.status == LpStatus::Optimal);
        CHECK(weighted.z_value == doctest::Approx(unweighted.z_value).epsilon(1e-9));
    }
}

TEST_CASE("rounding accepts often on the fractional gadget") {
    const WmpmpscInstance inst = fractional_gadget();
    LpSolution lp_solution;
    const Cover reference = solve_wmpmpsc(inst, &lp_solution, nullptr);
    CHECK(lp_solution.z_value == doctest::Approx(53.0 / 15.0));
    REQUIRE(lp_solution.z_value >= 3.0);

    const int m = static_cast<int>(inst.sets.size());
    const Eigen::VectorXd x = lp_solution.x.head(m);
    int accepted = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t)
        if (randomized_round(inst, x, lp_solution.z_value, 1000 + t)) ++accepted;
    CHECK(static_cast<double>(accepted) / trials >= 0.15);
    CHECK(reference.max_weight <=
          RoundingParams::from(inst, lp_solution.z_value).bound() + 1e-9);
}

TEST_CASE("seeded rounding replays its recorded outcomes") {
    // Frozen from the first verified run on the gadget's fractional optimum:
    // x = (1/3, 1/3, 1/3, 1, 1, 1), z' = 53/15.
    const WmpmpscInstance inst = fractional_gadget();
    LpSolution lp_solution;
    solve_wmpmpsc(inst, &lp_solution, nullptr);
    const Eigen::VectorXd x = lp_solution.x.head(6);

    const auto at7 = randomized_round(inst, x, lp_solution.z_value, 7);
    REQUIRE(at7.has_value());
    CHECK(at7->chosen == std::vector<int>{0, 2, 3, 4, 5});
    CHECK(at7->max_weight == doctest::Approx(4.6));

    const auto at8 = randomized_round(inst, x, lp_solution.z_value, 8);
    REQUIRE(at8.has_value());
    CHECK(at8->chosen == std::vector<int>{0, 3, 4, 5});
    CHECK(at8->max_weight == doctest::Approx(4.0));

    CHECK_FALSE(randomized_round(inst, x, lp_solution.z_value, 27).has_value());
}

TEST_CASE("an eight-set instance derandomizes to its recorded cover") {
    WmpmpscInstance inst;
    inst.s1_count = 3;
    inst.s2_count = 4;
    inst.sets = {
        {{0}, {{0, 0.85}, {2, 0.30}}},
        {{1}, {{1, 0.40}, {3, 0.55}}},
        {{0, 2}, {{0, 0.25}, {1, 0.70}}},
        {{1, 2}, {{2, 0.90}}},
        {{2}, {{3, 0.15}}},
        {{0, 1}, {{0, 0.60}, {3, 0.35}}},
        {{1}, {{1, 0.20}, {2, 0.45}}},
        {{2}, {{0, 0.10}, {1, 0.10}, {2, 0.10}, {3, 0.10}}},
    };
    REQUIRE(ip_optimum(inst) == doctest::Approx(0.6));

    LpSolution lp_solution;
    const Cover cover = solve_wmpmpsc(inst, &lp_solution, nullptr);
    // Frozen from the first verified run; sets 3 and 5 cover {0, 1, 2}.
    CHECK(lp_solution.z_value == doctest::Approx(0.41107266435986156));
    CHECK(cover.chosen == std::vector<int>{3, 5});
    CHECK(cover.max_weight == doctest::Approx(0.9));
    CHECK(cover.max_weight >=
          doctest::Approx(*ip_optimum(inst)).epsilon(1e-9));
    CHECK(cover.max_weight <= RoundingParams::from(inst, cover.lp_value).bound() + 1e-9);
}

TEST_CASE("zero-weight instances accept every feasible draw") {
    // z' = 0 clamps; the bound is tiny but so is every accumulated weight.
    WmpmpscInstance inst;
    inst.s1_count = 1;
    inst.s2_count = 2;
    inst.sets = {{{0}, {}}};
    Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto cover = randomized_round(inst, x, 0.0, seed);
        REQUIRE(cover.has_value());
        CHECK(cover->max_weight == 0.0);
    }
}
