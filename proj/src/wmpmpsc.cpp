#include "imin/wmpmpsc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "imin/errors.hpp"
#include "imin/rng.hpp"

namespace imin {

namespace {

void validate(const WmpmpscInstance& inst) {
    if (inst.s1_count < 0 || inst.s2_count < 0)
        throw InvalidInstanceError("element counts must be non-negative");
    if (inst.s1_count >= 1 && inst.sets.empty())
        throw InvalidInstanceError("a non-empty S1 needs at least one set");
    for (const WeightedSet& set : inst.sets) {
        for (int element : set.covers)
            if (element < 0 || element >= inst.s1_count)
                throw InvalidInstanceError("cover element out of range");
        for (const auto& [element, weight] : set.weights) {
            if (element < 0 || element >= inst.s2_count)
                throw InvalidInstanceError("weighted element out of range");
            if (!(weight >= 0.0 && weight <= 1.0))
                throw InvalidInstanceError("weights must lie in [0, 1]");
        }
    }
}

std::vector<int> uncovered_elements(const WmpmpscInstance& inst) {
    std::vector<bool> covered(inst.s1_count, false);
    for (const WeightedSet& set : inst.sets)
        for (int element : set.covers) covered[element] = true;
    std::vector<int> missing;
    for (int i = 0; i < inst.s1_count; ++i)
        if (!covered[i]) missing.push_back(i);
    return missing;
}

// Element-indexed view of the collection, shared by the estimator and the
// derandomization loop.
struct ElementIndex {
    std::vector<std::vector<int>> covering_sets;                   // per S1 element
    std::vector<std::vector<std::pair<int, double>>> weight_sets;  // per S2 element

    explicit ElementIndex(const WmpmpscInstance& inst)
        : covering_sets(inst.s1_count), weight_sets(inst.s2_count) {
        for (int j = 0; j < static_cast<int>(inst.sets.size()); ++j) {
            for (int element : inst.sets[j].covers) covering_sets[element].push_back(j);
            for (const auto& [element, weight] : inst.sets[j].weights)
                weight_sets[element].emplace_back(j, weight);
        }
    }

    // P = 2 - prod_{i in S1} (1 - Abar_i) - prod_{i in S2} (1 - Bbar_i) with
    //   Abar_i = prod_{C_j covering i} (1 - p_j)
    //   Bbar_i = beta_r^{-alpha beta_r z} prod_{C_j weighting i} (1 + (beta_r^{w_ji} - 1) p_j)
    // Bbar is evaluated in log space; beta_r blows up when z' is tiny and the
    // plain product would overflow long before the estimate means anything.
    double evaluate(const Eigen::VectorXd& p, const RoundingParams& params) const {
        double covered_all = 1.0;
        for (const auto& sets : covering_sets) {
            double miss = 1.0;
            for (int j : sets) miss *= 1.0 - p[j];
            covered_all *= 1.0 - miss;
        }
        const double log_beta = std::log(params.beta_r);
        const double lead = -params.alpha * params.beta_r * params.z_clamped * log_beta;
        double within_bound_all = 1.0;
        for (const auto& sets : weight_sets) {
            double log_over = lead;
            for (const auto& [j, weight] : sets)
                log_over += std::log1p(std::expm1(weight * log_beta) * p[j]);
            within_bound_all *= 1.0 - std::exp(std::min(log_over, 700.0));
        }
        return 2.0 - covered_all - within_bound_all;
    }
};

bool covers_all(const WmpmpscInstance& inst, const std::vector<int>& chosen) {
    std::vector<bool> covered(inst.s1_count, false);
    for (int j : chosen)
        for (int element : inst.sets[j].covers) covered[element] = true;
    return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

Cover make_cover(const WmpmpscInstance& inst, std::vector<int> chosen, double z_prime) {
    Cover cover;
    cover.chosen = std::move(chosen);
    const Eigen::VectorXd acc = accumulated_weights(inst, cover.chosen);
    cover.max_weight = acc.size() > 0 ? acc.maxCoeff() : 0.0;
    cover.lp_value = z_prime;
    return cover;
}

}  // namespace

RoundingParams RoundingParams::from(const WmpmpscInstance& inst, double z_prime) {
    RoundingParams params;
    params.alpha = std::log(static_cast<double>(std::max({inst.s1_count, inst.s2_count, 1}))) + 1.0;
    params.z_clamped = std::max(z_prime, 1e-9);
    params.beta_r =
        1.0 + std::max(std::sqrt(3.0 / params.z_clamped), 3.0 / params.z_clamped);
    return params;
}

Eigen::VectorXd accumulated_weights(const WmpmpscInstance& inst,
                                    const std::vector<int>& chosen) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(inst.s2_count);
    for (int j : chosen)
        for (const auto& [element, weight] : inst.sets[j].weights) acc[element] += weight;
    return acc;
}

LinearProgram formulate_lp(const WmpmpscInstance& inst) {
    validate(inst);
    const int m = static_cast<int>(inst.sets.size());
    const int vars = m + 1;  // x_1..x_m and z
    const int rows = inst.s1_count + inst.s2_count;

    LinearProgram lp;
    lp.objective = Eigen::VectorXd::Zero(vars);
    lp.objective[m] = 1.0;
    lp.coeffs = Eigen::MatrixXd::Zero(rows, vars);
    lp.relations.assign(rows, Relation::Ge);
    lp.rhs = Eigen::VectorXd::Zero(rows);
    lp.lower = Eigen::VectorXd::Zero(vars);
    lp.upper = Eigen::VectorXd::Ones(vars);
    lp.upper[m] = std::numeric_limits<double>::infinity();

    for (int j = 0; j < m; ++j) {
        for (int element : inst.sets[j].covers) lp.coeffs(element, j) = 1.0;
        for (const auto& [element, weight] : inst.sets[j].weights)
            lp.coeffs(inst.s1_count + element, j) = weight;
    }
    for (int i = 0; i < inst.s1_count; ++i) lp.rhs[i] = 1.0;
    for (int i = 0; i < inst.s2_count; ++i) {
        const int row = inst.s1_count + i;
        lp.relations[row] = Relation::Le;
        lp.coeffs(row, m) = -1.0;
    }
    return lp;
}

Eigen::VectorXd rounding_probabilities(const Eigen::VectorXd& x_frac,
                                       const RoundingParams& params) {
    return x_frac.unaryExpr([&](double x) {
        return std::clamp(params.alpha * x, 0.0, 1.0);
    });
}

std::optional<Cover> randomized_round(const WmpmpscInstance& inst,
                                      const Eigen::VectorXd& x_frac, double z_prime,
                                      std::uint64_t seed) {
    validate(inst);
    const RoundingParams params = RoundingParams::from(inst, z_prime);
    const Eigen::VectorXd p = rounding_probabilities(x_frac, params);
    std::mt19937_64 rng(seed);
    std::vector<int> chosen;
    for (int j = 0; j < static_cast<int>(inst.sets.size()); ++j)
        if (uniform53(rng) < p[j]) chosen.push_back(j);
    if (!covers_all(inst, chosen)) return std::nullopt;
    Cover cover = make_cover(inst, std::move(chosen), z_prime);
    if (cover.max_weight > params.bound() + 1e-9) return std::nullopt;
    return cover;
}

double estimator_P(const WmpmpscInstance& inst, const Eigen::VectorXd& p,
                   const RoundingParams& params) {
    validate(inst);
    return ElementIndex(inst).evaluate(p, params);
}

Cover derandomize(const WmpmpscInstance& inst, const Eigen::VectorXd& x_frac,
                  double z_prime, DerandTrace* trace) {
    validate(inst);
    const RoundingParams params = RoundingParams::from(inst, z_prime);
    const ElementIndex index(inst);
    Eigen::VectorXd p = rounding_probabilities(x_frac, params);

    double current = index.evaluate(p, params);
    if (trace) trace->estimator_values.assign(1, current);
    if (current >= 1.0)
        throw DerandomizationError(
            "initial estimator value " + std::to_string(current) +
            " is not < 1: the rounding preconditions do not hold");

    // Fix probabilities one by one to the branch that keeps the estimator
    // minimal. P is affine in each p_i, so the better branch never exceeds
    // the current value (ties settle on 0: fewer sets, less interference).
    for (int j = 0; j < static_cast<int>(inst.sets.size()); ++j) {
        p[j] = 0.0;
        const double if_dropped = index.evaluate(p, params);
        p[j] = 1.0;
        const double if_kept = index.evaluate(p, params);
        if (if_dropped <= if_kept) {
            p[j] = 0.0;
            current = if_dropped;
        } else {
            current = if_kept;
        }
        if (trace) trace->estimator_values.push_back(current);
    }

    std::vector<int> chosen;
    for (int j = 0; j < static_cast<int>(inst.sets.size()); ++j)
        if (p[j] == 1.0) chosen.push_back(j);
    Cover cover = make_cover(inst, std::move(chosen), z_prime);
    if (!covers_all(inst, cover.chosen))
        throw DerandomizationError("derandomized selection left S1 elements uncovered");
    if (cover.max_weight > params.bound() + 1e-9)
        throw DerandomizationError("derandomized selection exceeds the weight bound");
    return cover;
}

Cover solve_wmpmpsc(const WmpmpscInstance& inst, LpSolution* lp_solution,
                    DerandTrace* trace) {
    validate(inst);
    const std::vector<int> missing = uncovered_elements(inst);
    if (!missing.empty()) {
        std::string what = "S1 elements covered by no set:";
        for (int element : missing) what += " " + std::to_string(element);
        throw UncoverableError(missing, what);
    }
    const LinearProgram lp = formulate_lp(inst);
    const LpSolution solution = solve(lp);
    if (solution.status != LpStatus::Optimal)
        throw UncoverableError({}, "cover relaxation is infeasible");
    if (lp_solution) *lp_solution = solution;
    const int m = static_cast<int>(inst.sets.size());
    return derandomize(inst, solution.x.head(m), solution.z_value, trace);
}

Cover solve_wmpmpsc(const WmpmpscInstance& inst) {
    return solve_wmpmpsc(inst, nullptr, nullptr);
}

}  // namespace imin
