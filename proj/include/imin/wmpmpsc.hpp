#ifndef IMIN_WMPMPSC_HPP
#define IMIN_WMPMPSC_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "imin/lp.hpp"

namespace imin {

/// One set of the collection: the S1 elements it covers and its weights on
/// S2 elements (sparse, ascending element index, weights in [0, 1]).
struct WeightedSet {
    std::vector<int> covers;
    std::vector<std::pair<int, double>> weights;
};

/// Weighted minimum partial membership partial set cover. Every S1 element
/// must be covered; the largest accumulated weight over S2 elements is the
/// objective.
struct WmpmpscInstance {
    int s1_count = 0;
    int s2_count = 0;
    std::vector<WeightedSet> sets;
};

struct Cover {
    std::vector<int> chosen;   // ascending set indices
    double max_weight = 0.0;   // max accumulated weight over S2
    double lp_value = 0.0;     // fractional optimum it was rounded from
};

/// Parameters of the randomized rounding scheme. beta_r is the rounding
/// parameter (distinct from the network acceptance threshold); z_clamped
/// guards the 1/z' terms when the fractional optimum is zero.
struct RoundingParams {
    double alpha = 1.0;      // ln(max{|S1|, |S2|}) + 1
    double beta_r = 2.0;     // 1 + max{sqrt(3/z'), 3/z'}
    double z_clamped = 0.0;  // max(z', 1e-9)

    static RoundingParams from(const WmpmpscInstance& inst, double z_prime);

    /// Acceptance bound on the accumulated weight of a rounded solution.
    double bound() const { return alpha * beta_r * z_clamped; }
};

/// Per-element accumulated weight of a chosen sub-collection.
Eigen::VectorXd accumulated_weights(const WmpmpscInstance& inst,
                                    const std::vector<int>& chosen);

/// Relaxation rows: one >= 1 cover row per S1 element, one weighted <= z row
/// per S2 element; bounds 0 <= x_j <= 1, z >= 0.
LinearProgram formulate_lp(const WmpmpscInstance& inst);

/// p_i = min{1, alpha * x'_i}.
Eigen::VectorXd rounding_probabilities(const Eigen::VectorXd& x_frac,
                                       const RoundingParams& params);

/// One Bernoulli trial per set; accepts iff all of S1 is covered and the
/// accumulated weight stays within params.bound(). Deterministic given seed;
/// rejection is a value, not an error.
std::optional<Cover> randomized_round(const WmpmpscInstance& inst,
                                      const Eigen::VectorXd& x_frac,
                                      double z_prime, std::uint64_t seed);

/// Pessimistic estimator P: an upper bound on the probability that some
/// element stays uncovered or some accumulated weight exceeds the bound.
double estimator_P(const WmpmpscInstance& inst, const Eigen::VectorXd& p,
                   const RoundingParams& params);

/// Estimator values recorded by derandomize: front() is the initial value,
/// then one entry per fixed probability.
struct DerandTrace {
    std::vector<double> estimator_values;
};

/// Fixes every p_i to the {0, 1} branch that minimizes the estimator
/// (ties prefer 0). The result is a feasible cover within params.bound().
Cover derandomize(const WmpmpscInstance& inst, const Eigen::VectorXd& x_frac,
                  double z_prime, DerandTrace* trace = nullptr);

/// formulate_lp -> solve -> derandomize.
Cover solve_wmpmpsc(const WmpmpscInstance& inst);

/// Same pipeline, optionally exposing the fractional solution and the
/// derandomization trace.
Cover solve_wmpmpsc(const WmpmpscInstance& inst, LpSolution* lp_solution,
                    DerandTrace* trace);

}  // namespace imin

#endif
