#ifndef IMIN_LP_HPP
#define IMIN_LP_HPP

#include <vector>

#include <Eigen/Dense>

namespace imin {

enum class Relation { Ge, Le };

/// Dense linear program: minimize objective . x subject to row relations and
/// box bounds. upper entries may be +infinity.
struct LinearProgram {
    Eigen::VectorXd objective;
    Eigen::MatrixXd coeffs;  // num_rows x num_vars
    std::vector<Relation> relations;
    Eigen::VectorXd rhs;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Eigen::Index num_vars() const { return objective.size(); }
    Eigen::Index num_rows() const { return rhs.size(); }
};

enum class LpStatus { Optimal, Infeasible };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double z_value = 0.0;
};

struct SimplexOptions {
    double feas_tol = 1e-7;
    double pivot_tol = 1e-10;
    long max_pivots = 1000000;
    bool force_exact = false;  // skip the floating-point pass entirely
};

/// Bounded-variable two-phase primal simplex on a dense tableau. Runs in
/// double precision with periodic refactorization; if the result fails
/// verification (rows mixing coefficients across many orders of magnitude can
/// defeat floating point), the same pivot rules rerun in exact rational
/// arithmetic. Deterministic: identical programs produce bitwise-identical
/// solutions. Throws SolverFailureError on pivot-cap overrun (never silent).
LpSolution solve(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace imin

#endif
