#include "imin/lp.hpp"

#include <cmath>
#include <limits>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "imin/errors.hpp"

namespace imin {

namespace {

// et_off: Eigen needs plain value semantics, not boost expression templates.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

constexpr double kDualTol = 1e-9;
constexpr long kRefactorInterval = 20;

enum class VarState { Basic, AtLower, AtUpper };

template <typename Scalar>
double to_double(const Scalar& x) {
    if constexpr (std::is_same_v<Scalar, double>)
        return x;
    else
        return x.template convert_to<double>();
}

// Two-phase primal simplex with upper-bounded variables on a dense tableau
// T = B^-1 A. Nonbasic variables rest at a finite bound; entering and leaving
// choices follow Bland's rule, so the method cannot cycle.
//
// The scalar type selects the arithmetic: doubles run with tolerances and
// periodic LU refactorization to shed pivot roundoff; exact rationals run
// with zero tolerances and no refactorization. The exact instantiation backs
// up the floating-point one on badly scaled programs, where weight data can
// span many orders of magnitude within one row.
template <typename Scalar>
class SimplexCore {
    static constexpr bool kExact = !std::is_same_v<Scalar, double>;

public:
    SimplexCore(const LinearProgram& lp, const SimplexOptions& options)
        : lp_(lp), opt_(options), rows_(static_cast<int>(lp.num_rows())),
          structs_(static_cast<int>(lp.num_vars())),
          total_(structs_ + 2 * rows_),
          dual_tol_(kExact ? Scalar(0) : Scalar(kDualTol)),
          feas_tol_(kExact ? Scalar(0) : Scalar(options.feas_tol)) {
        matrix_.resize(rows_, total_);  // structural | slack | artificial
        matrix_.setZero();
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < structs_; ++j) matrix_(i, j) = Scalar(lp.coeffs(i, j));
        rhs_.resize(rows_);
        for (int i = 0; i < rows_; ++i) rhs_[i] = Scalar(lp.rhs[i]);

        lower_.assign(total_, Scalar(0));
        upper_.assign(total_, Scalar(0));
        lower_finite_.assign(total_, true);
        upper_finite_.assign(total_, false);
        value_.assign(total_, Scalar(0));
        state_.assign(total_, VarState::AtLower);
        cost_.assign(total_, Scalar(0));
        for (int j = 0; j < structs_; ++j) {
            if (!std::isfinite(lp.lower[j]))
                throw SolverFailureError("structural variables need a finite lower bound");
            lower_[j] = Scalar(lp.lower[j]);
            if (std::isfinite(lp.upper[j])) {
                upper_[j] = Scalar(lp.upper[j]);
                upper_finite_[j] = true;
            }
            value_[j] = lower_[j];
            cost_[j] = Scalar(lp.objective[j]);
        }
        for (int i = 0; i < rows_; ++i) {
            const int slack = structs_ + i;
            matrix_(i, slack) = Scalar(1);
            if (lp.relations[i] == Relation::Le) {
                state_[slack] = VarState::AtLower;  // [0, inf)
            } else {
                lower_finite_[slack] = false;  // (-inf, 0]
                upper_[slack] = Scalar(0);
                upper_finite_[slack] = true;
                state_[slack] = VarState::AtUpper;
            }
        }
        for (int i = 0; i < rows_; ++i) {
            const int art = structs_ + rows_ + i;
            upper_finite_[art] = false;  // [0, inf), pinned after phase I
        }

        basis_.assign(rows_, -1);
        for (int i = 0; i < rows_; ++i) {
            Scalar residual = rhs_[i];
            for (int j = 0; j < structs_; ++j) residual -= matrix_(i, j) * value_[j];
            const int slack = structs_ + i;
            const bool slack_ok = lp.relations[i] == Relation::Le
                                      ? residual >= -feas_tol_
                                      : residual <= feas_tol_;
            const int art = structs_ + rows_ + i;
            if (slack_ok) {
                basis_[i] = slack;
                state_[slack] = VarState::Basic;
                matrix_(i, art) = Scalar(1);  // unused artificial, kept well-defined
            } else {
                matrix_(i, art) = residual >= Scalar(0) ? Scalar(1) : Scalar(-1);
                basis_[i] = art;
                state_[art] = VarState::Basic;
            }
        }
        refactorize();
    }

    LpSolution run() {
        bool any_artificial = false;
        for (int i = 0; i < rows_; ++i) any_artificial |= basis_[i] >= structs_ + rows_;
        if (any_artificial) {
            std::vector<Scalar> phase1(cost_.size(), Scalar(0));
            for (int j = structs_ + rows_; j < total_; ++j) phase1[j] = Scalar(1);
            iterate(phase1, /*enter_limit=*/total_);
            Scalar infeasibility(0);
            for (int i = 0; i < rows_; ++i)
                if (basis_[i] >= structs_ + rows_) infeasibility += basic_value_[i];
            if (infeasibility > feas_tol_) return {LpStatus::Infeasible, {}, 0.0};
        }
        // Pin artificials at zero for phase II; they may stay basic at zero
        // but can never move again.
        for (int j = structs_ + rows_; j < total_; ++j) {
            lower_[j] = Scalar(0);
            lower_finite_[j] = true;
            upper_[j] = Scalar(0);
            upper_finite_[j] = true;
            value_[j] = Scalar(0);
        }

        iterate(cost_, /*enter_limit=*/structs_ + rows_);

        LpSolution solution;
        solution.status = LpStatus::Optimal;
        solution.x.resize(structs_);
        for (int j = 0; j < structs_; ++j) solution.x[j] = to_double(value_[j]);
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] < structs_) solution.x[basis_[i]] = to_double(basic_value_[i]);
        Scalar objective(0);
        for (int j = 0; j < structs_; ++j) {
            const Scalar xj = state_[j] == VarState::Basic ? basic_of(j) : value_[j];
            objective += cost_[j] * xj;
        }
        solution.z_value = to_double(objective);
        verify(solution);
        return solution;
    }

private:
    Scalar basic_of(int column) const {
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] == column) return basic_value_[i];
        return Scalar(0);
    }

    // Rebuild T = B^-1 A and the basic values from the original matrix.
    // Exact arithmetic never drifts, so only the double path needs this.
    void refactorize() {
        if constexpr (kExact) {
            if (tableau_.size() == 0) {
                tableau_ = matrix_;
                reduce_to_identity_basis();
            }
        } else {
            Eigen::MatrixXd basis_matrix(rows_, rows_);
            for (int i = 0; i < rows_; ++i) basis_matrix.col(i) = matrix_.col(basis_[i]);
            const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
            tableau_ = lu.solve(matrix_);
            Eigen::VectorXd shifted = rhs_;
            for (int j = 0; j < total_; ++j)
                if (state_[j] != VarState::Basic && value_[j] != 0.0)
                    shifted -= matrix_.col(j) * value_[j];
            basic_value_ = lu.solve(shifted);
        }
    }

    // Gauss-Jordan on the initial basis columns (slacks with +-1 signs and
    // artificials): scale each row by the basic column's coefficient and the
    // tableau is in basis form; basic values follow from the shifted rhs.
    void reduce_to_identity_basis() {
        basic_value_.resize(rows_);
        for (int i = 0; i < rows_; ++i) {
            const Scalar pivot = tableau_(i, basis_[i]);  // +-1 by construction
            if (pivot != Scalar(1)) tableau_.row(i) /= pivot;
            Scalar shifted = rhs_[i];
            for (int j = 0; j < total_; ++j)
                if (state_[j] != VarState::Basic && value_[j] != Scalar(0))
                    shifted -= matrix_(i, j) * value_[j];
            basic_value_[i] = pivot != Scalar(1) ? -shifted : shifted;
        }
    }

    // d_j = c_j - c_B . T_j for every column; basic columns read as zero.
    void rebuild_cost_row(const std::vector<Scalar>& cost) {
        cost_row_.resize(total_);
        for (int j = 0; j < total_; ++j) cost_row_[j] = cost[j];
        for (int i = 0; i < rows_; ++i) {
            const Scalar c = cost[basis_[i]];
            if (c != Scalar(0)) cost_row_ -= c * tableau_.row(i).transpose();
        }
    }

    void iterate(const std::vector<Scalar>& cost, int enter_limit) {
        rebuild_cost_row(cost);
        long pivots_since_refactor = 0;
        long degenerate_streak = 0;
        bool bland_mode = false;
        bool refreshed_at_optimum = false;
        const Scalar degen_tol = kExact ? Scalar(0) : Scalar(1e-12);
        while (true) {
            if (++pivots_ > opt_.max_pivots)
                throw SolverFailureError("simplex exceeded the pivot cap");
            if constexpr (!kExact) {
                if (++pivots_since_refactor >= kRefactorInterval) {
                    refactorize();
                    rebuild_cost_row(cost);
                    pivots_since_refactor = 0;
                }
            }

            // Entering column: Dantzig (largest dual violation) normally;
            // Bland's smallest-index rule during degenerate stretches, which
            // keeps the method free of cycles.
            int entering = -1;
            bool from_lower = true;
            Scalar best_violation(0);
            for (int j = 0; j < enter_limit; ++j) {
                if (state_[j] == VarState::Basic) continue;
                if (upper_finite_[j] && lower_finite_[j] && upper_[j] <= lower_[j])
                    continue;  // pinned
                const Scalar& reduced = cost_row_[j];
                Scalar violation(0);
                if (state_[j] == VarState::AtLower && reduced < -dual_tol_)
                    violation = -reduced;
                else if (state_[j] == VarState::AtUpper && reduced > dual_tol_)
                    violation = reduced;
                else
                    continue;
                if (bland_mode) {
                    entering = j;
                    from_lower = state_[j] == VarState::AtLower;
                    break;
                }
                if (violation > best_violation) {
                    best_violation = violation;
                    entering = j;
                    from_lower = state_[j] == VarState::AtLower;
                }
            }
            if (entering < 0) {
                // Certify optimality against a fresh factorization once;
                // a stale cost row must not end the phase early.
                refactorize();
                rebuild_cost_row(cost);
                if (refreshed_at_optimum) return;
                refreshed_at_optimum = true;
                pivots_since_refactor = 0;
                continue;
            }
            refreshed_at_optimum = false;
            const Scalar direction = from_lower ? Scalar(1) : Scalar(-1);

            // Ratio test: the first basic variable to hit a bound. Every row
            // with a nonzero coefficient blocks; skipping small ones would let
            // a long step push the skipped row's variable out of its range.
            // Exact ties resolve to the smallest basic index (Bland), and a
            // bound flip wins when it is at least as tight.
            bool bounded = false;
            Scalar best_limit(0);
            int leaving_row = -1;
            bool leaving_to_upper = false;
            for (int i = 0; i < rows_; ++i) {
                const Scalar g = direction * tableau_(i, entering);
                Scalar limit(0);
                bool to_upper;
                if (g > Scalar(0)) {
                    if (!lower_finite_[basis_[i]]) continue;
                    limit = (basic_value_[i] - lower_[basis_[i]]) / g;
                    to_upper = false;
                } else if (g < Scalar(0)) {
                    if (!upper_finite_[basis_[i]]) continue;
                    limit = (basic_value_[i] - upper_[basis_[i]]) / g;
                    to_upper = true;
                } else {
                    continue;
                }
                if (limit < Scalar(0)) limit = Scalar(0);
                if (!bounded || limit < best_limit ||
                    (limit == best_limit && leaving_row >= 0 &&
                     basis_[i] < basis_[leaving_row])) {
                    bounded = true;
                    best_limit = limit;
                    leaving_row = i;
                    leaving_to_upper = to_upper;
                }
            }
            const bool can_flip = lower_finite_[entering] && upper_finite_[entering];
            const Scalar flip_distance =
                can_flip ? upper_[entering] - lower_[entering] : Scalar(0);
            if (!bounded && !can_flip)
                throw SolverFailureError("objective is unbounded below");
            const bool flip = can_flip && (!bounded || flip_distance <= best_limit);
            const Scalar step = flip ? flip_distance : best_limit;

            if constexpr (!kExact) {
                // A pivot element under the tolerance may be stale roundoff:
                // refresh the tableau once and redo the iteration before
                // committing to it.
                if (!flip && std::abs(tableau_(leaving_row, entering)) < opt_.pivot_tol &&
                    pivots_since_refactor > 1) {
                    refactorize();
                    rebuild_cost_row(cost);
                    pivots_since_refactor = 0;
                    continue;
                }
            }

            if (step <= degen_tol) {
                if (++degenerate_streak > 25) bland_mode = true;
            } else {
                degenerate_streak = 0;
                bland_mode = false;
            }

            if (step != Scalar(0))
                for (int i = 0; i < rows_; ++i)
                    basic_value_[i] -= direction * step * tableau_(i, entering);

            if (flip) {
                state_[entering] = state_[entering] == VarState::AtLower
                                       ? VarState::AtUpper
                                       : VarState::AtLower;
                value_[entering] =
                    state_[entering] == VarState::AtLower ? lower_[entering] : upper_[entering];
                continue;
            }

            const int leaving = basis_[leaving_row];
            state_[leaving] = leaving_to_upper ? VarState::AtUpper : VarState::AtLower;
            value_[leaving] = leaving_to_upper ? upper_[leaving] : lower_[leaving];

            basic_value_[leaving_row] = value_[entering] + direction * step;
            basis_[leaving_row] = entering;
            state_[entering] = VarState::Basic;

            const Scalar pivot = tableau_(leaving_row, entering);
            tableau_.row(leaving_row) /= pivot;
            for (int i = 0; i < rows_; ++i) {
                if (i == leaving_row) continue;
                const Scalar factor = tableau_(i, entering);
                if (factor != Scalar(0)) tableau_.row(i) -= factor * tableau_.row(leaving_row);
            }
            const Scalar reduced_entering = cost_row_[entering];
            if (reduced_entering != Scalar(0))
                cost_row_ -= reduced_entering * tableau_.row(leaving_row).transpose();
        }
    }

    void verify(const LpSolution& solution) const {
        for (int i = 0; i < rows_; ++i) {
            const double lhs = lp_.coeffs.row(i).dot(solution.x);
            const double violation = lp_.relations[i] == Relation::Le
                                         ? lhs - lp_.rhs[i]
                                         : lp_.rhs[i] - lhs;
            if (violation > opt_.feas_tol)
                throw SolverFailureError("optimal basis violates row " + std::to_string(i) +
                                         " by " + std::to_string(violation));
        }
        for (int j = 0; j < structs_; ++j) {
            const double violation = std::max(lp_.lower[j] - solution.x[j],
                                              solution.x[j] - lp_.upper[j]);
            if (violation > opt_.feas_tol)
                throw SolverFailureError("optimal basis violates the bound of variable " +
                                         std::to_string(j) + " by " +
                                         std::to_string(violation));
        }
    }

    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    const LinearProgram& lp_;
    SimplexOptions opt_;
    int rows_;
    int structs_;
    int total_;
    Scalar dual_tol_;
    Scalar feas_tol_;
    Matrix matrix_;   // original columns: structural | slack | artificial
    Vector rhs_;
    Matrix tableau_;  // B^-1 * matrix_
    Vector cost_row_;  // reduced costs of the running phase
    std::vector<Scalar> lower_, upper_, value_, cost_;
    std::vector<bool> lower_finite_, upper_finite_;
    std::vector<VarState> state_;
    std::vector<int> basis_;
    Vector basic_value_;
    long pivots_ = 0;
};

}  // namespace

LpSolution solve(const LinearProgram& lp, const SimplexOptions& options) {
    if (lp.coeffs.rows() != lp.rhs.size() ||
        lp.coeffs.cols() != lp.objective.size() ||
        static_cast<Eigen::Index>(lp.relations.size()) != lp.rhs.size() ||
        lp.lower.size() != lp.objective.size() || lp.upper.size() != lp.objective.size())
        throw SolverFailureError("malformed linear program");
    if (!lp.coeffs.allFinite() || !lp.rhs.allFinite() || !lp.objective.allFinite())
        throw SolverFailureError("linear program has non-finite coefficients");
    for (Eigen::Index j = 0; j < lp.num_vars(); ++j)
        if (!std::isfinite(lp.lower[j]))
            throw SolverFailureError("structural variables need a finite lower bound");

    if (!options.force_exact) {
        try {
            return SimplexCore<double>(lp, options).run();
        } catch (const SolverFailureError&) {
            // Roundoff defeated the floating-point tableau (possible when one
            // row mixes coefficients across many orders of magnitude). Fall
            // through to the same pivot rules in exact rational arithmetic.
        }
    }
    return SimplexCore<Rational>(lp, options).run();
}

}  // namespace imin
