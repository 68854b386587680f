#ifndef IMIN_MODEL_HPP
#define IMIN_MODEL_HPP

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "imin/errors.hpp"

namespace imin {

/// Absolute tolerance for comparisons against thresholds and power bounds.
inline constexpr double kThresholdTol = 1e-9;

struct Node {
    int id = 0;
    std::optional<Eigen::VectorXd> position;  // meters; present for geometric models
    double xi_max = 0.0;                      // maximum transmission power, > 0
};

/// phi_u(v, xi) = xi / d(u, v)^alpha.
struct PathLoss {
    double alpha = 2.0;  // path-loss exponent, in [2, 6]
};

/// phi_u(v, xi) = xi * gain(u, v).
struct ExplicitGain {
    Eigen::MatrixXd gain;  // n x n, non-negative, zero diagonal
};

/// Disk-model reduction: phi_u(v, xi) = beta_acc when d(u, v)^2 <= xi / beta_acc, else 0.
struct UnitDisk {};

using SignalModel = std::variant<PathLoss, ExplicitGain, UnitDisk>;

/// An undirected node pair, stored with u < v.
struct Edge {
    int u;
    int v;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}
    auto operator<=>(const Edge&) const = default;
};

using EdgeSet = std::set<Edge>;

/// Immutable problem instance: nodes, a signal model, and the acceptance
/// threshold beta_acc. Construction validates all invariants; every operation
/// downstream is a pure function of this object.
class Instance {
public:
    Instance(std::vector<Node> nodes, SignalModel signal, double beta_acc);

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const SignalModel& signal() const { return signal_; }
    double beta_acc() const { return beta_acc_; }

    /// Set when beta_acc < 1: the algorithm's bounds assume beta >= 1, but
    /// sub-threshold instances are still accepted.
    bool beta_below_one() const { return beta_below_one_; }

    /// Pairwise distance, cached at construction for geometric models.
    double distance(int u, int v) const { return dist_(u, v); }
    bool has_positions() const { return dist_.size() > 0; }

private:
    std::vector<Node> nodes_;
    SignalModel signal_;
    double beta_acc_;
    bool beta_below_one_;
    Eigen::MatrixXd dist_;
};

struct PowerAssignment {
    Eigen::VectorXd xi;  // per node, each in [0, xi_max]
};

struct InterferenceReport {
    Eigen::VectorXd per_node;  // I(u) for every node
    double max = 0.0;          // I(V)
};

/// phi_u(v, xi): signal strength of u on v at power xi.
double signal_strength(const Instance& inst, int u, int v, double xi);

/// Smallest xi in [0, xi_max[u]] with phi_u(v, xi) >= beta_acc, or nullopt.
std::optional<double> try_min_power(const Instance& inst, int u, int v);

/// Like try_min_power but throws UnreachableError when no feasible power exists.
double min_power(const Instance& inst, int u, int v);

/// I(u) = sum over v != u of phi_v(u, xi[v]), and the network maximum I(V).
InterferenceReport interference(const Instance& inst, const PowerAssignment& powers);

/// xi[u] = max over neighbors v of min_power(u, v); isolated nodes get 0.
PowerAssignment power_assignment_from_edges(const Instance& inst, const EdgeSet& edges);

}  // namespace imin

#endif
