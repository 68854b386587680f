#include "imin/model.hpp"

#include <cmath>
#include <string>

namespace imin {

namespace {

std::string pair_str(int u, int v) {
    return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

Instance::Instance(std::vector<Node> nodes, SignalModel signal, double beta_acc)
    : nodes_(std::move(nodes)),
      signal_(std::move(signal)),
      beta_acc_(beta_acc),
      beta_below_one_(beta_acc < 1.0) {
    const int n = static_cast<int>(nodes_.size());
    if (n == 0) throw InvalidInstanceError("instance needs at least one node");
    if (!(beta_acc_ > 0.0)) throw InvalidInstanceError("beta_acc must be positive");
    for (int i = 0; i < n; ++i) {
        if (nodes_[i].id != i)
            throw InvalidInstanceError("node ids must be unique and dense 0..n-1");
        if (!(nodes_[i].xi_max > 0.0))
            throw InvalidInstanceError("xi_max must be positive (node " +
                                       std::to_string(i) + ")");
    }

    const bool geometric = !std::holds_alternative<ExplicitGain>(signal_);
    if (geometric) {
        Eigen::Index dim = -1;
        for (const Node& node : nodes_) {
            if (!node.position)
                throw InvalidInstanceError("geometric models need a position on every node");
            if (dim < 0) dim = node.position->size();
            if (node.position->size() != dim)
                throw InvalidInstanceError("positions must share one dimension");
        }
        dist_.resize(n, n);
        dist_.setZero();
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                const double d = (*nodes_[u].position - *nodes_[v].position).norm();
                if (!(d > 0.0))
                    throw InvalidInstanceError("coincident nodes " + pair_str(u, v) +
                                               ": distances must be positive");
                dist_(u, v) = d;
                dist_(v, u) = d;
            }
        }
    }

    if (const auto* pl = std::get_if<PathLoss>(&signal_)) {
        if (!(pl->alpha >= 2.0 && pl->alpha <= 6.0))
            throw InvalidInstanceError("path-loss exponent must lie in [2, 6]");
    } else if (const auto* eg = std::get_if<ExplicitGain>(&signal_)) {
        const Eigen::MatrixXd& g = eg->gain;
        if (g.rows() != n || g.cols() != n)
            throw InvalidInstanceError("gain matrix must be n x n");
        bool any_positive = false;
        for (int u = 0; u < n; ++u) {
            if (g(u, u) != 0.0)
                throw InvalidInstanceError("gain diagonal must be zero");
            for (int v = 0; v < n; ++v) {
                if (g(u, v) < 0.0)
                    throw InvalidInstanceError("gains must be non-negative");
                if (u != v && g(u, v) > 0.0) any_positive = true;
            }
        }
        if (!any_positive)
            throw InvalidInstanceError("gain matrix needs at least one positive entry");
    }
}

double signal_strength(const Instance& inst, int u, int v, double xi) {
    if (u == v) throw SelfSignalError("self-signal phi_u(u, .) is undefined");
    const double cap = inst.nodes()[u].xi_max;
    if (xi < -kThresholdTol || xi > cap + kThresholdTol)
        throw PowerRangeError("power " + std::to_string(xi) + " outside [0, " +
                              std::to_string(cap) + "] for node " + std::to_string(u));
    return std::visit(
        [&](const auto& model) -> double {
            using M = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<M, PathLoss>) {
                return xi / std::pow(inst.distance(u, v), model.alpha);
            } else if constexpr (std::is_same_v<M, ExplicitGain>) {
                return xi * model.gain(u, v);
            } else {
                const double d = inst.distance(u, v);
                return d * d <= xi / inst.beta_acc() ? inst.beta_acc() : 0.0;
            }
        },
        inst.signal());
}

std::optional<double> try_min_power(const Instance& inst, int u, int v) {
    if (u == v) throw SelfSignalError("self-signal phi_u(u, .) is undefined");
    const double beta = inst.beta_acc();
    const double cap = inst.nodes()[u].xi_max;
    double need = 0.0;
    if (const auto* pl = std::get_if<PathLoss>(&inst.signal())) {
        need = beta * std::pow(inst.distance(u, v), pl->alpha);
    } else if (const auto* eg = std::get_if<ExplicitGain>(&inst.signal())) {
        const double g = eg->gain(u, v);
        if (g <= 0.0) return std::nullopt;
        need = beta / g;
    } else {
        const double d = inst.distance(u, v);
        need = beta * d * d;
    }
    if (need > cap + kThresholdTol) return std::nullopt;
    return std::min(need, cap);
}

double min_power(const Instance& inst, int u, int v) {
    if (auto xi = try_min_power(inst, u, v)) return *xi;
    throw UnreachableError(u, v,
                           "node " + std::to_string(u) + " cannot reach node " +
                               std::to_string(v) + " at any feasible power");
}

InterferenceReport interference(const Instance& inst, const PowerAssignment& powers) {
    const int n = inst.size();
    if (powers.xi.size() != n)
        throw InvalidInstanceError("power assignment size mismatch");
    for (int u = 0; u < n; ++u) {
        const double xi = powers.xi[u];
        if (xi < -kThresholdTol || xi > inst.nodes()[u].xi_max + kThresholdTol)
            throw PowerRangeError("power out of range for node " + std::to_string(u));
    }
    InterferenceReport report;
    report.per_node = Eigen::VectorXd::Zero(n);
    for (int t = 0; t < n; ++t) {
        double acc = 0.0;
        for (int v = 0; v < n; ++v) {
            if (v == t) continue;
            acc += signal_strength(inst, v, t, powers.xi[v]);
        }
        report.per_node[t] = acc;
    }
    report.max = n > 0 ? report.per_node.maxCoeff() : 0.0;
    return report;
}

PowerAssignment power_assignment_from_edges(const Instance& inst, const EdgeSet& edges) {
    PowerAssignment powers;
    powers.xi = Eigen::VectorXd::Zero(inst.size());
    for (const Edge& e : edges) {
        powers.xi[e.u] = std::max(powers.xi[e.u], min_power(inst, e.u, e.v));
        powers.xi[e.v] = std::max(powers.xi[e.v], min_power(inst, e.v, e.u));
    }
    return powers;
}

}  // namespace imin
