#include "imin/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "imin/errors.hpp"
#include "imin/graph.hpp"
#include "imin/rng.hpp"

namespace imin {

std::optional<OracleResult> brute_force_opt(const Instance& inst, int limit) {
    const NetworkGraph graph = build_graph(inst);
    const int m = static_cast<int>(graph.edges.size());
    if (m > limit)
        throw TooLargeError("feasibility graph has " + std::to_string(m) +
                            " edges, enumeration limit is " + std::to_string(limit));
    ComponentSet reachable = components(graph.n, graph.edges);
    if (reachable.count() > 1) return std::nullopt;

    const std::vector<Edge> edges(graph.edges.begin(), graph.edges.end());
    OracleResult best;
    best.opt = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        ++best.explored;
        if (std::popcount(mask) < graph.n - 1) continue;  // cannot span
        ComponentSet comps(graph.n);
        EdgeSet subset;
        for (int bit = 0; bit < m; ++bit) {
            if (mask >> bit & 1) {
                comps.unite(edges[bit].u, edges[bit].v);
                subset.insert(edges[bit]);
            }
        }
        if (comps.count() > 1) continue;
        const InterferenceReport report =
            interference(inst, power_assignment_from_edges(inst, subset));
        if (report.max < best.opt) {
            best.opt = report.max;
            best.best_edges = std::move(subset);
        }
    }
    return best;
}

Solution nearest_neighbor_baseline(const Instance& inst) {
    const NetworkGraph graph = build_graph(inst);
    ComponentSet reachable = components(graph.n, graph.edges);
    if (reachable.count() > 1)
        throw DisconnectedError(reachable.groups(), "feasibility graph is disconnected");

    Solution solution;
    // Phase 1: every node links to the neighbor it can reach most cheaply.
    for (int u = 0; u < graph.n; ++u) {
        int nearest = -1;
        double cheapest = std::numeric_limits<double>::infinity();
        for (int v = 0; v < graph.n; ++v) {
            if (v == u || !graph.edges.contains(Edge(u, v))) continue;
            const double power = min_power(inst, u, v);
            if (power < cheapest) {
                cheapest = power;
                nearest = v;
            }
        }
        if (nearest >= 0) solution.edges.insert(Edge(u, nearest));
    }

    // Phase 2: merge what remains along the cheapest cross-component links.
    ComponentSet comps = components(graph.n, solution.edges);
    while (comps.count() > 1) {
        Edge best(0, 1);
        double cheapest = std::numeric_limits<double>::infinity();
        bool found = false;
        for (const Edge& e : cross_edges(graph, comps, solution.edges)) {
            const double cost = std::max(min_power(inst, e.u, e.v), min_power(inst, e.v, e.u));
            if (cost < cheapest) {
                cheapest = cost;
                best = e;
                found = true;
            }
        }
        if (!found)
            throw InternalInvariantError("connected graph ran out of cross edges");
        solution.edges.insert(best);
        comps.unite(best.u, best.v);
    }

    solution.powers = power_assignment_from_edges(inst, solution.edges);
    solution.report = interference(inst, solution.powers);
    return solution;
}

Instance gen_exponential_chain(int n) {
    if (n < 1) throw GeneratorRangeError("chain needs at least one node");
    if (n > 40)
        throw GeneratorRangeError("chain positions beyond n = 40 overflow the power range");
    std::vector<Node> nodes(n);
    double span = 0.0;
    for (int i = 0; i < n; ++i) {
        const double coordinate = std::exp2(i) - 1.0;  // gaps 2^0, 2^1, ...
        nodes[i].id = i;
        nodes[i].position = Eigen::VectorXd::Constant(1, coordinate);
        span = coordinate;
    }
    const double xi_max = std::max(2.0 * span * span, 1.0);
    for (Node& node : nodes) node.xi_max = xi_max;
    return Instance(std::move(nodes), PathLoss{2.0}, 1.0);
}

Instance gen_random_geometric(int n, std::uint64_t seed, double side, double alpha,
                              double beta_acc, double xi_max) {
    if (n < 1) throw GeneratorRangeError("need at least one node");
    std::mt19937_64 rng(seed);
    std::vector<Node> nodes(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd point(2);
        while (true) {
            point[0] = uniform53(rng) * side;
            point[1] = uniform53(rng) * side;
            bool coincident = false;
            for (int j = 0; j < i; ++j)
                coincident |= (*nodes[j].position - point).norm() == 0.0;
            if (!coincident) break;
        }
        nodes[i].id = i;
        nodes[i].position = point;
        nodes[i].xi_max = xi_max;
    }
    return Instance(std::move(nodes), PathLoss{alpha}, beta_acc);
}

}  // namespace imin
