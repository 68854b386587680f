#include "imin/minimizer.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "imin/errors.hpp"

namespace imin {

namespace {

std::string describe_components(std::vector<std::vector<int>> groups) {
    std::string text;
    for (const auto& group : groups) {
        text += text.empty() ? "{" : ", {";
        for (size_t i = 0; i < group.size(); ++i)
            text += (i ? ", " : "") + std::to_string(group[i]);
        text += "}";
    }
    return text;
}

int ceil_log2(int n) {
    return n <= 1 ? 0 : std::bit_width(static_cast<unsigned>(n - 1));
}

}  // namespace

CoverMapping build_cover_instance(const Instance& inst, const NetworkGraph& graph,
                                  ComponentSet& comps, const EdgeSet& used) {
    if (comps.count() < 2)
        throw InternalInvariantError("cover construction needs at least two components");
    const std::vector<Edge> candidates = cross_edges(graph, comps, used);
    if (candidates.empty())
        throw DisconnectedError(comps.groups(),
                                "no cross-component edges remain; components: " +
                                    describe_components(comps.groups()));

    const int n = inst.size();
    std::map<int, int> label_index;  // component label -> S1 element
    for (int u = 0; u < n; ++u) label_index.emplace(comps.label(u), 0);
    int next = 0;
    for (auto& [label, idx] : label_index) idx = next++;

    CoverMapping mapping;
    mapping.wmpmpsc.s1_count = static_cast<int>(label_index.size());
    mapping.wmpmpsc.s2_count = n;
    mapping.edge_of_set = candidates;

    double w_max = 0.0;
    for (const Edge& e : candidates) {
        // Both endpoints transmit at exactly the acceptance threshold; the
        // weight on node t is the interference this link adds there. A node
        // never counts its own transmission.
        const double xi_uv = min_power(inst, e.u, e.v);
        const double xi_vu = min_power(inst, e.v, e.u);
        WeightedSet set;
        set.covers = {label_index.at(comps.label(e.u)), label_index.at(comps.label(e.v))};
        std::sort(set.covers.begin(), set.covers.end());
        for (int t = 0; t < n; ++t) {
            double weight = 0.0;
            if (t != e.u) weight += signal_strength(inst, e.u, t, xi_uv);
            if (t != e.v) weight += signal_strength(inst, e.v, t, xi_vu);
            if (weight > 0.0) {
                set.weights.emplace_back(t, weight);
                w_max = std::max(w_max, weight);
            }
        }
        mapping.wmpmpsc.sets.push_back(std::move(set));
    }

    mapping.w_max = w_max;
    for (WeightedSet& set : mapping.wmpmpsc.sets)
        for (auto& [element, weight] : set.weights) weight /= w_max;
    return mapping;
}

Solution minimize_interference(const Instance& inst, const IterationHook& hook) {
    const NetworkGraph graph = build_graph(inst);
    ComponentSet reachable = components(graph.n, graph.edges);
    if (reachable.count() > 1)
        throw DisconnectedError(reachable.groups(),
                                "feasibility graph is disconnected; components: " +
                                    describe_components(reachable.groups()));

    Solution solution;
    ComponentSet comps(graph.n);
    const int iteration_cap = 2 * ceil_log2(std::max(graph.n, 1));
    int iteration = 0;
    while (comps.count() > 1) {
        ++iteration;
        if (iteration > iteration_cap)
            throw InternalInvariantError(
                "iteration count exceeded twice the component-halving bound");

        IterationLog log;
        log.iteration = iteration;
        log.components_before = comps.count();

        CoverMapping mapping = build_cover_instance(inst, graph, comps, solution.edges);
        LpSolution lp_solution;
        DerandTrace trace;
        const Cover cover = solve_wmpmpsc(mapping.wmpmpsc, &lp_solution, &trace);
        for (int j : cover.chosen) {
            const Edge& e = mapping.edge_of_set[j];
            solution.edges.insert(e);
            comps.unite(e.u, e.v);
        }

        log.components_after = comps.count();
        log.h_size = static_cast<int>(mapping.edge_of_set.size());
        log.z_prime = cover.lp_value;
        log.sets_chosen = static_cast<int>(cover.chosen.size());
        log.normalized_max_weight = cover.max_weight;
        log.raw_max_weight = cover.max_weight * mapping.w_max;
        log.w_max = mapping.w_max;
        solution.logs.push_back(log);

        if (hook) hook(mapping, lp_solution, trace, cover);
    }

    solution.powers = power_assignment_from_edges(inst, solution.edges);
    solution.report = interference(inst, solution.powers);
    return solution;
}

AccountingReport interference_accounting(const Solution& solution) {
    AccountingReport report;
    for (const IterationLog& log : solution.logs) {
        report.per_iteration.push_back(log.raw_max_weight);
        report.total += log.raw_max_weight;
    }
    // Each node's final power is the max of its per-link threshold powers,
    // while the per-iteration weights sum them, so the accumulated bound
    // dominates the realized interference.
    if (solution.report.max > report.total + 1e-6)
        throw InternalInvariantError("final interference exceeds the accumulated bound");
    return report;
}

}  // namespace imin
