#ifndef IMIN_MINIMIZER_HPP
#define IMIN_MINIMIZER_HPP

#include <functional>
#include <optional>
#include <vector>

#include "imin/graph.hpp"
#include "imin/model.hpp"
#include "imin/wmpmpsc.hpp"

namespace imin {

/// The cover problem of one iteration plus the mapping back to graph edges.
/// Weights are normalized into [0, 1]; w_max restores raw interference units.
struct CoverMapping {
    WmpmpscInstance wmpmpsc;
    std::vector<Edge> edge_of_set;
    double w_max = 0.0;
};

struct IterationLog {
    int iteration = 0;
    int components_before = 0;
    int components_after = 0;
    int h_size = 0;                     // |H|, cross-component candidate edges
    double z_prime = 0.0;               // fractional optimum, normalized units
    int sets_chosen = 0;
    double normalized_max_weight = 0.0;
    double raw_max_weight = 0.0;        // normalized_max_weight * w_max
    double w_max = 0.0;
};

struct Solution {
    EdgeSet edges;
    PowerAssignment powers;
    InterferenceReport report;
    std::vector<IterationLog> logs;
    std::optional<double> opt_hint;
};

/// S1 = component labels, S2 = all nodes; one set per cross edge (u, v)
/// covering its two component labels, weighted by the interference the link
/// adds at every node when both endpoints transmit at exactly the threshold
/// power. A node's own transmission is excluded from its weight.
CoverMapping build_cover_instance(const Instance& inst, const NetworkGraph& graph,
                                  ComponentSet& comps, const EdgeSet& used);

/// Called once per iteration with the subproblem and its solve artifacts;
/// used by tests to audit estimator traces without re-driving the loop.
using IterationHook = std::function<void(const CoverMapping&, const LpSolution&,
                                         const DerandTrace&, const Cover&)>;

/// Iterates cover construction and WMPMPSC rounding until the chosen edges
/// connect the graph, then extracts minimum powers and the interference
/// report. Deterministic end to end.
Solution minimize_interference(const Instance& inst, const IterationHook& hook = {});

/// Per-iteration raw_max_weight values and their sum: the algorithm's
/// pessimistic accumulated-interference bound. Verifies the true I(V) never
/// exceeds the accumulated bound.
struct AccountingReport {
    std::vector<double> per_iteration;
    double total = 0.0;
};

AccountingReport interference_accounting(const Solution& solution);

}  // namespace imin

#endif
