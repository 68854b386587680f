#ifndef IMIN_GRAPH_HPP
#define IMIN_GRAPH_HPP

#include <vector>

#include "imin/model.hpp"

namespace imin {

/// Feasible-link graph G = (V, E): (u, v) is an edge iff both directions are
/// reachable at maximum power.
struct NetworkGraph {
    int n = 0;
    EdgeSet edges;
};

/// Union-find over node ids with path compression and union by rank.
/// label() returns the smallest node id in a component, giving stable
/// component names across runs.
class ComponentSet {
public:
    explicit ComponentSet(int n);
    ComponentSet(int n, const EdgeSet& edges);

    int find(int x);
    bool unite(int x, int y);
    bool same(int x, int y) { return find(x) == find(y); }
    int count() const { return count_; }
    int size() const { return static_cast<int>(parent_.size()); }

    /// Smallest node id in x's component.
    int label(int x) { return min_id_[find(x)]; }

    /// Members of every component, keyed by label, label-sorted.
    std::vector<std::vector<int>> groups();

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
    std::vector<int> min_id_;
    int count_;
};

NetworkGraph build_graph(const Instance& inst);

ComponentSet components(int n, const EdgeSet& edges);

/// H = {(u, v) in E \ used : u and v in different components}, ascending.
std::vector<Edge> cross_edges(const NetworkGraph& graph, ComponentSet& comps,
                              const EdgeSet& used);

}  // namespace imin

#endif
