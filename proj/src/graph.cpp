#include "imin/graph.hpp"

#include <algorithm>
#include <map>

namespace imin {

ComponentSet::ComponentSet(int n)
    : parent_(n), rank_(n, 0), min_id_(n), count_(n) {
    for (int i = 0; i < n; ++i) {
        parent_[i] = i;
        min_id_[i] = i;
    }
}

ComponentSet::ComponentSet(int n, const EdgeSet& edges) : ComponentSet(n) {
    for (const Edge& e : edges) unite(e.u, e.v);
}

int ComponentSet::find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        int next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

bool ComponentSet::unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    min_id_[x] = std::min(min_id_[x], min_id_[y]);
    --count_;
    return true;
}

std::vector<std::vector<int>> ComponentSet::groups() {
    std::map<int, std::vector<int>> by_label;
    for (int i = 0; i < size(); ++i) by_label[label(i)].push_back(i);
    std::vector<std::vector<int>> out;
    out.reserve(by_label.size());
    for (auto& [lbl, members] : by_label) out.push_back(std::move(members));
    return out;
}

NetworkGraph build_graph(const Instance& inst) {
    NetworkGraph graph;
    graph.n = inst.size();
    for (int u = 0; u < graph.n; ++u) {
        for (int v = u + 1; v < graph.n; ++v) {
            if (try_min_power(inst, u, v) && try_min_power(inst, v, u))
                graph.edges.insert(Edge(u, v));
        }
    }
    return graph;
}

ComponentSet components(int n, const EdgeSet& edges) { return ComponentSet(n, edges); }

std::vector<Edge> cross_edges(const NetworkGraph& graph, ComponentSet& comps,
                              const EdgeSet& used) {
    std::vector<Edge> result;
    for (const Edge& e : graph.edges) {
        if (used.contains(e)) continue;
        if (comps.find(e.u) != comps.find(e.v)) result.push_back(e);
    }
    return result;
}

}  // namespace imin
