// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <queue>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace asymm {

using vertex = int;
using edge = std::pair<vertex, vertex>;

/// Finite simple undirected graph on vertices 0..n-1. Immutable after
/// construction; the edge list is kept sorted with u < v in every pair,
/// and the index of an edge in that list is its stable identity.
class graph {
public:
    graph() = default;

    graph(int n, std::vector<edge> raw_edges) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
        if (n < 0) throw bad_params_error("negative vertex count");
        for (auto& [u, v] : raw_edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw vertex_out_of_range_error("edge endpoint out of range");
            if (u == v) throw loop_edge_error("loop edge rejected");
            if (u > v) std::swap(u, v);
        }
        std::sort(raw_edges.begin(), raw_edges.end());
        raw_edges.erase(std::unique(raw_edges.begin(), raw_edges.end()), raw_edges.end());
        edges_ = std::move(raw_edges);
        for (const auto& [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<edge>& edges() const { return edges_; }
    const std::vector<vertex>& neighbors(vertex v) const { return adj_[v]; }
    int degree(vertex v) const { return static_cast<int>(adj_[v].size()); }

    bool adjacent(vertex u, vertex v) const {
        if (u == v) return false;
        const auto& nb = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        vertex other = (&nb == &adj_[u]) ? v : u;
        return std::binary_search(nb.begin(), nb.end(), other);
    }

    /// Index of edge {u,v} in the sorted edge list, or -1 when absent.
    int edge_index(vertex u, vertex v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), edge{u, v});
        if (it == edges_.end() || *it != edge{u, v}) return -1;
        return static_cast<int>(it - edges_.begin());
    }

    bool operator==(const graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

private:
    int n_ = 0;
    std::vector<edge> edges_;
    std::vector<std::vector<vertex>> adj_;
};

inline graph build_graph(int n, std::vector<edge> edges) { return graph(n, std::move(edges)); }

struct graph_stats {
    int delta = 0;    // minimum degree
    int max_degree = 0;
    bool connected = false;
    bool is_k2 = false;
};

inline std::vector<std::vector<vertex>> connected_components(const graph& g) {
    int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<vertex>> blocks;
    for (vertex s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(blocks.size());
        blocks.emplace_back();
        std::queue<vertex> q;
        q.push(s);
        comp[s] = id;
        while (!q.empty()) {
            vertex v = q.front();
            q.pop();
            blocks[id].push_back(v);
            for (vertex w : g.neighbors(v))
                if (comp[w] < 0) {
                    comp[w] = id;
                    q.push(w);
                }
        }
        std::sort(blocks[id].begin(), blocks[id].end());
    }
    return blocks;
}

inline graph_stats stats(const graph& g) {
    graph_stats s;
    int n = g.vertex_count();
    if (n == 0) {
        s.connected = true;
        return s;
    }
    s.delta = g.degree(0);
    s.max_degree = g.degree(0);
    for (vertex v = 1; v < n; ++v) {
        s.delta = std::min(s.delta, g.degree(v));
        s.max_degree = std::max(s.max_degree, g.degree(v));
    }
    s.connected = connected_components(g).size() == 1;
    s.is_k2 = (n == 2 && g.edge_count() == 1);
    return s;
}

/// True when the coloring procedure applies: connected, 2*delta >= Delta,
/// and not K2. The one-vertex graph counts (its empty coloring is
/// asymmetric).
inline bool satisfies_hypothesis(const graph& g) {
    if (g.vertex_count() == 0) return false;
    if (g.vertex_count() == 1) return true;
    graph_stats s = stats(g);
    return s.connected && 2 * s.delta >= s.max_degree && !s.is_k2;
}

/// Vertices of a connected graph grouped by distance from a root.
/// Every edge joins vertices on the same level or on consecutive levels.
struct level_structure {
    vertex root = 0;
    std::vector<int> level_of;
    std::vector<std::vector<vertex>> levels;
};

inline level_structure bfs_levels(const graph& g, vertex root) {
    int n = g.vertex_count();
    if (root < 0 || root >= n) throw vertex_out_of_range_error("root out of range");
    level_structure ls;
    ls.root = root;
    ls.level_of.assign(n, -1);
    ls.level_of[root] = 0;
    std::queue<vertex> q;
    q.push(root);
    while (!q.empty()) {
        vertex v = q.front();
        q.pop();
        if (static_cast<int>(ls.levels.size()) <= ls.level_of[v]) ls.levels.emplace_back();
        ls.levels[ls.level_of[v]].push_back(v);
        for (vertex w : g.neighbors(v))
            if (ls.level_of[w] < 0) {
                ls.level_of[w] = ls.level_of[v] + 1;
                q.push(w);
            }
    }
    for (vertex v = 0; v < n; ++v)
        if (ls.level_of[v] < 0) throw disconnected_error("graph is not connected");
    for (auto& lvl : ls.levels) std::sort(lvl.begin(), lvl.end());
    return ls;
}

/// Subgraph induced by `vs`, relabeled onto 0..|vs|-1 preserving the
/// original vertex order. `old_of_new[i]` is the original label of i.
struct induced_subgraph_result {
    graph subgraph;
    std::vector<vertex> old_of_new;

    vertex new_of_old(vertex old) const {
        auto it = std::lower_bound(old_of_new.begin(), old_of_new.end(), old);
        if (it == old_of_new.end() || *it != old) return -1;
        return static_cast<vertex>(it - old_of_new.begin());
    }
};

inline induced_subgraph_result induced_subgraph(const graph& g, std::vector<vertex> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (vertex v : vs)
        if (v < 0 || v >= g.vertex_count()) throw vertex_out_of_range_error("induced vertex out of range");
    induced_subgraph_result r;
    r.old_of_new = vs;
    std::vector<edge> es;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.adjacent(vs[i], vs[j])) es.emplace_back(static_cast<vertex>(i), static_cast<vertex>(j));
    r.subgraph = graph(static_cast<int>(vs.size()), std::move(es));
    return r;
}

} // namespace asymm
