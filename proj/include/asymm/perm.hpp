// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace asymm {

struct permutation {
    std::vector<vertex> image;

    static permutation identity(int n) {
        permutation p;
        p.image.resize(static_cast<std::size_t>(n));
        std::iota(p.image.begin(), p.image.end(), 0);
        return p;
    }

    int degree() const { return static_cast<int>(image.size()); }
    vertex operator()(vertex v) const { return image[v]; }

    bool is_identity() const {
        for (std::size_t i = 0; i < image.size(); ++i)
            if (image[i] != static_cast<vertex>(i)) return false;
        return true;
    }

    /// this followed by other: w -> other(this(w))
    permutation then(const permutation& other) const {
        permutation r;
        r.image.resize(image.size());
        for (std::size_t i = 0; i < image.size(); ++i) r.image[i] = other.image[image[i]];
        return r;
    }

    auto operator<=>(const permutation&) const = default;
};

/// A set of color-preserving automorphisms. When `complete` the list is
/// the whole group and `order` is set; otherwise enumeration stopped at
/// `element_cap` and the list is only a lower bound for the group.
struct aut_group {
    int n = 0;
    std::vector<permutation> generators;
    bool complete = false;
    std::size_t element_cap = 0;
    std::optional<std::uint64_t> order;
};

struct orbit_partition {
    std::vector<std::vector<vertex>> blocks; // sorted internally, ordered by minimum element
    std::vector<int> block_of;

    bool singleton(vertex v) const { return blocks[block_of[v]].size() == 1; }
    bool same_block(vertex u, vertex v) const { return block_of[u] == block_of[v]; }
};

inline constexpr std::size_t default_element_cap = 1'000'000;

namespace detail {

struct union_find {
    std::vector<int> parent;

    explicit union_find(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

inline orbit_partition partition_from_uf(union_find& uf, int n) {
    orbit_partition p;
    p.block_of.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> root_block(static_cast<std::size_t>(n), -1);
    for (vertex v = 0; v < n; ++v) {
        int r = uf.find(v);
        if (root_block[r] < 0) {
            root_block[r] = static_cast<int>(p.blocks.size());
            p.blocks.emplace_back();
        }
        p.block_of[v] = root_block[r];
        p.blocks[root_block[r]].push_back(v);
    }
    return p; // blocks come out ordered by minimum element, each sorted
}

/// Backtracking search for color-preserving automorphisms of a partially
/// edge-colored graph, with an optional set of pinned vertices. Vertices
/// are pruned by an iterated invariant: degree, incident color counts,
/// distances to the pinned vertices, and two rounds of neighborhood
/// refinement.
class aut_searcher {
public:
    aut_searcher(const graph& g, const edge_coloring& col, const std::vector<vertex>& fixed) : g_(g), n_(g.vertex_count()), fixed_(fixed) {
        if (static_cast<int>(col.size()) != g.edge_count()) throw bad_params_error("coloring size does not match edge list");
        mat_.assign(static_cast<std::size_t>(n_) * n_, -1);
        const auto& es = g.edges();
        for (std::size_t i = 0; i < es.size(); ++i) {
            auto [u, v] = es[i];
            auto c = static_cast<std::int8_t>(col[i]);
            mat_[static_cast<std::size_t>(u) * n_ + v] = c;
            mat_[static_cast<std::size_t>(v) * n_ + u] = c;
        }
        compute_classes(col);
    }

    /// All automorphisms, up to `cap` of them. Returns false on overflow.
    bool enumerate(std::size_t cap, std::vector<permutation>& out) {
        out.clear();
        if (n_ == 0) {
            out.push_back(permutation{});
            return true;
        }
        order_ = bfs_order(best_start());
        init_assignment();
        bool complete = true;
        dfs_all(0, cap, out, complete);
        return complete;
    }

    /// Lexicographically first non-identity automorphism, if any.
    std::optional<permutation> first_nontrivial() {
        order_.resize(static_cast<std::size_t>(n_));
        std::iota(order_.begin(), order_.end(), 0);
        init_assignment();
        std::optional<permutation> found;
        dfs_first(0, true, found);
        return found;
    }

    /// Any automorphism mapping u to v (with the pinned vertices fixed).
    std::optional<permutation> find_mapping(vertex u, vertex v) {
        if (class_of_[u] != class_of_[v]) return std::nullopt;
        order_ = bfs_order(u);
        init_assignment();
        img_[u] = v;
        used_[v] = true;
        std::optional<permutation> found;
        dfs_any(0, found);
        return found;
    }

    const std::vector<std::uint32_t>& classes() const { return class_of_; }

private:
    const graph& g_;
    int n_;
    std::vector<vertex> fixed_;
    std::vector<std::int8_t> mat_;
    std::vector<std::uint32_t> class_of_;
    std::vector<std::vector<vertex>> class_members_;
    std::vector<vertex> order_;
    std::vector<vertex> img_;
    std::vector<bool> used_;

    std::int8_t at(vertex a, vertex b) const { return mat_[static_cast<std::size_t>(a) * n_ + b]; }

    void compute_classes(const edge_coloring& col) {
        (void)col;
        // base invariant: (degree, incident color counts, distance profile to pinned vertices)
        std::vector<std::vector<int>> inv(static_cast<std::size_t>(n_));
        for (vertex v = 0; v < n_; ++v) {
            int cnt[4] = {0, 0, 0, 0};
            for (vertex w : g_.neighbors(v)) ++cnt[at(v, w)];
            inv[v] = {g_.degree(v), cnt[0], cnt[1], cnt[2], cnt[3]};
        }
        for (vertex f : fixed_) {
            std::vector<int> dist(static_cast<std::size_t>(n_), -1);
            std::queue<vertex> q;
            dist[f] = 0;
            q.push(f);
            while (!q.empty()) {
                vertex v = q.front();
                q.pop();
                for (vertex w : g_.neighbors(v))
                    if (dist[w] < 0) {
                        dist[w] = dist[v] + 1;
                        q.push(w);
                    }
            }
            for (vertex v = 0; v < n_; ++v) inv[v].push_back(dist[v]);
        }
        // pinned vertices may only map to themselves
        for (vertex f : fixed_) inv[f].push_back(-100 - f);

        assign_classes(inv);
        // two rounds of neighborhood refinement: append the sorted multiset
        // of (edge color, neighbor class) pairs
        for (int round = 0; round < 2; ++round) {
            std::vector<std::vector<int>> next(static_cast<std::size_t>(n_));
            for (vertex v = 0; v < n_; ++v) {
                std::vector<int> sig;
                sig.push_back(static_cast<int>(class_of_[v]));
                std::vector<std::pair<int, int>> nb;
                for (vertex w : g_.neighbors(v)) nb.emplace_back(at(v, w), static_cast<int>(class_of_[w]));
                std::sort(nb.begin(), nb.end());
                for (auto [c, k] : nb) {
                    sig.push_back(c);
                    sig.push_back(k);
                }
                next[v] = std::move(sig);
            }
            assign_classes(next);
        }
        class_members_.assign(class_members_count(), {});
        for (vertex v = 0; v < n_; ++v) class_members_[class_of_[v]].push_back(v);
    }

    std::size_t class_members_count() const {
        std::uint32_t mx = 0;
        for (auto c : class_of_) mx = std::max(mx, c);
        return class_of_.empty() ? 0 : static_cast<std::size_t>(mx) + 1;
    }

    void assign_classes(const std::vector<std::vector<int>>& inv) {
        std::vector<int> idx(static_cast<std::size_t>(n_));
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return inv[a] < inv[b]; });
        class_of_.assign(static_cast<std::size_t>(n_), 0);
        std::uint32_t cls = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i > 0 && inv[idx[i]] != inv[idx[i - 1]]) ++cls;
            class_of_[idx[i]] = cls;
        }
    }

    vertex best_start() const {
        if (!fixed_.empty()) return fixed_.front();
        vertex best = 0;
        for (vertex v = 1; v < n_; ++v)
            if (g_.degree(v) > g_.degree(best)) best = v;
        return best;
    }

    std::vector<vertex> bfs_order(vertex start) const {
        std::vector<vertex> order;
        std::vector<bool> seen(static_cast<std::size_t>(n_), false);
        auto push_component = [&](vertex s) {
            std::queue<vertex> q;
            q.push(s);
            seen[s] = true;
            while (!q.empty()) {
                vertex v = q.front();
                q.pop();
                order.push_back(v);
                for (vertex w : g_.neighbors(v))
                    if (!seen[w]) {
                        seen[w] = true;
                        q.push(w);
                    }
            }
        };
        for (vertex f : fixed_)
            if (!seen[f]) push_component(f);
        if (start >= 0 && start < n_ && !seen[start]) push_component(start);
        for (vertex v = 0; v < n_; ++v)
            if (!seen[v]) push_component(v);
        return order;
    }

    void init_assignment() {
        img_.assign(static_cast<std::size_t>(n_), -1);
        used_.assign(static_cast<std::size_t>(n_), false);
    }

    bool consistent(std::size_t pos, vertex v, vertex w) const {
        for (std::size_t j = 0; j < pos; ++j) {
            vertex u = order_[j];
            if (at(v, u) != at(w, img_[u])) return false;
        }
        return true;
    }

    void dfs_all(std::size_t pos, std::size_t cap, std::vector<permutation>& out, bool& complete) {
        if (!complete) return;
        if (pos == order_.size()) {
            if (out.size() >= cap) {
                complete = false;
                return;
            }
            out.push_back(permutation{img_});
            return;
        }
        vertex v = order_[pos];
        for (vertex w : class_members_[class_of_[v]]) {
            if (used_[w] || !consistent(pos, v, w)) continue;
            img_[v] = w;
            used_[w] = true;
            dfs_all(pos + 1, cap, out, complete);
            used_[w] = false;
            img_[v] = -1;
            if (!complete) return;
        }
    }

    void dfs_first(std::size_t pos, bool identity_prefix, std::optional<permutation>& found) {
        if (found) return;
        if (pos == order_.size()) {
            if (!identity_prefix) found = permutation{img_};
            return;
        }
        vertex v = order_[pos];
        for (vertex w : class_members_[class_of_[v]]) {
            if (used_[w] || !consistent(pos, v, w)) continue;
            img_[v] = w;
            used_[w] = true;
            dfs_first(pos + 1, identity_prefix && w == v, found);
            used_[w] = false;
            img_[v] = -1;
            if (found) return;
        }
    }

    void dfs_any(std::size_t pos, std::optional<permutation>& found) {
        if (found) return;
        if (pos == order_.size()) {
            found = permutation{img_};
            return;
        }
        vertex v = order_[pos];
        if (img_[v] >= 0) { // preassigned (pinned or the requested pair)
            if (consistent(pos, v, img_[v])) dfs_any(pos + 1, found);
            return;
        }
        for (vertex w : class_members_[class_of_[v]]) {
            if (used_[w] || !consistent(pos, v, w)) continue;
            img_[v] = w;
            used_[w] = true;
            dfs_any(pos + 1, found);
            used_[w] = false;
            img_[v] = -1;
            if (found) return;
        }
    }

    friend std::optional<permutation> find_mapping_with_preassignment(aut_searcher&, const std::vector<std::pair<vertex, vertex>>&);
};

} // namespace detail

/// The group of permutations preserving adjacency, edge colors (uncolored
/// counts as a color class of its own) and every vertex in `fixed`.
/// Enumerates at most `cap` elements; on overflow the result carries the
/// elements found so far as generators, with `complete` false.
inline aut_group automorphisms(const graph& g, const edge_coloring& col, const std::vector<vertex>& fixed = {},
                               std::size_t cap = default_element_cap) {
    if (cap < 1) throw bad_params_error("cap must be at least 1");
    detail::aut_searcher s(g, col, fixed);
    aut_group grp;
    grp.n = g.vertex_count();
    grp.element_cap = cap;
    grp.complete = s.enumerate(cap, grp.generators);
    if (grp.complete) grp.order = grp.generators.size();
    return grp;
}

/// Like automorphisms() but the caller demands the exact group.
inline aut_group automorphisms_exact(const graph& g, const edge_coloring& col, const std::vector<vertex>& fixed = {},
                                     std::size_t cap = default_element_cap) {
    aut_group grp = automorphisms(g, col, fixed, cap);
    if (!grp.complete) throw cap_exceeded_error("automorphism enumeration exceeded element cap");
    return grp;
}

/// Lexicographically first nontrivial color-preserving automorphism, or
/// nullopt when the colored graph is asymmetric.
inline std::optional<permutation> nontrivial_automorphism(const graph& g, const edge_coloring& col) {
    if (g.vertex_count() == 0) return std::nullopt;
    detail::aut_searcher s(g, col, {});
    return s.first_nontrivial();
}

inline bool is_asymmetric(const graph& g, const edge_coloring& col) { return !nontrivial_automorphism(g, col).has_value(); }

/// Orbits of the subgroup generated by the group's generator list:
/// union-find closure over the generator functional graphs.
inline orbit_partition orbits_under(const aut_group& grp) {
    detail::union_find uf(grp.n);
    for (const auto& p : grp.generators)
        for (vertex v = 0; v < grp.n; ++v) uf.unite(v, p.image[v]);
    return detail::partition_from_uf(uf, grp.n);
}

/// Exact orbits of the color-preserving stabilizer of x0. Computed by
/// targeted searches: u and v share an orbit iff some automorphism fixing
/// x0 maps u to v, and each found automorphism merges its whole cycle
/// structure at once. This stays exact even when the group itself is far
/// too large to enumerate.
inline orbit_partition stabilizer_orbits(const graph& g, const edge_coloring& col, vertex x0) {
    int n = g.vertex_count();
    if (x0 < 0 || x0 >= n) throw vertex_out_of_range_error("x0 out of range");
    detail::aut_searcher s(g, col, {x0});
    detail::union_find uf(n);
    for (vertex u = 0; u < n; ++u) {
        if (uf.find(u) != u) continue; // only block minima as sources
        for (vertex v = u + 1; v < n; ++v) {
            if (uf.find(v) == uf.find(u)) continue;
            if (s.classes()[u] != s.classes()[v]) continue;
            auto found = s.find_mapping(u, v);
            if (found)
                for (vertex w = 0; w < n; ++w) uf.unite(w, found->image[w]);
        }
    }
    return detail::partition_from_uf(uf, n);
}

} // namespace asymm
