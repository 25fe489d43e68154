// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Ground truth by exhaustion: existence of asymmetric r-colorings, the
// exact distinguishing index D'(G) of small graphs, and one canonical
// representative per isomorphism class of connected graphs on up to 7
// vertices.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "perm.hpp"

namespace asymm {

inline constexpr std::uint64_t default_oracle_budget = 100'000'000;

/// Lexicographically first asymmetric edge labeling with at most r
/// classes, or nullopt. Labels are canonical by first appearance (the
/// first edge always gets class 0), which quotients away colorings that
/// differ only by permuting the palette; asymmetry is invariant under
/// that. The budget caps the number of leaf asymmetry tests.
inline std::optional<std::vector<int>> asymmetric_labeling(const graph& g, int r, std::uint64_t budget = default_oracle_budget) {
    if (r < 1) throw bad_params_error("need at least one color");
    int m = g.edge_count();
    int eff_r = std::min(r, std::max(m, 1)); // only the class partition matters
    std::uint64_t checks = 0;
    std::vector<int> labels(static_cast<std::size_t>(m), 0);
    std::optional<std::vector<int>> found;

    if (eff_r <= 3) {
        edge_coloring col(static_cast<std::size_t>(m));
        auto rec = [&](auto&& self, int idx, int used) -> bool {
            if (idx == m) {
                if (checks >= budget) throw budget_exceeded_error("oracle budget exhausted");
                ++checks;
                if (!is_asymmetric(g, col)) return false;
                for (int i = 0; i < m; ++i) labels[static_cast<std::size_t>(i)] = static_cast<int>(col[static_cast<std::size_t>(i)]);
                found = labels;
                return true;
            }
            int limit = std::min(used + 1, eff_r);
            for (int c = 0; c < limit; ++c) {
                col[static_cast<std::size_t>(idx)] = static_cast<color>(c);
                if (self(self, idx + 1, std::max(used, c + 1))) return true;
            }
            return false;
        };
        rec(rec, 0, 0);
        return found;
    }

    // more than three classes: test candidates against the explicit
    // automorphism group of the uncolored graph
    aut_group grp = automorphisms_exact(g, edge_coloring::uncolored_for(g));
    std::vector<permutation> nontrivial;
    for (const auto& p : grp.generators)
        if (!p.is_identity()) nontrivial.push_back(p);
    const auto& es = g.edges();

    auto preserved_by = [&](const permutation& p) {
        for (int i = 0; i < m; ++i) {
            auto [u, v] = es[static_cast<std::size_t>(i)];
            int j = g.edge_index(p(u), p(v));
            if (labels[static_cast<std::size_t>(j)] != labels[static_cast<std::size_t>(i)]) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int idx, int used) -> bool {
        if (idx == m) {
            if (checks >= budget) throw budget_exceeded_error("oracle budget exhausted");
            ++checks;
            for (const auto& p : nontrivial)
                if (preserved_by(p)) return false;
            found = labels;
            return true;
        }
        int limit = std::min(used + 1, eff_r);
        for (int c = 0; c < limit; ++c) {
            labels[static_cast<std::size_t>(idx)] = c;
            if (self(self, idx + 1, std::max(used, c + 1))) return true;
        }
        return false;
    };
    rec(rec, 0, 0);
    return found;
}

/// Witness asymmetric coloring with at most r colors, or nullopt. The
/// witness is the lexicographically first one; it is re-checked by the
/// automorphism engine as part of the search.
inline std::optional<edge_coloring> exists_asymmetric_coloring(const graph& g, int r, std::uint64_t budget = default_oracle_budget) {
    auto labels = asymmetric_labeling(g, r, budget);
    if (!labels) return std::nullopt;
    edge_coloring col(labels->size());
    for (std::size_t i = 0; i < labels->size(); ++i) {
        if ((*labels)[i] > 2) throw error("witness coloring needs more than three colors");
        col[i] = static_cast<color>((*labels)[i]);
    }
    return col;
}

/// Smallest r <= max_r admitting an asymmetric coloring.
inline std::optional<int> distinguishing_index(const graph& g, int max_r, std::uint64_t budget = default_oracle_budget) {
    if (max_r < 1) throw bad_params_error("max_r must be at least 1");
    for (int r = 1; r <= max_r; ++r)
        if (asymmetric_labeling(g, r, budget)) return r;
    return std::nullopt;
}

namespace detail {

inline int pair_position(int n, vertex u, vertex v) {
    // position of (u,v), u < v, in lexicographic pair order
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

inline bool mask_connected(int n, std::uint64_t mask) {
    union_find uf(n);
    int p = 0;
    for (vertex u = 0; u < n; ++u)
        for (vertex v = u + 1; v < n; ++v, ++p)
            if (mask & (1ull << p)) uf.unite(u, v);
    int root = uf.find(0);
    for (vertex v = 1; v < n; ++v)
        if (uf.find(v) != root) return false;
    return true;
}

inline std::vector<std::vector<int>> all_pair_permutation_maps(int n) {
    std::vector<vertex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    int m = n * (n - 1) / 2;
    std::vector<std::vector<int>> maps;
    do {
        std::vector<int> map(static_cast<std::size_t>(m));
        for (vertex u = 0; u < n; ++u)
            for (vertex v = u + 1; v < n; ++v) {
                vertex a = perm[u], b = perm[v];
                if (a > b) std::swap(a, b);
                map[static_cast<std::size_t>(pair_position(n, u, v))] = pair_position(n, a, b);
            }
        maps.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return maps;
}

inline std::uint64_t apply_pair_map(std::uint64_t mask, const std::vector<int>& map) {
    std::uint64_t out = 0;
    while (mask) {
        int p = std::countr_zero(mask);
        mask &= mask - 1;
        out |= 1ull << map[static_cast<std::size_t>(p)];
    }
    return out;
}

} // namespace detail

/// Adjacency bitmask (lexicographic pair order) minimized over all
/// relabelings, with the vertex count in the high byte so that values are
/// unique across sizes; equal masks mean isomorphic graphs. n <= 7 only.
inline std::uint64_t canonical_mask(const graph& g) {
    int n = g.vertex_count();
    if (n > 7) throw too_large_error("canonical form supported for n <= 7 only");
    std::uint64_t mask = 0;
    for (const auto& [u, v] : g.edges()) mask |= 1ull << detail::pair_position(n, u, v);
    auto maps = detail::all_pair_permutation_maps(n);
    std::uint64_t best = mask;
    for (const auto& map : maps) best = std::min(best, detail::apply_pair_map(mask, map));
    return (static_cast<std::uint64_t>(n) << 56) | best;
}

/// Exactly one representative per isomorphism class of connected graphs
/// on n vertices, for n <= 7: every adjacency mask is enumerated and kept
/// iff it is the minimum over all n! relabelings.
inline std::vector<graph> enumerate_connected_graphs(int n) {
    if (n < 1) throw bad_params_error("need at least one vertex");
    if (n > 7) throw too_large_error("enumeration supported for n <= 7 only");
    int m = n * (n - 1) / 2;
    auto maps = detail::all_pair_permutation_maps(n);
    std::vector<graph> out;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        if (n > 1 && !detail::mask_connected(n, mask)) continue;
        bool canonical = true;
        for (std::size_t i = 1; i < maps.size(); ++i) { // maps[0] is the identity
            if (detail::apply_pair_map(mask, maps[i]) < mask) {
                canonical = false;
                break;
            }
        }
        if (!canonical) continue;
        std::vector<edge> es;
        int p = 0;
        for (vertex u = 0; u < n; ++u)
            for (vertex v = u + 1; v < n; ++v, ++p)
                if (mask & (1ull << p)) es.emplace_back(u, v);
        out.emplace_back(n, std::move(es));
    }
    return out;
}

struct census_row {
    graph g;
    graph_stats st;
    bool hypothesis = false;
    std::optional<int> dprime;
};

/// Exact D' for every connected isomorphism class with up to n_max
/// vertices (optionally only those satisfying the degree hypothesis).
/// The search tries r = 1..max(3, Delta) and then keeps going up to the
/// edge count, which always suffices: an all-distinct labeling of a
/// connected graph on 3+ vertices is asymmetric. Rows are computed by a
/// small worker pool and come back in enumeration order.
inline std::vector<census_row> census(int n_max, bool hypothesis_only, std::uint64_t budget_per_graph = default_oracle_budget,
                                      unsigned jobs = 0) {
    std::vector<census_row> rows;
    for (int n = 1; n <= n_max; ++n)
        for (auto& g : enumerate_connected_graphs(n)) {
            census_row row;
            row.st = stats(g);
            row.hypothesis = satisfies_hypothesis(g);
            row.g = std::move(g);
            if (!hypothesis_only || row.hypothesis) rows.push_back(std::move(row));
        }

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            try {
                census_row& row = rows[i];
                int cap = std::max(3, row.st.max_degree);
                row.dprime = distinguishing_index(row.g, cap, budget_per_graph);
                if (!row.dprime && row.g.edge_count() > cap)
                    for (int r = cap + 1; r <= row.g.edge_count() && !row.dprime; ++r)
                        if (asymmetric_labeling(row.g, r, budget_per_graph)) row.dprime = r;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

} // namespace asymm
