// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Constructive asymmetric 3-edge-coloring for connected graphs whose
// degrees satisfy 2*delta >= Delta (and which are not K2).
//
// The procedure fixes a minimum-degree root, colors its star red, and
// then walks the orbits of the color-preserving stabilizer level by
// level. Each orbit gets its inner edges made rigid (recursively or via
// canned complete-graph colorings) and its outgoing edges colored with
// distinct uniform palettes, refining the orbit partition until every
// vertex is fixed. Orbits that run out of uncolored edges during a step
// (terminal orbits) get special treatment so that no vertex other than
// the root ends up with an all-red neighborhood.
//
// The orbit partition is recomputed exactly after every step; the
// combinatorial refinement used while choosing colors never replaces the
// group-theoretic truth. A completed coloring that still admits a
// nontrivial automorphism is returned as a first-class witness, not an
// exception.

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "palette.hpp"
#include "perm.hpp"

namespace asymm {

struct condition_report {
    bool c1 = true; // processed (fully colored) vertices are fixed
    bool c2 = true; // orbits with incoming colored edges are small enough
    bool c3 = true; // only the root may have an all-red neighborhood
    bool ineq1 = true; // m <= (delta - t + 1) / (r + 1)
    bool ineq2 = true; // |O| <= r + k + 1
    std::optional<std::vector<vertex>> violating_orbit;
    int step_index = 0;

    bool ok() const { return c1 && c2 && c3 && ineq1 && ineq2; }
};

struct condition_violated_error : error {
    condition_violated_error(const std::string& what, condition_report r) : error(what), report(std::move(r)) {}
    condition_report report;
};

struct color_options {
    bool paranoid = false;
};

struct procedure_trace {
    int steps = 0;
    int complete_shortcut = 0;    // whole graph recognized as complete
    int recursive_components = 0; // inner components colored recursively
    int complete_components = 0;  // inner components colored as complete graphs
    int inner_k2_batches = 0;     // orbits whose components are K2 pairs
    int sweeps = 0;               // settled/unsettled sweeps over terminal orbits
    int terminal_components = 0;  // terminal complete components placed
    int terminal_k2_edges = 0;    // lone terminal K2 edges colored blue
    int safeguard_batches = 0;    // matching-separation constraint applied

    void absorb(const procedure_trace& sub) {
        steps += sub.steps;
        complete_shortcut += sub.complete_shortcut;
        recursive_components += sub.recursive_components;
        complete_components += sub.complete_components;
        inner_k2_batches += sub.inner_k2_batches;
        sweeps += sub.sweeps;
        terminal_components += sub.terminal_components;
        terminal_k2_edges += sub.terminal_k2_edges;
        safeguard_batches += sub.safeguard_batches;
    }
};

struct color_result {
    edge_coloring coloring;
    vertex root = 0;
    std::optional<permutation> witness; // set iff the finished coloring failed verification
    procedure_trace trace;

    bool asymmetric() const { return !witness.has_value(); }
};

/// Minimum-index vertex of minimum degree.
inline vertex choose_root(const graph& g) {
    if (g.vertex_count() == 0) throw bad_params_error("empty graph has no root");
    vertex best = 0;
    for (vertex v = 1; v < g.vertex_count(); ++v)
        if (g.degree(v) < g.degree(best)) best = v;
    return best;
}

namespace detail {

inline edge_coloring search_complete_coloring(int n, int num_colors) {
    graph kn = [&] {
        std::vector<edge> es;
        for (vertex u = 0; u < n; ++u)
            for (vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
        return graph(n, std::move(es));
    }();
    int m = kn.edge_count();
    std::vector<int> digits(static_cast<std::size_t>(m), 0);
    for (;;) {
        edge_coloring col(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) col[i] = static_cast<color>(digits[i]);
        bool incidence = true;
        for (vertex v = 0; v < n && incidence; ++v) {
            bool non_green = false;
            for (vertex w : kn.neighbors(v))
                if (col[kn.edge_index(v, w)] != color::green) {
                    non_green = true;
                    break;
                }
            incidence = non_green;
        }
        if (incidence && is_asymmetric(kn, col)) return col;
        int i = m - 1;
        while (i >= 0 && digits[i] == num_colors - 1) digits[i--] = 0;
        if (i < 0) throw error("no asymmetric complete-graph coloring found");
        ++digits[i];
    }
}

/// Red/blue coloring whose blue part is a spider tree with legs of
/// pairwise distinct lengths (1, 2 and n-4), which is rigid.
inline edge_coloring spider_complete_coloring(int n) {
    std::set<edge> blue;
    blue.insert({0, 1});
    blue.insert({0, 2});
    blue.insert({2, 3});
    blue.insert({0, 4});
    for (vertex v = 4; v + 1 < n; ++v) blue.insert({v, v + 1});
    int m = n * (n - 1) / 2;
    edge_coloring col(static_cast<std::size_t>(m));
    int idx = 0;
    for (vertex u = 0; u < n; ++u)
        for (vertex v = u + 1; v < n; ++v) col[idx++] = blue.count({u, v}) ? color::blue : color::red;
    return col;
}

} // namespace detail

/// Asymmetric coloring of K_n in which every vertex touches a non-green
/// edge; red/blue only from n = 6 on. Memoized; deterministic.
inline const edge_coloring& complete_graph_coloring(int n) {
    if (n < 3) throw bad_params_error("complete_graph_coloring requires n >= 3");
    static std::map<int, edge_coloring> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    edge_coloring col;
    if (n <= 5)
        col = detail::search_complete_coloring(n, 3);
    else if (n == 6)
        col = detail::search_complete_coloring(n, 2);
    else {
        col = detail::spider_complete_coloring(n);
        std::vector<edge> es;
        for (vertex u = 0; u < n; ++u)
            for (vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
        graph kn(n, std::move(es));
        if (!is_asymmetric(kn, col)) throw error("spider coloring unexpectedly symmetric");
    }
    return cache.emplace(n, std::move(col)).first->second;
}

/// Distinct uniform palette sequences for the representatives of an
/// orbit: `sizes[0]` must be the largest size; the first sequence is
/// entirely red-free, every other part beyond the first comes from the
/// two fixed special palettes. With `extra_for_k2` one more sequence is
/// produced, shared by the non-representative vertices of K2 components.
inline std::vector<palette_seq> assign_palette_seqs(int m, const std::vector<int>& sizes, bool extra_for_k2) {
    if (m < 1) throw bad_params_error("need at least one representative");
    if (sizes.empty()) throw zero_length_error("empty size vector");
    for (int k : sizes) {
        if (k < 1) throw zero_length_error("palette sizes must be positive");
        if (k > sizes[0]) throw bad_params_error("sizes[0] must be the largest");
    }
    auto first_choices = uniform_palettes(sizes[0]); // all have red <= k1/2
    std::vector<std::pair<palette, palette>> specials;
    for (std::size_t i = 1; i < sizes.size(); ++i) specials.push_back(special_palettes(sizes[i]));

    std::size_t needed = static_cast<std::size_t>(m) + (extra_for_k2 ? 1 : 0);
    std::size_t pool = first_choices.size() << (sizes.size() - 1);
    if (needed > pool) throw palette_exhausted_error("not enough distinct uniform palette sequences");

    std::vector<palette_seq> out;
    out.reserve(needed);
    for (std::size_t t = 0; t < needed; ++t) {
        palette_seq seq;
        std::size_t rest = t;
        std::size_t tail_bits = sizes.size() - 1;
        std::size_t first_idx = rest >> tail_bits;
        seq.parts.push_back(first_choices[first_idx]);
        for (std::size_t i = 0; i < tail_bits; ++i) {
            bool low = (rest >> (tail_bits - 1 - i)) & 1u;
            seq.parts.push_back(low ? specials[i].second : specials[i].first);
        }
        out.push_back(std::move(seq));
    }
    return out;
}

/// Drives one coloring run; exposed so the individual steps are testable.
class coloring_procedure {
public:
    explicit coloring_procedure(const graph& g, color_options opt = {}) : g_(g), opt_(opt) {
        if (!satisfies_hypothesis(g_)) throw hypothesis_violated_error("graph violates 2*delta >= Delta (or is K2/disconnected)");
        stats_ = stats(g_);
        root_ = choose_root(g_);
        levels_ = bfs_levels(g_, root_);
        col_ = edge_coloring::uncolored_for(g_);
        colored_at_.assign(static_cast<std::size_t>(g_.vertex_count()), 0);
        recompute_orbits();
    }

    vertex root() const { return root_; }
    const edge_coloring& coloring() const { return col_; }
    const orbit_partition& orbits() const { return orbits_; }
    const procedure_trace& trace() const { return trace_; }
    const graph& underlying_graph() const { return g_; }

    void initial_step() {
        if (did_initial_) throw bad_params_error("initial step already done");
        for (vertex w : g_.neighbors(root_)) color_edge(root_, w, color::red);
        did_initial_ = true;
        recompute_orbits();
        if (opt_.paranoid) enforce_conditions("after initial step");
    }

    /// Next orbit to process: lowest level among blocks that still have an
    /// uncolored incident edge, largest block first, ties by least vertex.
    std::optional<std::vector<vertex>> next_orbit() const {
        const std::vector<vertex>* best = nullptr;
        int best_level = 0;
        for (const auto& b : orbits_.blocks) {
            bool eligible = false;
            for (vertex v : b)
                if (colored_at_[v] < g_.degree(v)) {
                    eligible = true;
                    break;
                }
            if (!eligible) continue;
            int lvl = levels_.level_of[b.front()];
            if (!best || lvl < best_level || (lvl == best_level && (b.size() > best->size() || (b.size() == best->size() && b.front() < best->front())))) {
                best = &b;
                best_level = lvl;
            }
        }
        if (!best) return std::nullopt;
        return *best;
    }

    bool finished() const { return did_initial_ && !next_orbit().has_value(); }

    void process_orbit(const std::vector<vertex>& orbit);

    color_result run() {
        if (!did_initial_) initial_step();
        while (auto o = next_orbit()) process_orbit(*o);
        if (!col_.total()) throw condition_violated_error("procedure ended with uncolored edges", make_report());
        color_result res;
        res.coloring = col_;
        res.root = root_;
        res.trace = trace_;
        res.witness = nontrivial_automorphism(g_, col_);
        return res;
    }

    condition_report check_conditions() const { return make_report(); }

private:
    graph g_; // owned copy: the procedure must outlive any caller temporary
    color_options opt_;
    graph_stats stats_;
    vertex root_ = 0;
    level_structure levels_;
    edge_coloring col_;
    orbit_partition orbits_;
    std::vector<int> colored_at_;
    procedure_trace trace_;
    int step_index_ = 0;
    bool did_initial_ = false;

    // -- small helpers ---------------------------------------------------

    void color_edge(vertex u, vertex v, color c) {
        int idx = g_.edge_index(u, v);
        if (idx < 0) throw bad_params_error("coloring a non-edge");
        if (col_[idx] != color::uncolored) throw condition_violated_error("edge colored twice", make_report());
        col_[static_cast<std::size_t>(idx)] = c;
        ++colored_at_[u];
        ++colored_at_[v];
    }

    bool edge_uncolored(vertex u, vertex v) const {
        int idx = g_.edge_index(u, v);
        return idx >= 0 && col_[idx] == color::uncolored;
    }

    bool fully_colored(vertex v) const { return colored_at_[v] == g_.degree(v); }

    bool has_nonred_incident(vertex v) const {
        for (vertex w : g_.neighbors(v)) {
            color c = col_[g_.edge_index(v, w)];
            if (c != color::uncolored && c != color::red) return true;
        }
        return false;
    }

    void recompute_orbits() { orbits_ = stabilizer_orbits(g_, col_, root_); }

    [[noreturn]] void violation(const std::string& what) const {
        throw condition_violated_error(what + " (step " + std::to_string(step_index_) + ")", make_report());
    }

    void enforce_conditions(const std::string& where) {
        condition_report r = make_report();
        if (!r.ok()) throw condition_violated_error("conditions violated " + where, std::move(r));
    }

    // -- condition checking ----------------------------------------------

    condition_report make_report() const {
        condition_report r;
        r.step_index = step_index_;
        for (vertex v = 0; v < g_.vertex_count(); ++v) {
            if (!fully_colored(v)) continue;
            if (!orbits_.singleton(v)) {
                r.c1 = false;
                if (!r.violating_orbit) r.violating_orbit = orbits_.blocks[orbits_.block_of[v]];
            }
            if (v != root_ && !has_nonred_incident(v)) {
                r.c3 = false;
                if (!r.violating_orbit) r.violating_orbit = orbits_.blocks[orbits_.block_of[v]];
            }
        }
        for (const auto& b : orbits_.blocks) {
            if (b.size() < 2) continue;
            int t = -1, r_in = -1, k_out = -1;
            bool uniform = true;
            for (vertex v : b) {
                int tv = 0, rv = 0, kv = 0;
                for (vertex w : g_.neighbors(v)) {
                    bool inside = std::binary_search(b.begin(), b.end(), w);
                    bool colored = col_[g_.edge_index(v, w)] != color::uncolored;
                    if (inside)
                        ++rv;
                    else if (colored)
                        ++tv;
                    else
                        ++kv;
                }
                if (t < 0) {
                    t = tv;
                    r_in = rv;
                    k_out = kv;
                } else if (t != tv || r_in != rv || k_out != kv) {
                    uniform = false;
                }
            }
            if (!uniform) {
                r.c2 = false;
                r.violating_orbit = b;
                continue;
            }
            if (t == 0) continue; // no incoming colored edge
            if (static_cast<int>(b.size()) > stats_.delta - t + 1) {
                r.c2 = false;
                if (!r.violating_orbit) r.violating_orbit = b;
            }
            auto ind = induced_subgraph(g_, b);
            int m_b = static_cast<int>(connected_components(ind.subgraph).size());
            if (m_b * (r_in + 1) > stats_.delta - t + 1) {
                r.ineq1 = false;
                if (!r.violating_orbit) r.violating_orbit = b;
            }
            if (static_cast<int>(b.size()) > r_in + k_out + 1) {
                r.ineq2 = false;
                if (!r.violating_orbit) r.violating_orbit = b;
            }
        }
        return r;
    }

    // -- complete-graph placements ---------------------------------------

    /// Lay complete_graph_coloring(|part|) over a complete induced part,
    /// then make sure no part vertex is left with an all-red neighborhood:
    /// if one is, swap red and green inside the placed component (every
    /// vertex has a non-green component edge, so the swap settles all of
    /// them at once without touching asymmetry).
    void place_complete(const std::vector<vertex>& part) {
        int sz = static_cast<int>(part.size());
        const edge_coloring& base = complete_graph_coloring(sz);
        int idx = 0;
        std::vector<int> placed;
        for (int i = 0; i < sz; ++i)
            for (int j = i + 1; j < sz; ++j) {
                color_edge(part[i], part[j], base[idx]);
                placed.push_back(g_.edge_index(part[i], part[j]));
                ++idx;
            }
        bool all_red_somewhere = false;
        for (vertex v : part)
            if (fully_colored(v) && !has_nonred_incident(v)) {
                all_red_somewhere = true;
                break;
            }
        if (all_red_somewhere) {
            for (int e : placed) {
                if (col_[e] == color::red)
                    col_[e] = color::green;
                else if (col_[e] == color::green)
                    col_[e] = color::red;
            }
            for (vertex v : part)
                if (fully_colored(v) && !has_nonred_incident(v)) violation("all-red vertex survives red/green swap");
        }
    }

    /// The whole graph turned out to be K_{delta+1}: the level-1 orbit has
    /// no outgoing edges. For K3 the only asymmetric colorings are rainbow
    /// triangles, so the red star cannot be kept; from K4 on the star stays
    /// and the rest is a complete component placement.
    void complete_graph_endgame(const std::vector<vertex>& orbit) {
        int n = g_.vertex_count();
        if (g_.edge_count() != n * (n - 1) / 2 || static_cast<int>(orbit.size()) != n - 1)
            violation("terminal level-1 orbit in a non-complete graph");
        ++trace_.complete_shortcut;
        if (n == 3) {
            col_ = complete_graph_coloring(3);
            for (vertex v = 0; v < n; ++v) colored_at_[v] = g_.degree(v);
            return;
        }
        place_complete(orbit);
    }

    // -- inner edges -------------------------------------------------------

    struct component_info {
        std::vector<std::vector<vertex>> comps; // global labels, sorted, ordered by minimum
        int n_comp = 1;
        std::vector<vertex> reps;
    };

    component_info analyze_components(const std::vector<vertex>& orbit) {
        component_info info;
        auto ind = induced_subgraph(g_, orbit);
        auto local = connected_components(ind.subgraph);
        for (const auto& c : local) {
            std::vector<vertex> glob;
            glob.reserve(c.size());
            for (vertex v : c) glob.push_back(ind.old_of_new[v]);
            info.comps.push_back(std::move(glob));
        }
        std::sort(info.comps.begin(), info.comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
        info.n_comp = static_cast<int>(info.comps.front().size());
        for (const auto& c : info.comps) {
            if (static_cast<int>(c.size()) != info.n_comp) violation("orbit components differ in size");
            info.reps.push_back(c.front());
        }
        return info;
    }

    void color_inner_edges(const component_info& info) {
        if (info.n_comp == 1) return;
        if (info.n_comp == 2) {
            ++trace_.inner_k2_batches;
            for (const auto& c : info.comps) {
                if (!g_.adjacent(c[0], c[1])) violation("size-2 component without inner edge");
                color_edge(c[0], c[1], color::red);
            }
            return;
        }
        for (const auto& c : info.comps) {
            auto ind = induced_subgraph(g_, c);
            const graph& h = ind.subgraph;
            int sz = h.vertex_count();
            if (h.edge_count() == sz * (sz - 1) / 2) {
                ++trace_.complete_components;
                const edge_coloring& base = complete_graph_coloring(sz);
                const auto& es = h.edges();
                for (std::size_t i = 0; i < es.size(); ++i)
                    color_edge(ind.old_of_new[es[i].first], ind.old_of_new[es[i].second], base[i]);
            } else {
                ++trace_.recursive_components;
                if (!satisfies_hypothesis(h)) violation("inner component violates hypothesis");
                color_result sub = coloring_procedure(h, opt_).run();
                trace_.absorb(sub.trace);
                if (sub.witness) violation("recursive inner coloring failed verification");
                const auto& es = h.edges();
                for (std::size_t i = 0; i < es.size(); ++i)
                    color_edge(ind.old_of_new[es[i].first], ind.old_of_new[es[i].second], sub.coloring[i]);
            }
        }
    }

    // -- outgoing edges ----------------------------------------------------

    std::vector<vertex> uncolored_neighbors_in(vertex x, const std::vector<vertex>& pool) const {
        std::vector<vertex> out;
        for (vertex w : g_.neighbors(x))
            if (edge_uncolored(x, w) && std::binary_search(pool.begin(), pool.end(), w)) out.push_back(w);
        return out;
    }

    /// Deterministic default assignment: the palette's colors in canonical
    /// order onto the targets in ascending order.
    void assign_canonical(vertex x, const std::vector<vertex>& targets, const palette& p) {
        auto cols = palette_to_colors(p);
        if (cols.size() != targets.size()) violation("palette size mismatch during assignment");
        for (std::size_t i = 0; i < targets.size(); ++i) color_edge(x, targets[i], cols[i]);
    }

    /// Safeguarded assignment for a target set that is a disjoint union of
    /// K2 pairs: matched vertices must receive different colors, which a
    /// uniform palette always allows. Pairs are processed by least
    /// endpoint; each takes the two most frequent remaining colors.
    void assign_pair_separated(vertex x, const std::vector<vertex>& targets, const palette& p) {
        ++trace_.safeguard_batches;
        int counts[3] = {p.red, p.blue, p.green};
        std::vector<bool> done(targets.size(), false);
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (done[i]) continue;
            vertex v = targets[i];
            vertex partner = -1;
            for (std::size_t j = i + 1; j < targets.size(); ++j)
                if (!done[j] && g_.adjacent(v, targets[j]) && edge_uncolored(v, targets[j])) {
                    partner = targets[j];
                    done[j] = true;
                    break;
                }
            done[i] = true;
            if (partner < 0) violation("pair-separated assignment on a non-matching");
            int c1 = 0;
            for (int c = 1; c < 3; ++c)
                if (counts[c] > counts[c1]) c1 = c;
            int c2 = -1;
            for (int c = 0; c < 3; ++c)
                if (c != c1 && (c2 < 0 || counts[c] > counts[c2])) c2 = c;
            if (counts[c1] == 0 || counts[c2] == 0) violation("palette cannot separate a matched pair");
            --counts[c1];
            --counts[c2];
            color_edge(x, v, static_cast<color>(std::min(c1, c2)));
            color_edge(x, partner, static_cast<color>(std::max(c1, c2)));
        }
    }

    static std::vector<std::vector<vertex>> refine_parts(const std::vector<std::vector<vertex>>& parts,
                                                         const std::function<int(vertex)>& token) {
        std::vector<std::vector<vertex>> next;
        for (const auto& part : parts) {
            std::map<int, std::vector<vertex>> by_token;
            for (vertex v : part) by_token[token(v)].push_back(v);
            std::vector<std::vector<vertex>> groups;
            for (auto& [tok, grp] : by_token) groups.push_back(std::move(grp));
            std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
            for (auto& grp : groups) next.push_back(std::move(grp));
        }
        return next;
    }

    /// True when the target block is a disjoint union of uncolored K2
    /// pairs whose only other uncolored edges lead into the source orbit.
    bool matching_structured(const std::vector<vertex>& block, const std::vector<vertex>& orbit) const {
        if (block.size() < 2 || block.size() % 2 != 0) return false;
        for (vertex v : block) {
            int inner = 0;
            for (vertex w : g_.neighbors(v)) {
                if (!edge_uncolored(v, w)) continue;
                if (std::binary_search(block.begin(), block.end(), w))
                    ++inner;
                else if (!std::binary_search(orbit.begin(), orbit.end(), w))
                    return false;
            }
            if (inner != 1) return false;
        }
        return true;
    }

    /// Standard target machinery: partition the target orbit by exact
    /// neighborhoods in O, then color source by source, splitting each
    /// source's palette across the current refinement.
    std::vector<std::vector<vertex>> color_targets_plain(const std::vector<vertex>& orbit, const std::vector<vertex>& q,
                                                         const std::map<vertex, const palette_seq*>& seq_of, int qi) {
        // group by exact neighborhood in O
        std::map<std::vector<vertex>, std::vector<vertex>> by_nbhd;
        for (vertex w : q) by_nbhd[uncolored_neighbors_in(w, orbit)].push_back(w);
        struct target_block {
            std::vector<vertex> sources;
            std::vector<vertex> members;
        };
        std::vector<target_block> ts;
        for (auto& [s, members] : by_nbhd) {
            if (s.empty()) violation("target vertex with no uncolored edge into the orbit");
            ts.push_back({s, members});
        }
        std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return a.members.front() < b.members.front(); });

        // split each source vertex's palette across the blocks it sees
        std::map<vertex, std::vector<palette>> sub;
        std::map<vertex, std::vector<std::size_t>> sub_blocks;
        for (vertex x : orbit) {
            std::vector<int> sizes;
            for (std::size_t j = 0; j < ts.size(); ++j)
                if (std::binary_search(ts[j].sources.begin(), ts[j].sources.end(), x)) {
                    sub_blocks[x].push_back(j);
                    sizes.push_back(static_cast<int>(ts[j].members.size()));
                }
            if (sizes.empty()) violation("orbit vertex with no edge into a target orbit");
            sub[x] = split_palette(seq_of.at(x)->parts[qi], sizes);
        }

        std::vector<std::vector<vertex>> all_parts;
        for (std::size_t j = 0; j < ts.size(); ++j) {
            std::vector<std::vector<vertex>> parts{ts[j].members};
            bool safeguard = matching_structured(ts[j].members, orbit);
            bool first = true;
            for (vertex x : ts[j].sources) {
                const auto& blocks_of_x = sub_blocks[x];
                std::size_t pos = static_cast<std::size_t>(std::distance(blocks_of_x.begin(), std::find(blocks_of_x.begin(), blocks_of_x.end(), j)));
                palette pal = sub[x][pos];
                if (first && safeguard) {
                    assign_pair_separated(x, ts[j].members, pal);
                } else {
                    std::vector<int> sizes;
                    for (const auto& part : parts) sizes.push_back(static_cast<int>(part.size()));
                    auto pieces = split_palette(pal, sizes);
                    for (std::size_t pi = 0; pi < parts.size(); ++pi) assign_canonical(x, parts[pi], pieces[pi]);
                }
                parts = refine_parts(parts, [&](vertex v) { return static_cast<int>(col_[g_.edge_index(x, v)]); });
                first = false;
            }
            for (auto& p : parts) all_parts.push_back(std::move(p));
        }
        return all_parts;
    }

    /// Settled/unsettled sweep for a terminal, edgeless target orbit with
    /// prior colored edges and at least two edges per source: the first
    /// source settles its whole red-free palette, then every still-unsettled
    /// vertex picks an unused adjacent source whose palette is split so the
    /// vertex receives blue or green.
    std::vector<std::vector<vertex>> color_targets_sweep(const std::vector<vertex>& orbit, const std::vector<vertex>& q,
                                                         const std::map<vertex, const palette_seq*>& seq_of, int qi) {
        ++trace_.sweeps;
        std::vector<std::vector<vertex>> parts{q};
        std::set<vertex> used;
        auto settled = [&](vertex v) { return has_nonred_incident(v); };

        auto color_from = [&](vertex x, vertex constrained_y) {
            std::vector<std::size_t> slot_part;
            std::vector<int> sizes;
            std::vector<std::vector<vertex>> slot_targets;
            std::size_t y_slot = static_cast<std::size_t>(-1);
            for (std::size_t pi = 0; pi < parts.size(); ++pi) {
                auto targets = uncolored_neighbors_in(x, parts[pi]);
                if (targets.empty()) continue;
                if (constrained_y >= 0 && std::binary_search(parts[pi].begin(), parts[pi].end(), constrained_y))
                    y_slot = slot_part.size();
                slot_part.push_back(pi);
                sizes.push_back(static_cast<int>(targets.size()));
                slot_targets.push_back(std::move(targets));
            }
            palette pal = seq_of.at(x)->parts[qi];
            std::vector<palette> pieces;
            if (constrained_y >= 0) {
                if (y_slot == static_cast<std::size_t>(-1)) violation("sweep target not adjacent to chosen source");
                pieces = split_palette_constrained(pal, sizes, y_slot);
            } else {
                pieces = split_palette(pal, sizes);
            }
            for (std::size_t s = 0; s < slot_targets.size(); ++s) {
                auto targets = slot_targets[s];
                palette piece = pieces[s];
                if (constrained_y >= 0 && s == y_slot) {
                    color give = piece.blue > 0 ? color::blue : color::green;
                    if (piece.blue > 0)
                        --piece.blue;
                    else if (piece.green > 0)
                        --piece.green;
                    else
                        violation("constrained split did not reserve a non-red unit");
                    color_edge(x, constrained_y, give);
                    targets.erase(std::find(targets.begin(), targets.end(), constrained_y));
                }
                assign_canonical(x, targets, piece);
            }
            parts = refine_parts(parts, [&](vertex v) {
                if (!g_.adjacent(x, v)) return -1;
                return static_cast<int>(col_[g_.edge_index(x, v)]);
            });
            used.insert(x);
        };

        color_from(orbit.front(), -1); // red-free palette settles its whole neighborhood
        for (;;) {
            vertex y = -1;
            for (vertex v : q)
                if (!settled(v)) {
                    y = v;
                    break;
                }
            if (y < 0) break;
            vertex xj = -1;
            for (vertex x : orbit)
                if (!used.count(x) && g_.adjacent(x, y)) {
                    xj = x;
                    break;
                }
            if (xj < 0) violation("sweep stuck: unsettled vertex with no unused source");
            color_from(xj, y);
        }
        for (vertex x : orbit)
            if (!used.count(x)) color_from(x, -1);
        return parts;
    }

    /// After a target orbit is fully wired to O, any refinement part with
    /// no uncolored edge leaving it must induce a complete graph; color it.
    void finish_terminal_parts(const std::vector<std::vector<vertex>>& parts) {
        for (const auto& part : parts) {
            bool leaves = false;
            std::vector<edge> inner_uncolored;
            for (vertex v : part)
                for (vertex w : g_.neighbors(v)) {
                    if (!edge_uncolored(v, w)) continue;
                    if (std::binary_search(part.begin(), part.end(), w)) {
                        if (v < w) inner_uncolored.emplace_back(v, w);
                    } else {
                        leaves = true;
                    }
                }
            if (leaves || inner_uncolored.empty()) continue;
            int sz = static_cast<int>(part.size());
            if (static_cast<int>(inner_uncolored.size()) != sz * (sz - 1) / 2) violation("terminal part is not complete");
            if (sz == 2) {
                ++trace_.terminal_k2_edges;
                color_edge(part[0], part[1], color::blue);
            } else {
                ++trace_.terminal_components;
                place_complete(part);
            }
        }
    }
};

inline void coloring_procedure::process_orbit(const std::vector<vertex>& orbit) {
    if (orbit.empty()) throw bad_params_error("empty orbit");
    {
        const auto& blk = orbits_.blocks[orbits_.block_of[orbit.front()]];
        if (blk != orbit) throw bad_params_error("process_orbit expects a current orbit block");
    }
    ++trace_.steps;
    ++step_index_;

    // per-vertex edge classification relative to this orbit
    int t = -1, r_in = -1, k_out = -1;
    for (vertex v : orbit) {
        int tv = 0, rv = 0, kv = 0;
        for (vertex w : g_.neighbors(v)) {
            bool inside = std::binary_search(orbit.begin(), orbit.end(), w);
            bool colored = col_[g_.edge_index(v, w)] != color::uncolored;
            if (inside) {
                ++rv;
                if (colored && orbit.size() > 1) violation("live orbit with colored inner edge");
            } else if (colored) {
                ++tv;
            } else {
                ++kv;
            }
        }
        if (t < 0) {
            t = tv;
            r_in = rv;
            k_out = kv;
        } else if (t != tv || r_in != rv || k_out != kv) {
            violation("orbit vertices disagree on t/r/k");
        }
    }
    if (t == 0) violation("current orbit has no incoming colored edge");

    if (k_out == 0) {
        // no outgoing edges: the graph is K_{delta+1} (terminal at level 1)
        complete_graph_endgame(orbit);
        recompute_orbits();
        if (opt_.paranoid) enforce_conditions("after complete-graph endgame");
        return;
    }

    component_info info = analyze_components(orbit);
    int m = static_cast<int>(info.comps.size());
    color_inner_edges(info);

    // target orbits: blocks of the current partition that receive
    // uncolored edges from O, largest per-vertex multiplicity first
    std::vector<vertex> u_set;
    for (vertex v : orbit)
        for (vertex w : g_.neighbors(v))
            if (edge_uncolored(v, w) && !std::binary_search(orbit.begin(), orbit.end(), w)) u_set.push_back(w);
    std::sort(u_set.begin(), u_set.end());
    u_set.erase(std::unique(u_set.begin(), u_set.end()), u_set.end());

    std::vector<int> q_ids;
    for (vertex w : u_set) {
        int b = orbits_.block_of[w];
        if (q_ids.empty() || q_ids.back() != b) {
            if (std::find(q_ids.begin(), q_ids.end(), b) == q_ids.end()) q_ids.push_back(b);
        }
    }
    std::vector<std::vector<vertex>> qs;
    for (int b : q_ids) {
        const auto& blk = orbits_.blocks[b];
        for (vertex w : blk)
            if (!std::binary_search(u_set.begin(), u_set.end(), w)) violation("target orbit only partially reached by outgoing edges");
        qs.push_back(blk);
    }
    std::sort(qs.begin(), qs.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<int> k_per_q;
    for (const auto& q : qs) {
        int ki = -1;
        for (vertex v : orbit) {
            int c = static_cast<int>(uncolored_neighbors_in(v, q).size());
            if (ki < 0)
                ki = c;
            else if (ki != c)
                violation("orbit vertices disagree on edges into a target orbit");
        }
        if (ki < 1) violation("target orbit with k_i = 0");
        k_per_q.push_back(ki);
    }
    // reorder so the largest k_i comes first, ties keeping block order
    std::vector<std::size_t> order(qs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return k_per_q[a] > k_per_q[b]; });

    std::vector<int> sizes;
    int k_total = 0;
    for (std::size_t oi : order) {
        sizes.push_back(k_per_q[oi]);
        k_total += k_per_q[oi];
    }
    if (k_total != k_out) violation("edges into target orbits do not account for all outgoing edges");

    bool k2_components = (info.n_comp == 2);
    if (m > (k2_components ? k_total : k_total + 1)) violation("more components than available palette sequences");

    std::vector<palette_seq> seqs = assign_palette_seqs(m, sizes, k2_components);
    std::map<vertex, const palette_seq*> seq_of;
    for (vertex v : orbit) {
        auto rep_it = std::find(info.reps.begin(), info.reps.end(), v);
        if (rep_it != info.reps.end())
            seq_of[v] = &seqs[static_cast<std::size_t>(std::distance(info.reps.begin(), rep_it))];
        else
            seq_of[v] = k2_components ? &seqs[static_cast<std::size_t>(m)] : &seqs[0];
    }

    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto& q = qs[order[pos]];
        int ki = k_per_q[order[pos]];

        bool terminal = true;
        int t_prior = -1, r_q = -1;
        for (vertex w : q) {
            int rq = 0;
            for (vertex nb : g_.neighbors(w)) {
                bool inside_q = std::binary_search(q.begin(), q.end(), nb);
                if (inside_q) ++rq;
                if (!edge_uncolored(w, nb)) continue;
                if (!inside_q && !std::binary_search(orbit.begin(), orbit.end(), nb)) terminal = false;
            }
            int tw = colored_at_[w];
            if (t_prior < 0) {
                t_prior = tw;
                r_q = rq;
            } else if (t_prior != tw || r_q != rq) {
                violation("target orbit vertices disagree on t'/r'");
            }
        }

        if (opt_.paranoid && terminal && t_prior == 0 && r_q == 0) {
            // no prior colored edges and no inner structure: must be the
            // complete bipartite case with |O| = delta
            if (static_cast<int>(orbit.size()) != stats_.delta) violation("terminal fresh target but |O| != delta");
            for (vertex w : q)
                if (static_cast<int>(uncolored_neighbors_in(w, orbit).size()) != static_cast<int>(orbit.size()))
                    violation("terminal fresh target not completely joined to the orbit");
        }

        std::vector<std::vector<vertex>> parts;
        if (terminal && r_q == 0 && t_prior > 0 && ki > 1)
            parts = color_targets_sweep(orbit, q, seq_of, static_cast<int>(pos));
        else
            parts = color_targets_plain(orbit, q, seq_of, static_cast<int>(pos));
        if (terminal) finish_terminal_parts(parts);
    }

    for (vertex v : orbit)
        if (!fully_colored(v)) violation("orbit vertex left with uncolored edges after its step");

    recompute_orbits();
    if (opt_.paranoid) enforce_conditions("after orbit step");
}

/// The whole procedure: deterministic total 3-coloring of a hypothesis
/// graph, verified before returning. A surviving automorphism comes back
/// as a witness in the result.
inline color_result color_graph(const graph& g, color_options opt = {}) { return coloring_procedure(g, opt).run(); }

} // namespace asymm
