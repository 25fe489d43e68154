// SPDX-FileCopyrightText: (c) 2026 the asymm authors
//
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include <asymm/io.hpp>
#include <asymm/perm.hpp>

#include "test_util.hpp"

using namespace asymm;

namespace {

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

/// Test-only oracle: all automorphisms by filtering every permutation.
std::vector<permutation> brute_force_automorphisms(const graph& g, const edge_coloring& col, const std::vector<vertex>& fixed) {
    int n = g.vertex_count();
    std::vector<vertex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<permutation> out;
    do {
        bool ok = true;
        for (vertex f : fixed)
            if (perm[f] != f) ok = false;
        for (vertex u = 0; u < n && ok; ++u)
            for (vertex v = u + 1; v < n && ok; ++v) {
                int e = g.edge_index(u, v);
                int e2 = g.edge_index(perm[u], perm[v]);
                if ((e < 0) != (e2 < 0))
                    ok = false;
                else if (e >= 0 && col[e] != col[e2])
                    ok = false;
            }
        if (ok) out.push_back(permutation{perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

bool preserves(const graph& g, const edge_coloring& col, const permutation& p) {
    for (vertex u = 0; u < g.vertex_count(); ++u)
        for (vertex v = u + 1; v < g.vertex_count(); ++v) {
            int e = g.edge_index(u, v);
            int e2 = g.edge_index(p(u), p(v));
            if ((e < 0) != (e2 < 0)) return false;
            if (e >= 0 && col[e] != col[e2]) return false;
        }
    return true;
}

} // namespace

TEST_CASE("automorphism groups of uncolored graphs") {
    graph c4 = make_cycle(4);
    aut_group d4 = automorphisms(c4, edge_coloring::uncolored_for(c4));
    REQUIRE(d4.complete);
    CHECK(d4.order == 8);

    for (int n = 3; n <= 6; ++n) {
        graph kn = make_complete(n);
        aut_group sn = automorphisms(kn, edge_coloring::uncolored_for(kn));
        REQUIRE(sn.complete);
        CHECK(sn.order == factorial(n));
    }

    for (int n = 3; n <= 7; ++n) {
        graph cn = make_cycle(n);
        aut_group dn = automorphisms(cn, edge_coloring::uncolored_for(cn));
        REQUIRE(dn.complete);
        CHECK(dn.order == static_cast<std::uint64_t>(2 * n));
    }
}

TEST_CASE("colored C4 automorphisms match the dihedral filter oracle") {
    graph c4 = make_cycle(4);
    edge_coloring col = edge_coloring::uncolored_for(c4);
    for (std::size_t i = 0; i < col.size(); ++i) col[i] = color::blue;
    col[0] = color::red; // one red edge, rest blue

    auto expected = brute_force_automorphisms(c4, col, {});
    aut_group got = automorphisms(c4, col);
    REQUIRE(got.complete);
    CHECK(got.order == expected.size());
    CHECK(expected.size() == 2);

    std::set<permutation> a(expected.begin(), expected.end());
    std::set<permutation> b(got.generators.begin(), got.generators.end());
    CHECK(a == b);
}

TEST_CASE("every returned permutation preserves edges and colors") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        graph g = testutil::random_graph(3 + static_cast<int>(rng() % 6), 0.5, rng);
        edge_coloring col = edge_coloring::uncolored_for(g);
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = static_cast<color>(rng() % 4);
        aut_group grp = automorphisms(g, col);
        REQUIRE(grp.complete);
        for (const auto& p : grp.generators) CHECK(preserves(g, col, p));
        // cross-check the order against the filtering oracle
        CHECK(grp.order == brute_force_automorphisms(g, col, {}).size());
    }
}

TEST_CASE("group closure for fully enumerated groups") {
    for (const graph& g : {make_cycle(5), make_complete(4), make_complete_bipartite(2, 3)}) {
        aut_group grp = automorphisms(g, edge_coloring::uncolored_for(g));
        REQUIRE(grp.complete);
        REQUIRE(grp.order <= 120);
        std::set<permutation> members(grp.generators.begin(), grp.generators.end());
        for (const auto& a : grp.generators)
            for (const auto& b : grp.generators) CHECK(members.count(a.then(b)) == 1);
    }
}

TEST_CASE("element cap overflow") {
    graph k6 = make_complete(6);
    aut_group grp = automorphisms(k6, edge_coloring::uncolored_for(k6), {}, 100);
    CHECK_FALSE(grp.complete);
    CHECK_FALSE(grp.order.has_value());
    CHECK(grp.generators.size() == 100);
    CHECK_THROWS_AS(automorphisms_exact(k6, edge_coloring::uncolored_for(k6), {}, 100), cap_exceeded_error);
}

TEST_CASE("is_asymmetric and witnesses") {
    graph p3 = make_path(3);
    edge_coloring rb = edge_coloring::uncolored_for(p3);
    rb[0] = color::red;
    rb[1] = color::blue;
    CHECK(is_asymmetric(p3, rb));

    graph k2 = make_complete(2);
    for (color c : {color::red, color::blue, color::green}) {
        edge_coloring col = edge_coloring::uncolored_for(k2);
        col[0] = c;
        auto witness = nontrivial_automorphism(k2, col);
        REQUIRE(witness.has_value());
        CHECK(witness->image == std::vector<vertex>{1, 0});
    }

    graph k3 = make_complete(3);
    edge_coloring rainbow = edge_coloring::uncolored_for(k3);
    rainbow[0] = color::red;
    rainbow[1] = color::blue;
    rainbow[2] = color::green;
    CHECK(is_asymmetric(k3, rainbow));
}

TEST_CASE("witness is the lexicographically first nontrivial automorphism") {
    graph c6 = make_cycle(6);
    auto witness = nontrivial_automorphism(c6, edge_coloring::uncolored_for(c6));
    REQUIRE(witness.has_value());
    auto all = brute_force_automorphisms(c6, edge_coloring::uncolored_for(c6), {});
    std::sort(all.begin(), all.end());
    // all[0] is the identity, so all[1] is the lex-first nontrivial element
    CHECK(witness->image == all[1].image);
}

TEST_CASE("orbits_under basic cases") {
    graph c5 = make_cycle(5);
    aut_group stab = automorphisms(c5, edge_coloring::uncolored_for(c5), {0});
    orbit_partition orbits = orbits_under(stab);
    CHECK(orbits.blocks == std::vector<std::vector<vertex>>{{0}, {1, 4}, {2, 3}});

    aut_group only_id{4, {permutation::identity(4)}, true, 10, 1};
    CHECK(orbits_under(only_id).blocks == std::vector<std::vector<vertex>>{{0}, {1}, {2}, {3}});

    graph k4 = make_complete(4);
    aut_group s4 = automorphisms(k4, edge_coloring::uncolored_for(k4));
    CHECK(orbits_under(s4).blocks == std::vector<std::vector<vertex>>{{0, 1, 2, 3}});
}

TEST_CASE("orbits_under does not depend on generator order") {
    std::mt19937 rng(5);
    graph g = make_complete_bipartite(2, 3);
    aut_group grp = automorphisms(g, edge_coloring::uncolored_for(g));
    auto base = orbits_under(grp);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(grp.generators.begin(), grp.generators.end(), rng);
        CHECK(orbits_under(grp).blocks == base.blocks);
    }
}

TEST_CASE("stabilizer orbits") {
    graph c5 = make_cycle(5);
    CHECK(stabilizer_orbits(c5, edge_coloring::uncolored_for(c5), 0).blocks ==
          std::vector<std::vector<vertex>>{{0}, {1, 4}, {2, 3}});

    // K_{2,4} from a four-side vertex: oracle = filter all 720 permutations
    graph k24 = make_complete_bipartite(2, 4);
    auto expected_elems = brute_force_automorphisms(k24, edge_coloring::uncolored_for(k24), {2});
    CHECK(expected_elems.size() == 12); // 2! * 3! fixing one four-side vertex
    aut_group grp{k24.vertex_count(), expected_elems, true, default_element_cap, expected_elems.size()};
    auto expected = orbits_under(grp);
    CHECK(stabilizer_orbits(k24, edge_coloring::uncolored_for(k24), 2).blocks == expected.blocks);
    CHECK(expected.blocks == std::vector<std::vector<vertex>>{{0, 1}, {2}, {3, 4, 5}});

    graph p3 = make_path(3);
    edge_coloring rb = edge_coloring::uncolored_for(p3);
    rb[0] = color::red;
    rb[1] = color::blue;
    CHECK(stabilizer_orbits(p3, rb, 1).blocks == std::vector<std::vector<vertex>>{{0}, {1}, {2}});
}

TEST_CASE("stabilizer orbits agree with the filtering oracle on random colored graphs") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        graph g = testutil::random_graph(4 + static_cast<int>(rng() % 4), 0.5, rng);
        edge_coloring col = edge_coloring::uncolored_for(g);
        for (std::size_t i = 0; i < col.size(); ++i)
            if (rng() % 2) col[i] = static_cast<color>(rng() % 3);
        vertex x0 = static_cast<vertex>(rng() % g.vertex_count());
        auto elems = brute_force_automorphisms(g, col, {x0});
        aut_group grp{g.vertex_count(), elems, true, default_element_cap, elems.size()};
        CHECK(stabilizer_orbits(g, col, x0).blocks == orbits_under(grp).blocks);
    }
}

TEST_CASE("coloring a whole orbital with a fresh color only refines orbits") {
    // Arbitrary extensions can merge orbits (a newly colored edge may make
    // two previously distinguishable edges look alike); refinement is
    // guaranteed when the colored set stays a union of orbitals, which is
    // what the coloring procedure maintains. Extend by one full edge
    // orbital at a time, using a color not present yet.
    std::mt19937 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        graph g = testutil::random_graph(5 + static_cast<int>(rng() % 3), 0.5, rng);
        if (g.edge_count() == 0) continue;
        edge_coloring base = edge_coloring::uncolored_for(g);
        auto elems = brute_force_automorphisms(g, base, {0});
        // pick an uncolored edge and close it under the stabilizer
        const auto& es = g.edges();
        std::size_t seed_edge = rng() % es.size();
        edge_coloring ext = base;
        for (const auto& p : elems) {
            auto [u, v] = es[seed_edge];
            ext[g.edge_index(p(u), p(v))] = color::red;
        }
        auto coarse = stabilizer_orbits(g, base, 0);
        auto fine = stabilizer_orbits(g, ext, 0);
        for (vertex u = 0; u < g.vertex_count(); ++u)
            for (vertex v = u + 1; v < g.vertex_count(); ++v)
                if (fine.same_block(u, v)) CHECK(coarse.same_block(u, v));
    }
}
