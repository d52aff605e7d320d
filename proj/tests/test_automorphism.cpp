#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "isoread/automorphism.hpp"
#include "isoread/generators.hpp"
#include "isoread/graph.hpp"
#include "isoread/rng.hpp"

using namespace isoread;

namespace {

// Plain backtracking count with no refinement pruning; slow but independent.
int brute_aut_count(const Graph& g) {
    std::vector<int> image(g.n, -1);
    std::vector<char> used(g.n, 0);
    int count = 0;
    std::function<void(int)> rec = [&](int v) {
        if (v == g.n) {
            ++count;
            return;
        }
        for (int w = 0; w < g.n; ++w) {
            if (used[w]) continue;
            bool ok = g.degree(v) == g.degree(w);
            for (int u = 0; ok && u < v; ++u)
                if (g.has_edge(v, u) != g.has_edge(w, image[u])) ok = false;
            if (!ok) continue;
            image[v] = w;
            used[w] = 1;
            rec(v + 1);
            used[w] = 0;
        }
    };
    rec(0);
    return count;
}

Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph path3() {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

bool contains(const std::set<std::vector<int>>& set, const Permutation& p) {
    return set.count(p.map) != 0;
}

std::set<std::vector<int>> as_set(const AutomorphismSet& aut) {
    std::set<std::vector<int>> out;
    for (const auto& p : aut.perms) out.insert(p.map);
    return out;
}

std::vector<int> orbit_sizes(const PairOrbitPartition& po) {
    std::vector<int> sizes(po.m, 0);
    for (int id : po.orbit_id) ++sizes[id];
    return sizes;
}

}  // namespace

TEST_CASE("group orders match the brute-force oracle") {
    for (const Graph& g : {cycle(6), gen_cycle_pair(3).first, gen_petersen(), path3()}) {
        AutomorphismSet aut = enumerate_automorphisms(g);
        CHECK_FALSE(aut.capped);
        CHECK(aut.size() == brute_aut_count(g));
    }
}

TEST_CASE("group orders, frozen") {
    auto order = [](const Graph& g) {
        AutomorphismSet aut = enumerate_automorphisms(g);
        REQUIRE_FALSE(aut.capped);
        return aut.size();
    };
    CHECK(order(cycle(6)) == 12);
    CHECK(order(gen_cycle_pair(3).first) == 72);
    CHECK(order(gen_petersen()) == 120);
    CHECK(order(gen_shrikhande()) == 192);
    CHECK(order(gen_rook4()) == 1152);
    CHECK(order(cycle(18)) == 36);
    CHECK(order(gen_cycle_pair(9).first) == 648);
    auto [cfi_a, cfi_b] = gen_cfi_pair(gen_complete(4));
    CHECK(order(cfi_a) == 192);
    CHECK(order(cfi_b) == 192);
}

TEST_CASE("group structure of the stored set") {
    AutomorphismSet aut = enumerate_automorphisms(cycle(6));
    auto set = as_set(aut);
    CHECK(contains(set, Permutation::identity(6)));
    for (const auto& p : aut.perms) {
        CHECK(p.is_valid());
        CHECK(contains(set, p.inverse()));
        for (const auto& q : aut.perms) CHECK(contains(set, compose(p, q)));
    }
}

TEST_CASE("every stored permutation is an automorphism") {
    for (const Graph& g : {gen_petersen(), gen_shrikhande(), gen_er(14, 0.4, 2)}) {
        AutomorphismSet aut = enumerate_automorphisms(g);
        for (const auto& p : aut.perms)
            for (auto [i, j] : g.edges()) CHECK(g.has_edge(p(i), p(j)));
    }
}

TEST_CASE("cap behavior") {
    CHECK_THROWS_AS(enumerate_automorphisms(cycle(6), 0), std::invalid_argument);

    AutomorphismSet aut = enumerate_automorphisms(gen_rook4(), 100);
    CHECK(aut.capped);
    CHECK(aut.cap == 100);
    CHECK(aut.size() >= 100);
    auto set = as_set(aut);
    CHECK(contains(set, Permutation::identity(16)));
    for (const auto& p : aut.perms) CHECK(contains(set, p.inverse()));

    AutomorphismSet full = enumerate_automorphisms(gen_rook4());
    CHECK_FALSE(full.capped);
    CHECK(full.size() == 1152);
}

TEST_CASE("identity-only group gives singleton pair orbits") {
    // path 0..5 plus chords 1-3 and 1-4: the smallest-by-hand asymmetric graph
    Graph h(6);
    for (int i = 0; i < 5; ++i) h.add_edge(i, i + 1);
    h.add_edge(1, 3);
    h.add_edge(1, 4);
    AutomorphismSet rigid = enumerate_automorphisms(h);
    CHECK(rigid.size() == 1);
    CHECK(brute_aut_count(h) == 1);
    PairOrbitPartition po = pair_orbits(rigid, h);
    CHECK(po.m == 36);
    CHECK(orbit_sizes(po) == std::vector<int>(36, 1));
}

TEST_CASE("orbit counts, frozen") {
    auto orbits = [](const Graph& g) {
        return pair_orbits(enumerate_automorphisms(g), g).m;
    };
    CHECK(orbits(cycle(6)) == 4);
    CHECK(orbits(gen_cycle_pair(3).first) == 3);
    CHECK(orbits(gen_shrikhande()) == 4);
    CHECK(orbits(gen_rook4()) == 3);
    CHECK(orbits(gen_cfi_pair(gen_complete(4)).first) == 23);
}

TEST_CASE("hexagon orbits in canonical order") {
    Graph g = cycle(6);
    PairOrbitPartition po = pair_orbits(enumerate_automorphisms(g), g);
    REQUIRE(po.m == 4);
    // diagonal first, then the size-6 antipodal orbit, then the two size-12
    // orbits with the non-adjacent one ahead (adjacency bit sorts ascending)
    CHECK(po.orbit(0, 0) == 0);
    CHECK(po.orbit(0, 3) == 1);
    CHECK(po.orbit(0, 2) == 2);
    CHECK(po.orbit(0, 1) == 3);
    CHECK(orbit_sizes(po) == std::vector<int>{6, 6, 12, 12});
    // orbits are symmetric sets here
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(po.orbit(i, j) == po.orbit(j, i));
}

TEST_CASE("orbit partition is invariant under relabeling") {
    Graph g = cycle(6);
    PairOrbitPartition po = pair_orbits(enumerate_automorphisms(g), g);
    SplitMix64 gen(77);
    Permutation p = random_permutation(6, gen);
    Graph h = permute(g, p);
    PairOrbitPartition qo = pair_orbits(enumerate_automorphisms(h), h);
    // all four hexagon orbits are split by label-free keys, so ids transport
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(qo.orbit(p(i), p(j)) == po.orbit(i, j));
}

TEST_CASE("orbit partitions agree as partitions under relabeling") {
    Graph g = gen_er(9, 0.4, 31);
    SplitMix64 gen(13);
    Permutation p = random_permutation(g.n, gen);
    Graph h = permute(g, p);
    PairOrbitPartition po = pair_orbits(enumerate_automorphisms(g), g);
    PairOrbitPartition qo = pair_orbits(enumerate_automorphisms(h), h);
    REQUIRE(po.m == qo.m);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k)
                for (int l = 0; l < g.n; ++l)
                    CHECK((po.orbit(i, j) == po.orbit(k, l)) ==
                          (qo.orbit(p(i), p(j)) == qo.orbit(p(k), p(l))));
}

TEST_CASE("pair_orbits validates permutation sizes") {
    AutomorphismSet bad;
    bad.perms.push_back(Permutation::identity(5));
    CHECK_THROWS_AS(pair_orbits(bad, cycle(6)), std::invalid_argument);
}

TEST_CASE("hexagon operator with hand-picked coefficients") {
    Graph g = cycle(6);
    PairOrbitPartition po = pair_orbits(enumerate_automorphisms(g), g);
    REQUIRE(po.m == 4);
    std::vector<double> coeffs(4);
    coeffs[po.orbit(0, 0)] = 1.0;
    coeffs[po.orbit(0, 1)] = 2.0;
    coeffs[po.orbit(0, 2)] = 3.0;
    coeffs[po.orbit(0, 3)] = 5.0;
    Mat s = build_S(po, coeffs);
    const double ring[6] = {1.0, 2.0, 3.0, 5.0, 3.0, 2.0};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(s.at(i, j) == ring[(j - i + 6) % 6]);

    CHECK_THROWS_AS(build_S(po, std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("two-triangle operator with hand-picked coefficients") {
    Graph g = gen_cycle_pair(3).first;
    PairOrbitPartition po = pair_orbits(enumerate_automorphisms(g), g);
    REQUIRE(po.m == 3);
    CHECK(po.orbit(0, 0) == 0);
    CHECK(orbit_sizes(po) == std::vector<int>{6, 12, 18});
    std::vector<double> coeffs(3);
    coeffs[po.orbit(0, 0)] = 5.0;
    coeffs[po.orbit(0, 1)] = 2.0;  // same-triangle off-diagonal
    coeffs[po.orbit(0, 3)] = 1.0;  // cross-triangle
    Mat s = build_S(po, coeffs);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            double want = i == j ? 5.0 : (i / 3 == j / 3 ? 2.0 : 1.0);
            CHECK(s.at(i, j) == want);
        }
}

TEST_CASE("seeded operator") {
    Graph g = gen_petersen();
    PairOrbitPartition po = pair_orbits(enumerate_automorphisms(g), g);
    Mat s1 = build_S(po, uint64_t{9});
    Mat s2 = build_S(po, uint64_t{9});
    Mat s3 = build_S(po, uint64_t{10});
    CHECK(s1 == s2);
    CHECK_FALSE(s1 == s3);
    CHECK(is_symmetric(s1));
    for (double v : s1.a) {
        CHECK(v >= 1.0);
        CHECK(v <= 2.0);
    }
}

TEST_CASE("operator commutes with the group") {
    for (const Graph& g : {cycle(6), gen_petersen(), gen_er(12, 0.3, 4)}) {
        AutomorphismSet aut = enumerate_automorphisms(g);
        Mat s = build_S(pair_orbits(aut, g), uint64_t{3});
        for (const auto& h : aut.perms) {
            Mat rho = perm_matrix(h);
            CHECK(max_abs_diff(matmul(rho, s), matmul(s, rho)) <= 1e-12);
        }
    }
}

TEST_CASE("perm matrix convention") {
    Permutation p({1, 2, 0});
    Mat rho = perm_matrix(p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(rho.at(i, j) == (j == p(i) ? 1.0 : 0.0));
    // rho(h) e_j = e_{h^{-1}(j)} column-wise; acting on node-indexed vectors
    std::vector<double> u{10.0, 20.0, 30.0};
    std::vector<double> v = matvec(rho, u);
    for (int i = 0; i < 3; ++i) CHECK(v[i] == u[p(i)]);
}
