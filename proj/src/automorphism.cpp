#include "isoread/automorphism.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

#include "isoread/rng.hpp"
#include "isoread/wl.hpp"

namespace isoread {

namespace {

// BFS over components in ascending root order, so every non-root vertex has
// an earlier neighbor to anchor candidate generation.
std::vector<int> search_order(const Graph& g) {
    std::vector<int> order;
    order.reserve(g.n);
    std::vector<char> seen(g.n, 0);
    for (int r = 0; r < g.n; ++r) {
        if (seen[r]) continue;
        std::queue<int> q;
        q.push(r);
        seen[r] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int u : g.nbr[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    q.push(u);
                }
        }
    }
    return order;
}

struct AutSearch {
    const Graph& g;
    int cap;
    std::vector<int> colors;   // stable refinement colors
    std::vector<int> order;    // processing order
    std::vector<int> anchor;   // earlier neighbor per order position, -1 at roots
    std::vector<int> image;    // partial map, -1 = unassigned
    std::vector<char> used;
    std::vector<Permutation> found;
    bool capped = false;

    explicit AutSearch(const Graph& g_, int cap_) : g(g_), cap(cap_) {
        colors = refine_colors(g, std::vector<int>(g.n, 0));
        order = search_order(g);
        anchor.assign(g.n, -1);
        std::vector<int> pos(g.n, -1);
        for (int t = 0; t < g.n; ++t) pos[order[t]] = t;
        for (int t = 0; t < g.n; ++t) {
            int v = order[t];
            for (int u : g.nbr[v])
                if (pos[u] < t) {
                    anchor[t] = u;
                    break;
                }
        }
        image.assign(g.n, -1);
        used.assign(g.n, 0);
    }

    bool consistent(int v, int w) const {
        if (colors[w] != colors[v]) return false;
        for (int u = 0; u < g.n; ++u)
            if (image[u] >= 0 && g.has_edge(v, u) != g.has_edge(w, image[u]))
                return false;
        return true;
    }

    void extend(int depth) {
        if (capped) return;
        if (depth == g.n) {
            found.emplace_back(image);
            if (static_cast<int>(found.size()) >= cap) capped = true;
            return;
        }
        int v = order[depth];
        if (anchor[depth] >= 0) {
            for (int w : g.nbr[image[anchor[depth]]]) {
                if (used[w] || !consistent(v, w)) continue;
                image[v] = w;
                used[w] = 1;
                extend(depth + 1);
                used[w] = 0;
                image[v] = -1;
                if (capped) return;
            }
        } else {
            for (int w = 0; w < g.n; ++w) {
                if (used[w] || !consistent(v, w)) continue;
                image[v] = w;
                used[w] = 1;
                extend(depth + 1);
                used[w] = 0;
                image[v] = -1;
                if (capped) return;
            }
        }
    }
};

}  // namespace

AutomorphismSet enumerate_automorphisms(const Graph& g, int cap) {
    if (cap < 1) throw std::invalid_argument("enumerate_automorphisms: cap < 1");
    AutomorphismSet out;
    out.cap = cap;
    if (g.n == 0) {
        out.perms.push_back(Permutation{});
        return out;
    }
    AutSearch s(g, cap);
    s.extend(0);
    out.perms = std::move(s.found);
    out.capped = s.capped;
    if (out.capped) {
        // keep the invariants: identity present, closed under inverse
        std::set<std::vector<int>> have;
        for (const auto& p : out.perms) have.insert(p.map);
        auto id = Permutation::identity(g.n);
        if (!have.count(id.map)) {
            out.perms.push_back(id);
            have.insert(id.map);
        }
        const size_t base = out.perms.size();
        for (size_t k = 0; k < base; ++k) {
            auto inv = out.perms[k].inverse();
            if (have.insert(inv.map).second) out.perms.push_back(std::move(inv));
        }
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

// unordered BFS distances from every node; unreachable pairs get n
std::vector<int> all_pairs_distance(const Graph& g) {
    const int n = g.n;
    std::vector<int> dist(static_cast<size_t>(n) * n, n);
    for (int s = 0; s < n; ++s) {
        auto* row = dist.data() + static_cast<size_t>(s) * n;
        row[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : g.nbr[v])
                if (row[u] == n) {
                    row[u] = row[v] + 1;
                    q.push(u);
                }
        }
    }
    return dist;
}

}  // namespace

PairOrbitPartition pair_orbits(const AutomorphismSet& aut, const Graph& g) {
    const int n = g.n;
    UnionFind uf(n * n);
    for (const auto& h : aut.perms) {
        if (h.size() != n)
            throw std::invalid_argument("pair_orbits: permutation size mismatch");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                uf.unite(i * n + j, h(i) * n + h(j));
    }

    auto dist = all_pairs_distance(g);

    // root -> (canonical sort key, member pairs)
    struct OrbitInfo {
        std::tuple<int, int, int, int, int, int, int, int> key;
        std::vector<int> members;
    };
    std::vector<int> root_of(static_cast<size_t>(n) * n);
    std::vector<int> size_of(static_cast<size_t>(n) * n, 0);
    for (int p = 0; p < n * n; ++p) {
        root_of[p] = uf.find(p);
        size_of[root_of[p]]++;
    }
    std::vector<OrbitInfo> orbits;
    std::vector<int> orbit_at(static_cast<size_t>(n) * n, -1);
    for (int p = 0; p < n * n; ++p) {
        int r = root_of[p];
        if (orbit_at[r] < 0) {
            orbit_at[r] = static_cast<int>(orbits.size());
            orbits.push_back({});
        }
        orbits[orbit_at[r]].members.push_back(p);
    }
    for (auto& o : orbits) {
        int rep = *std::min_element(o.members.begin(), o.members.end());
        int i = rep / n, j = rep % n;
        int di = g.degree(i), dj = g.degree(j);
        o.key = {i == j ? 0 : 1,
                 static_cast<int>(o.members.size()),
                 std::min(di, dj),
                 std::max(di, dj),
                 g.has_edge(i, j) ? 1 : 0,
                 dist[static_cast<size_t>(i) * n + j],
                 i,
                 j};
    }
    std::vector<int> idx(orbits.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return orbits[a].key < orbits[b].key; });

    PairOrbitPartition out;
    out.n = n;
    out.m = static_cast<int>(orbits.size());
    out.orbit_id.assign(static_cast<size_t>(n) * n, -1);
    for (int t = 0; t < out.m; ++t)
        for (int p : orbits[idx[t]].members) out.orbit_id[p] = t;
    return out;
}

Mat build_S(const PairOrbitPartition& po, const std::vector<double>& coeffs) {
    if (static_cast<int>(coeffs.size()) != po.m)
        throw std::invalid_argument("build_S: coefficient count != orbit count");
    const int n = po.n;
    Mat s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.at(i, j) = 0.5 * (coeffs[po.orbit(i, j)] + coeffs[po.orbit(j, i)]);
    return s;
}

Mat build_S(const PairOrbitPartition& po, uint64_t seed) {
    SplitMix64 gen(seed);
    std::vector<double> coeffs(po.m);
    for (int t = 0; t < po.m; ++t) coeffs[t] = gen.uniform(1.0, 2.0);
    return build_S(po, coeffs);
}

Mat perm_matrix(const Permutation& p) {
    const int n = p.size();
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, p(i)) = 1.0;
    return m;
}

}  // namespace isoread
