#include "isoread/generators.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "isoread/iso.hpp"
#include "isoread/rng.hpp"

namespace isoread {

Graph gen_complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

std::pair<Graph, Graph> gen_cycle_pair(int k) {
    if (k < 3) throw std::invalid_argument("gen_cycle_pair: k < 3");
    Graph two(2 * k);
    for (int i = 0; i < k; ++i) {
        two.add_edge(i, (i + 1) % k);
        two.add_edge(k + i, k + (i + 1) % k);
    }
    Graph one(2 * k);
    for (int i = 0; i < 2 * k; ++i) one.add_edge(i, (i + 1) % (2 * k));
    return {two, one};
}

Graph gen_petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, 5 + i);
    }
    return g;
}

Graph gen_shrikhande() {
    Graph g(16);
    const int dx[] = {1, 3, 0, 0, 1, 3};
    const int dy[] = {0, 0, 1, 3, 1, 3};
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int d = 0; d < 6; ++d) {
                int i = 4 * x + y;
                int j = 4 * ((x + dx[d]) % 4) + (y + dy[d]) % 4;
                if (i != j && !g.has_edge(i, j)) g.add_edge(i, j);
            }
    return g;
}

Graph gen_rook4() {
    Graph g(16);
    for (int i = 0; i < 16; ++i)
        for (int j = i + 1; j < 16; ++j)
            if (i / 4 == j / 4 || i % 4 == j % 4) g.add_edge(i, j);
    return g;
}

Graph gen_er(int n, double p, uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_er: p outside [0,1]");
    Graph g(n);
    SplitMix64 gen(seed);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (gen.uniform() < p) g.add_edge(i, j);
    return g;
}

namespace {

bool connected(const Graph& g) {
    if (g.n == 0) return true;
    std::vector<char> seen(g.n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : g.nbr[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                q.push(u);
            }
    }
    return reached == g.n;
}

Graph build_cfi(const Graph& base, bool twist) {
    auto base_edges = base.edges();
    const int m = static_cast<int>(base_edges.size());

    // edge index by endpoint pair
    std::vector<std::vector<int>> eidx(base.n, std::vector<int>(base.n, -1));
    for (int e = 0; e < m; ++e) {
        auto [u, v] = base_edges[e];
        eidx[u][v] = eidx[v][u] = e;
    }

    // gadget node id per (vertex, even-subset mask over incident edges)
    int next = 0;
    std::vector<std::vector<int>> gadget(base.n);        // per vertex: node ids
    std::vector<std::vector<int>> incident(base.n);      // incident edge ids, sorted
    for (int v = 0; v < base.n; ++v) {
        for (int u : base.nbr[v]) incident[v].push_back(eidx[v][u]);
        std::sort(incident[v].begin(), incident[v].end());
        const int deg = static_cast<int>(incident[v].size());
        for (int mask = 0; mask < (1 << deg); ++mask)
            if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 == 0)
                gadget[v].push_back(next++);
    }

    // per edge, per endpoint: the (a, b) pair
    std::vector<std::array<int, 4>> pairs(m);  // a_u, b_u, a_v, b_v
    for (int e = 0; e < m; ++e)
        pairs[e] = {next + 4 * e, next + 4 * e + 1, next + 4 * e + 2, next + 4 * e + 3};

    Graph g(next + 4 * m);

    for (int v = 0; v < base.n; ++v) {
        const int deg = static_cast<int>(incident[v].size());
        int slot = 0;
        for (int mask = 0; mask < (1 << deg); ++mask) {
            if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
            int node = gadget[v][slot++];
            for (int t = 0; t < deg; ++t) {
                int e = incident[v][t];
                bool in_subset = (mask >> t) & 1;
                bool lo = base_edges[e].first == v;  // v is the u side of e
                int a = pairs[e][lo ? 0 : 2];
                int b = pairs[e][lo ? 1 : 3];
                g.add_edge(node, in_subset ? a : b);
            }
        }
    }

    for (int e = 0; e < m; ++e) {
        auto [au, bu, av, bv] = pairs[e];
        if (twist && e == 0) {
            g.add_edge(au, bv);
            g.add_edge(bu, av);
        } else {
            g.add_edge(au, av);
            g.add_edge(bu, bv);
        }
    }
    return g;
}

}  // namespace

std::pair<Graph, Graph> gen_cfi_pair(const Graph& base) {
    if (!connected(base)) throw std::invalid_argument("gen_cfi_pair: base not connected");
    if (base.edge_count() == 0) throw std::invalid_argument("gen_cfi_pair: base has no edges");
    return {build_cfi(base, false), build_cfi(base, true)};
}

Graph gm_switch(const Graph& g, const std::vector<int>& cell) {
    std::vector<char> in_cell(g.n, 0);
    for (int v : cell) {
        if (v < 0 || v >= g.n)
            throw std::invalid_argument("gm_switch: cell vertex out of range");
        if (in_cell[v]) throw std::invalid_argument("gm_switch: duplicate cell vertex");
        in_cell[v] = 1;
    }
    const int c = static_cast<int>(cell.size());

    int deg_inside = -1;
    for (int v : cell) {
        int d = 0;
        for (int u : g.nbr[v]) d += in_cell[u];
        if (deg_inside < 0) deg_inside = d;
        if (d != deg_inside) {
            std::ostringstream os;
            os << "gm_switch: cell not regular, vertex " << v << " has " << d
               << " cell neighbors";
            throw std::invalid_argument(os.str());
        }
    }

    std::vector<int> count(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        if (in_cell[v]) continue;
        for (int u : g.nbr[v]) count[v] += in_cell[u];
        if (count[v] != 0 && count[v] != c && 2 * count[v] != c) {
            std::ostringstream os;
            os << "gm_switch: vertex " << v << " has " << count[v] << " of " << c
               << " neighbors in the cell";
            throw std::invalid_argument(os.str());
        }
    }

    Graph out = g;
    for (int v = 0; v < g.n; ++v) {
        if (in_cell[v] || 2 * count[v] != c) continue;
        for (int u : cell) {
            // complement adjacency between v and the cell
            size_t vu = static_cast<size_t>(v) * g.n + u;
            size_t uv = static_cast<size_t>(u) * g.n + v;
            out.adj[vu] ^= 1;
            out.adj[uv] ^= 1;
        }
    }
    // rebuild neighbor lists from the flipped matrix
    for (int v = 0; v < out.n; ++v) {
        out.nbr[v].clear();
        for (int u = 0; u < out.n; ++u)
            if (out.adj[static_cast<size_t>(v) * out.n + u]) out.nbr[v].push_back(u);
    }
    return out;
}

std::optional<std::vector<int>> find_gm_partition(const Graph& g) {
    if (g.n > 12)
        throw std::invalid_argument("find_gm_partition: n > 12 unsupported");
    // subsets by ascending size, then lexicographically on the sorted vertex list
    std::vector<std::vector<int>> subsets;
    for (unsigned mask = 1; mask < (1u << g.n); ++mask) {
        std::vector<int> cell;
        for (int v = 0; v < g.n; ++v)
            if ((mask >> v) & 1) cell.push_back(v);
        subsets.push_back(std::move(cell));
    }
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                         if (a.size() != b.size()) return a.size() < b.size();
                         return a < b;
                     });
    for (const auto& cell : subsets) {
        Graph switched;
        try {
            switched = gm_switch(g, cell);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (switched == g) continue;
        if (!is_isomorphic(g, switched)) return cell;
    }
    return std::nullopt;
}

}  // namespace isoread
