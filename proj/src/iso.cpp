#include "isoread/iso.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "isoread/wl.hpp"

namespace isoread {

namespace {

struct IsoSearch {
    const Graph& u;   // disjoint union, g-side nodes < split
    const Graph& g;
    const Graph& h;
    int split;

    bool run(std::vector<int> colors) const {
        colors = refine_colors(u, std::move(colors));

        std::map<int, int> cg, ch;
        for (int v = 0; v < split; ++v) cg[colors[v]]++;
        for (int v = split; v < u.n; ++v) ch[colors[v]]++;
        if (cg != ch) return false;

        // smallest non-singleton class, ties by color id
        int target = -1, best = 0;
        for (auto [c, k] : cg)
            if (k > 1 && (target < 0 || k < best)) { target = c; best = k; }

        if (target < 0) {
            // discrete per side: colors define the candidate bijection
            std::vector<int> to(split, -1);
            for (auto [c, k] : cg) {
                int a = -1, b = -1;
                for (int v = 0; v < split; ++v)
                    if (colors[v] == c) a = v;
                for (int v = split; v < u.n; ++v)
                    if (colors[v] == c) b = v - split;
                to[a] = b;
                (void)k;
            }
            for (auto [i, j] : g.edges())
                if (!h.has_edge(to[i], to[j])) return false;
            return true;
        }

        int v = -1;
        for (int i = 0; i < split && v < 0; ++i)
            if (colors[i] == target) v = i;
        int fresh = 1 + *std::max_element(colors.begin(), colors.end());
        for (int w = split; w < u.n; ++w) {
            if (colors[w] != target) continue;
            auto branch = colors;
            branch[v] = fresh;
            branch[w] = fresh;
            if (run(std::move(branch))) return true;
        }
        return false;
    }
};

}  // namespace

bool is_isomorphic(const Graph& g, const Graph& h) {
    if (g.n > 64 || h.n > 64)
        throw std::invalid_argument("is_isomorphic: graphs larger than 64 nodes");
    if (g.n != h.n || g.edge_count() != h.edge_count()) return false;
    if (g.n == 0) return true;
    Graph u = disjoint_union(g, h);
    IsoSearch s{u, g, h, g.n};
    return s.run(std::vector<int>(u.n, 0));
}

}  // namespace isoread
