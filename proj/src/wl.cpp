#include "isoread/wl.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace isoread {

namespace {

// rename by first appearance in node order; returns color count
int canonical_names(std::vector<int>& colors) {
    std::map<int, int> name;
    int count = 0;
    for (int& c : colors) {
        auto it = name.find(c);
        if (it == name.end()) it = name.emplace(c, count++).first;
        c = it->second;
    }
    return count;
}

}  // namespace

std::vector<int> refine_colors(const Graph& g, std::vector<int> colors) {
    using Sig = std::pair<int, std::vector<int>>;
    const int n = g.n;
    int count = canonical_names(colors);
    while (true) {
        std::vector<Sig> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> nc;
            nc.reserve(g.nbr[v].size());
            for (int u : g.nbr[v]) nc.push_back(colors[u]);
            std::sort(nc.begin(), nc.end());
            sig[v] = {colors[v], std::move(nc)};
        }
        std::map<Sig, int> name;
        std::vector<int> next(n);
        int next_count = 0;
        for (int v = 0; v < n; ++v) {
            auto it = name.find(sig[v]);
            if (it == name.end()) it = name.emplace(sig[v], next_count++).first;
            next[v] = it->second;
        }
        if (next_count == count) break;
        colors = std::move(next);
        count = next_count;
    }
    return colors;
}

StableColoring color_refinement(const Graph& g) {
    StableColoring out;
    out.colors = refine_colors(g, std::vector<int>(g.n, 0));
    for (int c : out.colors) out.histogram[c]++;
    out.num_colors = static_cast<int>(out.histogram.size());
    return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
    Graph u(g.n + h.n);
    for (auto [i, j] : g.edges()) u.add_edge(i, j);
    for (auto [i, j] : h.edges()) u.add_edge(g.n + i, g.n + j);
    return u;
}

bool wl_equivalent(const Graph& g, const Graph& h) {
    Graph u = disjoint_union(g, h);
    auto colors = refine_colors(u, std::vector<int>(u.n, 0));
    std::map<int, int> hg, hh;
    for (int v = 0; v < g.n; ++v) hg[colors[v]]++;
    for (int v = 0; v < h.n; ++v) hh[colors[g.n + v]]++;
    return hg == hh;
}

}  // namespace isoread
