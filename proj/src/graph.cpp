#include "isoread/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "isoread/rng.hpp"

namespace isoread {

void Graph::add_edge(int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::out_of_range("add_edge: node out of range");
    if (i == j) throw std::invalid_argument("add_edge: self loop");
    if (has_edge(i, j)) return;
    adj[static_cast<size_t>(i) * n + j] = 1;
    adj[static_cast<size_t>(j) * n + i] = 1;
    nbr[i].insert(std::lower_bound(nbr[i].begin(), nbr[i].end(), j), j);
    nbr[j].insert(std::lower_bound(nbr[j].begin(), nbr[j].end(), i), i);
}

int Graph::edge_count() const {
    int total = 0;
    for (int v = 0; v < n; ++v) total += degree(v);
    return total / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j : nbr[i])
            if (i < j) out.emplace_back(i, j);
    return out;
}

Permutation Permutation::identity(int n) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = i;
    return Permutation(std::move(m));
}

bool Permutation::is_valid() const {
    const int n = size();
    std::vector<char> seen(n, 0);
    for (int v : map) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(map.size());
    for (int i = 0; i < size(); ++i) inv[map[i]] = i;
    return Permutation(std::move(inv));
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("compose: size mismatch");
    std::vector<int> m(p.map.size());
    for (int i = 0; i < p.size(); ++i) m[i] = q(p(i));
    return Permutation(std::move(m));
}

Permutation random_permutation(int n, SplitMix64& gen) {
    auto p = Permutation::identity(n);
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(gen.bounded(static_cast<uint64_t>(i) + 1));
        std::swap(p.map[i], p.map[j]);
    }
    return p;
}

Graph permute(const Graph& g, const Permutation& p) {
    if (p.size() != g.n)
        throw std::invalid_argument("permute: size mismatch");
    Graph out(g.n);
    for (auto [i, j] : g.edges()) out.add_edge(p(i), p(j));
    return out;
}

Mat adjacency(const Graph& g) {
    Mat a(g.n, g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j : g.nbr[i]) a.at(i, j) = 1.0;
    return a;
}

Mat laplacian(const Graph& g) {
    Mat l(g.n, g.n);
    for (int i = 0; i < g.n; ++i) {
        l.at(i, i) = g.degree(i);
        for (int j : g.nbr[i]) l.at(i, j) = -1.0;
    }
    return l;
}

namespace {

[[noreturn]] void g6_fail(size_t offset, const std::string& what) {
    std::ostringstream os;
    os << "graph6 parse error at byte " << offset << ": " << what;
    throw std::runtime_error(os.str());
}

}  // namespace

Graph parse_graph6(const std::string& bytes) {
    std::string s = bytes;
    size_t base = 0;
    const std::string header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) {
        s = s.substr(header.size());
        base = header.size();
    }
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.empty()) g6_fail(base, "empty input");

    size_t pos = 0;
    auto need = [&](size_t k) {
        if (pos + k > s.size()) g6_fail(base + s.size(), "truncated input");
    };
    auto six = [&]() -> int {
        need(1);
        unsigned char c = static_cast<unsigned char>(s[pos]);
        if (c < 63 || c > 126) g6_fail(base + pos, "byte outside graph6 range");
        ++pos;
        return c - 63;
    };

    long long n;
    int first = six();
    if (first < 63) {
        n = first;
    } else {
        // long form: three 6-bit groups, most significant first
        long long b0 = six(), b1 = six(), b2 = six();
        n = (b0 << 12) | (b1 << 6) | b2;
        if (n < 63) g6_fail(base, "long form used for n < 63");
        if (n > 258047) g6_fail(base, "n too large");
    }

    Graph g(static_cast<int>(n));
    long long nbits = n * (n - 1) / 2;
    int buf = 0, avail = 0;
    long long bit = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            if (avail == 0) {
                buf = six();
                avail = 6;
            }
            if ((buf >> (avail - 1)) & 1) g.add_edge(i, j);
            --avail;
        }
    }
    (void)nbits;
    // padding bits must be zero
    if (avail > 0 && (buf & ((1 << avail) - 1)) != 0)
        g6_fail(base + pos - 1, "nonzero padding bits");
    if (pos != s.size()) g6_fail(base + pos, "trailing bytes");
    return g;
}

std::string write_graph6(const Graph& g) {
    std::string out;
    if (g.n <= 62) {
        out.push_back(static_cast<char>(63 + g.n));
    } else if (g.n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>(63 + ((g.n >> 12) & 63)));
        out.push_back(static_cast<char>(63 + ((g.n >> 6) & 63)));
        out.push_back(static_cast<char>(63 + (g.n & 63)));
    } else {
        throw std::invalid_argument("write_graph6: n too large");
    }
    int buf = 0, have = 0;
    for (int j = 1; j < g.n; ++j) {
        for (int i = 0; i < j; ++i) {
            buf = (buf << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++have == 6) {
                out.push_back(static_cast<char>(63 + buf));
                buf = 0;
                have = 0;
            }
        }
    }
    if (have > 0) out.push_back(static_cast<char>(63 + (buf << (6 - have))));
    return out;
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    int n;
    if (!(in >> n) || n < 0)
        throw std::runtime_error("edge list: bad node count");
    Graph g(n);
    int u, v;
    while (in >> u) {
        if (!(in >> v)) throw std::runtime_error("edge list: dangling endpoint");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::runtime_error("edge list: endpoint out of range");
        g.add_edge(u, v);
    }
    return g;
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.n << "\n";
    for (auto [i, j] : g.edges()) os << i << " " << j << "\n";
    return os.str();
}

}  // namespace isoread
