#include "isoread/reptheory.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "isoread/rng.hpp"

namespace isoread {

ReynoldsResult reynolds(const AutomorphismSet& aut) {
    if (aut.perms.empty()) throw std::invalid_argument("reynolds: empty set");
    const int n = aut.perms.front().size();
    ReynoldsResult out;
    out.subgroup_only = aut.capped;
    out.p_avg = Mat(n, n);
    const double w = 1.0 / aut.size();
    for (const auto& h : aut.perms)
        for (int i = 0; i < n; ++i) out.p_avg.at(i, h(i)) += w;
    return out;
}

Mat character_projector(const AutomorphismSet& aut, const std::vector<double>& chi,
                        int degree) {
    if (aut.capped)
        throw std::invalid_argument("character_projector: capped set is not a group");
    if (chi.size() != aut.perms.size())
        throw std::invalid_argument("character_projector: character length mismatch");
    const int n = aut.perms.front().size();
    Mat p(n, n);
    const double w = static_cast<double>(degree) / aut.size();
    for (size_t k = 0; k < aut.perms.size(); ++k) {
        const auto& h = aut.perms[k];
        for (int i = 0; i < n; ++i) p.at(i, h(i)) += w * chi[k];
    }
    return p;
}

namespace {

// classify h in Aut(C6) as r^k (rotation) or r^k s (reflection, s: i -> -i);
// returns (k, is_reflection)
std::pair<int, bool> hexagon_word(const Permutation& h) {
    if (h.size() != 6) throw std::invalid_argument("d6_character_table: not on 6 nodes");
    const int c = h(0);
    bool rot = true, refl = true;
    for (int i = 0; i < 6; ++i) {
        if (h(i) != (i + c) % 6) rot = false;
        if (h(i) != ((c - i) % 6 + 6) % 6) refl = false;
    }
    if (rot) return {c, false};
    if (refl) return {c, true};
    throw std::invalid_argument("d6_character_table: permutation not in the hexagon action");
}

}  // namespace

CharacterTable d6_character_table(const AutomorphismSet& aut) {
    if (aut.capped) throw std::invalid_argument("d6_character_table: capped set");
    if (aut.size() != 12) throw std::invalid_argument("d6_character_table: |H| != 12");
    CharacterTable table;
    table.group = aut;

    std::vector<std::pair<int, bool>> words;
    words.reserve(12);
    for (const auto& h : aut.perms) words.push_back(hexagon_word(h));

    for (int a : {1, -1})
        for (int b : {1, -1}) {
            Character ch;
            ch.name = std::string("linear_") + (a > 0 ? "p" : "m") + (b > 0 ? "p" : "m");
            ch.degree = 1;
            for (auto [k, refl] : words) {
                double val = (k % 2 == 0 ? 1.0 : a);
                if (refl) val *= b;
                ch.values.push_back(val);
            }
            table.characters.push_back(std::move(ch));
        }
    const double pi = std::acos(-1.0);
    for (int j : {1, 2}) {
        Character ch;
        ch.name = "planar_" + std::to_string(j);
        ch.degree = 2;
        for (auto [k, refl] : words)
            ch.values.push_back(refl ? 0.0 : 2.0 * std::cos(pi * j * k / 3.0));
        table.characters.push_back(std::move(ch));
    }
    return table;
}

Character trivial_character(const AutomorphismSet& aut) {
    return {"trivial", 1, std::vector<double>(aut.perms.size(), 1.0)};
}

namespace {

std::vector<double> apply_perm_rows(const Permutation& h, const std::vector<double>& u) {
    // (rho(h) u)_i = u_{h(i)} since rho(h)_{i,j} = [j == h(i)]
    std::vector<double> out(u.size());
    for (size_t i = 0; i < u.size(); ++i) out[i] = u[h(static_cast<int>(i))];
    return out;
}

double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

bool verify_fixed_subspace(const Mat& p_avg, const AutomorphismSet& aut, uint64_t seed) {
    const int n = p_avg.rows;
    SplitMix64 gen(seed);
    const int trials = 8;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> u(n);
        for (double& x : u) x = gen.uniform(-1.0, 1.0);

        auto w = matvec(p_avg, u);
        for (const auto& h : aut.perms)
            if (max_abs(apply_perm_rows(h, w), w) > 1e-10) return false;

        // fixed vectors are averages over the group
        std::vector<double> fixed(n, 0.0);
        for (const auto& h : aut.perms) {
            auto hu = apply_perm_rows(h, u);
            for (int i = 0; i < n; ++i) fixed[i] += hu[i];
        }
        for (double& x : fixed) x /= aut.size();
        if (max_abs(matvec(p_avg, fixed), fixed) > 1e-10) return false;
    }
    return true;
}

bool verify_refinement(const std::vector<Mat>& blocks, const std::vector<Mat>& canonical) {
    for (const auto& p : blocks) {
        int absorbing = 0;
        for (const auto& c : canonical)
            if (frob_diff(matmul(c, p), p) <= 1e-8) ++absorbing;
        if (absorbing != 1) return false;
    }
    return true;
}

}  // namespace isoread
