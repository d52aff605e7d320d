#include "isoread/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace isoread {

namespace {

double offdiag_norm(const Mat& a) {
    double sum = 0.0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (i != j) sum += a.at(i, j) * a.at(i, j);
    return std::sqrt(sum);
}

}  // namespace

EigenDecomposition sym_eig(const Mat& s) {
    if (s.rows != s.cols) throw std::invalid_argument("sym_eig: not square");
    if (!is_symmetric(s)) throw std::invalid_argument("sym_eig: not symmetric");
    const int n = s.rows;
    Mat a = s;
    Mat v = Mat::identity(n);

    const double target = 1e-12 * frob_norm(s);
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && offdiag_norm(a) > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                const double app = a.at(p, p), aqq = a.at(q, q);
                a.at(p, p) = app - t * apq;
                a.at(q, q) = aqq + t * apq;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = aip - sn * (aiq + tau * aip);
                    a.at(p, i) = a.at(i, p);
                    a.at(i, q) = aiq + sn * (aip - tau * aiq);
                    a.at(q, i) = a.at(i, q);
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = vip - sn * (viq + tau * vip);
                    v.at(i, q) = viq + sn * (vip - tau * viq);
                }
            }
        }
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int x, int y) { return a.at(x, x) > a.at(y, y); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.q = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = idx[k];
        out.eigenvalues[k] = a.at(src, src);
        double sign = 1.0;
        for (int i = 0; i < n; ++i)
            if (std::abs(v.at(i, src)) > 1e-8) {
                sign = v.at(i, src) > 0.0 ? 1.0 : -1.0;
                break;
            }
        for (int i = 0; i < n; ++i) out.q.at(i, k) = sign * v.at(i, src);
    }
    return out;
}

std::vector<std::vector<int>> group_eigenvalues(const EigenDecomposition& eig, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("group_eigenvalues: tol <= 0");
    std::vector<std::vector<int>> blocks;
    const int n = static_cast<int>(eig.eigenvalues.size());
    for (int k = 0; k < n; ++k) {
        if (!blocks.empty()) {
            const double prev = eig.eigenvalues[k - 1];
            const double cur = eig.eigenvalues[k];
            const double scale = std::max(1.0, std::max(std::abs(prev), std::abs(cur)));
            if (prev - cur <= tol * scale) {
                blocks.back().push_back(k);
                continue;
            }
        }
        blocks.push_back({k});
    }
    return blocks;
}

std::vector<Block> block_projectors(const EigenDecomposition& eig,
                                    const std::vector<std::vector<int>>& blocks) {
    const int n = static_cast<int>(eig.eigenvalues.size());
    std::vector<char> seen(n, 0);
    for (const auto& b : blocks)
        for (int k : b) {
            if (k < 0 || k >= n || seen[k])
                throw std::invalid_argument("block_projectors: blocks do not partition indices");
            seen[k] = 1;
        }
    if (std::count(seen.begin(), seen.end(), char(1)) != n)
        throw std::invalid_argument("block_projectors: blocks do not partition indices");

    std::vector<Block> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) {
        Block blk;
        blk.eigenvalue = eig.eigenvalues[b.front()];
        blk.multiplicity = static_cast<int>(b.size());
        blk.projector = Mat(n, n);
        for (int k : b)
            for (int i = 0; i < n; ++i) {
                const double qik = eig.q.at(i, k);
                if (qik == 0.0) continue;
                for (int j = 0; j < n; ++j)
                    blk.projector.at(i, j) += qik * eig.q.at(j, k);
            }
        out.push_back(std::move(blk));
    }
    return out;
}

}  // namespace isoread
