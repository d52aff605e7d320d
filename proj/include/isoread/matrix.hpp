#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace isoread {

// Dense row-major real matrix. Small and unclever on purpose: everything in
// this project is O(few hundred) square.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline Mat matmul(const Mat& x, const Mat& y) {
    assert(x.cols == y.rows);
    Mat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            double v = x.at(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

inline Mat transpose(const Mat& x) {
    Mat z(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

inline double frob_norm(const Mat& x) {
    double s = 0.0;
    for (double v : x.a) s += v * v;
    return std::sqrt(s);
}

inline double max_abs_diff(const Mat& x, const Mat& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    double m = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

inline double frob_diff(const Mat& x, const Mat& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    double s = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) {
        double d = x.a[i] - y.a[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double trace(const Mat& x) {
    assert(x.rows == x.cols);
    double s = 0.0;
    for (int i = 0; i < x.rows; ++i) s += x.at(i, i);
    return s;
}

// tr(X * Y) without forming the product; both square of equal size.
inline double trace_product(const Mat& x, const Mat& y) {
    assert(x.rows == x.cols && y.rows == y.cols && x.rows == y.rows);
    double s = 0.0;
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) s += x.at(i, j) * y.at(j, i);
    return s;
}

inline bool is_symmetric(const Mat& x, double rel_tol = 1e-12) {
    if (x.rows != x.cols) return false;
    double scale = 0.0;
    for (double v : x.a) scale = std::max(scale, std::abs(v));
    double tol = rel_tol * std::max(1.0, scale);
    for (int i = 0; i < x.rows; ++i)
        for (int j = i + 1; j < x.cols; ++j)
            if (std::abs(x.at(i, j) - x.at(j, i)) > tol) return false;
    return true;
}

inline std::vector<double> matvec(const Mat& x, const std::vector<double>& v) {
    assert(static_cast<int>(v.size()) == x.cols);
    std::vector<double> out(x.rows, 0.0);
    for (int i = 0; i < x.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < x.cols; ++j) s += x.at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

}  // namespace isoread
