#include "isoread/readout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "isoread/automorphism.hpp"
#include "isoread/eig.hpp"
#include "isoread/rng.hpp"

namespace isoread {

Decomposition decompose_graph(const Graph& g, const std::vector<double>& coeffs,
                              const ReadoutConfig& cfg) {
    auto aut = enumerate_automorphisms(g, cfg.cap_auts);
    auto orbits = pair_orbits(aut, g);
    Mat s = coeffs.empty() ? build_S(orbits, cfg.coeff_seed) : build_S(orbits, coeffs);
    auto eig = sym_eig(s);
    auto groups = group_eigenvalues(eig, cfg.eig_tol);
    auto blocks = block_projectors(eig, groups);

    const Mat a = adjacency(g);
    const Mat l = laplacian(g);

    struct Entry {
        BundleBlock block;
        std::array<long long, 3> rounded;
        int index;
    };
    std::vector<Entry> entries;
    entries.reserve(blocks.size());
    for (size_t k = 0; k < blocks.size(); ++k) {
        Entry e;
        e.block.projector = std::move(blocks[k].projector);
        e.block.eigenvalue = blocks[k].eigenvalue;
        e.block.multiplicity = blocks[k].multiplicity;
        e.block.key = {trace(e.block.projector),
                       trace_product(e.block.projector, l),
                       trace_product(e.block.projector, a)};
        // keys live on a 1e-9 grid for the comparison so float dust cannot
        // reorder ties
        for (int c = 0; c < 3; ++c)
            e.rounded[c] = std::llround(e.block.key[c] * 1e9);
        e.index = static_cast<int>(k);
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.rounded != y.rounded) return x.rounded > y.rounded;
        if (x.block.eigenvalue != y.block.eigenvalue)
            return x.block.eigenvalue > y.block.eigenvalue;
        return x.index < y.index;
    });

    Decomposition out;
    out.capped = aut.capped;
    out.aut_count = aut.size();
    out.orbit_count = orbits.m;
    out.eigenvalues = std::move(eig.eigenvalues);
    out.blocks.reserve(entries.size());
    for (auto& e : entries) out.blocks.push_back(std::move(e.block));
    return out;
}

ProjectorBundle prepare_bundle(const Graph& g, const ReadoutConfig& cfg) {
    if (cfg.max_blocks < 1) throw std::invalid_argument("prepare_bundle: max_blocks < 1");
    Decomposition dec = decompose_graph(g, {}, cfg);
    ProjectorBundle out;
    out.fingerprint = write_graph6(g);
    out.n = g.n;
    out.max_blocks = cfg.max_blocks;
    out.capped = dec.capped;
    const size_t keep = std::min(dec.blocks.size(), static_cast<size_t>(cfg.max_blocks));
    out.blocks.reserve(keep);
    for (size_t k = 0; k < keep; ++k) out.blocks.push_back(std::move(dec.blocks[k]));
    return out;
}

ProjectorBundle transport_bundle(const ProjectorBundle& bundle, const Permutation& p) {
    if (p.size() != bundle.n)
        throw std::invalid_argument("transport_bundle: size mismatch");
    ProjectorBundle out = bundle;
    for (auto& blk : out.blocks) {
        Mat moved(bundle.n, bundle.n);
        for (int i = 0; i < bundle.n; ++i)
            for (int j = 0; j < bundle.n; ++j)
                moved.at(p(i), p(j)) = blk.projector.at(i, j);
        blk.projector = std::move(moved);
    }
    return out;
}

Mat center(const Mat& m) {
    if (m.rows < 1) throw std::invalid_argument("center: empty matrix");
    Mat out(m.rows, m.cols);
    for (int k = 0; k < m.cols; ++k) {
        double mean = 0.0;
        for (int j = 0; j < m.rows; ++j) mean += m.at(j, k);
        mean /= m.rows;
        for (int j = 0; j < m.rows; ++j) out.at(j, k) = m.at(j, k) - mean;
    }
    return out;
}

Mat random_projection(int d, int r, uint64_t seed) {
    if (d < 0 || r < 0) throw std::invalid_argument("random_projection: negative dimension");
    Mat out(d, r);
    GaussianStream gauss(seed);
    const double scale = r > 0 ? 1.0 / std::sqrt(static_cast<double>(r)) : 1.0;
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < d; ++i) out.at(i, k) = gauss.next() * scale;
    return out;
}

namespace {

// order-independent accumulation: identical multisets sum to identical doubles
double sorted_sum(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum;
}

}  // namespace

BlockStats block_stats(const Mat& m_alpha) {
    const int n = m_alpha.rows, d = m_alpha.cols;
    BlockStats st;
    st.mu.resize(d);

    std::vector<double> col(n);
    std::vector<double> colsum(d);
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < n; ++j) col[j] = m_alpha.at(j, k);
        colsum[k] = sorted_sum(col);
    }
    double s1sq = 0.0;
    for (int k = 0; k < d; ++k) s1sq += colsum[k] * colsum[k];
    st.s1 = std::sqrt(s1sq);
    for (int k = 0; k < d; ++k) st.mu[k] = colsum[k] / n;

    std::vector<double> rowsq(n), rownorm(n);
    for (int j = 0; j < n; ++j) {
        double sq = 0.0;
        for (int k = 0; k < d; ++k) sq += m_alpha.at(j, k) * m_alpha.at(j, k);
        rowsq[j] = sq;
        rownorm[j] = std::sqrt(sq);
    }
    st.s2 = std::sqrt(sorted_sum(rowsq));
    st.s3 = sorted_sum(rownorm) / n;
    return st;
}

std::vector<double> block_features(const Mat& p, const Mat& m, const Mat& r) {
    if (p.cols != m.rows || (r.rows > 0 && r.rows != m.cols))
        throw std::invalid_argument("block_features: dimension mismatch");
    auto st = block_stats(matmul(p, m));
    std::vector<double> psi;
    psi.reserve(3 + r.cols);
    psi.push_back(st.s1);
    psi.push_back(st.s2);
    psi.push_back(st.s3);
    for (int k = 0; k < r.cols; ++k) {
        double dot = 0.0;
        for (int i = 0; i < r.rows; ++i) dot += st.mu[i] * r.at(i, k);
        psi.push_back(dot);
    }
    return psi;
}

std::vector<double> linearized_block_features(const Mat& p, const Mat& m, const Mat& r) {
    if (p.cols != m.rows || (r.rows > 0 && r.rows != m.cols))
        throw std::invalid_argument("linearized_block_features: dimension mismatch");
    Mat m_alpha = matmul(p, m);
    const int n = m_alpha.rows, d = m_alpha.cols;
    std::vector<double> col(n), colsum(d);
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < n; ++j) col[j] = m_alpha.at(j, k);
        colsum[k] = sorted_sum(col);
    }
    std::vector<double> psi;
    psi.reserve(3 + r.cols);
    for (int k = 0; k < r.cols; ++k) {
        double dot = 0.0;
        for (int i = 0; i < r.rows; ++i) dot += colsum[i] * r.at(i, k);
        psi.push_back(dot);
    }
    for (int k = 0; k < 3; ++k) psi.push_back(k < d ? colsum[k] : 0.0);
    return psi;
}

namespace {

std::vector<double> readout_common(const ProjectorBundle& bundle, const Mat& features,
                                   const ReadoutConfig& cfg, bool linearized) {
    if (features.rows != bundle.n)
        throw std::invalid_argument("readout: feature row count != bundle size");
    const Mat m = cfg.centering ? center(features) : features;
    const Mat r = random_projection(m.cols, cfg.rp_dim, cfg.seed);
    const int psi_len = 3 + cfg.rp_dim;
    std::vector<double> out(static_cast<size_t>(bundle.max_blocks) * psi_len, 0.0);
    for (size_t b = 0; b < bundle.blocks.size(); ++b) {
        auto psi = linearized ? linearized_block_features(bundle.blocks[b].projector, m, r)
                              : block_features(bundle.blocks[b].projector, m, r);
        std::copy(psi.begin(), psi.end(), out.begin() + b * psi_len);
    }
    return out;
}

}  // namespace

std::vector<double> isotypic_readout(const ProjectorBundle& bundle, const Mat& features,
                                     const ReadoutConfig& cfg) {
    return readout_common(bundle, features, cfg, false);
}

std::vector<double> linearized_readout(const ProjectorBundle& bundle, const Mat& features,
                                       const ReadoutConfig& cfg) {
    return readout_common(bundle, features, cfg, true);
}

std::vector<double> pool(const Mat& features, PoolKind kind) {
    const int n = features.rows, d = features.cols;
    if (n < 1) throw std::invalid_argument("pool: empty matrix");
    std::vector<double> col(n), sum(d), mx(d);
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < n; ++j) col[j] = features.at(j, k);
        sum[k] = sorted_sum(col);
        mx[k] = *std::max_element(col.begin(), col.end());
    }
    switch (kind) {
        case PoolKind::sum:
            return sum;
        case PoolKind::mean: {
            for (double& x : sum) x /= n;
            return sum;
        }
        case PoolKind::max:
            return mx;
        case PoolKind::meanmax: {
            std::vector<double> out;
            out.reserve(2 * d);
            for (double x : sum) out.push_back(x / n);
            out.insert(out.end(), mx.begin(), mx.end());
            return out;
        }
    }
    throw std::logic_error("pool: unknown kind");
}

Mat read_features_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("features csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("features csv: empty");
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

std::string write_features_csv(const Mat& m) {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            if (j) os << ',';
            os << m.at(i, j);
        }
        os << "\r\n";
    }
    return os.str();
}

Mat read_features_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    const auto& data = j.at("data");
    if (static_cast<int>(data.size()) != n)
        throw std::runtime_error("features json: row count mismatch");
    Mat m(n, d);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(data[i].size()) != d)
            throw std::runtime_error("features json: column count mismatch");
        for (int k = 0; k < d; ++k) m.at(i, k) = data[i][k].get<double>();
    }
    return m;
}

std::string write_features_json(const Mat& m) {
    nlohmann::json data = nlohmann::json::array();
    for (int i = 0; i < m.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < m.cols; ++k) row.push_back(m.at(i, k));
        data.push_back(std::move(row));
    }
    nlohmann::json j{{"n", m.rows}, {"d", m.cols}, {"data", std::move(data)}};
    return j.dump();
}

namespace {

std::string cache_key(const Graph& g, const ReadoutConfig& cfg) {
    std::ostringstream os;
    os << write_graph6(g) << '|' << cfg.max_blocks << '|' << cfg.coeff_seed << '|'
       << cfg.eig_tol << '|' << cfg.cap_auts;
    return os.str();
}

}  // namespace

std::shared_ptr<const ProjectorBundle> BundleCache::get(const Graph& g,
                                                        const ReadoutConfig& cfg) {
    const std::string key = cache_key(g, cfg);
    std::shared_future<std::shared_ptr<const ProjectorBundle>> fut;
    std::promise<std::shared_ptr<const ProjectorBundle>> prom;
    bool builder = false;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            fut = prom.get_future().share();
            cache_.emplace(key, fut);
            builder = true;
        } else {
            fut = it->second;
        }
    }
    if (builder) {
        try {
            prom.set_value(std::make_shared<const ProjectorBundle>(prepare_bundle(g, cfg)));
        } catch (...) {
            prom.set_exception(std::current_exception());
            {
                // drop the poisoned entry so a later call can retry
                std::lock_guard<std::mutex> lock(mu_);
                cache_.erase(key);
            }
            throw;
        }
    }
    return fut.get();
}

}  // namespace isoread
