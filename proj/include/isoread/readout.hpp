#pragma once

#include <array>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "isoread/graph.hpp"
#include "isoread/matrix.hpp"

namespace isoread {

struct ReadoutConfig {
    int max_blocks = 16;        // B
    int rp_dim = 8;             // r
    uint64_t seed = 0;          // random projection seed
    bool centering = false;
    double eig_tol = 1e-12;
    int cap_auts = 50000;
    uint64_t coeff_seed = 0;    // S coefficient seed
};

struct BundleBlock {
    Mat projector;
    double eigenvalue;                // of S, block representative
    int multiplicity;
    std::array<double, 3> key;        // (tr P, tr P L, tr P A), pre-truncation
};

// Sorted, truncated eigenspace projectors of the graph's operator S. Holds
// min(block count, B) real blocks; slots past blocks.size() up to max_blocks
// read as zero padding.
struct ProjectorBundle {
    std::string fingerprint;          // graph6 of the source labeling
    int n = 0;
    int max_blocks = 0;
    bool capped = false;              // automorphism enumeration hit its cap
    std::vector<BundleBlock> blocks;
};

// Full pipeline output before truncation; blocks sorted by the bundle order.
struct Decomposition {
    bool capped = false;
    int aut_count = 0;
    int orbit_count = 0;
    std::vector<double> eigenvalues;   // descending
    std::vector<BundleBlock> blocks;
};

// coeffs empty -> coefficients drawn from cfg.coeff_seed
Decomposition decompose_graph(const Graph& g, const std::vector<double>& coeffs,
                              const ReadoutConfig& cfg);

ProjectorBundle prepare_bundle(const Graph& g, const ReadoutConfig& cfg);

// conjugate every projector: P'[p(i)][p(j)] = P[i][j]
ProjectorBundle transport_bundle(const ProjectorBundle& bundle, const Permutation& p);

// M_c = (I - (1/n) 11^T) M
Mat center(const Mat& m);

// d x r, i.i.d. N(0,1)/sqrt(r), filled column-major from the seeded stream
Mat random_projection(int d, int r, uint64_t seed);

// (s1, s2, s3, mu^T R) of M_alpha = P M; length 3 + r
std::vector<double> block_features(const Mat& p, const Mat& m, const Mat& r);

// ((colsum M_alpha)^T R, first three raw column sums); linear in M
std::vector<double> linearized_block_features(const Mat& p, const Mat& m, const Mat& r);

// (s1, s2, s3, mu) of a block output directly; bit-identical under any row
// permutation of m_alpha
struct BlockStats {
    double s1, s2, s3;
    std::vector<double> mu;
};
BlockStats block_stats(const Mat& m_alpha);

// concatenated block features, length max_blocks * (3 + r), zero padded
std::vector<double> isotypic_readout(const ProjectorBundle& bundle, const Mat& features,
                                     const ReadoutConfig& cfg);
std::vector<double> linearized_readout(const ProjectorBundle& bundle, const Mat& features,
                                       const ReadoutConfig& cfg);

enum class PoolKind { sum, mean, max, meanmax };

std::vector<double> pool(const Mat& features, PoolKind kind);

// FeatureMatrix exchange: CSV row per node, and a JSON envelope {n, d, data}
Mat read_features_csv(const std::string& text);
std::string write_features_csv(const Mat& m);
Mat read_features_json(const std::string& text);
std::string write_features_json(const Mat& m);

// Per-key serialized bundle construction; concurrent readers share results.
class BundleCache {
  public:
    std::shared_ptr<const ProjectorBundle> get(const Graph& g, const ReadoutConfig& cfg);

  private:
    std::mutex mu_;
    std::map<std::string, std::shared_future<std::shared_ptr<const ProjectorBundle>>> cache_;
};

}  // namespace isoread
