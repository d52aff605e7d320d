#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isoread/encoder.hpp"
#include "isoread/graph.hpp"
#include "isoread/readout.hpp"

namespace isoread {

enum class ReadoutKind { sum, mean, max, meanmax, isotypic, isotypic_linear };

std::string to_string(ReadoutKind kind);
ReadoutKind readout_kind_from_string(const std::string& name);
bool is_pooling(ReadoutKind kind);

struct PairSpec {
    int index = 0;
    std::string id;
    std::string family;
    Graph a, b;
};

// The desk-scale suite: cycle pairs k=3..26, three CFI-K3, three CFI-K4,
// three GM-Petersen instances.
std::vector<PairSpec> suite_pairs();

// Valid Godsil-McKay cell pinned for the GM-Petersen fixture (the subset
// search policy's first valid cell with a nontrivial switch).
extern const std::vector<int> kGmPetersenCell;

struct RunConfig {
    EncoderConfig encoder;     // seed ignored; per-task seeds are derived
    ReadoutConfig readout;     // seed ignored likewise; coeff_seed honored
    ReadoutKind kind = ReadoutKind::isotypic;
    int seeds = 5;
    double threshold = 0.95;
    uint64_t master_seed = 1;
    int threads = 1;
};

struct PairReport {
    int index = 0;
    std::string id;
    std::string family;
    std::vector<double> cosines;   // per seed
    double mean_cos = 0.0;
    bool separated = false;
    double p_value = 0.0;          // NaN when seeds < 2
    bool holm_reject = false;      // filled by run_suite
    bool zero_norm = false;        // some embedding fell below the norm floor
    double bundle_seconds = 0.0;
    double feature_seconds = 0.0;
    double total_seconds = 0.0;
};

struct FamilyAggregate {
    std::string family;
    int count = 0;
    int separated = 0;
    double mean_cos = 0.0;
    double max_cos = 0.0;
};

struct SuiteReport {
    RunConfig config;
    std::vector<PairReport> pairs;
    std::vector<FamilyAggregate> families;
    int separated_total = 0;
};

PairReport run_pair(const PairSpec& spec, const RunConfig& cfg, BundleCache& cache);

SuiteReport run_suite(const RunConfig& cfg);
SuiteReport run_suite(const RunConfig& cfg, const std::vector<PairSpec>& pairs,
                      BundleCache& cache);

struct SweepRow {
    int max_blocks = 0;
    int separated = 0;
};

// Reruns the suite at each block budget with one seed, everything else fixed.
std::vector<SweepRow> block_sweep(const RunConfig& base, const std::vector<int>& b_values);

// One-sided one-sample t-test, H1: mean < mu0. NaN when fewer than 2 samples.
double t_test_p_below(const std::vector<double>& xs, double mu0);

std::vector<bool> holm_bonferroni(const std::vector<double>& p_values, double alpha);

double cosine_similarity(const std::vector<double>& x, const std::vector<double>& y);

struct BenchRow {
    int n = 0;
    int count = 0;
    int capped_count = 0;
    double bundle_median = 0.0, bundle_p90 = 0.0;
    double feature_median = 0.0, feature_p90 = 0.0;
    double total_median = 0.0, total_p90 = 0.0;
};

std::vector<BenchRow> bench_er(const std::vector<int>& ns, double p, int count,
                               uint64_t seed, const ReadoutConfig& cfg);

// master seed: ISOREAD_SEED env override, else 1
uint64_t default_master_seed();

std::string suite_json(const SuiteReport& report, bool include_timings = true);
std::string suite_csv(const SuiteReport& report);
std::string pair_json(const PairReport& report, bool include_timings = true);
std::string sweep_json(const std::vector<SweepRow>& rows);
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace isoread
