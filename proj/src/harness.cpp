#include "isoread/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "isoread/generators.hpp"
#include "isoread/rng.hpp"

namespace isoread {

namespace {

constexpr double kZeroNormFloor = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::string to_string(ReadoutKind kind) {
    switch (kind) {
        case ReadoutKind::sum: return "sum";
        case ReadoutKind::mean: return "mean";
        case ReadoutKind::max: return "max";
        case ReadoutKind::meanmax: return "meanmax";
        case ReadoutKind::isotypic: return "isotypic";
        case ReadoutKind::isotypic_linear: return "isotypic-linear";
    }
    throw std::logic_error("to_string: unknown readout kind");
}

ReadoutKind readout_kind_from_string(const std::string& name) {
    if (name == "sum") return ReadoutKind::sum;
    if (name == "mean") return ReadoutKind::mean;
    if (name == "max") return ReadoutKind::max;
    if (name == "meanmax") return ReadoutKind::meanmax;
    if (name == "isotypic") return ReadoutKind::isotypic;
    if (name == "isotypic-linear" || name == "isotypic_linear")
        return ReadoutKind::isotypic_linear;
    throw std::invalid_argument("unknown readout kind: " + name);
}

bool is_pooling(ReadoutKind kind) {
    return kind != ReadoutKind::isotypic && kind != ReadoutKind::isotypic_linear;
}

const std::vector<int> kGmPetersenCell = {0, 1};

std::vector<PairSpec> suite_pairs() {
    std::vector<PairSpec> pairs;
    int index = 0;
    for (int k = 3; k <= 26; ++k) {
        auto [two, one] = gen_cycle_pair(k);
        pairs.push_back({index++, "cycles-k" + std::to_string(k), "cycles",
                         std::move(two), std::move(one)});
    }
    auto cfi3 = gen_cfi_pair(gen_complete(3));
    for (int i = 1; i <= 3; ++i)
        pairs.push_back({index++, "cfi-k3-" + std::to_string(i), "cfi-k3", cfi3.first,
                         cfi3.second});
    auto cfi4 = gen_cfi_pair(gen_complete(4));
    for (int i = 1; i <= 3; ++i)
        pairs.push_back({index++, "cfi-k4-" + std::to_string(i), "cfi-k4", cfi4.first,
                         cfi4.second});
    Graph petersen = gen_petersen();
    Graph switched = gm_switch(petersen, kGmPetersenCell);
    for (int i = 1; i <= 3; ++i)
        pairs.push_back({index++, "gm-petersen-" + std::to_string(i), "gm-petersen",
                         petersen, switched});
    return pairs;
}

double cosine_similarity(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("cosine_similarity: length mismatch");
    double dot = 0.0, nx = 0.0, ny = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        dot += x[i] * y[i];
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    const double denom = std::sqrt(nx) * std::sqrt(ny);
    if (denom == 0.0) throw std::invalid_argument("cosine_similarity: zero vector");
    return std::clamp(dot / denom, -1.0, 1.0);
}

namespace {

struct SeedOutcome {
    double cosine = 1.0;
    bool zero_norm = false;
    double bundle_seconds = 0.0;
    double feature_seconds = 0.0;
};

double l2_norm(const std::vector<double>& x) {
    double sq = 0.0;
    for (double v : x) sq += v * v;
    return std::sqrt(sq);
}

SeedOutcome run_one_seed(const PairSpec& spec, const RunConfig& cfg, int seed_index,
                         BundleCache& cache) {
    SeedOutcome out;
    const uint64_t task = derive_seed(cfg.master_seed, spec.index, seed_index);
    const uint64_t enc_seed = derive_seed(task, 0, 0);
    const uint64_t perm_a_seed = derive_seed(task, 1, 0);
    const uint64_t perm_b_seed = derive_seed(task, 2, 0);
    const uint64_t rp_seed = derive_seed(task, 3, 0);

    SplitMix64 ga(perm_a_seed), gb(perm_b_seed);
    const Permutation pa = random_permutation(spec.a.n, ga);
    const Permutation pb = random_permutation(spec.b.n, gb);

    std::shared_ptr<const ProjectorBundle> base_a, base_b;
    if (!is_pooling(cfg.kind)) {
        const auto t0 = Clock::now();
        base_a = cache.get(spec.a, cfg.readout);
        base_b = cache.get(spec.b, cfg.readout);
        out.bundle_seconds = seconds_since(t0);
    }

    const auto t1 = Clock::now();
    const Graph ga_rel = permute(spec.a, pa);
    const Graph gb_rel = permute(spec.b, pb);
    EncoderConfig ec = cfg.encoder;
    ec.seed = enc_seed;
    const EncoderWeights weights = init_encoder(ec);
    const Mat ma = encode(ga_rel, weights);
    const Mat mb = encode(gb_rel, weights);

    std::vector<double> za, zb;
    if (is_pooling(cfg.kind)) {
        const PoolKind pk = cfg.kind == ReadoutKind::sum    ? PoolKind::sum
                            : cfg.kind == ReadoutKind::mean ? PoolKind::mean
                            : cfg.kind == ReadoutKind::max  ? PoolKind::max
                                                            : PoolKind::meanmax;
        za = pool(ma, pk);
        zb = pool(mb, pk);
    } else {
        ReadoutConfig rc = cfg.readout;
        rc.seed = rp_seed;
        const ProjectorBundle ta = transport_bundle(*base_a, pa);
        const ProjectorBundle tb = transport_bundle(*base_b, pb);
        if (cfg.kind == ReadoutKind::isotypic) {
            za = isotypic_readout(ta, ma, rc);
            zb = isotypic_readout(tb, mb, rc);
        } else {
            za = linearized_readout(ta, ma, rc);
            zb = linearized_readout(tb, mb, rc);
        }
    }
    out.feature_seconds = seconds_since(t1);

    const double na = l2_norm(za), nb = l2_norm(zb);
    if (na <= kZeroNormFloor || nb <= kZeroNormFloor) {
        out.cosine = 1.0;
        out.zero_norm = true;
    } else {
        double dot = 0.0;
        for (size_t i = 0; i < za.size(); ++i) dot += za[i] * zb[i];
        out.cosine = std::clamp(dot / (na * nb), -1.0, 1.0);
    }
    return out;
}

PairReport assemble_report(const PairSpec& spec, const RunConfig& cfg,
                           const std::vector<SeedOutcome>& outcomes) {
    PairReport rep;
    rep.index = spec.index;
    rep.id = spec.id;
    rep.family = spec.family;
    for (const auto& o : outcomes) {
        rep.cosines.push_back(o.cosine);
        rep.zero_norm = rep.zero_norm || o.zero_norm;
        rep.bundle_seconds += o.bundle_seconds;
        rep.feature_seconds += o.feature_seconds;
    }
    rep.total_seconds = rep.bundle_seconds + rep.feature_seconds;
    rep.mean_cos = std::accumulate(rep.cosines.begin(), rep.cosines.end(), 0.0) /
                   static_cast<double>(rep.cosines.size());
    rep.separated = rep.mean_cos < cfg.threshold;
    rep.p_value = t_test_p_below(rep.cosines, 1.0);
    return rep;
}

}  // namespace

PairReport run_pair(const PairSpec& spec, const RunConfig& cfg, BundleCache& cache) {
    if (cfg.seeds < 1) throw std::invalid_argument("run_pair: seeds < 1");
    if (cfg.threshold <= 0.0 || cfg.threshold > 1.0)
        throw std::invalid_argument("run_pair: threshold outside (0,1]");
    std::vector<SeedOutcome> outcomes(cfg.seeds);
    for (int s = 0; s < cfg.seeds; ++s) outcomes[s] = run_one_seed(spec, cfg, s, cache);
    return assemble_report(spec, cfg, outcomes);
}

SuiteReport run_suite(const RunConfig& cfg) {
    BundleCache cache;
    return run_suite(cfg, suite_pairs(), cache);
}

SuiteReport run_suite(const RunConfig& cfg, const std::vector<PairSpec>& pairs,
                      BundleCache& cache) {
    if (cfg.seeds < 1) throw std::invalid_argument("run_suite: seeds < 1");
    const int np = static_cast<int>(pairs.size());
    std::vector<std::vector<SeedOutcome>> outcomes(np,
                                                   std::vector<SeedOutcome>(cfg.seeds));

    const int total_tasks = np * cfg.seeds;
    const int workers = std::max(1, std::min(cfg.threads, total_tasks));
    if (workers == 1) {
        for (int p = 0; p < np; ++p)
            for (int s = 0; s < cfg.seeds; ++s)
                outcomes[p][s] = run_one_seed(pairs[p], cfg, s, cache);
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            while (true) {
                const int t = next.fetch_add(1);
                if (t >= total_tasks) return;
                const int p = t / cfg.seeds, s = t % cfg.seeds;
                outcomes[p][s] = run_one_seed(pairs[p], cfg, s, cache);
            }
        };
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    SuiteReport report;
    report.config = cfg;
    for (int p = 0; p < np; ++p)
        report.pairs.push_back(assemble_report(pairs[p], cfg, outcomes[p]));

    // Holm over the pairs that have a p-value
    std::vector<int> with_p;
    std::vector<double> ps;
    for (int p = 0; p < np; ++p)
        if (!std::isnan(report.pairs[p].p_value)) {
            with_p.push_back(p);
            ps.push_back(report.pairs[p].p_value);
        }
    auto reject = holm_bonferroni(ps, 0.05);
    for (size_t k = 0; k < with_p.size(); ++k)
        report.pairs[with_p[k]].holm_reject = reject[k];

    std::vector<std::string> family_order;
    for (const auto& rep : report.pairs) {
        if (std::find(family_order.begin(), family_order.end(), rep.family) ==
            family_order.end())
            family_order.push_back(rep.family);
    }
    for (const auto& fam : family_order) {
        FamilyAggregate agg;
        agg.family = fam;
        double sum = 0.0;
        agg.max_cos = -std::numeric_limits<double>::infinity();
        for (const auto& rep : report.pairs) {
            if (rep.family != fam) continue;
            agg.count++;
            agg.separated += rep.separated ? 1 : 0;
            sum += rep.mean_cos;
            agg.max_cos = std::max(agg.max_cos, rep.mean_cos);
        }
        agg.mean_cos = sum / agg.count;
        report.families.push_back(agg);
    }
    for (const auto& rep : report.pairs) report.separated_total += rep.separated ? 1 : 0;
    return report;
}

std::vector<SweepRow> block_sweep(const RunConfig& base, const std::vector<int>& b_values) {
    std::vector<SweepRow> rows;
    const auto pairs = suite_pairs();
    BundleCache cache;
    for (int b : b_values) {
        if (b < 1) throw std::invalid_argument("block_sweep: B < 1");
        RunConfig cfg = base;
        cfg.readout.max_blocks = b;
        auto report = run_suite(cfg, pairs, cache);
        rows.push_back({b, report.separated_total});
    }
    return rows;
}

namespace {

// regularized incomplete beta via Lentz continued fraction
double betacf(double a, double b, double x) {
    const int maxit = 300;
    const double eps = 3e-16, fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= maxit; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

double betai(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                               a * std::log(x) + b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double t_test_p_below(const std::vector<double>& xs, double mu0) {
    const int n = static_cast<int>(xs.size());
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1));
    if (sd < 1e-15) return mean < mu0 ? 0.0 : 1.0;
    const double t = (mean - mu0) / (sd / std::sqrt(static_cast<double>(n)));
    const double nu = n - 1;
    const double x = nu / (nu + t * t);
    const double half_tail = 0.5 * betai(0.5 * nu, 0.5, x);
    return t <= 0.0 ? half_tail : 1.0 - half_tail;
}

std::vector<bool> holm_bonferroni(const std::vector<double>& p_values, double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("holm_bonferroni: alpha outside (0,1)");
    const int m = static_cast<int>(p_values.size());
    std::vector<double> ps = p_values;
    for (double& p : ps)
        if (std::isnan(p)) p = std::numeric_limits<double>::infinity();
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return ps[a] < ps[b]; });
    std::vector<bool> reject(m, false);
    for (int k = 0; k < m; ++k) {
        if (ps[idx[k]] <= alpha / (m - k))
            reject[idx[k]] = true;
        else
            break;
    }
    return reject;
}

std::vector<BenchRow> bench_er(const std::vector<int>& ns, double p, int count,
                               uint64_t seed, const ReadoutConfig& cfg) {
    std::vector<BenchRow> rows;
    if (count <= 0) return rows;
    auto percentile = [](std::vector<double> xs, double q) {
        std::sort(xs.begin(), xs.end());
        if (xs.empty()) return 0.0;
        if (q == 0.5 && xs.size() % 2 == 0)
            return 0.5 * (xs[xs.size() / 2 - 1] + xs[xs.size() / 2]);
        const size_t k = std::min(
            xs.size() - 1,
            static_cast<size_t>(std::ceil(q * static_cast<double>(xs.size())) - 1));
        return xs[k];
    };
    for (int n : ns) {
        BenchRow row;
        row.n = n;
        row.count = count;
        std::vector<double> bundle_t, feature_t, total_t;
        for (int i = 0; i < count; ++i) {
            const uint64_t task = derive_seed(seed, n, i);
            const Graph g = gen_er(n, p, derive_seed(task, 0, 0));

            const auto t0 = Clock::now();
            const ProjectorBundle bundle = prepare_bundle(g, cfg);
            const double tb = seconds_since(t0);
            row.capped_count += bundle.capped ? 1 : 0;

            EncoderConfig ec;
            ec.seed = derive_seed(task, 1, 0);
            ReadoutConfig rc = cfg;
            rc.seed = derive_seed(task, 2, 0);
            const auto t1 = Clock::now();
            const EncoderWeights weights = init_encoder(ec);
            const Mat m = encode(g, weights);
            const auto z = isotypic_readout(bundle, m, rc);
            (void)z;
            const double tf = seconds_since(t1);

            bundle_t.push_back(tb);
            feature_t.push_back(tf);
            total_t.push_back(tb + tf);
        }
        row.bundle_median = percentile(bundle_t, 0.5);
        row.bundle_p90 = percentile(bundle_t, 0.9);
        row.feature_median = percentile(feature_t, 0.5);
        row.feature_p90 = percentile(feature_t, 0.9);
        row.total_median = percentile(total_t, 0.5);
        row.total_p90 = percentile(total_t, 0.9);
        rows.push_back(row);
    }
    return rows;
}

uint64_t default_master_seed() {
    const char* env = std::getenv("ISOREAD_SEED");
    if (env == nullptr || *env == '\0') return 1;
    return std::stoull(env);
}

namespace {

nlohmann::json config_json(const RunConfig& cfg) {
    return {{"readout", to_string(cfg.kind)},
            {"seeds", cfg.seeds},
            {"threshold", cfg.threshold},
            {"master_seed", cfg.master_seed},
            {"max_blocks", cfg.readout.max_blocks},
            {"rp_dim", cfg.readout.rp_dim},
            {"centering", cfg.readout.centering},
            {"eig_tol", cfg.readout.eig_tol},
            {"cap_auts", cfg.readout.cap_auts},
            {"coeff_seed", cfg.readout.coeff_seed},
            {"encoder_width", cfg.encoder.width},
            {"encoder_layers", cfg.encoder.layers},
            {"encoder_epsilon", cfg.encoder.epsilon}};
}

nlohmann::json pair_to_json(const PairReport& rep, bool include_timings) {
    nlohmann::json j{{"id", rep.id},
                     {"family", rep.family},
                     {"cosines", rep.cosines},
                     {"mean_cos", rep.mean_cos},
                     {"separated", rep.separated},
                     {"p_value", rep.p_value},
                     {"holm_reject", rep.holm_reject},
                     {"zero_norm", rep.zero_norm}};
    if (include_timings)
        j["timings"] = {{"bundle_s", rep.bundle_seconds},
                        {"feature_s", rep.feature_seconds},
                        {"total_s", rep.total_seconds}};
    return j;
}

}  // namespace

std::string suite_json(const SuiteReport& report, bool include_timings) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& rep : report.pairs)
        pairs.push_back(pair_to_json(rep, include_timings));
    nlohmann::json families = nlohmann::json::array();
    for (const auto& fam : report.families)
        families.push_back({{"family", fam.family},
                            {"count", fam.count},
                            {"separated", fam.separated},
                            {"mean_cos", fam.mean_cos},
                            {"max_cos", fam.max_cos}});
    nlohmann::json j{{"config", config_json(report.config)},
                     {"separated", report.separated_total},
                     {"total", static_cast<int>(report.pairs.size())},
                     {"pairs", std::move(pairs)},
                     {"families", std::move(families)}};
    return j.dump(2);
}

namespace {

std::string csv_double(double x) {
    if (std::isnan(x)) return "";
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

std::string suite_csv(const SuiteReport& report) {
    std::ostringstream os;
    os << "pair,family,mean_cos,separated,p_value,holm_reject,zero_norm,"
          "bundle_s,feature_s,total_s";
    for (int s = 0; s < report.config.seeds; ++s) os << ",cos_" << s;
    os << "\r\n";
    for (const auto& rep : report.pairs) {
        os << rep.id << ',' << rep.family << ',' << csv_double(rep.mean_cos) << ','
           << (rep.separated ? 1 : 0) << ',' << csv_double(rep.p_value) << ','
           << (rep.holm_reject ? 1 : 0) << ',' << (rep.zero_norm ? 1 : 0) << ','
           << csv_double(rep.bundle_seconds) << ',' << csv_double(rep.feature_seconds)
           << ',' << csv_double(rep.total_seconds);
        for (double c : rep.cosines) os << ',' << csv_double(c);
        os << "\r\n";
    }
    return os.str();
}

std::string pair_json(const PairReport& report, bool include_timings) {
    return pair_to_json(report, include_timings).dump(2);
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows)
        j.push_back({{"max_blocks", row.max_blocks}, {"separated", row.separated}});
    return j.dump(2);
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "n,count,capped_count,bundle_median_s,bundle_p90_s,feature_median_s,"
          "feature_p90_s,total_median_s,total_p90_s\r\n";
    for (const auto& row : rows) {
        os << row.n << ',' << row.count << ',' << row.capped_count << ','
           << csv_double(row.bundle_median) << ',' << csv_double(row.bundle_p90) << ','
           << csv_double(row.feature_median) << ',' << csv_double(row.feature_p90) << ','
           << csv_double(row.total_median) << ',' << csv_double(row.total_p90) << "\r\n";
    }
    return os.str();
}

}  // namespace isoread
