#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoread/generators.hpp"
#include "isoread/harness.hpp"
#include "isoread/rng.hpp"
#include "isoread/wl.hpp"

using namespace isoread;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<PairSpec> small_pairs() {
    auto all = suite_pairs();
    // k=3 and k=4 cycle pairs, one CFI-K3, one GM instance
    return {all[0], all[1], all[24], all[30]};
}

}  // namespace

TEST_CASE("splitmix64 matches the published reference stream") {
    SplitMix64 gen(0);
    CHECK(gen.next() == 16294208416658607535ULL);
    CHECK(gen.next() == 7960286522194355700ULL);
}

TEST_CASE("seed derivation, frozen") {
    CHECK(derive_seed(1, 0, 0) == 9040233846082065424ULL);
    CHECK(derive_seed(1, 0, 1) == 14676146154543963557ULL);
    CHECK(derive_seed(1, 1, 0) == 475990486572647130ULL);
    CHECK(derive_seed(2, 0, 0) == 7293680530169598646ULL);
}

TEST_CASE("readout kind names") {
    for (ReadoutKind kind : {ReadoutKind::sum, ReadoutKind::mean, ReadoutKind::max,
                             ReadoutKind::meanmax, ReadoutKind::isotypic,
                             ReadoutKind::isotypic_linear})
        CHECK(readout_kind_from_string(to_string(kind)) == kind);
    CHECK(readout_kind_from_string("isotypic_linear") == ReadoutKind::isotypic_linear);
    CHECK(to_string(ReadoutKind::isotypic_linear) == "isotypic-linear");
    CHECK_THROWS_AS(readout_kind_from_string("attention"), std::invalid_argument);
    CHECK(is_pooling(ReadoutKind::sum));
    CHECK_FALSE(is_pooling(ReadoutKind::isotypic));
}

TEST_CASE("cosine similarity") {
    CHECK(cosine_similarity({1, 0}, {2, 0}) == doctest::Approx(1.0));
    CHECK(cosine_similarity({1, 0}, {0, 3}) == doctest::Approx(0.0));
    CHECK(cosine_similarity({1, 1}, {-1, -1}) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(cosine_similarity({1, 0}, {1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(cosine_similarity({0, 0}, {1, 0}), std::invalid_argument);
}

TEST_CASE("one-sided t test") {
    CHECK(std::isnan(t_test_p_below({0.5}, 1.0)));
    CHECK(std::isnan(t_test_p_below({}, 1.0)));
    CHECK(t_test_p_below({0.5, 0.5, 0.5}, 1.0) == 0.0);
    CHECK(t_test_p_below({1.0, 1.0}, 1.0) == 1.0);
    CHECK(t_test_p_below({1.5, 1.5}, 1.0) == 1.0);

    // xs = (0.9, 0.92, 0.94): t = -6.9282 on 2 dof, p = (1 - sqrt(0.96)) / 2
    double p = t_test_p_below({0.9, 0.92, 0.94}, 1.0);
    CHECK(p == doctest::Approx(0.010102051443364402).epsilon(1e-10));

    // symmetric case: mean above mu0 mirrors to 1 - p
    double q = t_test_p_below({1.06, 1.08, 1.1}, 1.0);
    CHECK(p + q == doctest::Approx(1.0).epsilon(1e-10));

    // large-sample sanity: near-normal tail
    std::vector<double> xs;
    SplitMix64 gen(1);
    for (int i = 0; i < 400; ++i) xs.push_back(gen.uniform(-1.0, 1.0));
    double pm = t_test_p_below(xs, 0.0);
    CHECK(pm > 0.01);
    CHECK(pm < 0.99);
}

TEST_CASE("holm-bonferroni") {
    CHECK(holm_bonferroni({}, 0.05).empty());
    CHECK(holm_bonferroni({0.5}, 0.05) == std::vector<bool>{false});
    CHECK(holm_bonferroni({0.04}, 0.05) == std::vector<bool>{true});
    CHECK(holm_bonferroni({0.01, 0.04}, 0.05) == std::vector<bool>{true, true});
    // 0.03 > 0.05/2 stops the procedure before the second test is reached
    CHECK(holm_bonferroni({0.03, 0.04}, 0.05) == std::vector<bool>{false, false});
    CHECK(holm_bonferroni({0.2, 0.001, 0.03}, 0.05) ==
          std::vector<bool>{false, true, false});
    CHECK(holm_bonferroni({kNaN, 0.01}, 0.05) == std::vector<bool>{false, true});
    CHECK_THROWS_AS(holm_bonferroni({0.5}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(holm_bonferroni({0.5}, 1.0), std::invalid_argument);
}

TEST_CASE("suite fixture inventory") {
    auto pairs = suite_pairs();
    REQUIRE(pairs.size() == 33);
    CHECK(pairs[0].id == "cycles-k3");
    CHECK(pairs[23].id == "cycles-k26");
    CHECK(pairs[24].id == "cfi-k3-1");
    CHECK(pairs[27].id == "cfi-k4-1");
    CHECK(pairs[30].id == "gm-petersen-1");
    CHECK(pairs[32].id == "gm-petersen-3");
    for (size_t i = 0; i < pairs.size(); ++i)
        CHECK(pairs[i].index == static_cast<int>(i));

    int cycles = 0, cfi3 = 0, cfi4 = 0, gm = 0;
    for (const auto& p : pairs) {
        if (p.family == "cycles") ++cycles;
        if (p.family == "cfi-k3") ++cfi3;
        if (p.family == "cfi-k4") ++cfi4;
        if (p.family == "gm-petersen") ++gm;
    }
    CHECK(cycles == 24);
    CHECK(cfi3 == 3);
    CHECK(cfi4 == 3);
    CHECK(gm == 3);

    // every fixture is a genuine 1-WL tie
    for (const auto& p : {pairs[0], pairs[5], pairs[24], pairs[27], pairs[30]})
        CHECK(wl_equivalent(p.a, p.b));
}

TEST_CASE("identical graphs score cosine one") {
    Graph g = gen_petersen();
    PairSpec spec{0, "self", "debug", g, g};
    RunConfig cfg;
    cfg.seeds = 2;
    BundleCache cache;
    PairReport rep = run_pair(spec, cfg, cache);
    for (double c : rep.cosines) CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(rep.separated);
    CHECK_FALSE(rep.zero_norm);
}

TEST_CASE("pooled baselines cannot tell the smallest pair apart") {
    auto pairs = suite_pairs();
    RunConfig cfg;
    cfg.kind = ReadoutKind::sum;
    cfg.seeds = 3;
    BundleCache cache;
    PairReport rep = run_pair(pairs[0], cfg, cache);
    CHECK(rep.mean_cos >= 0.999999);
    CHECK_FALSE(rep.separated);

    cfg.kind = ReadoutKind::meanmax;
    PairReport rep2 = run_pair(pairs[0], cfg, cache);
    CHECK(rep2.mean_cos >= 0.999999);
}

TEST_CASE("isotypic readout separates the smallest pair") {
    auto pairs = suite_pairs();
    RunConfig cfg;
    cfg.seeds = 3;
    BundleCache cache;
    PairReport rep = run_pair(pairs[0], cfg, cache);
    CHECK(rep.separated);
    CHECK(rep.mean_cos < 0.5);
    CHECK(rep.p_value < 0.05);
    CHECK_FALSE(rep.zero_norm);
}

TEST_CASE("oversized cycles fall off the block budget") {
    // k = 16 puts the one-cycle side's surviving blocks past B = 16
    auto [two, one] = gen_cycle_pair(16);
    PairSpec spec{0, "cycles-k16", "cycles", two, one};
    RunConfig cfg;
    cfg.seeds = 1;
    BundleCache cache;
    PairReport rep = run_pair(spec, cfg, cache);
    CHECK(rep.zero_norm);
    CHECK(rep.mean_cos == doctest::Approx(1.0));
    CHECK_FALSE(rep.separated);
}

TEST_CASE("run_pair validates its config") {
    PairSpec spec{0, "x", "x", gen_petersen(), gen_petersen()};
    BundleCache cache;
    RunConfig cfg;
    cfg.seeds = 0;
    CHECK_THROWS_AS(run_pair(spec, cfg, cache), std::invalid_argument);
    cfg.seeds = 1;
    cfg.threshold = 0.0;
    CHECK_THROWS_AS(run_pair(spec, cfg, cache), std::invalid_argument);
    cfg.threshold = 1.5;
    CHECK_THROWS_AS(run_pair(spec, cfg, cache), std::invalid_argument);
}

TEST_CASE("suite runs are deterministic and thread-count independent") {
    auto pairs = small_pairs();
    RunConfig cfg;
    cfg.seeds = 2;
    cfg.threads = 1;

    BundleCache c1, c2;
    SuiteReport r1 = run_suite(cfg, pairs, c1);
    cfg.threads = 4;
    SuiteReport r2 = run_suite(cfg, pairs, c2);
    CHECK(suite_json(r1, false) == suite_json(r2, false));

    // same config through the convenience entry point
    REQUIRE(r1.pairs.size() == 4);
    CHECK(r1.pairs[0].separated);
    CHECK(r1.pairs[1].separated);
}

TEST_CASE("suite report structure") {
    auto pairs = small_pairs();
    RunConfig cfg;
    cfg.seeds = 2;
    BundleCache cache;
    SuiteReport rep = run_suite(cfg, pairs, cache);

    REQUIRE(rep.families.size() == 3);
    CHECK(rep.families[0].family == "cycles");
    CHECK(rep.families[0].count == 2);
    CHECK(rep.families[1].family == "cfi-k3");
    CHECK(rep.families[2].family == "gm-petersen");
    int total = 0;
    for (const auto& f : rep.families) total += f.separated;
    CHECK(total == rep.separated_total);

    auto j = nlohmann::json::parse(suite_json(rep));
    CHECK(j.at("total") == 4);
    CHECK(j.at("pairs").size() == 4);
    CHECK(j.at("pairs")[0].contains("timings"));
    CHECK(j.at("pairs")[0].at("timings").contains("bundle_s"));
    CHECK(j.at("config").at("seeds") == 2);
    CHECK(j.at("config").at("readout") == "isotypic");

    auto stripped = nlohmann::json::parse(suite_json(rep, false));
    CHECK_FALSE(stripped.at("pairs")[0].contains("timings"));

    std::string csv = suite_csv(rep);
    CHECK(csv.substr(0, csv.find("\r\n")) ==
          "pair,family,mean_cos,separated,p_value,holm_reject,zero_norm,bundle_s,"
          "feature_s,total_s,cos_0,cos_1");

    // single-seed runs leave the p column empty
    cfg.seeds = 1;
    BundleCache cache2;
    SuiteReport rep1 = run_suite(cfg, {pairs[3]}, cache2);
    CHECK(std::isnan(rep1.pairs[0].p_value));
    std::string line = suite_csv(rep1);
    line = line.substr(line.find("\r\n") + 2);
    CHECK(line.find(",,") != std::string::npos);

    auto pj = nlohmann::json::parse(pair_json(rep.pairs[0]));
    CHECK(pj.at("id") == "cycles-k3");
    CHECK(pj.at("cosines").size() == 2);
}

TEST_CASE("sweep serialization") {
    std::string s = sweep_json({{1, 3}, {16, 20}});
    auto j = nlohmann::json::parse(s);
    REQUIRE(j.size() == 2);
    CHECK(j[0].at("max_blocks") == 1);
    CHECK(j[0].at("separated") == 3);
    CHECK(j[1].at("max_blocks") == 16);
}

TEST_CASE("bench rows") {
    ReadoutConfig cfg;
    auto rows = bench_er({12}, 0.3, 4, 5, cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n == 12);
    CHECK(rows[0].count == 4);
    CHECK(rows[0].capped_count == 0);
    CHECK(rows[0].bundle_median > 0.0);
    CHECK(rows[0].total_p90 >= rows[0].total_median);

    CHECK(bench_er({12}, 0.3, 0, 5, cfg).empty());

    std::string csv = bench_csv(rows);
    CHECK(csv.substr(0, csv.find("\r\n")) ==
          "n,count,capped_count,bundle_median_s,bundle_p90_s,feature_median_s,"
          "feature_p90_s,total_median_s,total_p90_s");
    CHECK(bench_csv({}).find("\r\n") == bench_csv({}).size() - 2);
}

TEST_CASE("master seed env override") {
    const char* old = std::getenv("ISOREAD_SEED");
    std::string saved = old ? old : "";

    setenv("ISOREAD_SEED", "777", 1);
    CHECK(default_master_seed() == 777);
    unsetenv("ISOREAD_SEED");
    CHECK(default_master_seed() == 1);

    if (old) setenv("ISOREAD_SEED", saved.c_str(), 1);
}
