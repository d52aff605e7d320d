#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "isoread/encoder.hpp"
#include "isoread/generators.hpp"
#include "isoread/graph.hpp"
#include "isoread/rng.hpp"
#include "isoread/wl.hpp"

using namespace isoread;

namespace {

Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

std::vector<std::vector<double>> sorted_rows(const Mat& m) {
    std::vector<std::vector<double>> rows(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) rows[i].push_back(m.at(i, j));
    std::sort(rows.begin(), rows.end());
    return rows;
}

double max_row_diff(const std::vector<std::vector<double>>& a,
                    const std::vector<std::vector<double>>& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j)
            worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    return worst;
}

}  // namespace

TEST_CASE("initialization shapes and determinism") {
    EncoderConfig cfg;
    cfg.seed = 7;
    EncoderWeights w1 = init_encoder(cfg);
    EncoderWeights w2 = init_encoder(cfg);
    REQUIRE(w1.layers.size() == 5);
    CHECK(w1.layers[0].w1.rows == 1);
    CHECK(w1.layers[0].w1.cols == 64);
    CHECK(w1.layers[1].w1.rows == 64);
    CHECK(w1.layers[4].w2.rows == 64);
    CHECK(w1.layers[4].w2.cols == 64);
    for (size_t l = 0; l < w1.layers.size(); ++l) {
        CHECK(w1.layers[l].w1 == w2.layers[l].w1);
        CHECK(w1.layers[l].b1 == w2.layers[l].b1);
        CHECK(w1.layers[l].w2 == w2.layers[l].w2);
        CHECK(w1.layers[l].b2 == w2.layers[l].b2);
    }

    cfg.seed = 8;
    EncoderWeights w3 = init_encoder(cfg);
    CHECK_FALSE(w1.layers[0].w1 == w3.layers[0].w1);

    CHECK_THROWS_AS(init_encoder(EncoderConfig{0, 5, 0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(init_encoder(EncoderConfig{64, 0, 0, 0.0}), std::invalid_argument);
}

TEST_CASE("glorot bounds hold") {
    EncoderConfig cfg;
    cfg.seed = 3;
    EncoderWeights w = init_encoder(cfg);
    for (size_t l = 0; l < w.layers.size(); ++l) {
        const int fan_in = l == 0 ? 1 : 64;
        const double bound1 = std::sqrt(6.0 / (fan_in + 64));
        const double bound2 = std::sqrt(6.0 / 128.0);
        for (double v : w.layers[l].w1.a) CHECK(std::abs(v) <= bound1);
        for (double v : w.layers[l].b1) CHECK(std::abs(v) <= bound1);
        for (double v : w.layers[l].w2.a) CHECK(std::abs(v) <= bound2);
        for (double v : w.layers[l].b2) CHECK(std::abs(v) <= bound2);
    }
}

TEST_CASE("encode output shape and row scale") {
    EncoderConfig cfg;
    cfg.seed = 11;
    Mat h = encode(gen_petersen(), init_encoder(cfg));
    CHECK(h.rows == 10);
    CHECK(h.cols == 64);
    for (int i = 0; i < h.rows; ++i) {
        double ss = 0.0;
        for (int j = 0; j < h.cols; ++j) ss += h.at(i, j) * h.at(i, j);
        double rms = std::sqrt(ss / h.cols);
        // rows are RMS-normalized unless the layer output vanished
        CHECK(rms == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("vertex-transitive graphs get identical rows") {
    EncoderConfig cfg;
    cfg.seed = 2;
    Mat h = encode(cycle(6), init_encoder(cfg));
    for (int i = 1; i < 6; ++i)
        for (int j = 0; j < h.cols; ++j) CHECK(h.at(i, j) == h.at(0, j));
}

TEST_CASE("encoding is equivariant") {
    EncoderConfig cfg;
    cfg.seed = 9;
    EncoderWeights w = init_encoder(cfg);
    for (const Graph& g : {gen_petersen(), gen_er(14, 0.3, 21)}) {
        SplitMix64 gen(33);
        Permutation p = random_permutation(g.n, gen);
        Mat h = encode(g, w);
        Mat hp = encode(permute(g, p), w);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < h.cols; ++j)
                CHECK(hp.at(p(i), j) == doctest::Approx(h.at(i, j)).epsilon(1e-10));
    }
}

TEST_CASE("wl-equivalent pairs get identical row multisets") {
    EncoderConfig cfg;
    cfg.seed = 4;
    EncoderWeights w = init_encoder(cfg);

    auto check_pair = [&](const Graph& a, const Graph& b) {
        REQUIRE(wl_equivalent(a, b));
        auto ra = sorted_rows(encode(a, w));
        auto rb = sorted_rows(encode(b, w));
        REQUIRE(ra.size() == rb.size());
        CHECK(max_row_diff(ra, rb) <= 1e-8);
    };

    for (int k : {3, 8, 15}) {
        auto [two, one] = gen_cycle_pair(k);
        check_pair(two, one);
    }
    auto cfi3 = gen_cfi_pair(gen_complete(3));
    check_pair(cfi3.first, cfi3.second);
    auto cfi4 = gen_cfi_pair(gen_complete(4));
    check_pair(cfi4.first, cfi4.second);
    Graph pet = gen_petersen();
    check_pair(pet, gm_switch(pet, {0, 1}));
}

TEST_CASE("epsilon changes the map") {
    EncoderConfig plain;
    plain.seed = 6;
    EncoderConfig eps = plain;
    eps.epsilon = 0.5;
    Graph g = gen_petersen();
    Mat a = encode(g, init_encoder(plain));
    Mat b = encode(g, init_encoder(eps));
    CHECK_FALSE(a == b);
}
