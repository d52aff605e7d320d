#include "isoread/encoder.hpp"

#include <cmath>
#include <stdexcept>

#include "isoread/rng.hpp"

namespace isoread {

EncoderWeights init_encoder(const EncoderConfig& cfg) {
    if (cfg.width < 1 || cfg.layers < 1)
        throw std::invalid_argument("init_encoder: width and layers must be >= 1");
    EncoderWeights w;
    w.config = cfg;
    SplitMix64 gen(cfg.seed);
    const int d = cfg.width;
    for (int l = 0; l < cfg.layers; ++l) {
        const int in = l == 0 ? 1 : d;
        EncoderLayer layer;
        const double bound1 = std::sqrt(6.0 / (in + d));
        layer.w1 = Mat(in, d);
        for (int i = 0; i < in; ++i)
            for (int j = 0; j < d; ++j) layer.w1.at(i, j) = gen.uniform(-bound1, bound1);
        layer.b1.resize(d);
        for (int j = 0; j < d; ++j) layer.b1[j] = gen.uniform(-bound1, bound1);
        const double bound2 = std::sqrt(6.0 / (d + d));
        layer.w2 = Mat(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) layer.w2.at(i, j) = gen.uniform(-bound2, bound2);
        layer.b2.resize(d);
        for (int j = 0; j < d; ++j) layer.b2[j] = gen.uniform(-bound2, bound2);
        w.layers.push_back(std::move(layer));
    }
    return w;
}

Mat encode(const Graph& g, const EncoderWeights& weights) {
    const int d = weights.config.width;
    const double eps = weights.config.epsilon;
    Mat h(g.n, 1);
    for (int v = 0; v < g.n; ++v) h.at(v, 0) = 1.0;

    for (const auto& layer : weights.layers) {
        const int in = h.cols;
        // aggregate (1+eps) h_v + sum of neighbor rows
        Mat agg(g.n, in);
        for (int v = 0; v < g.n; ++v) {
            for (int k = 0; k < in; ++k) agg.at(v, k) = (1.0 + eps) * h.at(v, k);
            for (int u : g.nbr[v])
                for (int k = 0; k < in; ++k) agg.at(v, k) += h.at(u, k);
        }
        Mat z = matmul(agg, layer.w1);
        for (int v = 0; v < g.n; ++v)
            for (int k = 0; k < d; ++k) {
                double x = z.at(v, k) + layer.b1[k];
                z.at(v, k) = x > 0.0 ? x : 0.0;
            }
        Mat z2 = matmul(z, layer.w2);
        for (int v = 0; v < g.n; ++v) {
            double sq = 0.0;
            for (int k = 0; k < d; ++k) {
                z2.at(v, k) += layer.b2[k];
                sq += z2.at(v, k) * z2.at(v, k);
            }
            const double rms = std::sqrt(sq / d);
            for (int k = 0; k < d; ++k) z2.at(v, k) /= rms + 1e-8;
        }
        h = std::move(z2);
    }
    return h;
}

}  // namespace isoread
