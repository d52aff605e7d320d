#pragma once

#include <cstdint>
#include <vector>

#include "isoread/graph.hpp"
#include "isoread/matrix.hpp"

namespace isoread {

struct EncoderConfig {
    int width = 64;      // d
    int layers = 5;      // L
    uint64_t seed = 0;
    double epsilon = 0.0;
};

struct EncoderLayer {
    Mat w1;                  // in x d
    std::vector<double> b1;  // d
    Mat w2;                  // d x d
    std::vector<double> b2;  // d
};

struct EncoderWeights {
    EncoderConfig config;
    std::vector<EncoderLayer> layers;
};

// Glorot-uniform, bound sqrt(6/(fan_in+fan_out)), drawn in fixed order:
// per layer W1 row-major, b1, W2 row-major, b2.
EncoderWeights init_encoder(const EncoderConfig& cfg);

// GIN-style sum aggregation over all-ones input features; each layer output
// is RMS-normalized per node. No training anywhere.
Mat encode(const Graph& g, const EncoderWeights& weights);

}  // namespace isoread
