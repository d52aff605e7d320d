#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoread/generators.hpp"
#include "isoread/harness.hpp"
#include "isoread/iso.hpp"
#include "isoread/readout.hpp"
#include "isoread/wl.hpp"

namespace {

using namespace isoread;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Graph load_graph(const std::string& path) {
    const std::string text = slurp(path);
    // graph6 files carry one graph on the first line; tolerate the newline
    std::string line = text;
    if (const auto eol = line.find_first_of("\r\n"); eol != std::string::npos)
        line.erase(eol);
    try {
        return parse_graph6(line);
    } catch (const std::exception&) {
        return parse_edge_list(text);
    }
}

Mat load_features(const std::string& path) {
    const std::string text = slurp(path);
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '{') return read_features_json(text);
        break;
    }
    return read_features_csv(text);
}

template <typename T>
std::vector<T> split_list(const std::string& csv) {
    std::vector<T> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        std::istringstream conv(tok);
        T v;
        if (!(conv >> v)) throw std::runtime_error("bad list entry: " + tok);
        out.push_back(v);
    }
    return out;
}

int cmd_gen(const std::string& family, int k, int n, double p, uint64_t seed) {
    auto emit = [](const Graph& g) { std::cout << write_graph6(g) << "\n"; };
    if (family == "cycles" || family == "cycle-pair") {
        auto [a, b] = gen_cycle_pair(k);
        emit(a);
        emit(b);
    } else if (family == "cfi-k3") {
        auto [a, b] = gen_cfi_pair(gen_complete(3));
        emit(a);
        emit(b);
    } else if (family == "cfi-k4") {
        auto [a, b] = gen_cfi_pair(gen_complete(4));
        emit(a);
        emit(b);
    } else if (family == "gm-petersen") {
        Graph g = gen_petersen();
        emit(g);
        emit(gm_switch(g, kGmPetersenCell));
    } else if (family == "petersen") {
        emit(gen_petersen());
    } else if (family == "shrikhande") {
        emit(gen_shrikhande());
    } else if (family == "rook4") {
        emit(gen_rook4());
    } else if (family == "srg-16") {
        emit(gen_shrikhande());
        emit(gen_rook4());
    } else if (family == "er") {
        emit(gen_er(n, p, seed));
    } else if (family == "complete") {
        emit(gen_complete(n));
    } else {
        throw std::runtime_error("unknown family: " + family);
    }
    return 0;
}

int cmd_wl_check(const std::string& a6, const std::string& b6) {
    const Graph a = parse_graph6(a6);
    const Graph b = parse_graph6(b6);
    nlohmann::json j{{"wl_equivalent", wl_equivalent(a, b)}};
    try {
        j["is_isomorphic"] = is_isomorphic(a, b);
    } catch (const std::exception& e) {
        j["is_isomorphic"] = nullptr;
        j["note"] = e.what();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_decompose(const std::string& path, const std::string& coeff_list, uint64_t seed) {
    const Graph g = load_graph(path);
    ReadoutConfig cfg;
    cfg.coeff_seed = seed;
    const std::vector<double> coeffs = split_list<double>(coeff_list);
    const Decomposition dec = decompose_graph(g, coeffs, cfg);
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : dec.blocks)
        blocks.push_back({{"eigenvalue", b.eigenvalue},
                          {"size", b.multiplicity},
                          {"sort_key", {b.key[0], b.key[1], b.key[2]}}});
    nlohmann::json j{{"n", g.n},
                     {"aut_count", dec.aut_count},
                     {"capped", dec.capped},
                     {"orbit_count", dec.orbit_count},
                     {"eigenvalues", dec.eigenvalues},
                     {"blocks", std::move(blocks)}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_readout(const std::string& graph_path, const std::string& feat_path,
                const std::string& kind_name, bool centering, int max_blocks, int rp_dim,
                uint64_t seed) {
    const Graph g = load_graph(graph_path);
    const Mat m = load_features(feat_path);
    const ReadoutKind kind = readout_kind_from_string(kind_name);
    std::vector<double> z;
    if (is_pooling(kind)) {
        const Mat input = centering ? center(m) : m;
        const PoolKind pk = kind == ReadoutKind::sum    ? PoolKind::sum
                            : kind == ReadoutKind::mean ? PoolKind::mean
                            : kind == ReadoutKind::max  ? PoolKind::max
                                                        : PoolKind::meanmax;
        z = pool(input, pk);
    } else {
        ReadoutConfig cfg;
        cfg.max_blocks = max_blocks;
        cfg.rp_dim = rp_dim;
        cfg.centering = centering;
        cfg.seed = seed;
        cfg.coeff_seed = seed;
        const ProjectorBundle bundle = prepare_bundle(g, cfg);
        z = kind == ReadoutKind::isotypic ? isotypic_readout(bundle, m, cfg)
                                          : linearized_readout(bundle, m, cfg);
    }
    std::cout << nlohmann::json(z).dump() << "\n";
    return 0;
}

PairSpec named_pair(const std::string& family, int k) {
    if (family == "cycles") {
        auto [a, b] = gen_cycle_pair(k);
        return {0, "cycles-k" + std::to_string(k), "cycles", std::move(a), std::move(b)};
    }
    if (family == "cfi-k3") {
        auto [a, b] = gen_cfi_pair(gen_complete(3));
        return {0, "cfi-k3", "cfi-k3", std::move(a), std::move(b)};
    }
    if (family == "cfi-k4") {
        auto [a, b] = gen_cfi_pair(gen_complete(4));
        return {0, "cfi-k4", "cfi-k4", std::move(a), std::move(b)};
    }
    if (family == "gm-petersen") {
        Graph g = gen_petersen();
        Graph s = gm_switch(g, kGmPetersenCell);
        return {0, "gm-petersen", "gm-petersen", std::move(g), std::move(s)};
    }
    if (family == "srg-16")
        return {0, "srg-16", "srg-16", gen_shrikhande(), gen_rook4()};
    throw std::runtime_error("unknown family: " + family);
}

int cmd_separate(const std::string& family, int k, const std::string& path_a,
                 const std::string& path_b, const std::string& kind_name, int seeds,
                 double threshold) {
    PairSpec spec;
    if (!family.empty()) {
        spec = named_pair(family, k);
    } else {
        spec = {0, "pair", "custom", load_graph(path_a), load_graph(path_b)};
    }
    RunConfig cfg;
    cfg.kind = readout_kind_from_string(kind_name);
    cfg.seeds = seeds;
    cfg.threshold = threshold;
    cfg.master_seed = default_master_seed();
    BundleCache cache;
    const PairReport report = run_pair(spec, cfg, cache);
    std::cout << pair_json(report) << "\n";
    return 0;
}

int cmd_suite(const std::string& kind_name, const std::string& out_format, int seeds,
              double threshold, int threads) {
    RunConfig cfg;
    cfg.kind = readout_kind_from_string(kind_name);
    cfg.seeds = seeds;
    cfg.threshold = threshold;
    cfg.threads = threads;
    cfg.master_seed = default_master_seed();
    const SuiteReport report = run_suite(cfg);
    if (out_format == "csv")
        std::cout << suite_csv(report);
    else
        std::cout << suite_json(report) << "\n";
    return 0;
}

int cmd_sweep(const std::string& blocks_list) {
    RunConfig cfg;
    cfg.kind = ReadoutKind::isotypic;
    cfg.seeds = 1;
    cfg.master_seed = default_master_seed();
    const auto rows = block_sweep(cfg, split_list<int>(blocks_list));
    std::cout << sweep_json(rows) << "\n";
    return 0;
}

int cmd_bench(const std::string& ns_list, double p, int count) {
    ReadoutConfig cfg;
    const auto rows = bench_er(split_list<int>(ns_list), p, count, default_master_seed(), cfg);
    std::cout << bench_csv(rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isotypic graph readout toolkit"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "emit family graphs as graph6");
    std::string gen_family;
    int gen_k = 3, gen_n = 16;
    double gen_p = 0.1;
    uint64_t gen_seed = 1;
    gen->add_option("--family", gen_family, "family name")->required();
    gen->add_option("--k", gen_k, "cycle half-length");
    gen->add_option("--n", gen_n, "node count (er, complete)");
    gen->add_option("--p", gen_p, "edge probability (er)");
    gen->add_option("--seed", gen_seed, "seed (er)");

    auto* wl = app.add_subcommand("wl-check", "1-WL equivalence and isomorphism of two graph6 strings");
    std::string wl_a, wl_b;
    wl->add_option("a", wl_a, "first graph6")->required();
    wl->add_option("b", wl_b, "second graph6")->required();

    auto* dec = app.add_subcommand("decompose", "eigenvalues, block sizes and sort keys of S");
    std::string dec_graph, dec_coeffs;
    uint64_t dec_seed = 0;
    dec->add_option("--graph", dec_graph, "graph file (graph6 or edge list)")->required();
    dec->add_option("--coeffs", dec_coeffs, "comma-separated orbit coefficients");
    dec->add_option("--seed", dec_seed, "coefficient seed");

    auto* ro = app.add_subcommand("readout", "compute a readout vector for given features");
    std::string ro_graph, ro_feat, ro_kind = "isotypic";
    bool ro_center = false;
    int ro_blocks = 16, ro_rp = 8;
    uint64_t ro_seed = 0;
    ro->add_option("--graph", ro_graph, "graph file")->required();
    ro->add_option("--features", ro_feat, "feature matrix file (CSV or JSON)")->required();
    ro->add_option("--kind", ro_kind, "sum|mean|max|meanmax|isotypic|isotypic-linear");
    ro->add_flag("--center", ro_center, "center features first");
    ro->add_option("--max-blocks", ro_blocks, "projector budget B");
    ro->add_option("--rp-dim", ro_rp, "random projection width r");
    ro->add_option("--seed", ro_seed, "coefficient and projection seed");

    auto* sep = app.add_subcommand("separate", "training-free separation on one pair");
    std::string sep_family, sep_a, sep_b, sep_kind = "isotypic";
    int sep_k = 3, sep_seeds = 5;
    double sep_threshold = 0.95;
    sep->add_option("--family", sep_family, "cycles|cfi-k3|cfi-k4|gm-petersen|srg-16");
    sep->add_option("--k", sep_k, "cycle half-length for --family cycles");
    auto* sep_pair_b = sep->add_option("--pair-b", sep_b, "second graph file");
    sep->add_option("--pair", sep_a, "first graph file")->needs(sep_pair_b);
    sep->add_option("--readout", sep_kind, "readout kind");
    sep->add_option("--seeds", sep_seeds, "encoder seeds");
    sep->add_option("--threshold", sep_threshold, "separation threshold");

    auto* suite = app.add_subcommand("suite", "run the full WL-hard suite");
    std::string suite_kind = "isotypic", suite_out = "json";
    int suite_seeds = 5, suite_threads = 1;
    double suite_threshold = 0.95;
    suite->add_option("--readout", suite_kind, "readout kind");
    suite->add_option("--out", suite_out, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    suite->add_option("--seeds", suite_seeds, "encoder seeds per pair");
    suite->add_option("--threshold", suite_threshold, "separation threshold");
    suite->add_option("--threads", suite_threads, "worker threads");

    auto* sweep = app.add_subcommand("sweep", "separated counts across block budgets");
    std::string sweep_blocks = "1,2,4,8,16";
    sweep->add_option("--blocks", sweep_blocks, "comma-separated B values");

    auto* bench = app.add_subcommand("bench-er", "runtime benchmark on ER graphs");
    std::string bench_ns;
    double bench_p = 0.1;
    int bench_count = 20;
    bench->add_option("--ns", bench_ns, "comma-separated node counts")->required();
    bench->add_option("--p", bench_p, "edge probability");
    bench->add_option("--count", bench_count, "graphs per size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_family, gen_k, gen_n, gen_p, gen_seed);
        if (wl->parsed()) return cmd_wl_check(wl_a, wl_b);
        if (dec->parsed()) return cmd_decompose(dec_graph, dec_coeffs, dec_seed);
        if (ro->parsed())
            return cmd_readout(ro_graph, ro_feat, ro_kind, ro_center, ro_blocks, ro_rp,
                               ro_seed);
        if (sep->parsed()) {
            if (sep_family.empty() && sep_a.empty())
                throw std::runtime_error("separate: need --family or --pair/--pair-b");
            return cmd_separate(sep_family, sep_k, sep_a, sep_b, sep_kind, sep_seeds,
                                sep_threshold);
        }
        if (suite->parsed())
            return cmd_suite(suite_kind, suite_out, suite_seeds, suite_threshold,
                             suite_threads);
        if (sweep->parsed()) return cmd_sweep(sweep_blocks);
        if (bench->parsed()) return cmd_bench(bench_ns, bench_p, bench_count);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
