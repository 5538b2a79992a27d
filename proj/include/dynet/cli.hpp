#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynet/io.hpp"
#include "dynet/metrics.hpp"

namespace dynet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Content is fully materialized before the file is opened, so failed runs
// never leave partial output behind.
inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

inline std::vector<double> read_degree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> d;
    double x;
    while (in >> x) d.push_back(x);
    if (d.empty()) throw std::runtime_error("degree file " + path + " is empty");
    return d;
}

struct GenerateOptions {
    std::string model, out, params_file, degrees_file;
    int n = 0, T = 0;
    double alpha = -1.0, beta = -1.0, const_degree = -1.0;
    std::uint64_t seed = 0;
};

inline int run_generate(const GenerateOptions& o) {
    SnapshotSequence seq(1, {{}});
    if (o.model == "er") {
        if (o.alpha < 0 || o.beta < 0) throw std::runtime_error("er generation needs --alpha and --beta");
        ErParams p;
        p.alpha = o.alpha;
        p.beta = o.beta;
        seq = generate_er(o.n, o.T, p, o.seed);
    } else if (o.model == "cl") {
        if (o.beta < 0) throw std::runtime_error("cl generation needs --beta");
        ClParams p;
        p.beta = o.beta;
        if (!o.degrees_file.empty()) p.d = read_degree_file(o.degrees_file);
        else if (o.const_degree >= 0) p.d.assign(o.n, o.const_degree);
        else throw std::runtime_error("cl generation needs --degrees or --const-degree");
        seq = generate_cl(static_cast<int>(p.d.size()), o.T, p, o.seed);
    } else {
        if (o.params_file.empty()) throw std::runtime_error("dcsbm generation needs --params");
        auto j = nlohmann::json::parse(read_file(o.params_file));
        DcsbmParams p = io::dcsbm_from_json(j);
        seq = generate_dcsbm(p.part.n(), o.T, p, o.seed);
    }
    write_file(o.out, io::render_snapshots(seq));
    return kExitOk;
}

struct FitOptions {
    std::string model, input, out, partition_out;
    int k = 2, restarts = 5, max_iter = 10000;
    double tol = 1e-12;
    std::uint64_t seed = 0;
};

inline int run_fit(const FitOptions& o) {
    SnapshotSequence seq = io::parse_snapshots(read_file(o.input));
    nlohmann::json doc;
    std::string partition_text;
    if (o.model == "er") {
        ErParams p = fit_er(seq, o.tol, o.max_iter);
        double L;
        try {
            L = loglike_er(seq, p);
        } catch (const std::domain_error&) {
            L = std::numeric_limits<double>::quiet_NaN();  // frozen boundary fit
        }
        doc = io::er_to_json(p, seq.n, seq.T(), L);
    } else if (o.model == "cl") {
        ClParams p = fit_cl(seq, o.tol, o.max_iter);
        double L = p.m() > 0 ? loglike_cl(seq, p) : std::numeric_limits<double>::quiet_NaN();
        doc = io::cl_to_json(p, seq.n, seq.T(), L);
    } else {
        DcsbmFit fit = fit_dcsbm(seq, o.k, o.restarts, o.seed);
        doc = io::dcsbm_to_json(fit.params, seq.n, seq.T(), fit.profile_loglike);
        std::ostringstream part;
        io::render_partition(part, fit.params.part);
        partition_text = part.str();
    }
    write_file(o.out, doc.dump(2) + "\n");
    if (!o.partition_out.empty()) {
        if (partition_text.empty()) throw std::runtime_error("--partition-out requires --model dcsbm");
        write_file(o.partition_out, partition_text);
    }
    return kExitOk;
}

struct BenchmarkOptions {
    BenchmarkSpec spec;
    std::string panel, out;
    std::vector<double> delta_grid, eta_grid;
    int jobs = 1;
};

inline int run_benchmark_cmd(BenchmarkOptions o) {
    auto even_grid = [] {
        std::vector<double> g;
        for (int i = 0; i <= 10; ++i) g.push_back(i / 10.0);
        return g;
    };
    if (o.panel == "a") {
        o.spec.eta = 0.0;
        o.spec.beta_uniform = 0.4;
        if (o.delta_grid.empty()) o.delta_grid = even_grid();
        o.eta_grid = {0.0};
    } else if (o.panel == "b") {
        o.spec.eta = 1.0;
        o.spec.beta_in = 0.3;
        o.spec.beta_out = 0.5;
        if (o.delta_grid.empty()) o.delta_grid = even_grid();
        o.eta_grid = {1.0};
    } else if (o.panel == "c") {
        o.spec.delta = 0.0;
        o.spec.beta_uniform = 0.4;
        o.spec.beta_in = 0.0;
        o.spec.beta_out = 0.8;
        o.delta_grid = {0.0};
        if (o.eta_grid.empty()) o.eta_grid = even_grid();
    } else if (!o.panel.empty()) {
        throw std::runtime_error("unknown panel '" + o.panel + "' (expected a, b, or c)");
    }
    if (o.delta_grid.empty()) o.delta_grid = {o.spec.delta};
    if (o.eta_grid.empty()) o.eta_grid = {o.spec.eta};
    std::vector<std::pair<double, double>> grid;
    for (double d : o.delta_grid)
        for (double e : o.eta_grid) grid.emplace_back(d, e);
    BenchmarkResult result = run_benchmark(o.spec, grid, o.jobs);
    std::ostringstream csv;
    io::render_benchmark_csv(csv, result);
    write_file(o.out, csv.str());
    return kExitOk;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"dynamic random-graph models: generation, fitting, community detection"};
    app.require_subcommand(1);

    detail::GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "sample a snapshot sequence from a model");
    generate->add_option("--model", gen.model, "er, cl, or dcsbm")
        ->required()
        ->check(CLI::IsMember({"er", "cl", "dcsbm"}));
    generate->add_option("--n", gen.n, "node count (er, cl with --const-degree)");
    generate->add_option("--T", gen.T, "number of post-initial snapshots")->required();
    generate->add_option("--alpha", gen.alpha, "er appearance probability");
    generate->add_option("--beta", gen.beta, "per-step disappearance probability (er, cl)");
    generate->add_option("--degrees", gen.degrees_file, "cl: file with one expected degree per line");
    generate->add_option("--const-degree", gen.const_degree, "cl: constant expected degree");
    generate->add_option("--params", gen.params_file, "dcsbm: params JSON (from fit or handmade)");
    generate->add_option("--seed", gen.seed, "RNG seed");
    generate->add_option("--out", gen.out, "output snapshot file")->required();

    detail::FitOptions fit;
    auto* fitcmd = app.add_subcommand("fit", "maximum-likelihood fit to a snapshot sequence");
    fitcmd->add_option("--model", fit.model, "er, cl, or dcsbm")
        ->required()
        ->check(CLI::IsMember({"er", "cl", "dcsbm"}));
    fitcmd->add_option("--input", fit.input, "snapshot file")->required();
    fitcmd->add_option("--out", fit.out, "output params JSON")->required();
    fitcmd->add_option("--k", fit.k, "dcsbm: number of groups");
    fitcmd->add_option("--restarts", fit.restarts, "dcsbm: independent restarts")->capture_default_str();
    fitcmd->add_option("--seed", fit.seed, "dcsbm: RNG seed for restarts");
    fitcmd->add_option("--partition-out", fit.partition_out, "dcsbm: also write a partition file");
    fitcmd->add_option("--tol", fit.tol, "fixed-point tolerance")->capture_default_str();
    fitcmd->add_option("--max-iter", fit.max_iter, "fixed-point iteration cap")->capture_default_str();

    std::string nmi_a, nmi_b;
    auto* nmicmd = app.add_subcommand("nmi", "normalized mutual information of two partition files");
    nmicmd->add_option("--a", nmi_a, "first partition file")->required();
    nmicmd->add_option("--b", nmi_b, "second partition file")->required();

    detail::BenchmarkOptions bench;
    auto* benchcmd = app.add_subcommand("benchmark", "planted-partition detectability sweep");
    benchcmd->add_option("--panel", bench.panel, "preset a, b, or c");
    benchcmd->add_option("--out", bench.out, "output CSV")->required();
    benchcmd->add_option("--n", bench.spec.n, "nodes")->capture_default_str();
    benchcmd->add_option("--k", bench.spec.k, "groups")->capture_default_str();
    benchcmd->add_option("--c", bench.spec.c, "target mean degree")->capture_default_str();
    benchcmd->add_option("--delta", bench.delta_grid, "delta grid values");
    benchcmd->add_option("--eta", bench.eta_grid, "eta grid values");
    benchcmd->add_option("--T", bench.spec.T_values, "T values")->capture_default_str();
    benchcmd->add_option("--beta-uniform", bench.spec.beta_uniform, "uniform disappearance probability")->capture_default_str();
    benchcmd->add_option("--beta-in", bench.spec.beta_in, "planted within-group beta")->capture_default_str();
    benchcmd->add_option("--beta-out", bench.spec.beta_out, "planted between-group beta")->capture_default_str();
    benchcmd->add_option("--reps", bench.spec.reps, "replicates per grid point")->capture_default_str();
    benchcmd->add_option("--restarts", bench.spec.restarts, "fit restarts per replicate")->capture_default_str();
    benchcmd->add_option("--seed", bench.spec.seed, "base seed");
    benchcmd->add_option("--jobs", bench.jobs, "worker threads (output is schedule-independent)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) return detail::run_generate(gen);
        if (fitcmd->parsed()) return detail::run_fit(fit);
        if (nmicmd->parsed()) {
            Partition a = io::parse_partition(detail::read_file(nmi_a));
            Partition b = io::parse_partition(detail::read_file(nmi_b));
            std::cout << std::fixed << std::setprecision(6) << nmi(a, b) << "\n";
            return kExitOk;
        }
        if (benchcmd->parsed()) return detail::run_benchmark_cmd(bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace dynet::cli
