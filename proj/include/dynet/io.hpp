#pragma once

#include <cstdint>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynet/dyn_cl.hpp"
#include "dynet/dyn_dcsbm.hpp"
#include "dynet/dyn_er.hpp"
#include "dynet/snapshots.hpp"
#include "dynet/synthgen.hpp"

namespace dynet::io {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// Snapshot file format (text, line-oriented):
//   #dynsnap 1
//   n <int>
//   T <int>
//   t u v          (one edge per line, 0 <= t <= T, 0 <= u < v < n, any order)
// '#'-prefixed comment lines are allowed anywhere after the header.
inline SnapshotSequence parse_snapshots(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            return true;
        }
        return false;
    };
    if (!next_line() || line != "#dynsnap 1") throw ParseError(1, "expected header '#dynsnap 1'");
    long long n = -1, T = -1;
    for (long long* field : {&n, &T}) {
        if (!next_line()) throw ParseError(lineno + 1, "unexpected end of file in header");
        std::istringstream ls(line);
        std::string key;
        char extra;
        ls >> key >> *field;
        if (!ls || ls >> extra || key != (field == &n ? "n" : "T"))
            throw ParseError(lineno, std::string("expected '") + (field == &n ? "n" : "T") + " <int>'");
    }
    if (n < 1) throw ParseError(2, "n must be >= 1");
    if (T < 0) throw ParseError(3, "T must be >= 0");
    std::vector<std::vector<Edge>> edges(T + 1);
    while (next_line()) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long long t, u, v;
        char extra;
        if (!(ls >> t >> u >> v) || ls >> extra) throw ParseError(lineno, "malformed edge line, expected 't u v'");
        if (t < 0 || t > T) throw ParseError(lineno, "snapshot index t out of range");
        if (u < 0 || v >= n) throw ParseError(lineno, "node index out of range");
        if (u >= v) throw ParseError(lineno, "endpoints must satisfy u < v");
        edges[t].emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    try {
        return SnapshotSequence(static_cast<int>(n), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());  // duplicate edges surface here
    }
}

inline SnapshotSequence parse_snapshots(const std::string& text) {
    std::istringstream in(text);
    return parse_snapshots(in);
}

inline void render_snapshots(std::ostream& out, const SnapshotSequence& seq) {
    out << "#dynsnap 1\n"
        << "n " << seq.n << "\n"
        << "T " << seq.T() << "\n";
    for (int t = 0; t <= seq.T(); ++t)
        for (auto [u, v] : seq.edges[t]) out << t << ' ' << u << ' ' << v << '\n';
}

inline std::string render_snapshots(const SnapshotSequence& seq) {
    std::ostringstream out;
    render_snapshots(out, seq);
    return out.str();
}

// Partition files: one 'node group' integer pair per line.
inline Partition parse_partition(std::istream& in) {
    std::vector<std::pair<long long, long long>> entries;
    std::string line;
    int lineno = 0;
    long long max_group = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long long node, group;
        char extra;
        if (!(ls >> node >> group) || ls >> extra) throw ParseError(lineno, "expected 'node group'");
        if (node < 0 || group < 0) throw ParseError(lineno, "node and group must be nonnegative");
        entries.emplace_back(node, group);
        max_group = std::max(max_group, group);
    }
    if (entries.empty()) throw ParseError(lineno ? lineno : 1, "empty partition file");
    std::vector<int> g(entries.size(), -1);
    for (auto [node, group] : entries) {
        if (node >= static_cast<long long>(g.size())) throw ParseError(lineno, "node index exceeds node count");
        if (g[node] != -1) throw ParseError(lineno, "duplicate node " + std::to_string(node));
        g[node] = static_cast<int>(group);
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] == -1) throw ParseError(lineno, "missing assignment for node " + std::to_string(i));
    return Partition(static_cast<int>(max_group) + 1, std::move(g));
}

inline Partition parse_partition(const std::string& text) {
    std::istringstream in(text);
    return parse_partition(in);
}

inline void render_partition(std::ostream& out, const Partition& part) {
    for (int i = 0; i < part.n(); ++i) out << i << ' ' << part.g[i] << '\n';
}

// ---------------------------------------------------------------------------
// Parameter documents: one JSON object per fitted model, with diagnostics.

inline nlohmann::json er_to_json(const ErParams& p, int n, int T, double loglike) {
    return {{"model", "er"},
            {"n", n},
            {"T", T},
            {"alpha", p.alpha},
            {"beta", p.beta},
            {"loglike", loglike},
            {"iterations", p.iterations},
            {"flags",
             {{"alpha_identifiable", p.alpha_identifiable},
              {"beta_identifiable", p.beta_identifiable}}}};
}

inline nlohmann::json cl_to_json(const ClParams& p, int n, int T, double loglike) {
    return {{"model", "cl"},
            {"n", n},
            {"T", T},
            {"beta", p.beta},
            {"d", p.d},
            {"loglike", loglike},
            {"iterations", p.iterations},
            {"flags", {{"beta_identifiable", p.beta_identifiable}}}};
}

inline nlohmann::json dcsbm_to_json(const DcsbmParams& p, int n, int T, double loglike) {
    nlohmann::json omega = nlohmann::json::array(), beta = nlohmann::json::array(),
                   flags = nlohmann::json::array();
    for (int r = 0; r < p.k; ++r) {
        nlohmann::json orow = nlohmann::json::array(), brow = nlohmann::json::array(),
                       frow = nlohmann::json::array();
        for (int s = 0; s < p.k; ++s) {
            orow.push_back(p.omega_at(r, s));
            brow.push_back(p.beta_at(r, s));
            frow.push_back(static_cast<bool>(p.pair_identifiable[std::size_t(r) * p.k + s]));
        }
        omega.push_back(orow);
        beta.push_back(brow);
        flags.push_back(frow);
    }
    return {{"model", "dcsbm"}, {"n", n},         {"T", T},
            {"k", p.k},         {"g", p.part.g},  {"theta", p.theta},
            {"omega", omega},   {"beta", beta},   {"loglike", loglike},
            {"flags", {{"pair_identifiable", flags}}}};
}

inline ErParams er_from_json(const nlohmann::json& j) {
    ErParams p;
    p.alpha = j.at("alpha").get<double>();
    p.beta = j.at("beta").get<double>();
    if (j.contains("flags")) {
        p.alpha_identifiable = j["flags"].value("alpha_identifiable", true);
        p.beta_identifiable = j["flags"].value("beta_identifiable", true);
    }
    return p;
}

inline ClParams cl_from_json(const nlohmann::json& j) {
    ClParams p;
    p.beta = j.at("beta").get<double>();
    p.d = j.at("d").get<std::vector<double>>();
    if (j.contains("flags")) p.beta_identifiable = j["flags"].value("beta_identifiable", true);
    return p;
}

inline DcsbmParams dcsbm_from_json(const nlohmann::json& j) {
    DcsbmParams p;
    p.k = j.at("k").get<int>();
    p.part = Partition(p.k, j.at("g").get<std::vector<int>>());
    p.theta = j.at("theta").get<std::vector<double>>();
    p.omega.reserve(std::size_t(p.k) * p.k);
    p.beta.reserve(std::size_t(p.k) * p.k);
    for (const auto& row : j.at("omega")) for (const auto& x : row) p.omega.push_back(x.get<double>());
    for (const auto& row : j.at("beta")) for (const auto& x : row) p.beta.push_back(x.get<double>());
    if (static_cast<int>(p.omega.size()) != p.k * p.k || static_cast<int>(p.beta.size()) != p.k * p.k)
        throw std::invalid_argument("dcsbm params: omega/beta must be k x k");
    p.pair_identifiable.assign(std::size_t(p.k) * p.k, 1);
    return p;
}

// Benchmark CSV, rows in grid order; threshold emitted as a comment.
inline void render_benchmark_csv(std::ostream& out, const BenchmarkResult& result) {
    out << "# static_detectability_threshold_delta (reference) = "
        << std::setprecision(12) << result.threshold_delta << "\n";
    out << "delta,eta,T,rep,seed,nmi,status\n";
    for (const auto& row : result.rows) {
        out << std::setprecision(12) << row.delta << ',' << row.eta << ',' << row.T << ','
            << row.rep << ',' << row.seed << ',';
        if (row.ok) out << std::setprecision(12) << row.nmi << ",ok\n";
        else out << "nan,failed\n";
    }
}

}  // namespace dynet::io
