#pragma once

// Shared helpers for the test suites: random instances and dense reference
// scans kept independent of the library's merge-walk statistics path.

#include <random>
#include <vector>

#include "dynet/snapshots.hpp"

namespace testsupport {

using dynet::Edge;
using dynet::Partition;
using dynet::SnapshotSequence;

inline SnapshotSequence random_sequence(int n, int T, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::vector<std::vector<Edge>> snaps(T + 1);
    for (int t = 0; t <= T; ++t)
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng)) snaps[t].emplace_back(u, v);
    return SnapshotSequence(n, std::move(snaps));
}

// Correlated sequence: each pair persists with probability `stick`.
inline SnapshotSequence random_markov_sequence(int n, int T, double density, double stick,
                                               std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::vector<Edge>> snaps(T + 1);
    std::vector<char> state(std::size_t(n) * n, 0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool present = unif(rng) < density;
            if (present) snaps[0].emplace_back(u, v);
            for (int t = 1; t <= T; ++t) {
                if (unif(rng) >= stick) present = unif(rng) < density;
                if (present) snaps[t].emplace_back(u, v);
            }
        }
    return SnapshotSequence(n, std::move(snaps));
}

inline Partition random_partition(int n, int k, std::mt19937_64& rng) {
    std::vector<int> g(n);
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (int i = 0; i < n; ++i) g[i] = i < k ? i : pick(rng);  // no empty groups
    return Partition(k, std::move(g));
}

inline std::vector<std::vector<char>> dense(const SnapshotSequence& seq, int t) {
    std::vector<std::vector<char>> a(seq.n, std::vector<char>(seq.n, 0));
    for (auto [u, v] : seq.edges[t]) a[u][v] = a[v][u] = 1;
    return a;
}

struct DenseCounts {
    std::int64_t e0 = 0, n01 = 0, n10 = 0, n11 = 0, n00 = 0;
    std::vector<std::int64_t> s;
};

// O(n^2 T) reference scan.
inline DenseCounts dense_counts(const SnapshotSequence& seq) {
    DenseCounts c;
    c.s.assign(seq.n, 0);
    auto prev = dense(seq, 0);
    for (int u = 0; u < seq.n; ++u)
        for (int v = u + 1; v < seq.n; ++v)
            if (prev[u][v]) {
                ++c.e0;
                ++c.s[u];
                ++c.s[v];
            }
    for (int t = 1; t <= seq.T(); ++t) {
        auto curr = dense(seq, t);
        for (int u = 0; u < seq.n; ++u)
            for (int v = u + 1; v < seq.n; ++v) {
                if (prev[u][v] && curr[u][v]) ++c.n11;
                else if (prev[u][v]) ++c.n10;
                else if (curr[u][v]) {
                    ++c.n01;
                    ++c.s[u];
                    ++c.s[v];
                } else ++c.n00;
            }
        prev = std::move(curr);
    }
    return c;
}

// Dense ordered-pair grouped scan (delta_{r,g_i} delta_{s,g_j} sums).
struct DenseGrouped {
    int k;
    std::vector<std::int64_t> m0, m01, m10, m11, m00;
    explicit DenseGrouped(int k_)
        : k(k_), m0(std::size_t(k_) * k_, 0), m01(std::size_t(k_) * k_, 0),
          m10(std::size_t(k_) * k_, 0), m11(std::size_t(k_) * k_, 0), m00(std::size_t(k_) * k_, 0) {}
};

inline DenseGrouped dense_grouped(const SnapshotSequence& seq, const Partition& part) {
    DenseGrouped g(part.k);
    auto cell = [&](std::vector<std::int64_t>& m, int i, int j) -> std::int64_t& {
        return m[std::size_t(part.g[i]) * part.k + part.g[j]];
    };
    auto prev = dense(seq, 0);
    for (int i = 0; i < seq.n; ++i)
        for (int j = 0; j < seq.n; ++j)
            if (i != j && prev[i][j]) ++cell(g.m0, i, j);
    for (int t = 1; t <= seq.T(); ++t) {
        auto curr = dense(seq, t);
        for (int i = 0; i < seq.n; ++i)
            for (int j = 0; j < seq.n; ++j) {
                if (i == j) continue;
                if (prev[i][j] && curr[i][j]) ++cell(g.m11, i, j);
                else if (prev[i][j]) ++cell(g.m10, i, j);
                else if (curr[i][j]) ++cell(g.m01, i, j);
                else ++cell(g.m00, i, j);
            }
        prev = std::move(curr);
    }
    return g;
}

}  // namespace testsupport
