#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dynet {

using Edge = std::pair<int, int>;  // canonical: first < second

// A sequence of T+1 simple undirected graphs on a fixed node set.
// Edge lists are kept sorted so consecutive snapshots can be compared by a
// single merge pass.
struct SnapshotSequence {
    int n = 0;
    std::vector<std::vector<Edge>> edges;  // edges[t], t = 0..T

    SnapshotSequence() = default;
    SnapshotSequence(int n_, std::vector<std::vector<Edge>> edges_)
        : n(n_), edges(std::move(edges_)) {
        if (n < 1) throw std::invalid_argument("SnapshotSequence: n must be >= 1");
        if (edges.empty()) throw std::invalid_argument("SnapshotSequence: need at least the t=0 snapshot");
        for (auto& snap : edges) {
            std::sort(snap.begin(), snap.end());
            for (std::size_t i = 0; i < snap.size(); ++i) {
                auto [u, v] = snap[i];
                if (u < 0 || v >= n) throw std::invalid_argument("SnapshotSequence: endpoint out of range");
                if (u >= v) throw std::invalid_argument("SnapshotSequence: edges must satisfy u < v, no self-loops");
                if (i > 0 && snap[i - 1] == snap[i])
                    throw std::invalid_argument("SnapshotSequence: duplicate edge within a snapshot");
            }
        }
    }

    int T() const { return static_cast<int>(edges.size()) - 1; }
    std::int64_t pairs_total() const { return static_cast<std::int64_t>(n) * (n - 1) / 2; }

    bool operator==(const SnapshotSequence& o) const { return n == o.n && edges == o.edges; }
};

// Global sufficient statistics in unordered-pair convention.
struct TransitionCounts {
    std::int64_t pairs_total = 0;
    std::int64_t e0 = 0;   // edges at t=0
    std::int64_t n01 = 0;  // appearances
    std::int64_t n10 = 0;  // disappearances
    std::int64_t n11 = 0;  // persistences
    std::int64_t n00 = 0;  // joint absences
};

// Node-to-group assignment with group-size bookkeeping.
struct Partition {
    int k = 0;
    std::vector<int> g;
    std::vector<int> sizes;

    Partition() = default;
    Partition(int k_, std::vector<int> g_) : k(k_), g(std::move(g_)), sizes(k_, 0) {
        if (k < 1) throw std::invalid_argument("Partition: k must be >= 1");
        for (int gi : g) {
            if (gi < 0 || gi >= k) throw std::invalid_argument("Partition: group label out of range");
            ++sizes[gi];
        }
    }

    int n() const { return static_cast<int>(g.size()); }
    bool operator==(const Partition& o) const { return k == o.k && g == o.g; }
};

// Per-group-pair statistics in ordered convention: entry (r,s) counts each
// within-group event twice on the diagonal and each cross-group event once in
// (r,s) and once in (s,r), so folding a matrix gives 2x the global count.
struct GroupedTransitionCounts {
    int k = 0;
    std::vector<std::int64_t> m0, m01, m10, m11, m00;  // k*k, row-major

    explicit GroupedTransitionCounts(int k_ = 0)
        : k(k_), m0(std::size_t(k_) * k_, 0), m01(std::size_t(k_) * k_, 0),
          m10(std::size_t(k_) * k_, 0), m11(std::size_t(k_) * k_, 0), m00(std::size_t(k_) * k_, 0) {}

    std::int64_t& at(std::vector<std::int64_t>& m, int r, int s) { return m[std::size_t(r) * k + s]; }
    std::int64_t at(const std::vector<std::int64_t>& m, int r, int s) const { return m[std::size_t(r) * k + s]; }

    bool operator==(const GroupedTransitionCounts& o) const {
        return k == o.k && m0 == o.m0 && m01 == o.m01 && m10 == o.m10 && m11 == o.m11 && m00 == o.m00;
    }
};

namespace detail {

// Merge-walk two sorted snapshots, invoking f(edge, was_present, is_present)
// for every pair present in at least one of them.
template <class F>
void walk_step(const std::vector<Edge>& prev, const std::vector<Edge>& curr, F&& f) {
    std::size_t a = 0, b = 0;
    while (a < prev.size() || b < curr.size()) {
        if (b == curr.size() || (a < prev.size() && prev[a] < curr[b])) {
            f(prev[a], true, false);
            ++a;
        } else if (a == prev.size() || curr[b] < prev[a]) {
            f(curr[b], false, true);
            ++b;
        } else {
            f(prev[a], true, true);
            ++a;
            ++b;
        }
    }
}

}  // namespace detail

inline TransitionCounts transition_counts(const SnapshotSequence& seq) {
    TransitionCounts c;
    c.pairs_total = seq.pairs_total();
    c.e0 = static_cast<std::int64_t>(seq.edges[0].size());
    for (int t = 1; t <= seq.T(); ++t) {
        detail::walk_step(seq.edges[t - 1], seq.edges[t], [&](Edge, bool was, bool is) {
            if (was && is) ++c.n11;
            else if (was) ++c.n10;
            else ++c.n01;
        });
    }
    c.n00 = static_cast<std::int64_t>(seq.T()) * c.pairs_total - c.n01 - c.n10 - c.n11;
    return c;
}

// s_i = degree at t=0 plus the number of edge appearances incident on i.
inline std::vector<std::int64_t> node_appearance_sums(const SnapshotSequence& seq) {
    std::vector<std::int64_t> s(seq.n, 0);
    for (auto [u, v] : seq.edges[0]) {
        ++s[u];
        ++s[v];
    }
    for (int t = 1; t <= seq.T(); ++t) {
        detail::walk_step(seq.edges[t - 1], seq.edges[t], [&](Edge e, bool was, bool is) {
            if (!was && is) {
                ++s[e.first];
                ++s[e.second];
            }
        });
    }
    return s;
}

// Event totals for one node pair across the whole sequence.
struct PairEvents {
    std::int64_t c0 = 0, c01 = 0, c10 = 0, c11 = 0;
    bool any() const { return c0 | c01 | c10 | c11; }
};

// Per-node index of all pairs with at least one event; built once in
// O(total events log n), then single-node queries are O(events of that node).
struct PairEventIndex {
    std::vector<std::vector<std::pair<int, PairEvents>>> incident;  // per node: (neighbor, events)

    explicit PairEventIndex(const SnapshotSequence& seq) : incident(seq.n) {
        std::vector<std::pair<Edge, int>> tagged;  // (pair, event tag 0/1/2/3)
        for (auto e : seq.edges[0]) tagged.emplace_back(e, 0);
        for (int t = 1; t <= seq.T(); ++t) {
            detail::walk_step(seq.edges[t - 1], seq.edges[t], [&](Edge e, bool was, bool is) {
                tagged.emplace_back(e, was ? (is ? 3 : 2) : 1);
            });
        }
        std::sort(tagged.begin(), tagged.end());
        std::size_t i = 0;
        while (i < tagged.size()) {
            Edge e = tagged[i].first;
            PairEvents ev;
            for (; i < tagged.size() && tagged[i].first == e; ++i) {
                switch (tagged[i].second) {
                    case 0: ++ev.c0; break;
                    case 1: ++ev.c01; break;
                    case 2: ++ev.c10; break;
                    case 3: ++ev.c11; break;
                }
            }
            incident[e.first].emplace_back(e.second, ev);
            incident[e.second].emplace_back(e.first, ev);
        }
    }
};

namespace detail {

inline void fill_absent_steps(GroupedTransitionCounts& c, const Partition& part, int T) {
    for (int r = 0; r < c.k; ++r)
        for (int s = 0; s < c.k; ++s) {
            std::int64_t pairs = static_cast<std::int64_t>(part.sizes[r]) * part.sizes[s];
            if (r == s) pairs -= part.sizes[r];
            c.at(c.m00, r, s) =
                T * pairs - c.at(c.m01, r, s) - c.at(c.m10, r, s) - c.at(c.m11, r, s);
        }
}

}  // namespace detail

inline GroupedTransitionCounts grouped_transition_counts(const SnapshotSequence& seq,
                                                         const Partition& part) {
    if (part.n() != seq.n) throw std::invalid_argument("grouped_transition_counts: partition size mismatch");
    GroupedTransitionCounts c(part.k);
    auto add = [&](std::vector<std::int64_t>& m, Edge e, std::int64_t w) {
        int r = part.g[e.first], s = part.g[e.second];
        c.at(m, r, s) += w;
        c.at(m, s, r) += w;
    };
    for (auto e : seq.edges[0]) add(c.m0, e, 1);
    for (int t = 1; t <= seq.T(); ++t) {
        detail::walk_step(seq.edges[t - 1], seq.edges[t], [&](Edge e, bool was, bool is) {
            if (was && is) add(c.m11, e, 1);
            else if (was) add(c.m10, e, 1);
            else add(c.m01, e, 1);
        });
    }
    detail::fill_absent_steps(c, part, seq.T());
    return c;
}

// Counts after moving `node` to `new_group`, computed incrementally from the
// node's event list.  Identical to recomputing grouped_transition_counts on
// the moved partition.
inline GroupedTransitionCounts move_delta(const GroupedTransitionCounts& counts,
                                          const PairEventIndex& index, const Partition& part,
                                          int node, int new_group, int T) {
    int old_group = part.g[node];
    if (new_group == old_group) throw std::invalid_argument("move_delta: node already in target group");
    if (new_group < 0 || new_group >= part.k) throw std::invalid_argument("move_delta: group out of range");
    if (part.sizes[old_group] <= 1) throw std::invalid_argument("move_delta: move would empty source group");

    GroupedTransitionCounts c = counts;
    auto shift = [&](std::vector<std::int64_t>& m, int s, std::int64_t w) {
        if (w == 0) return;
        c.at(m, old_group, s) -= w;
        c.at(m, s, old_group) -= w;
        c.at(m, new_group, s) += w;
        c.at(m, s, new_group) += w;
    };
    for (auto& [j, ev] : index.incident[node]) {
        int s = part.g[j];
        shift(c.m0, s, ev.c0);
        shift(c.m01, s, ev.c01);
        shift(c.m10, s, ev.c10);
        shift(c.m11, s, ev.c11);
    }
    Partition moved = part;
    --moved.sizes[old_group];
    ++moved.sizes[new_group];
    moved.g[node] = new_group;
    detail::fill_absent_steps(c, moved, T);
    return c;
}

inline GroupedTransitionCounts move_delta(const GroupedTransitionCounts& counts,
                                          const SnapshotSequence& seq, const Partition& part,
                                          int node, int new_group) {
    return move_delta(counts, PairEventIndex(seq), part, node, new_group, seq.T());
}

}  // namespace dynet
