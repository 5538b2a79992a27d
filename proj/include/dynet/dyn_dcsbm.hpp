#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dynet/dyn_cl.hpp"
#include "dynet/dyn_er.hpp"
#include "dynet/rng.hpp"
#include "dynet/snapshots.hpp"

namespace dynet {

struct DcsbmParams {
    int k = 0;
    Partition part;
    std::vector<double> theta;           // per node, sums to 1 within each group
    std::vector<double> omega;           // k*k, ordered-pair edge intensity
    std::vector<double> beta;            // k*k, per-step disappearance probability
    std::vector<char> pair_identifiable; // k*k, false where a group pair had no events

    double omega_at(int r, int s) const { return omega[std::size_t(r) * k + s]; }
    double beta_at(int r, int s) const { return beta[std::size_t(r) * k + s]; }
};

inline PairTransitionProbs dcsbm_transition_probs(double theta_i, double theta_j,
                                                  double omega_rs, double beta_rs) {
    double nu = omega_rs * theta_i * theta_j;
    double decay = std::exp(-beta_rs * nu);
    return {decay, beta_rs * nu * decay, beta_rs * decay, (1.0 - beta_rs) * decay};
}

inline SnapshotSequence generate_dcsbm(int n, int T, const DcsbmParams& params, std::uint64_t seed) {
    if (n < 1 || T < 0) throw std::invalid_argument("generate_dcsbm: need n >= 1, T >= 0");
    if (params.part.n() != n || static_cast<int>(params.theta.size()) != n ||
        static_cast<int>(params.omega.size()) != params.k * params.k ||
        static_cast<int>(params.beta.size()) != params.k * params.k)
        throw std::invalid_argument("generate_dcsbm: parameter shape mismatch");
    std::vector<std::vector<Edge>> snaps(T + 1);
    for (int u = 0; u < n; ++u) {
        if (params.theta[u] == 0.0) continue;
        for (int v = u + 1; v < n; ++v) {
            int r = params.part.g[u], s = params.part.g[v];
            double nu = params.omega_at(r, s) * params.theta[u] * params.theta[v];
            if (nu == 0.0) continue;
            double beta = params.beta_at(r, s);
            auto rng = pair_rng(seed, u, v);
            int m = std::poisson_distribution<int>(nu)(rng);
            if (m >= 1) snaps[0].emplace_back(u, v);
            for (int t = 1; t <= T; ++t) {
                m = detail::multiplicity_step(m, nu, beta, rng);
                if (m >= 1) snaps[t].emplace_back(u, v);
            }
        }
    }
    return SnapshotSequence(n, std::move(snaps));
}

namespace detail {

struct GroupPairFit {
    double omega = 0.0;
    double beta = 0.0;
    bool identifiable = true;
};

// Self-consistent (omega, beta) for one group pair from its ordered counts.
// The two equations decouple across group pairs given the counts.
inline GroupPairFit solve_group_pair(std::int64_t m0, std::int64_t m01, std::int64_t m10,
                                     std::int64_t m11, int T, double beta_warm = 0.0,
                                     double tol = 1e-13, int max_iter = 200) {
    GroupPairFit f;
    if (m0 + m01 + m10 + m11 == 0) {
        f.identifiable = false;  // zero events: omega = beta = 0 by convention
        return f;
    }
    if (T == 0) {
        f.omega = static_cast<double>(m0);
        f.identifiable = false;  // beta unobservable without transitions
        return f;
    }
    double beta = beta_warm;
    for (int it = 0; it < max_iter; ++it) {
        f.omega = static_cast<double>(m0 + m01) / (1.0 + T * beta);
        double next = solve_beta_quadratic(T * f.omega, m01, m10, m11);
        double change = std::abs(next - beta);
        beta = next;
        if (change < tol) break;
    }
    f.beta = beta;
    f.omega = static_cast<double>(m0 + m01) / (1.0 + T * beta);
    return f;
}

// Group-assignment-dependent likelihood contribution of one group pair.
inline double group_pair_term(std::int64_t m0, std::int64_t m01, std::int64_t m10,
                              std::int64_t m11, const GroupPairFit& f) {
    return xlogy(static_cast<double>(m0), f.omega) +
           xlogy(static_cast<double>(m01), f.beta * f.omega) +
           xlogy(static_cast<double>(m10), f.beta) +
           xlogy(static_cast<double>(m11), 1.0 - f.beta);
}

}  // namespace detail

// Closed-form maximum-likelihood parameters for a fixed partition.  The
// returned theta sums to 1 within every group automatically.
inline DcsbmParams estimate_given_groups(const SnapshotSequence& seq, const Partition& part) {
    GroupedTransitionCounts c = grouped_transition_counts(seq, part);
    auto s = node_appearance_sums(seq);
    const int k = part.k;
    DcsbmParams p;
    p.k = k;
    p.part = part;
    p.omega.assign(std::size_t(k) * k, 0.0);
    p.beta.assign(std::size_t(k) * k, 0.0);
    p.pair_identifiable.assign(std::size_t(k) * k, 1);
    for (int r = 0; r < k; ++r)
        for (int s2 = r; s2 < k; ++s2) {
            auto f = detail::solve_group_pair(c.at(c.m0, r, s2), c.at(c.m01, r, s2),
                                              c.at(c.m10, r, s2), c.at(c.m11, r, s2), seq.T());
            for (auto [x, y] : {std::pair{r, s2}, std::pair{s2, r}}) {
                p.omega[std::size_t(x) * k + y] = f.omega;
                p.beta[std::size_t(x) * k + y] = f.beta;
                p.pair_identifiable[std::size_t(x) * k + y] = f.identifiable;
            }
        }
    // theta_i = s_i / sum_s (1 + T beta_rs) omega_rs, and the denominator
    // equals the row sum of m0 + m01 at the self-consistent estimates.
    std::vector<double> row(k, 0.0);
    for (int r = 0; r < k; ++r)
        for (int s2 = 0; s2 < k; ++s2) row[r] += static_cast<double>(c.at(c.m0, r, s2) + c.at(c.m01, r, s2));
    p.theta.assign(seq.n, 0.0);
    for (int i = 0; i < seq.n; ++i) {
        int r = part.g[i];
        // event-free group: uniform theta keeps the in-group normalization
        p.theta[i] = row[r] > 0.0 ? static_cast<double>(s[i]) / row[r] : 1.0 / part.sizes[r];
    }
    return p;
}

inline std::vector<double> expected_degrees(const DcsbmParams& params) {
    std::vector<double> d(params.part.n(), 0.0);
    for (int i = 0; i < params.part.n(); ++i) {
        double w = 0.0;
        for (int r = 0; r < params.k; ++r) w += params.omega_at(params.part.g[i], r);
        d[i] = params.theta[i] * w;
    }
    return d;
}

// Profile log-likelihood: the likelihood at the closed-form parameter
// estimates, dropping the term sum_rs (1+T beta_rs) omega_rs, which equals
// sum_rs [m_rs(0) + m_rs(0->1)] at the estimates and is therefore independent
// of the group assignment.
inline double profile_loglike(const SnapshotSequence& seq, const Partition& part) {
    GroupedTransitionCounts c = grouped_transition_counts(seq, part);
    auto s = node_appearance_sums(seq);
    const int k = part.k;
    double L = 0.0;
    for (int i = 0; i < seq.n; ++i) L += 2.0 * xlogy(static_cast<double>(s[i]), static_cast<double>(s[i]));
    for (int r = 0; r < k; ++r) {
        double row = 0.0;
        for (int s2 = 0; s2 < k; ++s2) row += static_cast<double>(c.at(c.m0, r, s2) + c.at(c.m01, r, s2));
        L -= 2.0 * xlogy(row, row);
    }
    for (int r = 0; r < k; ++r)
        for (int s2 = r; s2 < k; ++s2) {
            auto f = detail::solve_group_pair(c.at(c.m0, r, s2), c.at(c.m01, r, s2),
                                              c.at(c.m10, r, s2), c.at(c.m11, r, s2), seq.T());
            double w = (r == s2) ? 1.0 : 2.0;
            L += w * detail::group_pair_term(c.at(c.m0, r, s2), c.at(c.m01, r, s2),
                                            c.at(c.m10, r, s2), c.at(c.m11, r, s2), f);
        }
    return L;
}

// Full log-likelihood at arbitrary parameters, ordered-pair convention with
// latent diagonal rate terms (matches the dense per-pair oracle).
inline double dcsbm_loglike(const SnapshotSequence& seq, const DcsbmParams& params) {
    if (params.part.n() != seq.n) throw std::invalid_argument("dcsbm_loglike: shape mismatch");
    GroupedTransitionCounts c = grouped_transition_counts(seq, params.part);
    auto s = node_appearance_sums(seq);
    const int k = params.k;
    double L = 0.0;
    for (int i = 0; i < seq.n; ++i) {
        if (s[i] > 0 && params.theta[i] == 0.0) return kNegInf;
        L += 2.0 * xlogy(static_cast<double>(s[i]), params.theta[i]);
    }
    std::vector<double> group_theta(k, 0.0);
    for (int i = 0; i < seq.n; ++i) group_theta[params.part.g[i]] += params.theta[i];
    const double T = static_cast<double>(seq.T());
    for (int r = 0; r < k; ++r)
        for (int s2 = 0; s2 < k; ++s2) {
            double w = params.omega_at(r, s2), b = params.beta_at(r, s2);
            L += xlogy(static_cast<double>(c.at(c.m0, r, s2)), w);
            L += xlogy(static_cast<double>(c.at(c.m01, r, s2)), b * w);
            L += xlogy(static_cast<double>(c.at(c.m10, r, s2)), b);
            L += xlogy(static_cast<double>(c.at(c.m11, r, s2)), 1.0 - b);
            L -= (1.0 + T * b) * w * group_theta[r] * group_theta[s2];
        }
    return L;
}

namespace detail {

// Incremental profile-likelihood state for the single-move heuristic.  Keeps
// the grouped count matrices, per-node per-group event aggregates, and warm
// starts for the group-pair solves, so one candidate move costs O(k) pair
// re-estimations instead of a full recount.
class ProfileEngine {
  public:
    ProfileEngine(const SnapshotSequence& seq, int k)
        : n_(seq.n), k_(k), T_(seq.T()), index_(seq), s_(node_appearance_sums(seq)) {
        sv_ce_.assign(n_, 0);
        for (int v = 0; v < n_; ++v)
            for (auto& [j, ev] : index_.incident[v]) sv_ce_[v] += ev.c0 + ev.c01;
        const_term_ = 0.0;
        for (int i = 0; i < n_; ++i)
            const_term_ += 2.0 * xlogy(static_cast<double>(s_[i]), static_cast<double>(s_[i]));
    }

    void reset(const Partition& part) {
        part_ = part;
        m0_.assign(cells(), 0);
        m01_.assign(cells(), 0);
        m10_.assign(cells(), 0);
        m11_.assign(cells(), 0);
        agg_.assign(std::size_t(n_) * k_, PairEvents{});
        for (int v = 0; v < n_; ++v)
            for (auto& [j, ev] : index_.incident[v]) {
                if (j < v) continue;  // each unordered pair once
                add_pair(v, j, ev, +1);
            }
        for (int v = 0; v < n_; ++v)
            for (auto& [j, ev] : index_.incident[v]) {
                auto& a = agg_[std::size_t(v) * k_ + part_.g[j]];
                a.c0 += ev.c0;
                a.c01 += ev.c01;
                a.c10 += ev.c10;
                a.c11 += ev.c11;
            }
        rows_.assign(k_, 0);
        for (int r = 0; r < k_; ++r)
            for (int s = 0; s < k_; ++s) rows_[r] += m0_[cell(r, s)] + m01_[cell(r, s)];
        fits_.assign(cells(), GroupPairFit{});
        terms_.assign(cells(), 0.0);
        for (int r = 0; r < k_; ++r)
            for (int s = r; s < k_; ++s) refresh_cell(r, s);
    }

    const Partition& partition() const { return part_; }

    double loglike() const {
        double L = const_term_;
        for (int r = 0; r < k_; ++r) L -= 2.0 * xlogy(static_cast<double>(rows_[r]), static_cast<double>(rows_[r]));
        for (int r = 0; r < k_; ++r)
            for (int s = r; s < k_; ++s) L += (r == s ? 1.0 : 2.0) * terms_[cell(r, s)];
        return L;
    }

    // Profile-likelihood change if `v` moved to group `to`; no state change.
    double move_gain(int v, int to) {
        int from = part_.g[v];
        scratch_deltas(v, from, to);
        double gain = 0.0;
        double dr = static_cast<double>(rows_[from]), dn = static_cast<double>(rows_[to]);
        double sv = static_cast<double>(sv_ce_[v]);
        gain -= 2.0 * (xlogy(dr - sv, dr - sv) - xlogy(dr, dr));
        gain -= 2.0 * (xlogy(dn + sv, dn + sv) - xlogy(dn, dn));
        for (auto [r, s] : affected_) {
            std::size_t idx = cell(r, s);
            auto f = solve_group_pair(m0_[idx] + d0_[idx], m01_[idx] + d01_[idx],
                                      m10_[idx] + d10_[idx], m11_[idx] + d11_[idx], T_,
                                      fits_[idx].beta);
            double t = group_pair_term(m0_[idx] + d0_[idx], m01_[idx] + d01_[idx],
                                       m10_[idx] + d10_[idx], m11_[idx] + d11_[idx], f);
            gain += (r == s ? 1.0 : 2.0) * (t - terms_[idx]);
        }
        return gain;
    }

    void apply_move(int v, int to) {
        int from = part_.g[v];
        scratch_deltas(v, from, to);
        for (auto [r, s] : affected_) {
            std::size_t idx = cell(r, s);
            m0_[idx] += d0_[idx];
            m01_[idx] += d01_[idx];
            m10_[idx] += d10_[idx];
            m11_[idx] += d11_[idx];
            if (r != s) {
                std::size_t m = cell(s, r);
                m0_[m] = m0_[idx];
                m01_[m] = m01_[idx];
                m10_[m] = m10_[idx];
                m11_[m] = m11_[idx];
            }
        }
        rows_[from] -= sv_ce_[v];
        rows_[to] += sv_ce_[v];
        for (auto& [j, ev] : index_.incident[v]) {
            auto& af = agg_[std::size_t(j) * k_ + from];
            auto& at = agg_[std::size_t(j) * k_ + to];
            af.c0 -= ev.c0;
            af.c01 -= ev.c01;
            af.c10 -= ev.c10;
            af.c11 -= ev.c11;
            at.c0 += ev.c0;
            at.c01 += ev.c01;
            at.c10 += ev.c10;
            at.c11 += ev.c11;
        }
        --part_.sizes[from];
        ++part_.sizes[to];
        part_.g[v] = to;
        for (auto [r, s] : affected_) refresh_cell(r, s);
    }

  private:
    std::size_t cells() const { return std::size_t(k_) * k_; }
    std::size_t cell(int r, int s) const { return std::size_t(r) * k_ + s; }

    void add_pair(int u, int v, const PairEvents& ev, std::int64_t w) {
        int r = part_.g[u], s = part_.g[v];
        for (auto [x, y] : {std::pair{r, s}, std::pair{s, r}}) {
            m0_[cell(x, y)] += w * ev.c0;
            m01_[cell(x, y)] += w * ev.c01;
            m10_[cell(x, y)] += w * ev.c10;
            m11_[cell(x, y)] += w * ev.c11;
        }
    }

    void refresh_cell(int r, int s) {
        std::size_t idx = cell(r, s);
        fits_[idx] = solve_group_pair(m0_[idx], m01_[idx], m10_[idx], m11_[idx], T_,
                                      fits_[idx].beta);
        terms_[idx] = group_pair_term(m0_[idx], m01_[idx], m10_[idx], m11_[idx], fits_[idx]);
        if (r != s) {
            fits_[cell(s, r)] = fits_[idx];
            terms_[cell(s, r)] = terms_[idx];
        }
    }

    // Count deltas over the canonical (r <= s) cells touched by moving v.
    void scratch_deltas(int v, int from, int to) {
        affected_.clear();
        if (d0_.size() != cells()) {
            d0_.assign(cells(), 0);
            d01_.assign(cells(), 0);
            d10_.assign(cells(), 0);
            d11_.assign(cells(), 0);
        }
        for (int s = 0; s < k_; ++s) {
            int a = std::min(from, s), b = std::max(from, s);
            int c = std::min(to, s), d = std::max(to, s);
            push_affected(a, b);
            push_affected(c, d);
        }
        for (int s = 0; s < k_; ++s) {
            const auto& a = agg_[std::size_t(v) * k_ + s];
            if (!a.any()) continue;
            // ordered-convention shift of pair (v in `from` -> `to`, neighbor in s)
            apply_shift(from, s, a, -1);
            apply_shift(to, s, a, +1);
        }
    }

    void push_affected(int r, int s) {
        for (auto [a, b] : affected_)
            if (a == r && b == s) return;
        affected_.emplace_back(r, s);
        std::size_t idx = cell(r, s);
        d0_[idx] = d01_[idx] = d10_[idx] = d11_[idx] = 0;
    }

    void apply_shift(int grp, int s, const PairEvents& a, std::int64_t sign) {
        // ordered cells (grp,s) and (s,grp) each take the full weight; with
        // canonical storage that is 2x on the diagonal, 1x per off-diag cell.
        std::int64_t w = (grp == s) ? 2 * sign : sign;
        std::size_t idx = cell(std::min(grp, s), std::max(grp, s));
        d0_[idx] += w * a.c0;
        d01_[idx] += w * a.c01;
        d10_[idx] += w * a.c10;
        d11_[idx] += w * a.c11;
    }

    int n_, k_, T_;
    PairEventIndex index_;
    std::vector<std::int64_t> s_, sv_ce_;
    double const_term_ = 0.0;
    Partition part_;
    std::vector<std::int64_t> m0_, m01_, m10_, m11_, rows_;
    std::vector<PairEvents> agg_;
    std::vector<GroupPairFit> fits_;
    std::vector<double> terms_;
    std::vector<std::int64_t> d0_, d01_, d10_, d11_;
    std::vector<std::pair<int, int>> affected_;
};

inline Partition random_partition(int n, int k, std::mt19937_64& rng) {
    // every group gets at least one node
    std::vector<int> g(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (int i = 0; i < n; ++i) g[order[i]] = i < k ? i : pick(rng);
    return Partition(k, std::move(g));
}

struct SweepResult {
    double best_loglike;
    bool improved;
};

// One pass of the single-move heuristic: every node moved exactly once (best
// available move each step, empty-group moves excluded), then revert to the
// best state passed through.
inline SweepResult kl_sweep(ProfileEngine& eng, int n, int k, double start_loglike) {
    std::vector<char> moved(n, 0);
    std::vector<std::pair<int, int>> trail;  // (node, from-group)
    trail.reserve(n);
    double current = start_loglike;
    double best = start_loglike;
    std::size_t best_prefix = 0;
    for (int step = 0; step < n; ++step) {
        double best_gain = 0.0;
        int best_node = -1, best_target = -1;
        bool found = false;
        for (int v = 0; v < n; ++v) {
            if (moved[v]) continue;
            int from = eng.partition().g[v];
            if (eng.partition().sizes[from] <= 1) continue;
            for (int to = 0; to < k; ++to) {
                if (to == from) continue;
                double gain = eng.move_gain(v, to);
                if (!found || gain > best_gain) {
                    found = true;
                    best_gain = gain;
                    best_node = v;
                    best_target = to;
                }
            }
        }
        if (!found) break;  // every remaining node is pinned by the empty-group rule
        int from = eng.partition().g[best_node];
        eng.apply_move(best_node, best_target);
        moved[best_node] = 1;
        trail.emplace_back(best_node, from);
        current += best_gain;
        if (current > best) {
            best = current;
            best_prefix = trail.size();
        }
    }
    // revert everything after the best prefix
    for (std::size_t i = trail.size(); i > best_prefix; --i)
        eng.apply_move(trail[i - 1].first, trail[i - 1].second);
    return {best, best > start_loglike + 1e-9 * (1.0 + std::abs(start_loglike))};
}

}  // namespace detail

struct DcsbmFit {
    DcsbmParams params;
    double profile_loglike = 0.0;
    int best_restart = 0;
};

// Kernighan-Lin-style maximization of the profile likelihood over group
// assignments, with independent random restarts.
inline DcsbmFit fit_dcsbm(const SnapshotSequence& seq, int k, int restarts, std::uint64_t seed) {
    if (k < 1 || k > seq.n) throw std::invalid_argument("fit_dcsbm: need 1 <= k <= n");
    if (restarts < 1) throw std::invalid_argument("fit_dcsbm: need restarts >= 1");
    detail::ProfileEngine eng(seq, k);
    double best_L = kNegInf;
    Partition best_part;
    int best_restart = 0;
    for (int r = 0; r < restarts; ++r) {
        auto rng = stream_rng(seed, static_cast<std::uint64_t>(r));
        eng.reset(detail::random_partition(seq.n, k, rng));
        double L = eng.loglike();
        while (true) {
            auto res = detail::kl_sweep(eng, seq.n, k, L);
            L = res.best_loglike;
            if (!res.improved) break;
        }
        L = eng.loglike();  // re-sync against incremental drift
        if (L > best_L) {
            best_L = L;
            best_part = eng.partition();
            best_restart = r;
        }
    }
    DcsbmFit fit;
    fit.params = estimate_given_groups(seq, best_part);
    fit.profile_loglike = profile_loglike(seq, best_part);
    fit.best_restart = best_restart;
    return fit;
}

}  // namespace dynet
