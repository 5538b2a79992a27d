#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dynet/dyn_er.hpp"
#include "dynet/rng.hpp"
#include "dynet/snapshots.hpp"

namespace dynet {

struct ClParams {
    std::vector<double> d;  // per-node expected degree
    double beta = 0.0;      // per-step edge disappearance probability
    bool beta_identifiable = true;
    int iterations = 0;
    double residual = 0.0;

    double m() const { return 0.5 * std::accumulate(d.begin(), d.end(), 0.0); }
};

struct PairTransitionProbs {
    double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
};

// One-step occupancy transition probabilities of the per-pair
// immigration-death chain, restricted to the binary observation {0, >=1}.
inline PairTransitionProbs cl_transition_probs(double di, double dj, double m, double beta) {
    if (m <= 0.0) throw std::invalid_argument("cl_transition_probs: m must be > 0");
    double omega = di * dj / (2.0 * m);
    double decay = std::exp(-beta * omega);
    return {decay, beta * omega * decay, beta * decay, (1.0 - beta) * decay};
}

namespace detail {

// Exact one-step update of the latent edge-multiplicity chain: binomial
// survival of existing edges plus Poisson immigration.  Preserves the
// Poisson(nu) stationary law exactly.
template <class Rng>
int multiplicity_step(int k, double nu, double beta, Rng& rng) {
    if (beta == 0.0) return k;
    if (beta == 1.0) return std::poisson_distribution<int>(nu)(rng);
    int survivors = k > 0 ? std::binomial_distribution<int>(k, 1.0 - beta)(rng) : 0;
    return survivors + std::poisson_distribution<int>(beta * nu)(rng);
}

}  // namespace detail

// Latent multiplicities are tracked exactly and clamped to binary only at
// emission.  Pairs with d_i d_j = 0 are skipped.
inline SnapshotSequence generate_cl(int n, int T, const ClParams& params, std::uint64_t seed) {
    if (n < 1 || T < 0) throw std::invalid_argument("generate_cl: need n >= 1, T >= 0");
    if (static_cast<int>(params.d.size()) != n) throw std::invalid_argument("generate_cl: d must have n entries");
    if (params.beta < 0.0 || params.beta > 1.0) throw std::invalid_argument("generate_cl: beta must lie in [0,1]");
    double m = params.m();
    std::vector<std::vector<Edge>> snaps(T + 1);
    if (m == 0.0) return SnapshotSequence(n, std::move(snaps));  // empty stationary model
    for (int u = 0; u < n; ++u) {
        if (params.d[u] == 0.0) continue;
        for (int v = u + 1; v < n; ++v) {
            double nu = params.d[u] * params.d[v] / (2.0 * m);
            if (nu == 0.0) continue;
            auto rng = pair_rng(seed, u, v);
            int k = std::poisson_distribution<int>(nu)(rng);
            if (k >= 1) snaps[0].emplace_back(u, v);
            for (int t = 1; t <= T; ++t) {
                k = detail::multiplicity_step(k, nu, params.beta, rng);
                if (k >= 1) snaps[t].emplace_back(u, v);
            }
        }
    }
    return SnapshotSequence(n, std::move(snaps));
}

// Log-likelihood over ordered pairs, matching the Poisson form that carries a
// latent rate term for every ordered pair including the diagonal (the model
// formally permits self-loops; observed data never contain them, so diagonal
// terms contribute only their rate constants).
inline double loglike_cl(const SnapshotSequence& seq, const ClParams& params) {
    if (static_cast<int>(params.d.size()) != seq.n)
        throw std::invalid_argument("loglike_cl: d must have n entries");
    double m = params.m();
    if (m <= 0.0) throw std::invalid_argument("loglike_cl: m must be > 0");
    TransitionCounts c = transition_counts(seq);
    auto s = node_appearance_sums(seq);
    double L = 0.0;
    for (int i = 0; i < seq.n; ++i) {
        if (s[i] > 0 && params.d[i] == 0.0) return kNegInf;
        L += xlogy(static_cast<double>(s[i]), params.d[i]);
    }
    L -= static_cast<double>(c.e0 + c.n01) * std::log(2.0 * m);
    L += xlogy(static_cast<double>(c.n01 + c.n10), params.beta);
    L += xlogy(static_cast<double>(c.n11), 1.0 - params.beta);
    if ((c.n01 + c.n10 > 0 && params.beta == 0.0) || (c.n11 > 0 && params.beta == 1.0)) return kNegInf;
    L -= m * (1.0 + seq.T() * params.beta);
    return 2.0 * L;
}

// Root in [0,1] of  mT b^2 - (mT + n01 + n10 + n11) b + (n01 + n10) = 0.
// The bracketing f(0) >= 0, f(1) <= 0 guarantees existence; the smaller root
// is the likelihood maximizer.
inline double solve_beta_quadratic(double mT, std::int64_t n01, std::int64_t n10, std::int64_t n11) {
    if (mT < 0 || n01 < 0 || n10 < 0 || n11 < 0)
        throw std::invalid_argument("solve_beta_quadratic: inputs must be nonnegative");
    double appear = static_cast<double>(n01 + n10);
    double persist = static_cast<double>(n11);
    if (mT == 0.0 && appear == 0.0 && persist == 0.0)
        throw FitError("solve_beta_quadratic: all-zero inputs, beta unidentifiable");
    if (mT == 0.0) return appear / (appear + persist);
    double b = mT + appear + persist;
    double disc = b * b - 4.0 * mT * appear;
    if (disc < 0.0) disc = 0.0;  // double root, guard rounding
    return 2.0 * appear / (b + std::sqrt(disc));
}

// Alternates the degree and beta estimating equations to their joint fixed
// point; at convergence sum_i d_i = 2m holds by construction.
inline ClParams fit_cl(const SnapshotSequence& seq, double tol = 1e-12, int max_iter = 10000) {
    if (seq.T() < 1) throw FitError("fit_cl: need at least two snapshots (T >= 1)");
    TransitionCounts c = transition_counts(seq);
    auto s = node_appearance_sums(seq);
    ClParams est;
    est.d.assign(seq.n, 0.0);
    const double T = static_cast<double>(seq.T());
    const double observed = static_cast<double>(c.e0 + c.n01);
    if (observed == 0.0) {
        est.beta_identifiable = false;  // no edge observed anywhere
        return est;
    }
    double beta = (c.n10 + c.n11) > 0
                      ? static_cast<double>(c.n10) / static_cast<double>(c.n10 + c.n11)
                      : 0.5;
    double change = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        double m = observed / (1.0 + T * beta);
        double next = solve_beta_quadratic(T * m, c.n01, c.n10, c.n11);
        change = std::abs(next - beta);
        beta = next;
        est.iterations = it;
        if (change < tol) break;
    }
    est.residual = change;
    if (change >= tol) throw FitError("fit_cl: no convergence");
    est.beta = beta;
    for (int i = 0; i < seq.n; ++i) est.d[i] = static_cast<double>(s[i]) / (1.0 + T * beta);
    return est;
}

}  // namespace dynet
