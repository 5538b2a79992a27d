#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "dynet/rng.hpp"
#include "dynet/snapshots.hpp"

namespace dynet {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// x*log(y) with the 0*log 0 = 0 convention; -inf when x > 0 and y == 0.
inline double xlogy(double x, double y) {
    if (x == 0.0) return 0.0;
    return x * std::log(y);
}

struct ErParams {
    double alpha = 0.0;  // per-step appearance probability
    double beta = 0.0;   // per-step disappearance probability
    bool alpha_identifiable = true;
    bool beta_identifiable = true;
    int iterations = 0;
    double residual = 0.0;

    double stationary_p() const {
        if (alpha + beta <= 0.0) throw std::domain_error("ErParams: alpha + beta must be > 0 for stationary p");
        return alpha / (alpha + beta);
    }
};

// Stationary start, then an independent two-state Markov chain per pair.
inline SnapshotSequence generate_er(int n, int T, const ErParams& params, std::uint64_t seed) {
    if (n < 1 || T < 0) throw std::invalid_argument("generate_er: need n >= 1, T >= 0");
    if (params.alpha < 0 || params.alpha > 1 || params.beta < 0 || params.beta > 1)
        throw std::invalid_argument("generate_er: alpha, beta must lie in [0,1]");
    double p = params.stationary_p();
    std::vector<std::vector<Edge>> snaps(T + 1);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            auto rng = pair_rng(seed, u, v);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            bool present = unif(rng) < p;
            if (present) snaps[0].emplace_back(u, v);
            for (int t = 1; t <= T; ++t) {
                present = present ? unif(rng) >= params.beta : unif(rng) < params.alpha;
                if (present) snaps[t].emplace_back(u, v);
            }
        }
    return SnapshotSequence(n, std::move(snaps));
}

// Log-likelihood over ordered pairs (twice the unordered-pair sum).
// Zero-probability observations yield -inf.
inline double loglike_er(const TransitionCounts& c, const ErParams& params) {
    double p = params.stationary_p();
    double L = xlogy(c.e0, p) + xlogy(c.pairs_total - c.e0, 1.0 - p) +
               xlogy(c.n01, params.alpha) + xlogy(c.n00, 1.0 - params.alpha) +
               xlogy(c.n10, params.beta) + xlogy(c.n11, 1.0 - params.beta);
    return 2.0 * L;
}

inline double loglike_er(const SnapshotSequence& seq, const ErParams& params) {
    return loglike_er(transition_counts(seq), params);
}

class FitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Self-consistent solution of the coupled (alpha, beta) estimating equations,
// iterated from the naive transition-frequency initialization.
inline ErParams fit_er(const TransitionCounts& c, int T, double tol = 1e-12, int max_iter = 10000) {
    if (T < 1) throw FitError("fit_er: rates are unidentifiable with a single snapshot (T = 0)");
    ErParams est;
    est.alpha_identifiable = (c.n01 + c.n00) > 0;
    est.beta_identifiable = (c.n10 + c.n11) > 0;
    const double P = static_cast<double>(c.pairs_total);

    if (!est.alpha_identifiable && !est.beta_identifiable)
        throw FitError("fit_er: no observed pair steps");
    if (!est.beta_identifiable) {
        // No pair ever present at a step start; with T >= 1 this forces e0 = 0
        // and hence p-hat = 0, so alpha reduces to its naive estimate.
        est.beta = 0.0;
        est.alpha = static_cast<double>(c.n01) / static_cast<double>(c.n01 + c.n00);
        return est;
    }
    if (!est.alpha_identifiable) {
        // Mirror case: every pair present at every step start, p-hat = 1.
        est.alpha = 0.0;
        est.beta = static_cast<double>(c.n10) / static_cast<double>(c.n10 + c.n11);
        return est;
    }

    double alpha = static_cast<double>(c.n01) / static_cast<double>(c.n01 + c.n00);
    double beta = static_cast<double>(c.n10) / static_cast<double>(c.n10 + c.n11);
    if (alpha + beta == 0.0) {
        // Frozen network with both edge and non-edge steps observed: the
        // boundary fit alpha = beta = 0 (stationary p is then undefined).
        est.alpha = 0.0;
        est.beta = 0.0;
        return est;
    }
    auto clamp01 = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };
    auto rates_at = [&](double p, double& a, double& b) {
        double excess = static_cast<double>(c.e0) - p * P;  // may be negative at small T
        a = clamp01((excess + c.n01) / (excess + c.n01 + c.n00));
        b = clamp01((-excess + c.n10) / (-excess + c.n10 + c.n11));
    };
    double change = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        double na, nb;
        rates_at(alpha / (alpha + beta), na, nb);
        change = std::max(std::abs(na - alpha), std::abs(nb - beta));
        alpha = na;
        beta = nb;
        est.iterations = it;
        if (change < tol) break;
    }
    if (change >= tol) {
        // The substitution map can contract arbitrarily slowly; fall back to
        // bisection on the one-dimensional residual g(p) = F(p) - p, where F
        // folds the rate updates back into a stationary density.  F maps
        // [0,1] into itself, so a bracketing root always exists.
        auto g = [&](double p) {
            double a, b;
            rates_at(p, a, b);
            return a + b > 0.0 ? a / (a + b) - p : 0.0;
        };
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (g(mid) >= 0.0 ? lo : hi) = mid;
            ++est.iterations;
        }
        rates_at(0.5 * (lo + hi), alpha, beta);
        double na, nb;
        rates_at(alpha / (alpha + beta), na, nb);
        change = std::max(std::abs(na - alpha), std::abs(nb - beta));
    }
    est.residual = change;
    if (change >= tol)
        throw FitError("fit_er: no convergence after " + std::to_string(est.iterations) +
                       " iterations (last change " + std::to_string(change) + ")");
    est.alpha = alpha;
    est.beta = beta;
    return est;
}

inline ErParams fit_er(const SnapshotSequence& seq, double tol = 1e-12, int max_iter = 10000) {
    return fit_er(transition_counts(seq), seq.T(), tol, max_iter);
}

}  // namespace dynet
