#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dynet/dyn_cl.hpp"
#include "dynet/dyn_dcsbm.hpp"
#include "dynet/dyn_er.hpp"
#include "dynet/snapshots.hpp"

namespace dynet {

struct ContingencyTable {
    int ka = 0, kb = 0;
    std::vector<std::int64_t> counts;  // ka*kb row-major
    std::vector<std::int64_t> row_sums, col_sums;
    std::int64_t n = 0;

    ContingencyTable(const Partition& a, const Partition& b)
        : ka(a.k), kb(b.k), counts(std::size_t(a.k) * b.k, 0),
          row_sums(a.k, 0), col_sums(b.k, 0), n(a.n()) {
        if (a.n() != b.n()) throw std::invalid_argument("ContingencyTable: partition size mismatch");
        for (int i = 0; i < a.n(); ++i) {
            ++counts[std::size_t(a.g[i]) * kb + b.g[i]];
            ++row_sums[a.g[i]];
            ++col_sums[b.g[i]];
        }
    }
};

// Normalized mutual information, 2 I(A;B) / (H(A) + H(B)), natural logs.
inline double nmi(const Partition& a, const Partition& b) {
    ContingencyTable t(a, b);
    const double n = static_cast<double>(t.n);
    auto entropy = [&](const std::vector<std::int64_t>& sums) {
        double h = 0.0;
        for (auto c : sums)
            if (c > 0) h -= (c / n) * std::log(c / n);
        return h;
    };
    double ha = entropy(t.row_sums), hb = entropy(t.col_sums);
    if (ha + hb == 0.0) return 1.0;  // both partitions trivial, hence identical
    // accumulate cell terms in sorted order so the result is exactly
    // symmetric in (a, b) despite row-major vs column-major traversal
    std::vector<double> terms;
    for (int r = 0; r < t.ka; ++r)
        for (int s = 0; s < t.kb; ++s) {
            std::int64_t c = t.counts[std::size_t(r) * t.kb + s];
            if (c > 0)
                terms.push_back((c / n) * std::log(c * n / (double(t.row_sums[r]) * t.col_sums[s])));
        }
    std::sort(terms.begin(), terms.end());
    double info = std::accumulate(terms.begin(), terms.end(), 0.0);
    return 2.0 * info / (ha + hb);
}

// Fraction of misassigned nodes, minimized over group-label permutations.
inline double error_rate(const Partition& found, const Partition& truth) {
    if (found.n() != truth.n()) throw std::invalid_argument("error_rate: partition size mismatch");
    if (found.k != truth.k) throw std::invalid_argument("error_rate: group counts differ");
    if (found.k > 8) throw std::invalid_argument("error_rate: exact matching limited to k <= 8");
    ContingencyTable t(found, truth);
    std::vector<int> perm(found.k);
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t best = 0;
    do {
        std::int64_t agree = 0;
        for (int r = 0; r < found.k; ++r) agree += t.counts[std::size_t(r) * t.kb + perm[r]];
        best = std::max(best, agree);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return 1.0 - static_cast<double>(best) / static_cast<double>(t.n);
}

// ---------------------------------------------------------------------------
// Brute-force oracles.  Deliberately naive: dense per-pair evaluation with no
// sufficient statistics, used to certify the fast paths on small instances.

namespace oracle {

inline std::vector<std::vector<char>> dense_adjacency(const SnapshotSequence& seq, int t) {
    std::vector<std::vector<char>> a(seq.n, std::vector<char>(seq.n, 0));
    for (auto [u, v] : seq.edges[t]) a[u][v] = a[v][u] = 1;
    return a;
}

// log of the per-pair stationary + transition product for one pair history
// under generic (p_init of edge count, four transition probs) laws.
inline double dense_loglike_er(const SnapshotSequence& seq, const ErParams& params) {
    double p = params.stationary_p();
    std::vector<std::vector<std::vector<char>>> a;
    for (int t = 0; t <= seq.T(); ++t) a.push_back(dense_adjacency(seq, t));
    double L = 0.0;
    for (int i = 0; i < seq.n; ++i)
        for (int j = i + 1; j < seq.n; ++j) {
            L += a[0][i][j] ? std::log(p) : std::log(1.0 - p);
            for (int t = 1; t <= seq.T(); ++t) {
                bool was = a[t - 1][i][j], is = a[t][i][j];
                double prob = was ? (is ? 1.0 - params.beta : params.beta)
                                  : (is ? params.alpha : 1.0 - params.alpha);
                L += std::log(prob);
            }
        }
    return 2.0 * L;
}

// Ordered-pair Poisson-model likelihood: every ordered pair including the
// latent diagonal contributes its rate constant.
template <class NuOf, class BetaOf>
double dense_loglike_poisson(const SnapshotSequence& seq, NuOf&& nu_of, BetaOf&& beta_of) {
    std::vector<std::vector<std::vector<char>>> a;
    for (int t = 0; t <= seq.T(); ++t) a.push_back(dense_adjacency(seq, t));
    double L = 0.0;
    for (int i = 0; i < seq.n; ++i)
        for (int j = i + 1; j < seq.n; ++j) {
            double nu = nu_of(i, j), beta = beta_of(i, j);
            double pair = (a[0][i][j] ? xlogy(1.0, nu) : 0.0) - nu;
            for (int t = 1; t <= seq.T(); ++t) {
                bool was = a[t - 1][i][j], is = a[t][i][j];
                if (!was && !is) pair += -beta * nu;
                else if (!was && is) pair += xlogy(1.0, beta * nu) - beta * nu;
                else if (was && !is) pair += xlogy(1.0, beta) - beta * nu;
                else pair += xlogy(1.0, 1.0 - beta) - beta * nu;
            }
            L += 2.0 * pair;
        }
    for (int i = 0; i < seq.n; ++i) {
        double nu = nu_of(i, i), beta = beta_of(i, i);
        L -= nu * (1.0 + seq.T() * beta);  // always-absent latent self-pair
    }
    return L;
}

inline double dense_loglike_cl(const SnapshotSequence& seq, const ClParams& params) {
    double m = params.m();
    return dense_loglike_poisson(
        seq, [&](int i, int j) { return params.d[i] * params.d[j] / (2.0 * m); },
        [&](int, int) { return params.beta; });
}

inline double dense_loglike_dcsbm(const SnapshotSequence& seq, const DcsbmParams& params) {
    return dense_loglike_poisson(
        seq,
        [&](int i, int j) {
            return params.omega_at(params.part.g[i], params.part.g[j]) * params.theta[i] *
                   params.theta[j];
        },
        [&](int i, int j) { return params.beta_at(params.part.g[i], params.part.g[j]); });
}

// Grid search over (alpha, beta) maximizing loglike_er, refined once.
inline ErParams brute_force_fit_er(const SnapshotSequence& seq, int grid_resolution = 200) {
    TransitionCounts c = transition_counts(seq);
    double best_L = kNegInf;
    ErParams best;
    auto scan = [&](double alo, double ahi, double blo, double bhi) {
        for (int i = 0; i < grid_resolution; ++i)
            for (int j = 0; j < grid_resolution; ++j) {
                ErParams p;
                p.alpha = alo + (ahi - alo) * (i + 0.5) / grid_resolution;
                p.beta = blo + (bhi - blo) * (j + 0.5) / grid_resolution;
                double L = loglike_er(c, p);
                if (L > best_L) {
                    best_L = L;
                    best = p;
                }
            }
    };
    scan(0.0, 1.0, 0.0, 1.0);
    double cell = 1.0 / grid_resolution;
    ErParams coarse = best;
    scan(std::max(0.0, coarse.alpha - cell), std::min(1.0, coarse.alpha + cell),
         std::max(0.0, coarse.beta - cell), std::min(1.0, coarse.beta + cell));
    return best;
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// Chi-squared tail probability, used by statistical generator gates.

namespace stats {

inline double gammap(double a, double x);  // regularized lower incomplete gamma

inline double gammaq_cf(double a, double x) {
    // continued fraction, valid for x > a+1
    const int max_iter = 300;
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= max_iter; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-14) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

inline double gammap_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-14) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gammap(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gammap: bad arguments");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gammap_series(a, x) : 1.0 - gammaq_cf(a, x);
}

// P(X >= x) for X ~ chi-squared with dof degrees of freedom.
inline double chi2_survival(double x, double dof) {
    return 1.0 - gammap(dof / 2.0, x / 2.0);
}

// Two-sample chi-squared homogeneity test over category counts.
// Returns the p-value; categories empty in both samples are dropped.
inline double chi2_two_sample_pvalue(const std::vector<std::int64_t>& x,
                                     const std::vector<std::int64_t>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("chi2_two_sample: size mismatch");
    double nx = 0, ny = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        nx += static_cast<double>(x[i]);
        ny += static_cast<double>(y[i]);
    }
    if (nx == 0 || ny == 0) throw std::invalid_argument("chi2_two_sample: empty sample");
    double stat = 0.0;
    int dof = -1;
    double kx = std::sqrt(ny / nx), ky = std::sqrt(nx / ny);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double xi = static_cast<double>(x[i]), yi = static_cast<double>(y[i]);
        if (xi + yi == 0) continue;
        double d = kx * xi - ky * yi;
        stat += d * d / (xi + yi);
        ++dof;
    }
    if (dof < 1) return 1.0;
    return chi2_survival(stat, static_cast<double>(dof));
}

}  // namespace stats

}  // namespace dynet
