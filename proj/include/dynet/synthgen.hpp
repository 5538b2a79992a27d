#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dynet/dyn_dcsbm.hpp"
#include "dynet/metrics.hpp"
#include "dynet/rng.hpp"

namespace dynet {

// Planted-partition benchmark point: delta interpolates the community
// strength of the edge intensities, eta the group dependence of the edge
// dynamics.  Expected degree stays c for every node at every (delta, eta).
struct BenchmarkSpec {
    int n = 500;
    int k = 2;
    double c = 16.0;
    double delta = 0.0;
    double eta = 0.0;
    double beta_uniform = 0.4;
    double beta_in = 0.3;
    double beta_out = 0.5;
    std::vector<int> T_values = {0, 1, 2, 3, 4, 5};
    int reps = 30;
    int restarts = 5;
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1 || k < 1 || n % k != 0)
            throw std::invalid_argument("BenchmarkSpec: need equal-size groups (k divides n)");
        if (c <= 0 || c > static_cast<double>(n)) throw std::invalid_argument("BenchmarkSpec: infeasible mean degree");
        for (double x : {delta, eta, beta_uniform, beta_in, beta_out})
            if (x < 0.0 || x > 1.0) throw std::invalid_argument("BenchmarkSpec: probabilities must lie in [0,1]");
        if (reps < 1 || restarts < 1 || T_values.empty())
            throw std::invalid_argument("BenchmarkSpec: need reps, restarts, T values");
    }
};

inline Partition planted_partition(int n, int k) {
    std::vector<int> g(n);
    for (int i = 0; i < n; ++i) g[i] = i / (n / k);
    return Partition(k, std::move(g));
}

// omega = delta * omega_planted + (1-delta) * omega_random with
// omega_planted = diag(c n / k) and omega_random flat at c n / k^2; both have
// row sums c n / k, so expected degree is exactly c for every delta.
inline DcsbmParams benchmark_params(const BenchmarkSpec& spec) {
    spec.validate();
    DcsbmParams p;
    p.k = spec.k;
    p.part = planted_partition(spec.n, spec.k);
    p.theta.assign(spec.n, static_cast<double>(spec.k) / spec.n);
    p.omega.assign(std::size_t(spec.k) * spec.k, 0.0);
    p.beta.assign(std::size_t(spec.k) * spec.k, 0.0);
    p.pair_identifiable.assign(std::size_t(spec.k) * spec.k, 1);
    const double planted_diag = spec.c * spec.n / spec.k;
    const double random_flat = spec.c * spec.n / (spec.k * static_cast<double>(spec.k));
    for (int r = 0; r < spec.k; ++r)
        for (int s = 0; s < spec.k; ++s) {
            double planted_omega = (r == s) ? planted_diag : 0.0;
            double planted_beta = (r == s) ? spec.beta_in : spec.beta_out;
            p.omega[std::size_t(r) * spec.k + s] =
                spec.delta * planted_omega + (1.0 - spec.delta) * random_flat;
            p.beta[std::size_t(r) * spec.k + s] =
                spec.eta * planted_beta + (1.0 - spec.eta) * spec.beta_uniform;
        }
    return p;
}

// delta at which the planted intensities cross the static single-network
// detectability condition |c_in - c_out| = k sqrt(c) (external reference
// line, two groups in the standard setting).
inline double static_threshold_delta(const BenchmarkSpec& spec) {
    return std::min(1.0, spec.k * std::sqrt(spec.c) / spec.c);
}

struct BenchmarkRow {
    double delta = 0.0, eta = 0.0;
    int T = 0, rep = 0;
    std::uint64_t seed = 0;
    double nmi = 0.0;
    bool ok = false;
};

struct BenchmarkResult {
    std::vector<BenchmarkRow> rows;
    double threshold_delta = 0.0;
};

// Full replicate sweep over (delta, eta) grid points and T values.  Every row
// carries its own derived seed, so results are independent of scheduling.
inline BenchmarkResult run_benchmark(const BenchmarkSpec& base,
                                     const std::vector<std::pair<double, double>>& delta_eta_grid,
                                     int jobs = 1) {
    BenchmarkResult result;
    result.threshold_delta = static_threshold_delta(base);
    for (std::size_t p = 0; p < delta_eta_grid.size(); ++p)
        for (int T : base.T_values)
            for (int rep = 0; rep < base.reps; ++rep) {
                BenchmarkRow row;
                row.delta = delta_eta_grid[p].first;
                row.eta = delta_eta_grid[p].second;
                row.T = T;
                row.rep = rep;
                row.seed = splitmix64(base.seed ^ splitmix64(result.rows.size() + 1));
                result.rows.push_back(row);
            }

    Partition truth = planted_partition(base.n, base.k);
    auto run_row = [&](BenchmarkRow& row) {
        try {
            BenchmarkSpec spec = base;
            spec.delta = row.delta;
            spec.eta = row.eta;
            DcsbmParams params = benchmark_params(spec);
            SnapshotSequence seq = generate_dcsbm(base.n, row.T, params, row.seed);
            DcsbmFit fit = fit_dcsbm(seq, base.k, base.restarts, splitmix64(row.seed));
            row.nmi = nmi(fit.params.part, truth);
            row.ok = true;
        } catch (const std::exception&) {
            row.ok = false;  // recorded, not fatal: sweeps are long-running
        }
    };

    if (jobs <= 1) {
        for (auto& row : result.rows) run_row(row);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < result.rows.size(); i = next.fetch_add(1))
                    run_row(result.rows[i]);
            });
        for (auto& th : pool) th.join();
    }
    return result;
}

}  // namespace dynet
