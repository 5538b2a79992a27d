// Acceptance gate: one pass/fail line per criterion.  Run with no arguments
// for the full gate, or pass criterion numbers to run a subset.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dynet/cli.hpp"
#include "dynet/dyn_cl.hpp"
#include "dynet/dyn_dcsbm.hpp"
#include "dynet/dyn_er.hpp"
#include "dynet/io.hpp"
#include "dynet/metrics.hpp"
#include "dynet/synthgen.hpp"

using namespace dynet;

namespace {

struct Failure {
    std::string detail;
};

std::vector<std::string> notes;

void note(const std::string& s) { notes.push_back(s); }

double rel_diff(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) / scale;
}

SnapshotSequence random_instance(std::mt19937_64& rng, int max_n, int max_t, double density) {
    int n = 5 + int(rng() % (max_n - 4));
    int T = int(rng() % (max_t + 1));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::vector<Edge>> snaps(T + 1);
    std::vector<char> state(std::size_t(n) * n, 0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool present = unif(rng) < density;
            if (present) snaps[0].emplace_back(u, v);
            for (int t = 1; t <= T; ++t) {
                if (unif(rng) >= 0.5) present = unif(rng) < density;
                if (present) snaps[t].emplace_back(u, v);
            }
        }
    return SnapshotSequence(n, std::move(snaps));
}

Partition random_groups(int n, int k, std::mt19937_64& rng) {
    std::vector<int> g(n);
    for (int i = 0; i < n; ++i) g[i] = i < k ? i : int(rng() % k);
    return Partition(k, std::move(g));
}

// -------------------------------------------------------------------------
// 1. Fast likelihoods vs the dense per-pair oracle.

void criterion1() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    std::uniform_real_distribution<double> dpick(0.3, 4.0);
    for (int rep = 0; rep < 50; ++rep) {
        auto seq = random_instance(rng, 30, 3, 0.2);

        ErParams er{unif(rng), unif(rng)};
        if (rel_diff(loglike_er(seq, er), oracle::dense_loglike_er(seq, er)) > 1e-10)
            throw Failure{"er likelihood mismatch at instance " + std::to_string(rep)};

        ClParams cl;
        cl.d.resize(seq.n);
        for (auto& d : cl.d) d = dpick(rng);
        cl.beta = unif(rng);
        if (rel_diff(loglike_cl(seq, cl), oracle::dense_loglike_cl(seq, cl)) > 1e-10)
            throw Failure{"cl likelihood mismatch at instance " + std::to_string(rep)};

        int k = 1 + int(rng() % 3);
        auto part = random_groups(seq.n, k, rng);
        auto dc = estimate_given_groups(seq, part);
        if (rel_diff(dcsbm_loglike(seq, dc), oracle::dense_loglike_dcsbm(seq, dc)) > 1e-10)
            throw Failure{"dcsbm likelihood mismatch at instance " + std::to_string(rep)};
    }
}

// -------------------------------------------------------------------------
// 2. Finite-difference stationarity at interior fits.

void check_deriv(double plus, double minus, double h, double scale, const std::string& what) {
    double deriv = (plus - minus) / (2.0 * h);
    if (std::abs(deriv) > 1e-4 * scale)
        throw Failure{what + ": |dL| = " + std::to_string(std::abs(deriv)) +
                      " exceeds 1e-4 * " + std::to_string(scale)};
}

void criterion2() {
    const double h = 1e-5;
    // fit_er
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto seq = generate_er(120, 8, ErParams{0.04 + 0.02 * seed, 0.5 - 0.04 * seed}, seed);
        auto c = transition_counts(seq);
        auto est = fit_er(seq, 1e-13);
        if (!est.alpha_identifiable || !est.beta_identifiable) continue;
        if (est.alpha <= h || est.alpha >= 1 - h || est.beta <= h || est.beta >= 1 - h) continue;
        double scale = std::abs(loglike_er(c, est));
        auto at = [&](double a, double b) { return loglike_er(c, ErParams{a, b}); };
        check_deriv(at(est.alpha + h, est.beta), at(est.alpha - h, est.beta), h, scale, "er alpha");
        check_deriv(at(est.alpha, est.beta + h), at(est.alpha, est.beta - h), h, scale, "er beta");
    }
    // fit_cl
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ClParams truth;
        truth.d.assign(100, 0.0);
        for (int i = 0; i < 100; ++i) truth.d[i] = 2.0 + 0.2 * (i % 20);
        truth.beta = 0.2 + 0.1 * seed;
        auto seq = generate_cl(100, 8, truth, seed);
        auto est = fit_cl(seq, 1e-13);
        if (!est.beta_identifiable || est.beta <= h || est.beta >= 1 - h) continue;
        double scale = std::abs(loglike_cl(seq, est));
        {
            ClParams p = est, m = est;
            p.beta += h;
            m.beta -= h;
            check_deriv(loglike_cl(seq, p), loglike_cl(seq, m), h, scale, "cl beta");
        }
        for (int i = 0; i < 100; i += 17) {
            if (est.d[i] <= h) continue;
            ClParams p = est, m = est;
            p.d[i] += h;
            m.d[i] -= h;
            check_deriv(loglike_cl(seq, p), loglike_cl(seq, m), h, scale,
                        "cl d[" + std::to_string(i) + "]");
        }
    }
    // estimate_given_groups
    std::mt19937_64 rng(202);
    for (int rep = 0; rep < 5; ++rep) {
        auto seq = random_instance(rng, 60, 3, 0.15);
        if (seq.T() < 1) continue;
        int k = 2 + int(rng() % 2);
        auto part = random_groups(seq.n, k, rng);
        auto est = estimate_given_groups(seq, part);
        double scale = std::abs(dcsbm_loglike(seq, est));
        auto s = node_appearance_sums(seq);
        for (int i = 0; i < seq.n; i += std::max(1, seq.n / 7)) {
            if (s[i] == 0 || est.theta[i] <= h) continue;
            DcsbmParams p = est, m = est;
            p.theta[i] += h;
            m.theta[i] -= h;
            check_deriv(dcsbm_loglike(seq, p), dcsbm_loglike(seq, m), h, scale,
                        "dcsbm theta[" + std::to_string(i) + "]");
        }
        for (int r = 0; r < k; ++r)
            for (int s2 = r; s2 < k; ++s2) {
                std::size_t idx = std::size_t(r) * k + s2, mirror = std::size_t(s2) * k + r;
                if (!est.pair_identifiable[idx]) continue;
                if (est.omega[idx] > h) {
                    DcsbmParams p = est, m = est;
                    p.omega[idx] += h;
                    p.omega[mirror] = p.omega[idx];
                    m.omega[idx] -= h;
                    m.omega[mirror] = m.omega[idx];
                    check_deriv(dcsbm_loglike(seq, p), dcsbm_loglike(seq, m), h, scale, "dcsbm omega");
                }
                if (est.beta[idx] > h && est.beta[idx] < 1 - h) {
                    DcsbmParams p = est, m = est;
                    p.beta[idx] += h;
                    p.beta[mirror] = p.beta[idx];
                    m.beta[idx] -= h;
                    m.beta[mirror] = m.beta[idx];
                    check_deriv(dcsbm_loglike(seq, p), dcsbm_loglike(seq, m), h, scale, "dcsbm beta");
                }
            }
    }
}

// -------------------------------------------------------------------------
// 3. ER parameter recovery at n=500.

void criterion3() {
    const double alpha = 0.05, beta = 0.30;
    double sum_da = 0.0, sum_db = 0.0;
    const int seeds = 30;
    for (int s = 0; s < seeds; ++s) {
        auto seq = generate_er(500, 10, ErParams{alpha, beta}, 3000 + s);
        auto est = fit_er(seq);
        sum_da += std::abs(est.alpha - alpha);
        sum_db += std::abs(est.beta - beta);
    }
    double mda = sum_da / seeds, mdb = sum_db / seeds;
    note("criterion 3: mean |da| = " + std::to_string(mda) + ", mean |db| = " + std::to_string(mdb));
    if (mda >= 0.003) throw Failure{"mean alpha error " + std::to_string(mda) + " >= 0.003"};
    if (mdb >= 0.01) throw Failure{"mean beta error " + std::to_string(mdb) + " >= 0.01"};
}

// -------------------------------------------------------------------------
// 4. CL recovery: beta and degree regression slope.

void criterion4() {
    const int n = 500;
    ClParams truth;
    truth.d.assign(n, 0.0);
    for (int i = 0; i < n; ++i) truth.d[i] = 2.0 + 38.0 * i / (n - 1.0);
    truth.beta = 0.3;
    double sum_db = 0.0, sum_slope = 0.0;
    const int seeds = 30;
    for (int s = 0; s < seeds; ++s) {
        auto seq = generate_cl(n, 10, truth, 4000 + s);
        auto est = fit_cl(seq);
        sum_db += std::abs(est.beta - truth.beta);
        double num = 0, den = 0;
        for (int i = 0; i < n; ++i) {
            num += est.d[i] * truth.d[i];
            den += truth.d[i] * truth.d[i];
        }
        sum_slope += num / den;
    }
    double mdb = sum_db / seeds, slope = sum_slope / seeds;
    note("criterion 4: mean |dbeta| = " + std::to_string(mdb) + ", mean slope = " + std::to_string(slope));
    if (mdb >= 0.02) throw Failure{"mean beta error " + std::to_string(mdb) + " >= 0.02"};
    if (slope < 0.95 || slope > 1.05) throw Failure{"degree slope " + std::to_string(slope) + " outside [0.95, 1.05]"};
}

// -------------------------------------------------------------------------
// 5. Beta quadratic: residual, range, and 1-D grid maximization.

void criterion5() {
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> mpick(0.0, 2000.0);
    for (int rep = 0; rep < 1000; ++rep) {
        double mT = mpick(rng);
        std::int64_t n01 = std::int64_t(rng() % 3000), n10 = std::int64_t(rng() % 3000),
                     n11 = std::int64_t(rng() % 3000);
        if (mT == 0.0 && n01 + n10 + n11 == 0) continue;
        double b = solve_beta_quadratic(mT, n01, n10, n11);
        if (b < 0.0 || b > 1.0) throw Failure{"root outside [0,1] at rep " + std::to_string(rep)};
        double appear = double(n01 + n10);
        double resid = mT * b * b - (mT + appear + double(n11)) * b + appear;
        double scale = std::max({mT, appear, double(n11), 1.0});
        if (std::abs(resid) > 1e-12 * scale)
            throw Failure{"residual " + std::to_string(std::abs(resid) / scale) + " at rep " + std::to_string(rep)};
        if (rep % 20 == 0) {
            // 1-D likelihood in beta with omega eliminated:
            //   L(b) = (n01 + n10) log b + n11 log(1-b) - mT b
            auto L = [&](double x) {
                return xlogy(appear, x) + xlogy(double(n11), 1.0 - x) - mT * x;
            };
            double best = 0.0, bestL = L(0.0);
            const int grid = 1000000;
            for (int i = 1; i <= grid; ++i) {
                double x = double(i) / grid;
                double v = L(x);
                if (v > bestL) {
                    bestL = v;
                    best = x;
                }
            }
            if (std::abs(best - b) > 2e-6)
                throw Failure{"grid argmax " + std::to_string(best) + " != root " + std::to_string(b)};
        }
    }
}

// -------------------------------------------------------------------------
// 6. Theta group normalization.

void criterion6() {
    std::mt19937_64 rng(606);
    for (int rep = 0; rep < 100; ++rep) {
        auto seq = random_instance(rng, 50, 3, 0.15);
        int k = 1 + int(rng() % 4);
        auto part = random_groups(seq.n, k, rng);
        auto est = estimate_given_groups(seq, part);
        std::vector<double> sums(k, 0.0);
        for (int i = 0; i < seq.n; ++i) sums[part.g[i]] += est.theta[i];
        for (int r = 0; r < k; ++r)
            if (std::abs(sums[r] - 1.0) > 1e-10)
                throw Failure{"group " + std::to_string(r) + " theta sum " + std::to_string(sums[r]) +
                              " at rep " + std::to_string(rep)};
    }
}

// -------------------------------------------------------------------------
// 7. Generator stationarity: degree histograms at t=0 vs t=T.

std::vector<std::int64_t> degree_histogram(const SnapshotSequence& seq, int t, int bins) {
    std::vector<int> deg(seq.n, 0);
    for (auto [u, v] : seq.edges[t]) {
        ++deg[u];
        ++deg[v];
    }
    std::vector<std::int64_t> h(bins, 0);
    for (int d : deg) ++h[std::min(d, bins - 1)];
    return h;
}

void criterion7() {
    const int n = 200, T = 50, seeds = 30, bins = 24;
    auto accumulate = [&](std::vector<std::int64_t>& into, const std::vector<std::int64_t>& h) {
        for (int i = 0; i < bins; ++i) into[i] += h[i];
    };
    auto run_model = [&](const char* name, auto&& gen) {
        std::vector<std::int64_t> h0(bins, 0), hT(bins, 0);
        for (int s = 0; s < seeds; ++s) {
            SnapshotSequence seq = gen(std::uint64_t(7000 + s));
            accumulate(h0, degree_histogram(seq, 0, bins));
            accumulate(hT, degree_histogram(seq, T, bins));
        }
        double p = stats::chi2_two_sample_pvalue(h0, hT);
        note(std::string("criterion 7: ") + name + " p-value = " + std::to_string(p));
        if (p < 0.001) throw Failure{std::string(name) + " stationarity p-value " + std::to_string(p)};
    };
    run_model("er", [&](std::uint64_t s) { return generate_er(n, T, ErParams{0.05, 0.30}, s); });
    ClParams cl;
    cl.d.assign(n, 0.0);
    for (int i = 0; i < n; ++i) cl.d[i] = 3.0 + 9.0 * (i % 50) / 49.0;
    cl.beta = 0.4;
    run_model("cl", [&](std::uint64_t s) { return generate_cl(n, T, cl, s); });
    BenchmarkSpec spec;
    spec.n = n;
    spec.c = 8.0;
    spec.delta = 0.6;
    spec.eta = 0.5;
    auto dc = benchmark_params(spec);
    run_model("dcsbm", [&](std::uint64_t s) { return generate_dcsbm(n, T, dc, s); });
}

// -------------------------------------------------------------------------
// 8. Planted-partition detectability panels.

struct Curve {
    std::vector<int> T;
    std::vector<double> mean, se;
};

Curve column_stats(const BenchmarkResult& res) {
    Curve c;
    for (const auto& row : res.rows) {
        if (!row.ok) throw Failure{"benchmark row failed (T=" + std::to_string(row.T) + ")"};
        if (c.T.empty() || c.T.back() != row.T) {
            c.T.push_back(row.T);
            c.mean.push_back(0.0);
            c.se.push_back(0.0);
        }
    }
    std::vector<int> count(c.T.size(), 0);
    for (const auto& row : res.rows) {
        std::size_t i = 0;
        while (c.T[i] != row.T) ++i;
        c.mean[i] += row.nmi;
        ++count[i];
    }
    for (std::size_t i = 0; i < c.T.size(); ++i) c.mean[i] /= count[i];
    for (const auto& row : res.rows) {
        std::size_t i = 0;
        while (c.T[i] != row.T) ++i;
        double d = row.nmi - c.mean[i];
        c.se[i] += d * d;
    }
    for (std::size_t i = 0; i < c.T.size(); ++i)
        c.se[i] = std::sqrt(c.se[i] / (count[i] * std::max(1, count[i] - 1)));
    return c;
}

void check_monotone(const Curve& c, const std::string& what) {
    for (std::size_t i = 0; i + 1 < c.T.size(); ++i) {
        double slack = 2.0 * std::sqrt(c.se[i] * c.se[i] + c.se[i + 1] * c.se[i + 1]);
        if (c.mean[i + 1] < c.mean[i] - slack)
            throw Failure{what + ": mean NMI drops from " + std::to_string(c.mean[i]) + " (T=" +
                          std::to_string(c.T[i]) + ") to " + std::to_string(c.mean[i + 1]) +
                          " beyond 2 SE"};
    }
}

Curve run_column(double delta, double eta, const std::vector<int>& T_values, int restarts,
                 const BenchmarkSpec& base, std::uint64_t seed) {
    BenchmarkSpec s = base;
    s.T_values = T_values;
    s.restarts = restarts;
    s.seed = seed;
    auto res = run_benchmark(s, {{delta, eta}});
    return column_stats(res);
}

std::string curve_str(const Curve& c) {
    std::ostringstream out;
    out.precision(3);
    for (std::size_t i = 0; i < c.T.size(); ++i)
        out << (i ? " " : "") << "T" << c.T[i] << "=" << std::fixed << c.mean[i];
    return out.str();
}

void criterion8() {
    const std::vector<int> allT = {0, 1, 2, 3, 4, 5};
    // panel (a): eta = 0, beta_uniform = 0.4, varying delta
    {
        BenchmarkSpec base;  // n=500, k=2, c=16, reps=30, beta_uniform=0.4
        const double probe_delta = 0.30;  // below the static threshold 0.5

        auto flat = run_column(0.0, 0.0, allT, 3, base, 81);
        note("criterion 8a delta=0: " + curve_str(flat));
        for (double m : flat.mean)
            if (m >= 0.05) throw Failure{"panel a: mean NMI " + std::to_string(m) + " >= 0.05 at delta=0"};
        check_monotone(flat, "panel a delta=0");

        auto probe = run_column(probe_delta, 0.0, allT, 5, base, 82);
        note("criterion 8a delta=0.3: " + curve_str(probe));
        check_monotone(probe, "panel a delta=0.3");
        if (probe.mean.front() >= 0.5)
            throw Failure{"panel a: static curve already above 0.5 at the probe delta"};
        if (probe.mean.back() <= 0.5)
            throw Failure{"panel a: T=5 mean " + std::to_string(probe.mean.back()) +
                          " <= 0.5 at delta below the static 0.5-crossing"};

        auto easy = run_column(1.0, 0.0, allT, 15, base, 83);
        note("criterion 8a delta=1: " + curve_str(easy));
        for (double m : easy.mean)
            if (m < 1.0 - 1e-9) throw Failure{"panel a: mean NMI " + std::to_string(m) + " != 1 at delta=1"};
    }
    // panel (b): eta = 1, beta_in = 0.3, beta_out = 0.5
    {
        BenchmarkSpec base;
        base.beta_in = 0.3;
        base.beta_out = 0.5;
        auto c = run_column(0.30, 1.0, {0, 5}, 5, base, 84);
        note("criterion 8b delta=0.3: " + curve_str(c));
        if (c.mean.front() >= 0.1)
            throw Failure{"panel b: T=0 mean " + std::to_string(c.mean.front()) + " >= 0.1"};
        if (c.mean.back() <= 0.5)
            throw Failure{"panel b: T=5 mean " + std::to_string(c.mean.back()) + " <= 0.5"};
    }
    // panel (c): delta = 0, beta_in = 0, beta_out = 0.8
    {
        BenchmarkSpec base;
        base.beta_in = 0.0;
        base.beta_out = 0.8;
        auto off = run_column(0.0, 0.0, allT, 3, base, 85);
        note("criterion 8c eta=0: " + curve_str(off));
        for (double m : off.mean)
            if (m >= 0.05) throw Failure{"panel c: mean NMI " + std::to_string(m) + " >= 0.05 at eta=0"};

        auto on = run_column(0.0, 1.0, allT, 5, base, 86);
        note("criterion 8c eta=1: " + curve_str(on));
        if (on.mean.front() >= 0.05)
            throw Failure{"panel c: T=0 mean " + std::to_string(on.mean.front()) + " >= 0.05 at eta=1"};
        if (on.mean.back() <= 0.8)
            throw Failure{"panel c: T=5 mean " + std::to_string(on.mean.back()) + " <= 0.8 at eta=1"};
        check_monotone(on, "panel c eta=1");
    }
}

// -------------------------------------------------------------------------
// 9. Exhaustive small-instance optimality.

void criterion9() {
    std::mt19937_64 rng(909);
    int matched = 0;
    const int instances = 50;
    for (int rep = 0; rep < instances; ++rep) {
        int n = 8 + int(rng() % 5);  // 8..12
        int T = 1 + int(rng() % 2);
        // correlated instance with mild planted structure so optima are nontrivial
        BenchmarkSpec spec;
        spec.n = n % 2 == 0 ? n : n - 1;
        n = spec.n;
        spec.c = 3.0;
        spec.delta = 0.6;
        spec.eta = 0.5;
        auto seq = generate_dcsbm(n, T, benchmark_params(spec), rng());
        // exhaustive search over bipartitions with both sides nonempty
        double best = kNegInf;
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            std::vector<int> g(n);
            for (int i = 0; i < n; ++i) g[i] = (mask >> i) & 1;
            best = std::max(best, profile_loglike(seq, Partition(2, std::move(g))));
        }
        auto fit = fit_dcsbm(seq, 2, 20, rng());
        if (fit.profile_loglike >= best - 1e-9 * (1.0 + std::abs(best))) ++matched;
    }
    note("criterion 9: " + std::to_string(matched) + "/" + std::to_string(instances) + " global optima found");
    if (matched < 48) throw Failure{std::to_string(matched) + "/50 global optima found, need >= 48 (95%)"};
}

// -------------------------------------------------------------------------
// 10. Byte-identical determinism of randomized pipelines.

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"dynet"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::cli_main(int(argv.size()), argv.data());
}

void criterion10() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "dynet_acceptance_c10";
    fs::create_directories(dir);
    auto twice = [&](const std::string& what, std::vector<std::string> args, const char* out_flag) {
        std::string out1 = (dir / (what + "_1.out")).string();
        std::string out2 = (dir / (what + "_2.out")).string();
        for (const auto& out : {out1, out2}) {
            auto a = args;
            a.push_back(out_flag);
            a.push_back(out);
            if (run_cli(a) != cli::kExitOk) throw Failure{what + ": pipeline exited nonzero"};
        }
        if (slurp(out1) != slurp(out2)) throw Failure{what + ": outputs differ between identical runs"};
        return out1;
    };
    auto er = twice("gen_er", {"generate", "--model", "er", "--n", "120", "--T", "6", "--alpha",
                               "0.08", "--beta", "0.35", "--seed", "99"}, "--out");
    twice("gen_cl", {"generate", "--model", "cl", "--n", "120", "--T", "6", "--const-degree", "5",
                     "--beta", "0.3", "--seed", "17"}, "--out");
    twice("fit_er", {"fit", "--model", "er", "--input", er}, "--out");
    // dcsbm pipeline: generate from handmade params, then a seeded restart fit
    BenchmarkSpec spec;
    spec.n = 60;
    spec.c = 6.0;
    spec.delta = 0.8;
    auto params = benchmark_params(spec);
    std::string pj = (dir / "dc_params.json").string();
    {
        std::ofstream out(pj);
        out << io::dcsbm_to_json(params, spec.n, 0, 0.0).dump();
    }
    auto snap = twice("gen_dcsbm", {"generate", "--model", "dcsbm", "--params", pj, "--T", "3",
                                    "--seed", "5"}, "--out");
    twice("fit_dcsbm", {"fit", "--model", "dcsbm", "--input", snap, "--k", "2", "--restarts", "6",
                        "--seed", "42"}, "--out");
    // benchmark: identical output for repeated runs and across --jobs settings
    auto bench = twice("benchmark", {"benchmark", "--n", "40", "--c", "5", "--delta", "0.5", "--delta",
                                     "1.0", "--T", "0", "--T", "2", "--reps", "2", "--restarts", "2",
                                     "--seed", "3", "--jobs", "1"}, "--out");
    std::string par = (dir / "benchmark_jobs2.out").string();
    if (run_cli({"benchmark", "--n", "40", "--c", "5", "--delta", "0.5", "--delta", "1.0", "--T", "0",
                 "--T", "2", "--reps", "2", "--restarts", "2", "--seed", "3", "--jobs", "2", "--out",
                 par}) != cli::kExitOk)
        throw Failure{"benchmark --jobs 2 exited nonzero"};
    if (slurp(bench) != slurp(par)) throw Failure{"benchmark output depends on --jobs"};
    fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
    struct Entry {
        int id;
        const char* title;
        void (*fn)();
    };
    const Entry entries[] = {
        {1, "fast likelihoods match the dense per-pair oracle (rel 1e-10)", criterion1},
        {2, "log-likelihoods are stationary at interior fits (FD <= 1e-4 rel)", criterion2},
        {3, "ER recovery at n=500: mean |da| < 0.003, mean |db| < 0.01", criterion3},
        {4, "CL recovery at n=500: beta within 0.02, degree slope in [0.95, 1.05]", criterion4},
        {5, "beta quadratic: residual 1e-12, root in [0,1], matches 1e-6 grid argmax", criterion5},
        {6, "theta group sums equal 1 within 1e-10 on 100 random instances", criterion6},
        {7, "generator stationarity: t=0 vs t=T degree histograms at alpha=0.001", criterion7},
        {8, "detectability panels (a)/(b)/(c) qualitative reproduction", criterion8},
        {9, "small-instance exhaustive optimality matched in >= 95% of 50", criterion9},
        {10, "randomized pipelines are byte-identical given the seed", criterion10},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& e : entries) {
        if (!selected.empty() && !selected.count(e.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS", detail;
        try {
            e.fn();
        } catch (const Failure& f) {
            verdict = "FAIL";
            detail = f.detail;
            ++failures;
        } catch (const std::exception& ex) {
            verdict = "FAIL";
            detail = std::string("unexpected exception: ") + ex.what();
            ++failures;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %2d: %s  [%.1fs]%s%s\n", verdict.c_str(), e.id, e.title, secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
    for (const auto& n : notes) std::printf("  %s\n", n.c_str());
    return failures == 0 ? 0 : 1;
}
