#include "hybridnet/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "hybridnet/analysis.hpp"
#include "hybridnet/channel.hpp"
#include "hybridnet/config.hpp"
#include "hybridnet/montecarlo.hpp"
#include "hybridnet/specfun.hpp"
#include "hybridnet/sweep.hpp"

namespace hybridnet::selftest {

namespace {

constexpr std::uint64_t kSeed = 20260823;
constexpr std::int64_t kTrials = 10000;

const std::vector<double> kTauDb = {-10.0, 0.0, 10.0, 20.0, 30.0, 40.0};

std::vector<double> tau_linear() {
    std::vector<double> out;
    for (double db : kTauDb) out.push_back(std::pow(10.0, db / 10.0));
    return out;
}

bool report(const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    return ok;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- criterion 1: THz-only coverage, analytic bound vs simulation ----
bool criterion_coverage_thz() {
    const auto taus = tau_linear();
    double worst_gap = 0.0;
    bool ok = true;
    std::string detail;
    for (int n_t : {8, 16, 32, 64}) {
        HybridParams p;
        p.thz.array_size = n_t;
        const analysis::Analyzer an(p);
        const auto mc = montecarlo::estimate_coverage(p, kSeed + n_t, taus, kTrials,
                                                      montecarlo::Mode::THzOnly);
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const double a = an.coverage_thz_standalone(taus[i]);
            const double m = mc[i].conditioned.mean;
            const double se = mc[i].conditioned.stderr_;
            worst_gap = std::max(worst_gap, std::abs(a - m));
            if (std::abs(a - m) > 0.03) {
                ok = false;
                detail += " |gap|>" + fmt(std::abs(a - m)) + " at N=" + std::to_string(n_t) +
                          " tau_db=" + fmt(kTauDb[i]);
            }
            // Alzer's inequality with a = M(M!)^{-1/M} lower-bounds the Nakagami
            // CDF for M > 1, so the analytic expression is an upper bound on
            // coverage: simulation must not exceed it beyond sampling noise.
            // The empirical stderr degenerates to 0 when every trial is covered;
            // fall back to the binomial noise scale at the analytic proportion.
            const double n_cond = std::max<double>(mc[i].conditioned.n_conditioned, 1);
            const double se_eff =
                std::max(se, std::sqrt(std::max(a * (1.0 - a), 0.0) / n_cond));
            if (m > a + 3.0 * se_eff) {
                ok = false;
                detail += " bound direction violated at N=" + std::to_string(n_t) +
                          " tau_db=" + fmt(kTauDb[i]);
            }
        }
    }
    return report("1 coverage THz-only: analytic bound vs simulation", ok,
                  detail.empty() ? "max |analytic-mc| = " + fmt(worst_gap) : detail);
}

// ---- criterion 2: mmWave-only coverage, exact expression ----
bool criterion_coverage_mm() {
    const auto taus = tau_linear();
    HybridParams p;
    const analysis::Analyzer an(p);
    const auto mc =
        montecarlo::estimate_coverage(p, kSeed + 1, taus, kTrials, montecarlo::Mode::MMOnly);
    bool ok = true;
    double worst_sigma = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double a = an.coverage_mmwave_standalone(taus[i]);
        const double m = mc[i].conditioned.mean;
        const double se = std::max(mc[i].conditioned.stderr_, 1e-12);
        worst_sigma = std::max(worst_sigma, std::abs(a - m) / se);
        if (std::abs(a - m) > 3.0 * se) ok = false;
    }
    return report("2 coverage mmWave-only: exact expression within 3 sigma", ok,
                  "max deviation = " + fmt(worst_sigma) + " sigma");
}

// ---- criterion 3: association probability grid ----
bool criterion_association() {
    const std::vector<double> lams = {1e-3, 5e-3, 0.01, 0.05};
    const std::vector<double> biases = {1.0, 10.0};
    bool ok = true;
    double worst = 0.0;
    std::vector<std::vector<double>> analytic(biases.size());
    for (std::size_t bi = 0; bi < biases.size(); ++bi) {
        for (double lam : lams) {
            HybridParams p;
            p.thz.density = lam;
            p.thz.bias = biases[bi];
            const double a = analysis::Analyzer(p).association_prob_thz();
            const auto mc = montecarlo::estimate_association(p, kSeed + 2, kTrials);
            analytic[bi].push_back(a);
            worst = std::max(worst, std::abs(a - mc.mean));
            if (std::abs(a - mc.mean) > 0.02) ok = false;
        }
        for (std::size_t i = 1; i < analytic[bi].size(); ++i)
            if (!(analytic[bi][i] > analytic[bi][i - 1])) ok = false;  // monotone in density
    }
    for (std::size_t i = 0; i < lams.size(); ++i)
        if (!(analytic[1][i] > analytic[0][i])) ok = false;  // monotone in bias
    return report("3 association probability: analytic vs simulation, monotone", ok,
                  "max |analytic-mc| = " + fmt(worst));
}

// ---- criterion 4: hybrid coverage at 20 dB and spectral efficiency ----
bool criterion_hybrid() {
    const double tau = 100.0;  // 20 dB
    bool ok = true;
    double worst_margin = -1e9;
    std::string detail;
    for (double bias : {0.1, 1.0, 10.0}) {
        for (double lam : {1e-3, 0.01, 0.05}) {
            HybridParams p;
            p.thz.bias = bias;
            p.thz.density = lam;
            const double a = analysis::Analyzer(p).coverage_hybrid(tau);
            const auto mc = montecarlo::estimate_coverage(p, kSeed + 3, {tau}, kTrials,
                                                          montecarlo::Mode::Hybrid);
            const double m = mc[0].conditioned.mean;
            const double allow = 0.03 + 3.0 * mc[0].conditioned.stderr_;
            worst_margin = std::max(worst_margin, std::abs(a - m) - allow);
            if (std::abs(a - m) > allow) {
                ok = false;
                detail += " coverage gap " + fmt(std::abs(a - m)) + " at B=" + fmt(bias) +
                          " lam=" + fmt(lam);
            }
        }
    }
    {
        HybridParams p;
        const double a = analysis::Analyzer(p).se_hybrid();
        const auto mc = montecarlo::estimate_se(p, kSeed + 4, kTrials, montecarlo::Mode::Hybrid);
        const double m = mc.conditioned.mean;
        const double se = std::max(mc.conditioned.stderr_, 1e-12);
        if (std::abs(a - m) > 3.0 * se) {
            ok = false;
            detail += " SE gap " + fmt(std::abs(a - m)) + " vs 3*stderr " + fmt(3.0 * se);
        }
    }
    {
        double prev = -1.0;
        for (int n_t : {32, 64, 128}) {
            HybridParams p;
            p.thz.array_size = n_t;
            const double se = analysis::Analyzer(p).se_hybrid();
            if (!(se > prev)) {
                ok = false;
                detail += " SE not increasing at N=" + std::to_string(n_t);
            }
            prev = se;
        }
    }
    return report("4 hybrid coverage and spectral efficiency", ok,
                  detail.empty() ? "worst coverage margin " + fmt(worst_margin) : detail);
}

// ---- criterion 5: absorption coefficient peaks ----
bool criterion_absorption() {
    const channel::AbsorptionSource src = channel::AbsorptionSource::simplified({});
    std::vector<double> f, k;
    for (double fhz = 275e9; fhz <= 400e9 + 1.0; fhz += 0.5e9) {
        f.push_back(fhz);
        k.push_back(channel::absorption_coefficient(fhz, src));
    }
    bool ok = true;
    std::vector<double> peaks;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!std::isfinite(k[i]) || !(k[i] > 0.0)) ok = false;
        if (i > 0 && i + 1 < k.size() && k[i] > k[i - 1] && k[i] > k[i + 1])
            peaks.push_back(f[i]);
    }
    if (peaks.size() != 2) {
        ok = false;
    } else {
        if (std::abs(peaks[0] - 324.8e9) > 3e9) ok = false;
        if (std::abs(peaks[1] - 379.7e9) > 3e9) ok = false;
    }
    std::string detail = "peaks at";
    for (double pk : peaks) detail += " " + fmt(pk / 1e9) + " GHz";
    return report("5 absorption coefficient: two resonance peaks", ok, detail);
}

// ---- criterion 6: closed forms vs brute force ----
bool criterion_closed_forms() {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    specfun::QuadratureSpec tight;
    tight.rel_tol = 1e-11;
    tight.abs_tol = 0.0;
    tight.max_subdivisions = 4000;

    double worst_chi = 0.0;
    const int n_arrays[] = {8, 16, 32, 64};
    for (int draw = 0; draw < 100; ++draw) {
        HybridParams p;
        p.thz.array_size = n_arrays[draw % 4];
        p.mmwave.array_size = n_arrays[(draw + 1) % 4];
        p.thz.pathloss_exponent = 2.5 + 2.5 * uni(rng);
        p.mmwave.pathloss_exponent = draw % 3 == 0 ? 2.0 : 2.0 + uni(rng);
        p.nakagami_m = 1 + static_cast<int>(4.0 * uni(rng));
        const analysis::Analyzer an(p);
        const double s = std::pow(10.0, -2.0 + 5.0 * uni(rng));

        {
            const double x = 0.9 * p.thz.los_radius * uni(rng);
            const double closed = an.chi_thz(s, x);
            std::vector<double> ghat;
            for (const auto& lv : an.thz_pattern().levels)
                ghat.push_back(lv.gain / p.thz.array_size);
            const double direct = specfun::integrate(
                [&](double t) {
                    double sum = 0.0;
                    for (double gh : ghat)
                        sum += t / std::pow(1.0 + s * gh * std::pow(t, -p.thz.pathloss_exponent) /
                                                      p.nakagami_m,
                                            p.nakagami_m);
                    return sum;
                },
                x, p.thz.los_radius, tight);
            const double rel = std::abs(closed - direct) / std::max(std::abs(direct), 1e-300);
            worst_chi = std::max(worst_chi, rel);
            if (rel > 1e-8) ok = false;
        }
        {
            const double x = 0.9 * p.mmwave.los_radius * uni(rng);
            const double closed = an.chi_mmwave(s, x);
            std::vector<double> ghat;
            for (const auto& lv : an.mm_pattern().levels)
                ghat.push_back(lv.gain / p.mmwave.array_size);
            const double direct = specfun::integrate(
                [&](double t) {
                    double sum = 0.0;
                    for (double gh : ghat)
                        sum += t / (1.0 + s * gh * std::pow(t, -p.mmwave.pathloss_exponent));
                    return sum;
                },
                x, p.mmwave.los_radius, tight);
            const double rel = std::abs(closed - direct) / std::max(std::abs(direct), 1e-300);
            worst_chi = std::max(worst_chi, rel);
            if (rel > 1e-8) ok = false;
        }
    }
    if (worst_chi > 1e-8) detail += " chi mismatch " + fmt(worst_chi);

    double worst_w = 0.0;
    for (double x : {0.1, 1.0, 10.0, 1000.0}) {
        const double w = specfun::lambert_w0(x);
        worst_w = std::max(worst_w, std::abs(w * std::exp(w) - x) / x);
    }
    for (int i = 0; i < 50; ++i) {
        const double x = std::pow(10.0, -3.0 + 9.0 * uni(rng));
        const double w = specfun::lambert_w0(x);
        worst_w = std::max(worst_w, std::abs(w * std::exp(w) - x) / x);
    }
    if (worst_w > 1e-12) {
        ok = false;
        detail += " lambert residual " + fmt(worst_w);
    }

    double worst_nu = 0.0;
    {
        HybridParams p;
        const analysis::Analyzer an(p);
        for (int i = 0; i < 50; ++i) {
            const double x = p.mmwave.los_radius * std::max(uni(rng), 1e-6);
            const double r = an.nu(x);
            const double lhs = an.epsilon() * std::pow(r, p.thz.pathloss_exponent) *
                               std::exp(an.k_a() * r);
            const double rhs = std::pow(x, p.mmwave.pathloss_exponent);
            worst_nu = std::max(worst_nu, std::abs(lhs - rhs) / rhs);
        }
    }
    if (worst_nu > 1e-9) {
        ok = false;
        detail += " nu residual " + fmt(worst_nu);
    }

    // interference-limited product form vs the noise-free exact pathway
    double worst_cor = 0.0;
    {
        HybridParams p;
        p.mmwave_noise_power = 1e-300;
        const analysis::Analyzer an(p);
        for (double tau : tau_linear()) {
            const double a = an.coverage_mmwave_interference_limited(tau);
            const double b = an.coverage_mmwave_standalone(tau);
            worst_cor = std::max(worst_cor, std::abs(a - b));
            if (std::abs(a - b) > 1e-6)
                detail += " product-form vs exact pathway: " + fmt(a) + " vs " + fmt(b) +
                          " at tau=" + fmt(tau);
        }
        if (worst_cor > 1e-6) ok = false;
    }
    return report("6 closed forms match brute-force integration", ok,
                  detail.empty() ? "max chi rel err = " + fmt(worst_chi) +
                                       ", product-form gap = " + fmt(worst_cor)
                                 : detail);
}

// ---- criterion 7: structural invariants ----
bool criterion_invariants() {
    bool ok = true;
    std::string detail;
    HybridParams p;
    const analysis::Analyzer an(p);

    const double a_t = an.association_prob_thz();
    if (!(a_t >= 0.0 && a_t <= 1.0)) {
        ok = false;
        detail += " association out of [0,1]";
    }
    // the mmWave share is defined as the complement, so the sum is exact
    if (a_t + (1.0 - a_t) != 1.0) ok = false;

    if (std::abs(an.laplace_interference_thz(0.0, 30.0) - 1.0) > 0.0 ||
        std::abs(an.laplace_interference_mmwave(0.0, 5.0) - 1.0) > 0.0) {
        ok = false;
        detail += " L(0) != 1";
    }
    for (double tau : tau_linear()) {
        for (double v : {an.coverage_thz_standalone(tau), an.coverage_mmwave_standalone(tau),
                         an.coverage_hybrid(tau)}) {
            if (!(v >= 0.0 && v <= 1.0)) {
                ok = false;
                detail += " coverage out of [0,1]";
            }
        }
    }
    for (double v : {an.coverage_thz_standalone(1e-9), an.coverage_mmwave_standalone(1e-9),
                     an.coverage_hybrid(1e-9)}) {
        if (std::abs(v - 1.0) > 1e-4) {
            ok = false;
            detail += " coverage(tau->0) = " + fmt(v);
        }
    }

    // per-realization conservation: interference + absorption noise equals the
    // unabsorbed received sum
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        auto rng = montecarlo::trial_rng(kSeed + 5, i);
        const auto r = montecarlo::realize_network(rng, p);
        if (r.association != montecarlo::Association::THz) continue;
        double unabsorbed = 0.0;
        for (std::size_t j = 1; j < r.thz_nodes.size(); ++j) {
            const auto& node = r.thz_nodes[j];
            unabsorbed += node.gain * p.thz.tx_power *
                          channel::pathloss(p.thz.frequency, node.distance,
                                            p.thz.pathloss_exponent) *
                          node.fading;
        }
        const double lhs = r.interference + r.absorption_noise;
        const double rel = std::abs(lhs - unabsorbed) / std::max(unabsorbed, 1e-300);
        worst = std::max(worst, rel);
    }
    if (worst > 1e-10) {
        ok = false;
        detail += " conservation residual " + fmt(worst);
    }
    return report("7 structural invariants", ok,
                  detail.empty() ? "conservation residual = " + fmt(worst) : detail);
}

// ---- criterion 8: byte-identical CSV across runs and worker counts ----
std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool criterion_reproducibility(const std::string& cli_path) {
    const std::string base = "/tmp/hybridnet_selftest_";
    const std::string args =
        " run --metric coverage_hybrid --tau-db 0,20 --trials 500 --seed 7";
    bool ok = true;
    std::string detail;
    if (!cli_path.empty()) {
        const std::string cmds[] = {
            "\"" + cli_path + "\"" + args + " --threads 1 --out " + base + "a.csv",
            "\"" + cli_path + "\"" + args + " --threads 1 --out " + base + "b.csv",
            "\"" + cli_path + "\"" + args + " --threads 4 --out " + base + "c.csv",
        };
        for (const auto& cmd : cmds) {
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                detail += " runner exited nonzero";
            }
        }
    } else {
        config::RunConfig cfg;
        cfg.seed = 7;
        cfg.n_trials = 500;
        sweep::SweepSpec spec;
        spec.metric = sweep::Metric::CoverageHybrid;
        spec.tau_db = {0.0, 20.0};
        cfg.threads = 1;
        sweep::run_sweep(cfg, spec, base + "a.csv");
        sweep::run_sweep(cfg, spec, base + "b.csv");
        cfg.threads = 4;
        sweep::run_sweep(cfg, spec, base + "c.csv");
    }
    const std::string a = read_file(base + "a.csv");
    if (a.empty()) {
        ok = false;
        detail += " empty output";
    }
    if (a != read_file(base + "b.csv")) {
        ok = false;
        detail += " repeated invocation differs";
    }
    if (a != read_file(base + "c.csv")) {
        ok = false;
        detail += " worker count changes output";
    }
    return report("8 reproducibility: byte-identical CSV", ok, detail);
}

}  // namespace

int run_selftest(const std::string& cli_path) {
    bool ok = true;
    ok &= criterion_coverage_thz();
    ok &= criterion_coverage_mm();
    ok &= criterion_association();
    ok &= criterion_hybrid();
    ok &= criterion_absorption();
    ok &= criterion_closed_forms();
    ok &= criterion_invariants();
    ok &= criterion_reproducibility(cli_path);
    std::printf("%s\n", ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
    return ok ? 0 : 1;
}

}  // namespace hybridnet::selftest
