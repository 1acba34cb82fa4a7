#include <doctest.h>

#include <cmath>
#include <vector>

#include "hybridnet/analysis.hpp"
#include "hybridnet/montecarlo.hpp"

using namespace hybridnet;
using namespace hybridnet::montecarlo;

namespace {

HybridParams defaults() { return HybridParams{}; }

}  // namespace

TEST_CASE("trial rng is a pure function of seed and index") {
    auto a = trial_rng(42, 7);
    auto b = trial_rng(42, 7);
    CHECK(a() == b());
    auto c = trial_rng(42, 8);
    auto d = trial_rng(43, 7);
    // neighbouring streams decorrelate immediately
    CHECK(trial_rng(42, 7)() != c());
    CHECK(trial_rng(42, 7)() != d());
}

TEST_CASE("empty processes yield no association") {
    HybridParams p = defaults();
    p.thz.density = 0.0;
    p.mmwave.density = 0.0;
    int none = 0;
    const int trials = 2000;
    for (int i = 0; i < trials; ++i) {
        auto rng = trial_rng(5, i);
        const auto r = realize_network(rng, p);
        if (r.association == Association::None) ++none;
    }
    CHECK(none == trials);
}

TEST_CASE("node counts follow the Poisson mean in each ball") {
    HybridParams p = defaults();
    const double mean_thz = std::acos(-1.0) * p.thz.density * p.thz.los_radius *
                            p.thz.los_radius;
    const int trials = 3000;
    double sum = 0.0;
    for (int i = 0; i < trials; ++i) {
        auto rng = trial_rng(11, i);
        const auto r = realize_network(rng, p);
        sum += static_cast<double>(r.thz_nodes.size());
    }
    const double observed = sum / trials;
    const double se = std::sqrt(mean_thz / trials);
    CHECK(std::abs(observed - mean_thz) <= 5.0 * se);
}

TEST_CASE("per-realization power conservation") {
    HybridParams p = defaults();
    const double pi = std::acos(-1.0);
    const double l0_thz =
        std::pow(channel::PhysicalConstants::c / (4.0 * pi * p.thz.frequency), 2);
    const double l0_mm =
        std::pow(channel::PhysicalConstants::c / (4.0 * pi * p.mmwave.frequency), 2);
    const double k_a =
        channel::absorption_coefficient(p.thz.frequency, p.absorption);
    for (int i = 0; i < 200; ++i) {
        auto rng = trial_rng(17, i);
        const auto r = realize_network(rng, p);
        if (r.association != Association::THz || !r.serving_in_ball) continue;
        double interference = 0.0;
        double absorption_noise = 0.0;
        for (std::size_t j = 1; j < r.thz_nodes.size(); ++j) {
            const auto& n = r.thz_nodes[j];
            const double received = p.thz.tx_power * l0_thz * n.gain * n.fading *
                                    std::pow(n.distance, -p.thz.pathloss_exponent);
            const double transmittance = std::exp(-k_a * n.distance);
            interference += received * transmittance;
            absorption_noise += received * (1.0 - transmittance);
        }
        CHECK(std::abs(interference - r.interference) <=
              1e-10 * std::max(1e-30, r.interference));
        CHECK(std::abs(absorption_noise - r.absorption_noise) <=
              1e-10 * std::max(1e-30, r.absorption_noise));
        (void)l0_mm;
    }
}

TEST_CASE("sinr recomputes from the stored realization") {
    HybridParams p = defaults();
    const double pi = std::acos(-1.0);
    const double l0_thz =
        std::pow(channel::PhysicalConstants::c / (4.0 * pi * p.thz.frequency), 2);
    const double k_a = channel::absorption_coefficient(p.thz.frequency, p.absorption);
    const double njn =
        channel::johnson_nyquist_noise_density(p.thz.frequency, p.environment.temperature);
    for (int i = 0; i < 200; ++i) {
        auto rng = trial_rng(23, i);
        const auto r = realize_network(rng, p);
        if (r.association != Association::THz || !r.serving_in_ball) continue;
        const auto& s = r.thz_nodes.front();
        const double signal = p.thz.tx_power * l0_thz * s.gain * s.fading *
                              std::pow(s.distance, -p.thz.pathloss_exponent) *
                              std::exp(-k_a * s.distance);
        const double sinr = signal / (r.interference + r.absorption_noise + njn);
        CHECK(sinr == doctest::Approx(r.sinr).epsilon(1e-10));
    }
}

TEST_CASE("overwhelming bias forces THz association") {
    HybridParams p = defaults();
    p.thz.bias = 1e12;
    const auto est = estimate_association(p, 31, 2000, 2);
    CHECK(est.mean >= 0.999);
}

TEST_CASE("symmetric tiers split association evenly") {
    HybridParams p = defaults();
    p.mmwave = p.thz;  // identical deployments
    p.mmwave.frequency = p.thz.frequency;
    p.absorption = channel::AbsorptionSource::fixed(0.0);
    const auto est = estimate_association(p, 37, 20000, 4);
    CHECK(std::abs(est.mean - 0.5) <= 4.0 * est.stderr_);
}

TEST_CASE("near-zero threshold gives full conditioned coverage") {
    HybridParams p = defaults();
    const auto cov = estimate_coverage(p, 41, {1e-9}, 2000, Mode::THzOnly, 2);
    REQUIRE(cov.size() == 1);
    CHECK(cov[0].conditioned.mean >= 0.999);
}

TEST_CASE("coverage is nonincreasing along the threshold grid") {
    HybridParams p = defaults();
    std::vector<double> taus;
    for (double db = -10.0; db <= 40.0; db += 10.0) taus.push_back(db_to_linear(db));
    const auto cov = estimate_coverage(p, 43, taus, 4000, Mode::Hybrid, 4);
    for (std::size_t i = 1; i < cov.size(); ++i) {
        CHECK(cov[i].unconditional.mean <= cov[i - 1].unconditional.mean + 1e-12);
        CHECK(cov[i].conditioned.mean <= cov[i - 1].conditioned.mean + 1e-12);
    }
}

TEST_CASE("serving distance follows the truncated-Rayleigh law in a single tier") {
    HybridParams p = defaults();
    p.mmwave.density = 1e-30;
    const int trials = 100000;
    const int bins = 20;
    const double R = p.thz.los_radius;
    std::vector<double> counts(bins, 0.0);
    std::int64_t kept = 0;
    for (int i = 0; i < trials; ++i) {
        auto rng = trial_rng(47, i);
        const auto r = realize_network(rng, p);
        if (r.association != Association::THz || !r.serving_in_ball) continue;
        ++kept;
        const int b = std::min(bins - 1, static_cast<int>(r.serving_distance / R * bins));
        counts[b] += 1.0;
    }
    REQUIRE(kept > trials / 2);
    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double lo = R * b / bins, hi = R * (b + 1) / bins;
        const double prob = specfun::integrate(
            [&](double x) { return analysis::nearest_distance_pdf(p.thz.density, R, x); },
            lo, hi);
        const double expected = prob * kept;
        if (expected < 5.0) continue;
        chi2 += (counts[b] - expected) * (counts[b] - expected) / expected;
    }
    // 19 dof, alpha = 0.001 critical value is 43.8
    CHECK(chi2 < 43.8);
}

TEST_CASE("mmWave ball emptiness matches the void probability") {
    HybridParams p = defaults();
    const double pi = std::acos(-1.0);
    const double void_prob =
        std::exp(-pi * p.mmwave.density * p.mmwave.los_radius * p.mmwave.los_radius);
    CHECK(void_prob == doctest::Approx(0.5336).epsilon(1e-3));
    const int trials = 10000;
    int empty = 0;
    for (int i = 0; i < trials; ++i) {
        auto rng = trial_rng(53, i);
        const auto r = realize_network(rng, p);
        if (r.mm_nodes.empty()) ++empty;
    }
    const double observed = static_cast<double>(empty) / trials;
    const double se = std::sqrt(void_prob * (1.0 - void_prob) / trials);
    CHECK(std::abs(observed - void_prob) <= 4.0 * se);
}

TEST_CASE("estimates are bit-identical across worker counts") {
    HybridParams p = defaults();
    const auto c1 = estimate_coverage(p, 59, {1.0, 10.0}, 3000, Mode::Hybrid, 1);
    const auto c4 = estimate_coverage(p, 59, {1.0, 10.0}, 3000, Mode::Hybrid, 4);
    REQUIRE(c1.size() == c4.size());
    for (std::size_t i = 0; i < c1.size(); ++i) {
        CHECK(c1[i].unconditional.mean == c4[i].unconditional.mean);
        CHECK(c1[i].unconditional.stderr_ == c4[i].unconditional.stderr_);
        CHECK(c1[i].conditioned.mean == c4[i].conditioned.mean);
        CHECK(c1[i].conditioned.n_conditioned == c4[i].conditioned.n_conditioned);
    }
    const auto s1 = estimate_se(p, 61, 2000, Mode::Hybrid, 1);
    const auto s3 = estimate_se(p, 61, 2000, Mode::Hybrid, 3);
    CHECK(s1.conditioned.mean == s3.conditioned.mean);
    CHECK(s1.conditioned_thz.mean == s3.conditioned_thz.mean);
    CHECK(s1.conditioned_mm.mean == s3.conditioned_mm.mean);
}

TEST_CASE("spectral efficiency estimates behave sensibly") {
    HybridParams p = defaults();
    const auto se = estimate_se(p, 67, 4000, Mode::Hybrid, 4);
    CHECK(se.conditioned.mean > 0.0);
    CHECK(se.conditioned.stderr_ > 0.0);
    CHECK(se.conditioned.n_conditioned > 0);

    // drown the network in noise: ln(1+SINR) collapses toward zero
    HybridParams noisy = p;
    noisy.thz.tx_power = 1e-30;
    noisy.mmwave.tx_power = 1e-30;
    const auto se_noisy = estimate_se(noisy, 67, 4000, Mode::Hybrid, 4);
    CHECK(se_noisy.conditioned.mean <= 1e-3 * se.conditioned.mean);
}
