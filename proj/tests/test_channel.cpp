#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hybridnet/channel.hpp"

using namespace hybridnet::channel;

namespace {

Environment default_env() { return Environment{296.0, 101325.0, 0.6}; }

// independent reference: Magnus form of the saturation pressure, in pascal
double magnus_saturation(double temperature_k) {
    const double t_c = temperature_k - 273.15;
    return 610.94 * std::exp(17.625 * t_c / (t_c + 243.04));
}

}  // namespace

TEST_CASE("saturated vapor pressure near the Magnus reference") {
    const Environment env = default_env();
    const double p_sat = saturated_vapor_pressure(env);
    CHECK(p_sat == doctest::Approx(2795.30000179668).epsilon(1e-10));
    CHECK(std::abs(p_sat - magnus_saturation(env.temperature)) /
              magnus_saturation(env.temperature) <=
          0.02);
}

TEST_CASE("saturated vapor pressure increases with temperature") {
    Environment env = default_env();
    double prev = 0.0;
    for (double t = 270.0; t <= 320.0; t += 5.0) {
        env.temperature = t;
        const double p = saturated_vapor_pressure(env);
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("saturated vapor pressure pressure dependence is the affine enhancement") {
    // the pressure enters only through the affine factor (1.0007 + 3.46e-6 * p_hPa)
    Environment lo = default_env();
    Environment hi = default_env();
    lo.pressure = 80000.0;
    hi.pressure = 101325.0;
    const double ratio = saturated_vapor_pressure(hi) / saturated_vapor_pressure(lo);
    const double expected = (1.0007 + 3.46e-6 * (hi.pressure / 100.0)) /
                            (1.0007 + 3.46e-6 * (lo.pressure / 100.0));
    CHECK(ratio == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("water vapor mixing ratio") {
    Environment env = default_env();
    CHECK(water_vapor_mixing_ratio(env) ==
          doctest::Approx(0.0165524796553467).epsilon(1e-10));
    env.relative_humidity = 0.0;
    CHECK(water_vapor_mixing_ratio(env) == 0.0);
    env.relative_humidity = 0.3;
    const double half = water_vapor_mixing_ratio(env);
    env.relative_humidity = 0.6;
    CHECK(water_vapor_mixing_ratio(env) == doctest::Approx(2.0 * half).epsilon(1e-13));
}

TEST_CASE("environment validation") {
    Environment env = default_env();
    env.relative_humidity = 60.0;
    CHECK_THROWS_WITH_AS(env.validate(),
                         doctest::Contains("expected fraction in [0,1]"),
                         std::invalid_argument);
    env = default_env();
    env.temperature = -3.0;
    CHECK_THROWS_AS(env.validate(), std::invalid_argument);
}

TEST_CASE("absorption coefficient frozen value and hand-chained oracle") {
    const auto src = AbsorptionSource::simplified(default_env());
    const double f = 350e9;
    const double k = absorption_coefficient(f, src);
    CHECK(k == doctest::Approx(0.00211451238864628).epsilon(1e-12));

    // recompute from the published closed form, term by term
    const double c100 = 100.0 * PhysicalConstants::c;
    const double mu = water_vapor_mixing_ratio(default_env());
    const double q1 = 0.2205 * mu * (0.1303 * mu + 0.0294);
    const double d1 = std::pow(0.4093 * mu + 0.0925, 2) + std::pow(f / c100 - 10.835, 2);
    const double q2 = 2.014 * mu * (0.1702 * mu + 0.0303);
    const double d2 = std::pow(0.537 * mu + 0.0956, 2) + std::pow(f / c100 - 12.664, 2);
    const double omega = 5.54e-37 * f * f * f - 3.94e-25 * f * f + 9.06e-14 * f - 6.36e-3;
    CHECK(k == doctest::Approx(q1 / d1 + q2 / d2 + omega).epsilon(1e-12));
}

TEST_CASE("absorption coefficient band limits and fixed override") {
    const auto src = AbsorptionSource::simplified(default_env());
    CHECK_THROWS_AS(absorption_coefficient(200e9, src), std::domain_error);
    CHECK_THROWS_AS(absorption_coefficient(500e9, src), std::domain_error);
    const auto fixed = AbsorptionSource::fixed(0.0123);
    CHECK(absorption_coefficient(350e9, fixed) == 0.0123);
    CHECK(absorption_coefficient(900e9, fixed) == 0.0123);  // no band check for overrides
    CHECK_THROWS_AS(AbsorptionSource::fixed(-1.0), std::invalid_argument);
}

TEST_CASE("absorption coefficient has two interior resonance peaks") {
    const auto src = AbsorptionSource::simplified(default_env());
    std::vector<double> freqs, vals;
    for (double f = 275e9; f <= 400e9 + 1.0; f += 0.5e9) {
        freqs.push_back(f);
        const double v = absorption_coefficient(f, src);
        CHECK(v > 0.0);
        CHECK(std::isfinite(v));
        vals.push_back(v);
    }
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < vals.size(); ++i)
        if (vals[i] > vals[i - 1] && vals[i] > vals[i + 1]) peaks.push_back(freqs[i]);
    REQUIRE(peaks.size() == 2);
    CHECK(std::abs(peaks[0] - 324.8e9) < 3e9);
    CHECK(std::abs(peaks[1] - 379.7e9) < 3e9);
}

TEST_CASE("absorption loss trivials") {
    CHECK(absorption_loss(0.0, 123.0) == 1.0);
    CHECK(absorption_loss(0.01, 0.0) == 1.0);
    CHECK(absorption_loss(0.01, 100.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("pathloss laws") {
    const double f = 350e9;
    // alpha = 2 gives the classic inverse-square Friis spreading factor
    const double l1 = pathloss(f, 1.0, 2.0);
    const double expected = std::pow(PhysicalConstants::c / (4.0 * std::acos(-1.0) * f), 2);
    CHECK(l1 == doctest::Approx(expected).epsilon(1e-13));
    CHECK(pathloss(f, 10.0, 2.0) == doctest::Approx(l1 / 100.0).epsilon(1e-13));
    CHECK(pathloss(f, 10.0, 4.0) == doctest::Approx(l1 / 1e4).epsilon(1e-13));
    // doubling frequency quarters the received power
    CHECK(pathloss(2.0 * f, 5.0, 3.0) ==
          doctest::Approx(pathloss(f, 5.0, 3.0) / 4.0).epsilon(1e-13));
}

TEST_CASE("combined pathloss and absorption is monotone decreasing in distance") {
    const double f = 350e9;
    const double k_a = 0.0021;
    double prev = std::numeric_limits<double>::infinity();
    for (double x = 0.5; x <= 100.0; x += 0.5) {
        const double v = pathloss(f, x, 4.0) * absorption_loss(k_a, x);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("johnson-nyquist noise density") {
    const double t = 296.0;
    CHECK(johnson_nyquist_noise_density(350e9, t) ==
          doctest::Approx(4.0682938131602e-21).epsilon(1e-10));
    // Rayleigh-Jeans limit hbar*f/(e^x - 1) -> k_B T as f -> 0
    CHECK(johnson_nyquist_noise_density(1e3, t) ==
          doctest::Approx(PhysicalConstants::k_boltzmann * t).epsilon(1e-6));
    // decreasing in frequency
    double prev = std::numeric_limits<double>::infinity();
    for (double f = 1e9; f <= 1e12; f *= 2.0) {
        const double v = johnson_nyquist_noise_density(f, t);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("nakagami power fading moments") {
    std::mt19937_64 rng(99);
    for (int m : {1, 4}) {
        const int n = 300000;
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double h = sample_nakagami_power(rng, m);
            CHECK(h >= 0.0);
            sum += h;
            sumsq += h * h;
        }
        const double mean = sum / n;
        const double var = sumsq / n - mean * mean;
        // Gamma(m, 1/m): mean 1, variance 1/m
        CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
        CHECK(var == doctest::Approx(1.0 / m).epsilon(0.05));
    }
}

TEST_CASE("nakagami m=1 matches the exponential CDF") {
    std::mt19937_64 rng(7);
    const int n = 200000;
    int below = 0;
    for (int i = 0; i < n; ++i)
        if (sample_nakagami_power(rng, 1) <= 1.0) ++below;
    const double p = static_cast<double>(below) / n;
    const double expected = 1.0 - std::exp(-1.0);
    const double se = std::sqrt(expected * (1.0 - expected) / n);
    CHECK(std::abs(p - expected) <= 5.0 * se);
}

TEST_CASE("rayleigh power fading is the unit-mean exponential") {
    std::mt19937_64 rng(13);
    const int n = 200000;
    double sum = 0.0;
    std::vector<double> draws;
    draws.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double h = sample_rayleigh_power(rng);
        CHECK(h >= 0.0);
        sum += h;
        draws.push_back(h);
    }
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
    // median of a unit-mean exponential is ln 2
    std::nth_element(draws.begin(), draws.begin() + n / 2, draws.end());
    CHECK(draws[n / 2] == doctest::Approx(std::log(2.0)).epsilon(0.02));

    // Kolmogorov-Smirnov against the exponential CDF
    std::sort(draws.begin(), draws.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = 1.0 - std::exp(-draws[i]);
        ks = std::max(ks, std::abs(cdf - (i + 1.0) / n));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
    }
    // critical value at alpha = 0.001 is ~1.95/sqrt(n)
    CHECK(ks <= 1.95 / std::sqrt(static_cast<double>(n)));
}
