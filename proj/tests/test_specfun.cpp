#include <doctest.h>

#include <cmath>
#include <random>

#include "hybridnet/specfun.hpp"

using namespace hybridnet::specfun;

namespace {

// fixed-grid Simpson oracle used to cross-check the adaptive integrators
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 == 1) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("gauss_2f1 basic identities") {
    CHECK(gauss_2f1(0.7, 2.3, 1.9, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    // 2F1(1, b; b; z) = 1/(1-z)
    CHECK(gauss_2f1(1.0, 3.7, 3.7, -1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gauss_2f1(2.5, 1.0, 1.0, -3.0) ==
          doctest::Approx(std::pow(4.0, -2.5)).epsilon(1e-12));
}

TEST_CASE("gauss_2f1 matches high-precision series oracle") {
    // reference computed with an independent extended-precision series
    // evaluation of the same function
    CHECK(gauss_2f1(-0.5, 4.0, 0.5, -2.0) ==
          doctest::Approx(4.8612242050260390357).epsilon(1e-10));
}

TEST_CASE("gauss_2f1 terminating polynomial case") {
    // a = -1: 1 - (b/c) z
    CHECK(gauss_2f1(-1.0, 3.0, 2.0, -4.0) == doctest::Approx(7.0).epsilon(1e-14));
    // a = -2: 1 - 2(b/c)z + (b(b+1)/(c(c+1))) z^2
    const double b = 1.5, c = 2.5, z = -0.7;
    const double expect = 1.0 - 2.0 * (b / c) * z + (b * (b + 1.0) / (c * (c + 1.0))) * z * z;
    CHECK(gauss_2f1(-2.0, b, c, z) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("gauss_2f1 far-negative arguments agree with the Euler integral") {
    // 2F1(q, p; p+1; z) = p * int_0^1 t^{p-1} (1 - z t)^{-q} dt
    for (double z : {-2.0, -50.0, -1e4, -1e8}) {
        for (double p : {2.0, 1.5}) {
            const double q = 1.0;
            const double direct = integrate(
                [&](double t) { return p * std::pow(t, p - 1.0) * std::pow(1.0 - z * t, -q); },
                0.0, 1.0, {1e-12, 0.0, 4000, 1e-12});
            CHECK(gauss_2f1(q, p, p + 1.0, z) == doctest::Approx(direct).epsilon(1e-9));
        }
    }
    // non-integer parameter difference exercises the 1/(1-z) connection path
    const double direct = integrate(
        [&](double t) {
            return 1.7 * std::pow(t, 0.7) * std::pow(1.0 + 300.0 * t, -3.0);
        },
        0.0, 1.0, {1e-12, 0.0, 4000, 1e-12});
    CHECK(gauss_2f1(3.0, 1.7, 2.7, -300.0) == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("gauss_2f1 domain errors") {
    CHECK_THROWS_AS(gauss_2f1(1.0, 2.0, -3.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 2.0, 0.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 2.0, 3.0, 0.5), std::domain_error);
}

TEST_CASE("gauss_2f1 continuity in z") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double a = -2.0 / (2.5 + 2.5 * uni(rng));
        const double b = 1.0 + std::floor(4.0 * uni(rng));
        const double c = a + 1.5;  // keep c valid
        const double z = -std::pow(10.0, -1.0 + 4.0 * uni(rng));
        const double delta = std::abs(z) * 1e-9;
        const double v1 = gauss_2f1(a, b, c, z);
        const double v2 = gauss_2f1(a, b, c, z - delta);
        CHECK(std::abs(v1 - v2) <= 1e-6 * std::max(1.0, std::abs(v1)));
    }
}

TEST_CASE("lambert_w0 trivial and residual checks") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : {0.1, 1.0, 10.0, 1000.0}) {
        const double w = lambert_w0(x);
        CHECK(std::abs(w * std::exp(w) - x) / x <= 1e-12);
    }
    CHECK_THROWS_AS(lambert_w0(-1.0), std::domain_error);
}

TEST_CASE("lambert_w0 monotone nondecreasing") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(std::pow(10.0, -6.0 + 12.0 * uni(rng)));
    std::sort(xs.begin(), xs.end());
    double prev = -1.0;
    for (double x : xs) {
        const double w = lambert_w0(x);
        CHECK(w >= prev);
        prev = w;
    }
}

TEST_CASE("integrate trivial integrals") {
    CHECK(integrate([](double x) { return x; }, 0.0, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::acos(-1.0)) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-10));
}

TEST_CASE("integrate additivity") {
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    const double whole = integrate(f, 0.0, 5.0);
    const double parts = integrate(f, 0.0, 1.7) + integrate(f, 1.7, 5.0);
    CHECK(std::abs(whole - parts) <= 10e-8 * std::max(1.0, std::abs(whole)));
}

TEST_CASE("integrate error handling") {
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
    QuadratureSpec bad;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, bad),
                    std::invalid_argument);
    // an integrable singularity cannot be resolved with a single panel
    QuadratureSpec starved;
    starved.max_subdivisions = 1;
    starved.rel_tol = 1e-12;
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); },
                              0.0, 1.0, starved),
                    NonConvergenceError);
}

TEST_CASE("integrate_semi_infinite basics") {
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate_semi_infinite([](double x) { return x * std::exp(-x * x); }, 0.0) ==
          doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("integrate_semi_infinite matches fixed-grid oracle") {
    auto f = [](double x) { return std::exp(-x) / (1.0 + x); };
    const double oracle = simpson(f, 0.0, 50.0, 200000);
    const double got = integrate_semi_infinite(f, 0.0);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(got == doctest::Approx(0.59634736232319407).epsilon(1e-10));
}

TEST_CASE("integrate_semi_infinite rejects non-decaying integrands") {
    CHECK_THROWS_AS(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x); }, 0.0),
                    NonConvergenceError);
}
