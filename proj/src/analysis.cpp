#include "hybridnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

namespace hybridnet::analysis {

namespace {

constexpr double kPi = std::numbers::pi;

double binom(int m, int n) {
    return std::round(std::exp(std::lgamma(m + 1.0) - std::lgamma(n + 1.0) -
                               std::lgamma(m - n + 1.0)));
}

double clamp_probability(double v, const char* what) {
    const double c = std::clamp(v, 0.0, 1.0);
    if (std::abs(c - v) > 1e-6)
        std::cerr << "warning: " << what << " clamped by " << std::abs(c - v) << "\n";
    return c;
}

}  // namespace

double nearest_distance_pdf(double density, double los_radius, double x) {
    if (!(density > 0.0) || !(los_radius > 0.0))
        throw std::invalid_argument("nearest_distance_pdf: density and radius must be > 0");
    if (x < 0.0 || x > los_radius) return 0.0;
    const double norm = -std::expm1(-density * kPi * los_radius * los_radius);
    return 2.0 * kPi * density * x * std::exp(-kPi * density * x * x) / norm;
}

double zeta(double z, int m) {
    if (!(z >= 0.0)) throw std::domain_error("zeta: requires z >= 0");
    if (z < 1e-300) return static_cast<double>(m);
    return -std::expm1(-m * std::log1p(z)) / z;
}

Analyzer::Analyzer(const HybridParams& params, specfun::QuadratureSpec quad)
    : params_(params), quad_(quad) {
    params_.validate();
    quad_.validate();
    if (!(params_.thz.density > 0.0) || !(params_.mmwave.density > 0.0))
        throw std::invalid_argument("Analyzer: tier densities must be > 0");

    pat_thz_ = antenna::build_mlft(params_.thz.array_size);
    pat_mm_ = antenna::build_mlft(params_.mmwave.array_size);
    for (const auto& lv : pat_thz_.levels) ghat_thz_.push_back(lv.gain / params_.thz.array_size);
    for (const auto& lv : pat_mm_.levels) ghat_mm_.push_back(lv.gain / params_.mmwave.array_size);

    k_a_ = channel::absorption_coefficient(params_.thz.frequency, params_.absorption);

    const TierParams& t = params_.thz;
    const TierParams& m = params_.mmwave;
    log_eps_ = std::log(m.bias) + std::log(m.tx_power) + std::log(double(m.array_size)) -
               std::log(t.bias) - std::log(t.tx_power) - std::log(double(t.array_size)) +
               2.0 * (std::log(t.frequency) - std::log(m.frequency));
    eps_ = std::exp(log_eps_);

    const int mm_shape = params_.nakagami_m;
    alzer_a_ = mm_shape * std::exp(-std::lgamma(mm_shape + 1.0) / mm_shape);

    const double c = channel::PhysicalConstants::c;
    const double njn = channel::johnson_nyquist_noise_density(
        t.frequency, params_.environment.temperature);
    noise_.thz_hat_n = std::exp(std::log(njn) - std::log(t.tx_power) -
                                std::log(double(t.array_size)) -
                                2.0 * std::log(c / (4.0 * kPi * t.frequency)));
    noise_.mm_sigma2 = std::exp(std::log(params_.mmwave_noise_power) - std::log(m.tx_power) -
                                std::log(double(m.array_size)) -
                                2.0 * std::log(c / (4.0 * kPi * m.frequency)));

    assoc_thz_ = specfun::integrate(
        [this](double x) {
            return nearest_distance_pdf(params_.thz.density, params_.thz.los_radius, x) *
                   assoc_suppression_thz(x);
        },
        0.0, t.los_radius, quad_);
    mm_weight_ = specfun::integrate(
        [this](double x) {
            return nearest_distance_pdf(params_.mmwave.density, params_.mmwave.los_radius, x) *
                   assoc_suppression_mmwave(x);
        },
        0.0, m.los_radius, quad_);
}

double Analyzer::assoc_suppression_thz(double x) const {
    if (x <= 0.0) return 1.0;
    const double arg = (2.0 / params_.mmwave.pathloss_exponent) *
                       (log_eps_ + params_.thz.pathloss_exponent * std::log(x) + k_a_ * x);
    return std::exp(-kPi * params_.mmwave.density * std::exp(arg));
}

double Analyzer::assoc_suppression_mmwave(double x) const {
    const double r = nu(x);
    return std::exp(-kPi * params_.thz.density * r * r);
}

double Analyzer::nu(double x_hat) const {
    if (!(x_hat >= 0.0)) throw std::domain_error("nu: requires x_hat >= 0");
    if (x_hat == 0.0) return 0.0;
    const double a_t = params_.thz.pathloss_exponent;
    const double a_m = params_.mmwave.pathloss_exponent;
    const double log_r0 = (a_m * std::log(x_hat) - log_eps_) / a_t;  // absorption-free root
    if (k_a_ <= 0.0) return std::exp(log_r0);
    const double z = (k_a_ / a_t) * std::exp(log_r0);
    return (a_t / k_a_) * specfun::lambert_w0(z);
}

double Analyzer::conditioned_pdf_thz(double x_hat) const {
    if (assoc_thz_ < 1e-12)
        throw std::domain_error("conditioned_pdf_thz: degenerate tier (association prob ~ 0)");
    return nearest_distance_pdf(params_.thz.density, params_.thz.los_radius, x_hat) *
           assoc_suppression_thz(x_hat) / assoc_thz_;
}

double Analyzer::conditioned_pdf_mmwave(double x_hat) const {
    if (mm_weight_ < 1e-12)
        throw std::domain_error("conditioned_pdf_mmwave: degenerate tier (association prob ~ 0)");
    return nearest_distance_pdf(params_.mmwave.density, params_.mmwave.los_radius, x_hat) *
           assoc_suppression_mmwave(x_hat) / mm_weight_;
}

double Analyzer::chi_thz_term(double s, double ghat, double t) const {
    const double a_t = params_.thz.pathloss_exponent;
    const int mm_shape = params_.nakagami_m;
    const double a = -2.0 / a_t;
    const double b = mm_shape;
    const double c = (a_t - 2.0) / a_t;
    const double scale = s * ghat / mm_shape;
    // antiderivative (t^2/2) 2F1(a, b; c; -scale * t^-a_t); for t -> 0 (or very
    // large |argument|) use the leading asymptotic, which is t-independent
    const double z = t > 0.0 ? -scale * std::pow(t, -a_t) : -1.0 / 0.0;
    if (!(z > -1e14)) {
        const double lg = std::lgamma(c) + std::lgamma(b - a) - std::lgamma(b) - std::lgamma(c - a);
        return 0.5 * std::exp(lg + (2.0 / a_t) * std::log(scale));
    }
    return 0.5 * t * t * specfun::gauss_2f1(a, b, c, z);
}

double Analyzer::chi_thz(double s, double x) const {
    const double r = params_.thz.los_radius;
    if (s <= 0.0) return 0.5 * ghat_thz_.size() * (r * r - x * x);
    double total = 0.0;
    for (double gh : ghat_thz_) total += chi_thz_term(s, gh, r) - chi_thz_term(s, gh, x);
    return total;
}

double Analyzer::laplace_interference_thz(double s, double x) const {
    if (s <= 0.0) return 1.0;
    const double r = params_.thz.los_radius;
    const double k_levels = static_cast<double>(ghat_thz_.size());
    const double lg = 4.0 * kPi * params_.thz.density * pat_thz_.hpbw *
                      (chi_thz(s, x) + 0.5 * k_levels * (x * x - r * r));
    return std::exp(std::min(lg, 0.0));
}

double Analyzer::chi_mm_term(double s, double ghat, double t) const {
    if (t <= 0.0) return 0.0;
    const double a_m = params_.mmwave.pathloss_exponent;
    const double z = -std::pow(t, a_m) / (s * ghat);
    return std::pow(t, a_m + 2.0) / (s * ghat * (a_m + 2.0)) *
           specfun::gauss_2f1(1.0, 1.0 + 2.0 / a_m, 2.0 + 2.0 / a_m, z);
}

double Analyzer::chi_mmwave(double s, double x) const {
    const double r = params_.mmwave.los_radius;
    if (s <= 0.0) return 0.5 * ghat_mm_.size() * (r * r - x * x);
    double total = 0.0;
    for (double gh : ghat_mm_) total += chi_mm_term(s, gh, r) - chi_mm_term(s, gh, x);
    return total;
}

double Analyzer::laplace_interference_mmwave(double s, double x) const {
    if (s <= 0.0) return 1.0;
    const double r = params_.mmwave.los_radius;
    const double k_levels = static_cast<double>(ghat_mm_.size());
    const double lg = 4.0 * kPi * params_.mmwave.density * pat_mm_.hpbw *
                      (chi_mmwave(s, x) + 0.5 * k_levels * (x * x - r * r));
    return std::exp(std::min(lg, 0.0));
}

double Analyzer::coverage_thz_kernel(double tau, double x, bool conditioned) const {
    const int mm_shape = params_.nakagami_m;
    const double base = tau * std::pow(x, params_.thz.pathloss_exponent) * std::exp(k_a_ * x);
    double sum = 0.0;
    for (int n = 1; n <= mm_shape; ++n) {
        const double pn = alzer_a_ * n * base;
        const double term = std::exp(-pn * noise_.thz_hat_n) * laplace_interference_thz(pn, x);
        sum += (n % 2 == 1 ? 1.0 : -1.0) * binom(mm_shape, n) * term;
    }
    double weight = nearest_distance_pdf(params_.thz.density, params_.thz.los_radius, x);
    if (conditioned) weight *= assoc_suppression_thz(x);
    return weight * sum;
}

double Analyzer::coverage_thz_standalone(double tau) const {
    if (!(tau > 0.0)) throw std::domain_error("coverage_thz_standalone: requires tau > 0");
    const double v = specfun::integrate(
        [&](double x) { return coverage_thz_kernel(tau, x, false); }, 0.0,
        params_.thz.los_radius, quad_);
    return clamp_probability(v, "coverage_thz_standalone");
}

double Analyzer::coverage_mmwave_standalone(double tau) const {
    if (!(tau > 0.0)) throw std::domain_error("coverage_mmwave_standalone: requires tau > 0");
    const double a_m = params_.mmwave.pathloss_exponent;
    const double v = specfun::integrate(
        [&](double x) {
            const double s = tau * std::pow(x, a_m);
            return nearest_distance_pdf(params_.mmwave.density, params_.mmwave.los_radius, x) *
                   std::exp(-s * noise_.mm_sigma2) * laplace_interference_mmwave(s, x);
        },
        0.0, params_.mmwave.los_radius, quad_);
    return clamp_probability(v, "coverage_mmwave_standalone");
}

double Analyzer::coverage_mmwave_interference_limited(double tau) const {
    if (!(tau > 0.0))
        throw std::domain_error("coverage_mmwave_interference_limited: requires tau > 0");
    if (std::abs(params_.mmwave.pathloss_exponent - 2.0) > 1e-12)
        throw std::invalid_argument(
            "coverage_mmwave_interference_limited: requires mmwave pathloss exponent 2");
    const double r = params_.mmwave.los_radius;
    const double coef = 2.0 * kPi * params_.mmwave.density * pat_mm_.hpbw;
    const double v = specfun::integrate(
        [&](double x) {
            const double s = tau * x * x;
            double lg = 0.0;
            for (double gh : ghat_mm_)
                lg += coef * gh * s * (std::log(x * x + s * gh) - std::log(r * r + s * gh));
            return nearest_distance_pdf(params_.mmwave.density, r, x) * std::exp(lg);
        },
        0.0, r, quad_);
    return clamp_probability(v, "coverage_mmwave_interference_limited");
}

double Analyzer::coverage_hybrid(double tau) const {
    if (!(tau > 0.0)) throw std::domain_error("coverage_hybrid: requires tau > 0");
    const double a_m = params_.mmwave.pathloss_exponent;
    const double num_thz = specfun::integrate(
        [&](double x) { return coverage_thz_kernel(tau, x, true); }, 0.0,
        params_.thz.los_radius, quad_);
    const double num_mm = specfun::integrate(
        [&](double x) {
            const double s = tau * std::pow(x, a_m);
            return nearest_distance_pdf(params_.mmwave.density, params_.mmwave.los_radius, x) *
                   assoc_suppression_mmwave(x) * std::exp(-s * noise_.mm_sigma2) *
                   laplace_interference_mmwave(s, x);
        },
        0.0, params_.mmwave.los_radius, quad_);
    return clamp_probability((num_thz + num_mm) / (assoc_thz_ + mm_weight_), "coverage_hybrid");
}

double Analyzer::se_thz_inner(double x) const {
    const int mm_shape = params_.nakagami_m;
    const double pref =
        mm_shape * std::exp(k_a_ * x) * std::pow(x, params_.thz.pathloss_exponent);
    // substitute z = e^u - 1 so the exponential tail is reached in O(10) units
    auto f = [&](double u) {
        if (u <= 0.0) return static_cast<double>(mm_shape);
        const double eta = pref * std::expm1(u);
        const double en = eta * noise_.thz_hat_n;
        if (!(en < 745.0)) return 0.0;
        const double ratio = std::expm1(-mm_shape * u) / std::expm1(-u);
        return ratio * std::exp(-en) * laplace_interference_thz(eta, x);
    };
    return specfun::integrate_semi_infinite(f, 0.0, quad_);
}

double Analyzer::se_mm_inner(double x) const {
    const double xam = std::pow(x, params_.mmwave.pathloss_exponent);
    // substitute tau = e^u - 1: the 1/(1+tau) factor is absorbed by d tau
    auto f = [&](double u) {
        const double tau = std::expm1(u);
        const double en = tau * xam * noise_.mm_sigma2;
        if (!(en < 745.0)) return 0.0;
        return std::exp(-en) * laplace_interference_mmwave(tau * xam, x);
    };
    return specfun::integrate_semi_infinite(f, 0.0, quad_);
}

double Analyzer::se_thz_weighted() const {
    specfun::QuadratureSpec outer = quad_;
    outer.rel_tol = std::max(quad_.rel_tol, 1e-6);
    return specfun::integrate(
        [&](double x) {
            const double w =
                nearest_distance_pdf(params_.thz.density, params_.thz.los_radius, x) *
                assoc_suppression_thz(x);
            if (w < 1e-300) return 0.0;
            return w * se_thz_inner(x);
        },
        0.0, params_.thz.los_radius, outer);
}

double Analyzer::se_mm_weighted() const {
    specfun::QuadratureSpec outer = quad_;
    outer.rel_tol = std::max(quad_.rel_tol, 1e-6);
    return specfun::integrate(
        [&](double x) {
            const double w =
                nearest_distance_pdf(params_.mmwave.density, params_.mmwave.los_radius, x) *
                assoc_suppression_mmwave(x);
            if (w < 1e-300) return 0.0;
            return w * se_mm_inner(x);
        },
        0.0, params_.mmwave.los_radius, outer);
}

double Analyzer::se_thz() const {
    if (assoc_thz_ < 1e-12)
        throw std::domain_error("se_thz: degenerate tier (association prob ~ 0)");
    return se_thz_weighted() / assoc_thz_;
}

double Analyzer::se_mmwave() const {
    if (mm_weight_ < 1e-12)
        throw std::domain_error("se_mmwave: degenerate tier (association prob ~ 0)");
    return se_mm_weighted() / mm_weight_;
}

double Analyzer::se_hybrid() const {
    return (se_thz_weighted() + se_mm_weighted()) / (assoc_thz_ + mm_weight_);
}

}  // namespace hybridnet::analysis
