#include "hybridnet/channel.hpp"

#include <cmath>
#include <numbers>

namespace hybridnet::channel {

namespace {
constexpr double kPi = std::numbers::pi;
}

double saturated_vapor_pressure(const Environment& env) {
    env.validate();
    const double t_celsius = env.temperature - 273.15;
    const double p_hpa = env.pressure / 100.0;
    // Buck equation: constants are the hPa/Celsius parameterization, so the
    // enhancement factor takes pressure in hPa; result converted back to Pa.
    const double sat_hpa = 6.1121 * (1.0007 + 3.46e-6 * p_hpa) *
                           std::exp(17.502 * t_celsius / (240.94 + t_celsius));
    return sat_hpa * 100.0;
}

double water_vapor_mixing_ratio(const Environment& env) {
    env.validate();
    return env.relative_humidity * saturated_vapor_pressure(env) / env.pressure;
}

double absorption_coefficient(double f_hz, const AbsorptionSource& source) {
    if (source.kind == AbsorptionSource::Kind::Fixed) {
        if (!(f_hz >= 0.0)) throw std::domain_error("absorption_coefficient: f must be >= 0");
        return source.fixed_k_a;
    }
    if (!(f_hz >= kAbsorptionBandLow && f_hz <= kAbsorptionBandHigh))
        throw std::domain_error(
            "absorption_coefficient: simplified model is valid only for 275-400 GHz");
    const double mu = water_vapor_mixing_ratio(source.env);
    const double wavenumber = f_hz / (100.0 * PhysicalConstants::c);  // 1/cm

    const double d1 = wavenumber - 10.835;
    const double y1 = 0.2205 * mu * (0.1303 * mu + 0.0294) /
                      (std::pow(0.4093 * mu + 0.0925, 2) + d1 * d1);

    const double d2 = wavenumber - 12.664;
    const double y2 = 2.014 * mu * (0.1702 * mu + 0.0303) /
                      (std::pow(0.537 * mu + 0.0956, 2) + d2 * d2);

    const double omega =
        ((5.54e-37 * f_hz - 3.94e-25) * f_hz + 9.06e-14) * f_hz - 6.36e-3;

    return y1 + y2 + omega;
}

double absorption_loss(double k_a, double x) {
    if (!(k_a >= 0.0) || !(x >= 0.0))
        throw std::domain_error("absorption_loss: requires k_a >= 0 and x >= 0");
    return std::exp(-k_a * x);
}

double pathloss(double f_hz, double x, double alpha) {
    if (!(f_hz > 0.0)) throw std::domain_error("pathloss: requires f > 0");
    if (!(x > 0.0)) throw std::domain_error("pathloss: requires x > 0");
    const double l0 = PhysicalConstants::c / (4.0 * kPi * f_hz);
    return l0 * l0 * std::pow(x, -alpha);
}

double johnson_nyquist_noise_density(double f_hz, double temperature) {
    if (!(f_hz > 0.0) || !(temperature > 0.0))
        throw std::domain_error("johnson_nyquist_noise_density: requires f > 0 and T > 0");
    const double hf = PhysicalConstants::hbar_planck * f_hz;
    return hf / std::expm1(hf / (PhysicalConstants::k_boltzmann * temperature));
}

double sample_nakagami_power(std::mt19937_64& rng, int m) {
    if (m < 1) throw std::invalid_argument("sample_nakagami_power: m must be >= 1");
    std::gamma_distribution<double> dist(static_cast<double>(m), 1.0 / m);
    return dist(rng);
}

double sample_rayleigh_power(std::mt19937_64& rng) {
    std::exponential_distribution<double> dist(1.0);
    return dist(rng);
}

}  // namespace hybridnet::channel
