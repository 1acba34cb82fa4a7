#pragma once

#include <random>
#include <stdexcept>

// Propagation physics: simplified water-vapor absorption model, free-space
// pathloss, Johnson-Nyquist noise, and small-scale fading samplers.

namespace hybridnet::channel {

struct PhysicalConstants {
    static constexpr double c = 299792458.0;             // m/s
    static constexpr double hbar_planck = 1.054571817e-34;  // J*s
    static constexpr double k_boltzmann = 1.380649e-23;  // J/K
};

// Validity band of the simplified absorption model.
constexpr double kAbsorptionBandLow = 275e9;
constexpr double kAbsorptionBandHigh = 400e9;

struct Environment {
    double temperature = 296.0;       // kelvin
    double pressure = 101325.0;       // pascal
    double relative_humidity = 0.6;   // fraction in [0, 1]

    void validate() const {
        if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0 K");
        if (!(pressure > 0.0)) throw std::invalid_argument("pressure must be > 0 Pa");
        if (!(relative_humidity >= 0.0 && relative_humidity <= 1.0))
            throw std::invalid_argument(
                "relative_humidity out of range: expected fraction in [0,1]"
                " (divide percentages by 100)");
    }
};

// Absorption coefficient source: computed from the environment via the
// simplified model, or a fixed user override (e.g. database-derived values).
struct AbsorptionSource {
    enum class Kind { Simplified, Fixed };

    Kind kind = Kind::Simplified;
    Environment env{};
    double fixed_k_a = 0.0;  // 1/m, used when kind == Fixed

    static AbsorptionSource simplified(const Environment& e) {
        e.validate();
        return {Kind::Simplified, e, 0.0};
    }
    static AbsorptionSource fixed(double k_a) {
        if (!(k_a >= 0.0)) throw std::invalid_argument("fixed k_a must be >= 0");
        return {Kind::Fixed, Environment{}, k_a};
    }
};

/// Saturated water vapor pressure in pascal (Buck equation; input in kelvin,
/// converted internally to Celsius, output converted from hPa).
double saturated_vapor_pressure(const Environment& env);

/// Volume mixing ratio of water vapor: relative_humidity * p_sat / p.
double water_vapor_mixing_ratio(const Environment& env);

/// Molecular absorption coefficient k_a(f) in 1/m. Simplified sources are
/// valid for f in [275, 400] GHz only; Fixed sources return the override.
double absorption_coefficient(double f_hz, const AbsorptionSource& source);

/// Transmittance e^{-k_a x} over a path of length x meters.
double absorption_loss(double k_a, double x);

/// Free-space spreading loss (c / 4 pi f)^2 * x^{-alpha}.
double pathloss(double f_hz, double x, double alpha);

/// Johnson-Nyquist noise term hbar*f / (e^{hbar f / k_B T} - 1).
double johnson_nyquist_noise_density(double f_hz, double temperature);

/// Nakagami-m power fading: Gamma(m, 1/m) draw with unit mean.
double sample_nakagami_power(std::mt19937_64& rng, int m);

/// Rayleigh power fading: unit-mean exponential draw.
double sample_rayleigh_power(std::mt19937_64& rng);

}  // namespace hybridnet::channel
