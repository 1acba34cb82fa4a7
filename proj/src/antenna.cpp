#include "hybridnet/antenna.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hybridnet::antenna {

namespace {
constexpr double kPi = std::numbers::pi;
}

double actual_gain(double phi, int n_elements) {
    if (n_elements < 2) throw std::invalid_argument("actual_gain: n_elements must be >= 2");
    const double n = static_cast<double>(n_elements);
    const double s = std::sin(kPi * phi);
    if (std::abs(s) < 1e-9) {
        // removable singularity at integer phi: the ratio tends to N
        return n;
    }
    const double sn = std::sin(kPi * n * phi);
    return sn * sn / (n * s * s);
}

double solve_hpbw(int n_elements) {
    if (n_elements < 2) throw std::invalid_argument("solve_hpbw: n_elements must be >= 2");
    const double n = static_cast<double>(n_elements);
    double lo = 0.0;           // gain N_t (above half power)
    double hi = 1.0 / n;       // first null, gain 0 (below half power)
    if (!(actual_gain(hi * (1.0 - 1e-12), n_elements) < 0.5 * n))
        throw std::logic_error("solve_hpbw: bracketing failed");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (actual_gain(mid, n_elements) > 0.5 * n)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

MlftPattern build_mlft(int n_elements) {
    MlftPattern p;
    p.n_elements = n_elements;
    p.hpbw = solve_hpbw(n_elements);
    const int k_levels = n_elements / 2;
    p.levels.reserve(k_levels);
    p.levels.push_back({0.5 * p.hpbw, static_cast<double>(n_elements)});
    for (int k = 2; k <= k_levels; ++k) {
        const double center = (2.0 * k - 1.0) / (2.0 * n_elements);
        p.levels.push_back({center, actual_gain(center, n_elements)});
    }
    return p;
}

double mlft_gain(const MlftPattern& pattern, double phi) {
    const double a = std::abs(phi);
    const double half = 0.5 * pattern.hpbw;
    for (const Level& lv : pattern.levels) {
        if (a >= lv.center - half && a < lv.center + half) return lv.gain;
    }
    return 0.0;
}

std::vector<GainAtom> interferer_gain_distribution(const MlftPattern& pattern) {
    std::vector<GainAtom> atoms;
    atoms.reserve(pattern.levels.size() + 1);
    const double per_level = 2.0 * pattern.hpbw;
    double zero_prob = 1.0;
    for (const Level& lv : pattern.levels) {
        atoms.push_back({lv.gain, per_level});
        zero_prob -= per_level;
    }
    atoms.push_back({0.0, zero_prob});
    return atoms;
}

}  // namespace hybridnet::antenna
