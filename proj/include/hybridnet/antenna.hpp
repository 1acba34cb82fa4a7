#pragma once

#include <vector>

// Uniform-linear-array gain in cosine direction, its multi-level flat-top
// (MLFT) piecewise-constant approximation, and the discrete gain distribution
// seen from a randomly oriented interferer.

namespace hybridnet::antenna {

struct Level {
    double center;  // cosine-direction bin center phi_k
    double gain;    // linear power gain G_k
};

struct MlftPattern {
    int n_elements = 0;              // N_t
    double hpbw = 0.0;               // psi, half-power beamwidth in cosine direction
    std::vector<Level> levels;       // K = floor(N_t/2) levels; levels[0] = {psi/2, N_t}
};

struct GainAtom {
    double gain;
    double probability;
};

/// Array factor gain sin^2(pi N_t phi) / (N_t sin^2(pi phi)), with the
/// removable singularities at integer phi evaluated by their limit N_t.
double actual_gain(double phi, int n_elements);

/// Half-power beamwidth: the unique root psi in (0, 1/N_t) of
/// actual_gain(psi) = N_t/2, found by bisection to 1e-12 absolute.
double solve_hpbw(int n_elements);

/// Build the MLFT pattern: level 1 is the main lobe (phi_1 = psi/2, G_1 = N_t);
/// level k >= 2 is centered at (2k-1)/(2 N_t) with the actual gain there.
MlftPattern build_mlft(int n_elements);

/// Piecewise-constant gain: G_k if |phi| falls in [phi_k - psi/2, phi_k + psi/2)
/// for some level k, else 0.
double mlft_gain(const MlftPattern& pattern, double phi);

/// Gain distribution for an interferer whose beam direction is uniform in
/// cosine direction: each level's gain with probability 2*psi, zero gain with
/// the remaining probability 1 - 2*K*psi.
std::vector<GainAtom> interferer_gain_distribution(const MlftPattern& pattern);

}  // namespace hybridnet::antenna
