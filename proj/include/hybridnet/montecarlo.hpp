#pragma once

#include <cstdint>
#include <vector>

#include "hybridnet/params.hpp"

// Simulation oracle independent of the closed-form math: draws Poisson node
// sets inside each tier's LOS ball, applies biased max-average-power
// association, and measures SINR statistics directly.

namespace hybridnet::montecarlo {

enum class Association { None, THz, MMWave };
enum class Mode { THzOnly, MMOnly, Hybrid };

struct Node {
    double distance;  // m
    double gain;      // linear
    double fading;    // power coefficient
};

struct Realization {
    std::vector<Node> thz_nodes;  // nodes within the THz LOS ball
    std::vector<Node> mm_nodes;   // nodes within the mmWave LOS ball
    Association association = Association::None;
    bool serving_in_ball = false;  // false for a blocked (beyond-ball) serving link
    double serving_distance = 0.0;
    double sinr = 0.0;             // 0 when no in-ball serving link exists
    double interference = 0.0;     // watts
    double absorption_noise = 0.0;  // watts (THz association only)
};

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t n_trials = 0;
    std::int64_t n_conditioned = 0;
};

struct CoverageEstimate {
    double tau = 0.0;            // linear threshold
    Estimate unconditional;      // trials without a serving link count as not covered
    Estimate conditioned;        // restricted to trials with an in-ball serving link
};

struct SeEstimate {
    Estimate unconditional;      // ln(1+SINR), 0 for trials without a serving link
    Estimate conditioned;        // restricted to trials with an in-ball serving link
    Estimate conditioned_thz;
    Estimate conditioned_mm;
};

/// Deterministic per-trial generator: identical (master_seed, trial_index)
/// always yields the same stream, independent of worker partitioning.
std::mt19937_64 trial_rng(std::uint64_t master_seed, std::int64_t trial_index);

/// Draw one network snapshot and resolve association and SINR.
///
/// mmWave candidates for the association comparison are generated out to a
/// radius large enough that the nearest mmWave node is essentially never
/// missed; a winning mmWave link whose distance exceeds R_m is blocked
/// (SINR 0, serving_in_ball false). Interferers are confined to the balls.
Realization realize_network(std::mt19937_64& rng, const HybridParams& params);

/// Fraction of trials associating with the THz tier, among trials with any
/// association. Binomial standard error.
Estimate estimate_association(const HybridParams& params, std::uint64_t seed,
                              std::int64_t n_trials, int threads = 0);

/// Coverage at each threshold of tau_grid, one shared realization set.
std::vector<CoverageEstimate> estimate_coverage(const HybridParams& params, std::uint64_t seed,
                                                const std::vector<double>& tau_grid,
                                                std::int64_t n_trials, Mode mode,
                                                int threads = 0);

/// Mean ln(1+SINR) per association scope.
SeEstimate estimate_se(const HybridParams& params, std::uint64_t seed, std::int64_t n_trials,
                       Mode mode, int threads = 0);

}  // namespace hybridnet::montecarlo
