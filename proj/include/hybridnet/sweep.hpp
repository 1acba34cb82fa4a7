#pragma once

#include <string>
#include <vector>

#include "hybridnet/config.hpp"

// Parameter sweeps over analytic and Monte Carlo engines, written as CSV with
// a fixed schema: sweep_key,sweep_value,tau_db,analytic_value,mc_mean,
// mc_stderr,n_trials,seed.

namespace hybridnet::sweep {

class SweepError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Metric {
    CoverageThz,
    CoverageMm,
    CoverageHybrid,
    SeHybrid,
    Association,
    AbsorptionCoefficient,
};

enum class Engines { Analytic, MonteCarlo, Both };

struct SweepSpec {
    std::string key = "none";              // config key being swept; "none" = single point
    std::vector<double> values = {0.0};    // applied values (linear domain)
    Metric metric = Metric::CoverageHybrid;
    std::vector<double> tau_db = {20.0};   // thresholds, for coverage metrics
    Engines engines = Engines::Both;
};

Metric parse_metric(const std::string& name);
Engines parse_engines(const std::string& name);

/// Parse a value list: either "v1,v2,..." or "start:stop:steps:scale" with
/// scale in {linear, log, dB}; dB-scaled values are converted to linear.
std::vector<double> parse_values(const std::string& spec);

/// Execute the sweep and write the CSV (plus a ".meta" sidecar with the
/// resolved configuration). Deterministic byte-for-byte for a fixed seed.
void run_sweep(const config::RunConfig& cfg, const SweepSpec& spec,
               const std::string& out_path);

}  // namespace hybridnet::sweep
