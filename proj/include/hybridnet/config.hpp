#pragma once

#include <cstdint>
#include <string>

#include "hybridnet/params.hpp"
#include "hybridnet/specfun.hpp"

// Flat key = value configuration with explicit unit suffixes. Absent keys
// fall back to the built-in defaults of HybridParams.

namespace hybridnet::config {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    HybridParams params{};
    std::uint64_t seed = 1;
    std::int64_t n_trials = 10000;
    int threads = 0;  // 0 = hardware concurrency
    specfun::QuadratureSpec quad{};
};

/// Parse configuration text: one `key = value` per line, `#` comments.
/// Powers require a unit suffix (dBm or W); frequencies accept Hz/MHz/GHz/THz;
/// biases accept a plain linear value or dB. Throws ConfigError with the
/// offending key on malformed or unknown input; validates the result.
RunConfig parse_config_text(const std::string& text);

/// Load and parse a config file; an empty path yields pure defaults.
RunConfig load_config(const std::string& path);

/// Apply one `key = value` override (same syntax as a config line).
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

/// Human-readable echo of the fully resolved configuration, including
/// unit-converted internal values.
std::string describe(const RunConfig& cfg);

}  // namespace hybridnet::config
