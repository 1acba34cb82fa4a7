#include "hybridnet/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hybridnet::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct ParsedValue {
    double number = 0.0;
    std::string unit;  // possibly empty
};

ParsedValue parse_value(const std::string& key, const std::string& raw) {
    std::istringstream in(raw);
    ParsedValue v;
    if (!(in >> v.number))
        throw ConfigError(key + ": cannot parse numeric value from '" + raw + "'");
    in >> v.unit;
    std::string extra;
    if (in >> extra) throw ConfigError(key + ": trailing content '" + extra + "'");
    return v;
}

double as_plain(const std::string& key, const ParsedValue& v) {
    if (!v.unit.empty()) throw ConfigError(key + ": unexpected unit '" + v.unit + "'");
    return v.number;
}

double as_power_watts(const std::string& key, const ParsedValue& v) {
    if (v.unit == "dBm") return dbm_to_watts(v.number);
    if (v.unit == "W") return v.number;
    if (v.unit == "mW") return v.number * 1e-3;
    throw ConfigError(key + ": power requires a unit suffix (dBm, W, or mW)");
}

double as_frequency_hz(const std::string& key, const ParsedValue& v) {
    if (v.unit.empty() || v.unit == "Hz") return v.number;
    if (v.unit == "MHz") return v.number * 1e6;
    if (v.unit == "GHz") return v.number * 1e9;
    if (v.unit == "THz") return v.number * 1e12;
    throw ConfigError(key + ": unknown frequency unit '" + v.unit + "'");
}

double as_ratio(const std::string& key, const ParsedValue& v) {
    if (v.unit.empty()) return v.number;
    if (v.unit == "dB") return db_to_linear(v.number);
    throw ConfigError(key + ": unknown ratio unit '" + v.unit + "'");
}

long long as_integer(const std::string& key, const ParsedValue& v) {
    if (!v.unit.empty()) throw ConfigError(key + ": unexpected unit '" + v.unit + "'");
    const long long n = std::llround(v.number);
    if (std::abs(v.number - static_cast<double>(n)) > 1e-9)
        throw ConfigError(key + ": expected an integer");
    return n;
}

}  // namespace

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    const ParsedValue v = parse_value(key, trim(value));
    HybridParams& p = cfg.params;
    if (key == "density_thz") p.thz.density = as_plain(key, v);
    else if (key == "density_mm") p.mmwave.density = as_plain(key, v);
    else if (key == "frequency_thz") p.thz.frequency = as_frequency_hz(key, v);
    else if (key == "frequency_mm") p.mmwave.frequency = as_frequency_hz(key, v);
    else if (key == "tx_power_thz") p.thz.tx_power = as_power_watts(key, v);
    else if (key == "tx_power_mm") p.mmwave.tx_power = as_power_watts(key, v);
    else if (key == "noise_power_mm") p.mmwave_noise_power = as_power_watts(key, v);
    else if (key == "bias_thz") p.thz.bias = as_ratio(key, v);
    else if (key == "bias_mm") p.mmwave.bias = as_ratio(key, v);
    else if (key == "pathloss_exponent_thz") p.thz.pathloss_exponent = as_plain(key, v);
    else if (key == "pathloss_exponent_mm") p.mmwave.pathloss_exponent = as_plain(key, v);
    else if (key == "los_radius_thz") p.thz.los_radius = as_plain(key, v);
    else if (key == "los_radius_mm") p.mmwave.los_radius = as_plain(key, v);
    else if (key == "array_size_thz") p.thz.array_size = static_cast<int>(as_integer(key, v));
    else if (key == "array_size_mm") p.mmwave.array_size = static_cast<int>(as_integer(key, v));
    else if (key == "nakagami_m") p.nakagami_m = static_cast<int>(as_integer(key, v));
    else if (key == "temperature") p.environment.temperature = as_plain(key, v);
    else if (key == "pressure") p.environment.pressure = as_plain(key, v);
    else if (key == "relative_humidity") p.environment.relative_humidity = as_plain(key, v);
    else if (key == "absorption_k_a")
        p.absorption = channel::AbsorptionSource::fixed(as_plain(key, v));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(as_integer(key, v));
    else if (key == "n_trials") cfg.n_trials = as_integer(key, v);
    else if (key == "threads") cfg.threads = static_cast<int>(as_integer(key, v));
    else if (key == "quad_rel_tol") cfg.quad.rel_tol = as_plain(key, v);
    else if (key == "quad_abs_tol") cfg.quad.abs_tol = as_plain(key, v);
    else if (key == "quad_max_subdivisions")
        cfg.quad.max_subdivisions = static_cast<int>(as_integer(key, v));
    else
        throw ConfigError("unknown configuration key '" + key + "'");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    // keep the simplified-absorption environment in sync with the config
    if (cfg.params.absorption.kind == channel::AbsorptionSource::Kind::Simplified)
        cfg.params.absorption.env = cfg.params.environment;
    try {
        cfg.params.validate();
        cfg.quad.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (cfg.n_trials < 1) throw ConfigError("n_trials must be >= 1");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    if (path.empty()) return parse_config_text("");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string describe(const RunConfig& cfg) {
    const HybridParams& p = cfg.params;
    std::ostringstream out;
    out.precision(10);
    auto line = [&out](const std::string& key, auto value, const std::string& unit = "") {
        out << key << " = " << value;
        if (!unit.empty()) out << " " << unit;
        out << "\n";
    };
    line("density_thz", p.thz.density, "1/m^2");
    line("density_mm", p.mmwave.density, "1/m^2");
    line("frequency_thz", p.thz.frequency, "Hz");
    line("frequency_mm", p.mmwave.frequency, "Hz");
    line("tx_power_thz", p.thz.tx_power, "W");
    line("tx_power_mm", p.mmwave.tx_power, "W");
    line("noise_power_mm", p.mmwave_noise_power, "W");
    line("bias_thz", p.thz.bias);
    line("bias_mm", p.mmwave.bias);
    line("pathloss_exponent_thz", p.thz.pathloss_exponent);
    line("pathloss_exponent_mm", p.mmwave.pathloss_exponent);
    line("los_radius_thz", p.thz.los_radius, "m");
    line("los_radius_mm", p.mmwave.los_radius, "m");
    line("array_size_thz", p.thz.array_size);
    line("array_size_mm", p.mmwave.array_size);
    line("nakagami_m", p.nakagami_m);
    line("temperature", p.environment.temperature, "K");
    line("pressure", p.environment.pressure, "Pa");
    line("relative_humidity", p.environment.relative_humidity);
    if (p.absorption.kind == channel::AbsorptionSource::Kind::Fixed)
        line("absorption_k_a", p.absorption.fixed_k_a, "1/m");
    else
        out << "absorption = simplified\n";
    line("seed", cfg.seed);
    line("n_trials", cfg.n_trials);
    line("threads", cfg.threads);
    line("quad_rel_tol", cfg.quad.rel_tol);
    line("quad_abs_tol", cfg.quad.abs_tol);
    line("quad_max_subdivisions", cfg.quad.max_subdivisions);
    return out.str();
}

}  // namespace hybridnet::config
