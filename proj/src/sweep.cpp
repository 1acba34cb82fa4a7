#include "hybridnet/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "hybridnet/analysis.hpp"
#include "hybridnet/channel.hpp"
#include "hybridnet/montecarlo.hpp"

namespace hybridnet::sweep {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

struct Row {
    std::string sweep_key;
    double sweep_value = 0.0;
    std::optional<double> tau_db;
    std::optional<double> analytic;
    std::optional<double> mc_mean;
    std::optional<double> mc_stderr;
    std::optional<long long> n_trials;
    std::uint64_t seed = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw SweepError("cannot parse number '" + s + "'");
    return v;
}

config::RunConfig apply_sweep_value(const config::RunConfig& base, const SweepSpec& spec,
                                    double value) {
    config::RunConfig cfg = base;
    if (spec.key != "none") {
        try {
            config::apply_override(cfg, spec.key, fmt(value));
            if (cfg.params.absorption.kind == channel::AbsorptionSource::Kind::Simplified)
                cfg.params.absorption.env = cfg.params.environment;
            cfg.params.validate();
        } catch (const config::ConfigError& e) {
            throw SweepError(std::string("sweep value rejected: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw SweepError(std::string("sweep value rejected: ") + e.what());
        }
    }
    return cfg;
}

}  // namespace

Metric parse_metric(const std::string& name) {
    if (name == "coverage_thz") return Metric::CoverageThz;
    if (name == "coverage_mm") return Metric::CoverageMm;
    if (name == "coverage_hybrid") return Metric::CoverageHybrid;
    if (name == "se_hybrid") return Metric::SeHybrid;
    if (name == "association") return Metric::Association;
    if (name == "absorption_coefficient") return Metric::AbsorptionCoefficient;
    throw SweepError("unknown metric '" + name + "'");
}

Engines parse_engines(const std::string& name) {
    if (name == "analytic") return Engines::Analytic;
    if (name == "mc" || name == "montecarlo") return Engines::MonteCarlo;
    if (name == "both") return Engines::Both;
    throw SweepError("unknown engines selector '" + name + "'");
}

std::vector<double> parse_values(const std::string& spec) {
    if (spec.empty()) throw SweepError("empty sweep value list");
    if (spec.find(':') == std::string::npos) {
        std::vector<double> values;
        for (const std::string& s : split(spec, ',')) values.push_back(parse_double(s));
        if (values.empty()) throw SweepError("empty sweep value list");
        return values;
    }
    const auto parts = split(spec, ':');
    if (parts.size() != 4)
        throw SweepError("range sweep must be start:stop:steps:scale, got '" + spec + "'");
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    const long long steps = std::llround(parse_double(parts[2]));
    const std::string& scale = parts[3];
    if (steps < 1) throw SweepError("sweep steps must be >= 1");
    std::vector<double> values;
    for (long long i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        double v;
        if (scale == "linear" || scale == "dB") {
            v = start + t * (stop - start);
            if (scale == "dB") v = std::pow(10.0, v / 10.0);
        } else if (scale == "log") {
            if (!(start > 0.0) || !(stop > 0.0))
                throw SweepError("log sweep requires positive endpoints");
            v = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
        } else {
            throw SweepError("unknown sweep scale '" + scale + "'");
        }
        values.push_back(v);
    }
    return values;
}

void run_sweep(const config::RunConfig& cfg, const SweepSpec& spec,
               const std::string& out_path) {
    if (spec.values.empty()) throw SweepError("sweep has no values");
    const bool want_analytic = spec.engines != Engines::MonteCarlo;
    const bool want_mc = spec.engines != Engines::Analytic;
    const bool coverage_metric = spec.metric == Metric::CoverageThz ||
                                 spec.metric == Metric::CoverageMm ||
                                 spec.metric == Metric::CoverageHybrid;
    if (spec.metric == Metric::AbsorptionCoefficient && want_mc)
        throw SweepError("absorption_coefficient is analytic-only; use --engines analytic");
    if (coverage_metric && spec.tau_db.empty())
        throw SweepError("coverage metrics require at least one tau value");

    std::vector<Row> rows;
    for (double value : spec.values) {
        const config::RunConfig point = apply_sweep_value(cfg, spec, value);
        const HybridParams& p = point.params;

        if (spec.metric == Metric::AbsorptionCoefficient) {
            Row r{spec.key, value, std::nullopt, std::nullopt, std::nullopt,
                  std::nullopt, std::nullopt, cfg.seed};
            const double f = spec.key == "none" ? p.thz.frequency : value;
            r.analytic = channel::absorption_coefficient(f, p.absorption);
            rows.push_back(r);
            continue;
        }

        if (spec.metric == Metric::Association) {
            Row r{spec.key, value, std::nullopt, std::nullopt, std::nullopt,
                  std::nullopt, std::nullopt, cfg.seed};
            if (want_analytic)
                r.analytic = analysis::Analyzer(p, point.quad).association_prob_thz();
            if (want_mc) {
                const auto e = montecarlo::estimate_association(p, cfg.seed, point.n_trials,
                                                                point.threads);
                r.mc_mean = e.mean;
                r.mc_stderr = e.stderr_;
                r.n_trials = e.n_trials;
            }
            rows.push_back(r);
            continue;
        }

        if (spec.metric == Metric::SeHybrid) {
            Row r{spec.key, value, std::nullopt, std::nullopt, std::nullopt,
                  std::nullopt, std::nullopt, cfg.seed};
            if (want_analytic) r.analytic = analysis::Analyzer(p, point.quad).se_hybrid();
            if (want_mc) {
                const auto e = montecarlo::estimate_se(p, cfg.seed, point.n_trials,
                                                       montecarlo::Mode::Hybrid, point.threads);
                r.mc_mean = e.conditioned.mean;
                r.mc_stderr = e.conditioned.stderr_;
                r.n_trials = e.conditioned.n_trials;
            }
            rows.push_back(r);
            continue;
        }

        // coverage metrics: one shared Monte Carlo realization set per point
        std::vector<double> taus;
        for (double db : spec.tau_db) taus.push_back(std::pow(10.0, db / 10.0));
        std::vector<montecarlo::CoverageEstimate> mc;
        if (want_mc) {
            const montecarlo::Mode mode = spec.metric == Metric::CoverageThz
                                              ? montecarlo::Mode::THzOnly
                                              : spec.metric == Metric::CoverageMm
                                                    ? montecarlo::Mode::MMOnly
                                                    : montecarlo::Mode::Hybrid;
            mc = montecarlo::estimate_coverage(p, cfg.seed, taus, point.n_trials, mode,
                                               point.threads);
        }
        std::optional<analysis::Analyzer> analyzer;
        if (want_analytic) analyzer.emplace(p, point.quad);
        for (std::size_t i = 0; i < taus.size(); ++i) {
            Row r{spec.key, value, spec.tau_db[i], std::nullopt, std::nullopt,
                  std::nullopt, std::nullopt, cfg.seed};
            if (analyzer) {
                if (spec.metric == Metric::CoverageThz)
                    r.analytic = analyzer->coverage_thz_standalone(taus[i]);
                else if (spec.metric == Metric::CoverageMm)
                    r.analytic = analyzer->coverage_mmwave_standalone(taus[i]);
                else
                    r.analytic = analyzer->coverage_hybrid(taus[i]);
            }
            if (want_mc) {
                r.mc_mean = mc[i].conditioned.mean;
                r.mc_stderr = mc[i].conditioned.stderr_;
                r.n_trials = mc[i].conditioned.n_trials;
            }
            rows.push_back(r);
        }
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw SweepError("cannot open output file '" + out_path + "'");
    out << "sweep_key,sweep_value,tau_db,analytic_value,mc_mean,mc_stderr,n_trials,seed\n";
    for (const Row& r : rows) {
        out << r.sweep_key << ',' << fmt(r.sweep_value) << ',' << fmt_opt(r.tau_db) << ','
            << fmt_opt(r.analytic) << ',' << fmt_opt(r.mc_mean) << ',' << fmt_opt(r.mc_stderr)
            << ',' << (r.n_trials ? std::to_string(*r.n_trials) : "") << ',' << r.seed << '\n';
    }
    out.close();

    std::ofstream meta(out_path + ".meta", std::ios::binary);
    if (!meta) throw SweepError("cannot open sidecar file '" + out_path + ".meta'");
    meta << "# resolved configuration\n" << config::describe(cfg);
    meta << "sweep_key = " << spec.key << "\n";
    meta << "sweep_values =";
    for (double v : spec.values) meta << ' ' << fmt(v);
    meta << "\n";
}

}  // namespace hybridnet::sweep
