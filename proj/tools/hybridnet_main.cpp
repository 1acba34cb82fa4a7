#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hybridnet/config.hpp"
#include "hybridnet/selftest.hpp"
#include "hybridnet/specfun.hpp"
#include "hybridnet/sweep.hpp"

namespace {

struct RunOptions {
    std::string config_path;
    std::string sweep_arg;     // KEY=SPEC
    std::string metric = "coverage_hybrid";
    std::string tau_db = "20";
    std::string engines = "both";
    std::string out_path;
    std::int64_t trials = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = -1;
};

std::vector<double> parse_db_list(const std::string& list) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto comma = list.find(',', pos);
        const std::string item =
            list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) out.push_back(std::stod(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int do_run(const RunOptions& opt) {
    using hybridnet::sweep::SweepError;
    hybridnet::config::RunConfig cfg;
    try {
        cfg = hybridnet::config::load_config(opt.config_path);
        if (opt.trials >= 0) cfg.n_trials = opt.trials;
        if (opt.seed_set) cfg.seed = opt.seed;
        if (opt.threads >= 0) cfg.threads = opt.threads;
    } catch (const hybridnet::config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    try {
        hybridnet::sweep::SweepSpec spec;
        spec.metric = hybridnet::sweep::parse_metric(opt.metric);
        spec.engines = hybridnet::sweep::parse_engines(opt.engines);
        spec.tau_db = parse_db_list(opt.tau_db);
        if (!opt.sweep_arg.empty()) {
            const auto eq = opt.sweep_arg.find('=');
            if (eq == std::string::npos)
                throw SweepError("--sweep expects KEY=SPEC, got '" + opt.sweep_arg + "'");
            spec.key = opt.sweep_arg.substr(0, eq);
            spec.values = hybridnet::sweep::parse_values(opt.sweep_arg.substr(eq + 1));
        }
        hybridnet::sweep::run_sweep(cfg, spec, opt.out_path);
    } catch (const SweepError& e) {
        std::cerr << "sweep error: " << e.what() << "\n";
        return 2;
    } catch (const hybridnet::specfun::NonConvergenceError& e) {
        std::cerr << "numerical non-convergence: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int do_validate(const std::string& config_path) {
    try {
        const auto cfg = hybridnet::config::load_config(config_path);
        std::cout << hybridnet::config::describe(cfg);
        std::cout << "configuration valid\n";
        return 0;
    } catch (const hybridnet::config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-tier THz/mmWave network analysis engine and simulator"};
    app.require_subcommand(1);

    RunOptions opt;
    CLI::App* run = app.add_subcommand("run", "Execute a sweep and write CSV");
    run->add_option("--config", opt.config_path, "Config file (key = value lines)");
    run->add_option("--sweep", opt.sweep_arg, "KEY=v1,v2,... or KEY=start:stop:steps:scale");
    run->add_option("--metric", opt.metric,
                    "coverage_thz|coverage_mm|coverage_hybrid|se_hybrid|association|"
                    "absorption_coefficient");
    run->add_option("--tau-db", opt.tau_db, "Comma-separated SINR thresholds in dB");
    run->add_option("--engines", opt.engines, "analytic|mc|both");
    run->add_option("--trials", opt.trials, "Monte Carlo trials per point");
    run->add_option("--seed", opt.seed, "Master seed")->each([&opt](const std::string&) {
        opt.seed_set = true;
    });
    run->add_option("--threads", opt.threads, "Worker threads (0 = hardware)");
    run->add_option("--out", opt.out_path, "Output CSV path")->required();

    std::string validate_config;
    CLI::App* validate = app.add_subcommand("validate", "Check and echo a configuration");
    validate->add_option("--config", validate_config, "Config file");

    CLI::App* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return do_run(opt);
    if (validate->parsed()) return do_validate(validate_config);
    if (selftest->parsed()) return hybridnet::selftest::run_selftest(argv[0]);
    return 0;
}
