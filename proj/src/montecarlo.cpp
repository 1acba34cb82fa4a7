#include "hybridnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "hybridnet/antenna.hpp"
#include "hybridnet/channel.hpp"

namespace hybridnet::montecarlo {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Per-scenario constants shared by all trials.
struct SimContext {
    HybridParams params;
    antenna::MlftPattern pat_thz;
    antenna::MlftPattern pat_mm;
    double k_a = 0.0;
    double njn = 0.0;       // Johnson-Nyquist noise power at the THz carrier
    double l0_thz = 0.0;    // (c / 4 pi f)^2 per tier
    double l0_mm = 0.0;
    double log_bias_thz = 0.0;  // log biased average power at unit distance
    double log_bias_mm = 0.0;
    double mm_gen_radius = 0.0;  // generation radius for mmWave candidates

    explicit SimContext(const HybridParams& p) : params(p) {
        params.validate();
        pat_thz = antenna::build_mlft(params.thz.array_size);
        pat_mm = antenna::build_mlft(params.mmwave.array_size);
        k_a = channel::absorption_coefficient(params.thz.frequency, params.absorption);
        njn = channel::johnson_nyquist_noise_density(params.thz.frequency,
                                                     params.environment.temperature);
        const double c = channel::PhysicalConstants::c;
        const double q_thz = c / (4.0 * kPi * params.thz.frequency);
        const double q_mm = c / (4.0 * kPi * params.mmwave.frequency);
        l0_thz = q_thz * q_thz;
        l0_mm = q_mm * q_mm;
        log_bias_thz = std::log(params.thz.bias) + std::log(params.thz.tx_power) +
                       std::log(double(params.thz.array_size)) + 2.0 * std::log(q_thz);
        log_bias_mm = std::log(params.mmwave.bias) + std::log(params.mmwave.tx_power) +
                      std::log(double(params.mmwave.array_size)) + 2.0 * std::log(q_mm);
        // radius such that the nearest mmWave node lies beyond it with
        // probability <= e^{-25}: association fidelity to the unbounded model
        mm_gen_radius = params.mmwave.density > 0.0
                            ? std::max(params.mmwave.los_radius,
                                       std::sqrt(25.0 / (kPi * params.mmwave.density)))
                            : 0.0;
    }
};

int poisson_count(std::mt19937_64& rng, double mean) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<int> dist(mean);
    return dist(rng);
}

// Gain of an interferer whose beam direction is random: level k with
// probability 2*psi each, zero gain otherwise.
double sample_interferer_gain(std::mt19937_64& rng, const antenna::MlftPattern& pat) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u = uni(rng);
    const double per_level = 2.0 * pat.hpbw;
    const double covered = per_level * pat.levels.size();
    if (u >= covered) return 0.0;
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(u / per_level),
                                           pat.levels.size() - 1);
    return pat.levels[idx].gain;
}

Realization realize(std::mt19937_64& rng, const SimContext& ctx) {
    const HybridParams& p = ctx.params;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Realization out;

    // THz nodes inside the LOS ball
    const int n_thz =
        poisson_count(rng, p.thz.density * kPi * p.thz.los_radius * p.thz.los_radius);
    std::vector<double> d_thz(n_thz);
    for (double& d : d_thz) d = p.thz.los_radius * std::sqrt(uni(rng));

    // mmWave candidates out to the extended generation radius
    const int n_mm_ext =
        poisson_count(rng, p.mmwave.density * kPi * ctx.mm_gen_radius * ctx.mm_gen_radius);
    std::vector<double> d_mm(n_mm_ext);
    for (double& d : d_mm) d = ctx.mm_gen_radius * std::sqrt(uni(rng));

    const auto thz_min = std::min_element(d_thz.begin(), d_thz.end());
    const auto mm_min = std::min_element(d_mm.begin(), d_mm.end());

    // biased long-term average received power, in log space
    const double bp_thz =
        thz_min != d_thz.end()
            ? ctx.log_bias_thz - ctx.k_a * *thz_min - p.thz.pathloss_exponent * std::log(*thz_min)
            : -std::numeric_limits<double>::infinity();
    const double bp_mm = mm_min != d_mm.end()
                             ? ctx.log_bias_mm - p.mmwave.pathloss_exponent * std::log(*mm_min)
                             : -std::numeric_limits<double>::infinity();

    if (thz_min == d_thz.end() && mm_min == d_mm.end()) {
        out.association = Association::None;
        return out;
    }
    out.association = bp_thz >= bp_mm ? Association::THz : Association::MMWave;

    if (out.association == Association::THz) {
        const double x0 = *thz_min;
        out.serving_distance = x0;
        out.serving_in_ball = true;
        const double g0 = channel::sample_nakagami_power(rng, p.nakagami_m);
        out.thz_nodes.push_back({x0, static_cast<double>(p.thz.array_size), g0});
        const double signal = p.thz.tx_power * p.thz.array_size * std::exp(-ctx.k_a * x0) *
                              ctx.l0_thz * std::pow(x0, -p.thz.pathloss_exponent) * g0;
        double interference = 0.0;
        double absorption_noise = 0.0;
        for (const double& d : d_thz) {
            if (&d == &*thz_min) continue;
            const double gain = sample_interferer_gain(rng, ctx.pat_thz);
            const double fading = channel::sample_nakagami_power(rng, p.nakagami_m);
            out.thz_nodes.push_back({d, gain, fading});
            const double received = gain * p.thz.tx_power * ctx.l0_thz *
                                    std::pow(d, -p.thz.pathloss_exponent) * fading;
            const double transmittance = std::exp(-ctx.k_a * d);
            interference += received * transmittance;
            absorption_noise += received * (1.0 - transmittance);
        }
        out.interference = interference;
        out.absorption_noise = absorption_noise;
        out.sinr = signal / (ctx.njn + interference + absorption_noise);
        for (double d : d_mm) {
            if (d > p.mmwave.los_radius) continue;
            out.mm_nodes.push_back({d, 0.0, 0.0});
        }
        return out;
    }

    // mmWave association
    const double x0 = *mm_min;
    out.serving_distance = x0;
    for (double d : d_thz) out.thz_nodes.push_back({d, 0.0, 0.0});
    if (x0 > p.mmwave.los_radius) {
        // nearest mmWave node is outside the LOS ball: the link is blocked
        out.serving_in_ball = false;
        out.sinr = 0.0;
        for (double d : d_mm)
            if (d <= p.mmwave.los_radius) out.mm_nodes.push_back({d, 0.0, 0.0});
        return out;
    }
    out.serving_in_ball = true;
    const double h0 = channel::sample_rayleigh_power(rng);
    out.mm_nodes.push_back({x0, static_cast<double>(p.mmwave.array_size), h0});
    const double signal = p.mmwave.tx_power * p.mmwave.array_size * ctx.l0_mm *
                          std::pow(x0, -p.mmwave.pathloss_exponent) * h0;
    double interference = 0.0;
    for (const double& d : d_mm) {
        if (&d == &*mm_min || d > p.mmwave.los_radius) continue;
        const double gain = sample_interferer_gain(rng, ctx.pat_mm);
        const double fading = channel::sample_rayleigh_power(rng);
        out.mm_nodes.push_back({d, gain, fading});
        interference += gain * p.mmwave.tx_power * ctx.l0_mm *
                        std::pow(d, -p.mmwave.pathloss_exponent) * fading;
    }
    out.interference = interference;
    out.sinr = signal / (p.mmwave_noise_power + interference);
    return out;
}

HybridParams apply_mode(HybridParams params, Mode mode) {
    if (mode == Mode::THzOnly) params.mmwave.density = 0.0;
    if (mode == Mode::MMOnly) params.thz.density = 0.0;
    return params;
}

// Run fn(trial_index, rng) for every trial, partitioned across threads.
template <typename Fn>
void for_each_trial(std::uint64_t seed, std::int64_t n_trials, int threads, Fn&& fn) {
    const int n_workers = std::min<std::int64_t>(resolve_threads(threads), n_trials);
    if (n_workers <= 1) {
        for (std::int64_t i = 0; i < n_trials; ++i) {
            auto rng = trial_rng(seed, i);
            fn(i, rng);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
        const std::int64_t lo = n_trials * w / n_workers;
        const std::int64_t hi = n_trials * (w + 1) / n_workers;
        pool.emplace_back([&fn, seed, lo, hi] {
            for (std::int64_t i = lo; i < hi; ++i) {
                auto rng = trial_rng(seed, i);
                fn(i, rng);
            }
        });
    }
    for (auto& t : pool) t.join();
}

Estimate binomial_estimate(std::int64_t hits, std::int64_t n, std::int64_t n_trials) {
    Estimate e;
    e.n_trials = n_trials;
    e.n_conditioned = n;
    if (n <= 0) return e;
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    e.mean = p;
    e.stderr_ = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
    return e;
}

Estimate mean_estimate(const std::vector<double>& values, const std::vector<char>& keep,
                       std::int64_t n_trials) {
    Estimate e;
    e.n_trials = n_trials;
    double sum = 0.0;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!keep[i]) continue;
        sum += values[i];
        ++n;
    }
    e.n_conditioned = n;
    if (n == 0) return e;
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!keep[i]) continue;
        const double d = values[i] - mean;
        ss += d * d;
    }
    e.mean = mean;
    e.stderr_ = n > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return e;
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t master_seed, std::int64_t trial_index) {
    const std::uint64_t mixed =
        splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(trial_index)));
    return std::mt19937_64(mixed);
}

Realization realize_network(std::mt19937_64& rng, const HybridParams& params) {
    const SimContext ctx(params);
    return realize(rng, ctx);
}

Estimate estimate_association(const HybridParams& params, std::uint64_t seed,
                              std::int64_t n_trials, int threads) {
    if (n_trials < 1) throw std::invalid_argument("estimate_association: n_trials must be >= 1");
    const SimContext ctx(params);
    const HybridParams& p = ctx.params;
    std::vector<char> outcome(n_trials, 0);  // 0 none, 1 THz, 2 mmWave
    for_each_trial(seed, n_trials, threads, [&](std::int64_t i, std::mt19937_64& rng) {
        // association needs only the nearest candidate of each tier
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const int n_thz =
            poisson_count(rng, p.thz.density * kPi * p.thz.los_radius * p.thz.los_radius);
        double min_thz = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n_thz; ++k)
            min_thz = std::min(min_thz, p.thz.los_radius * std::sqrt(uni(rng)));
        const int n_mm = poisson_count(
            rng, p.mmwave.density * kPi * ctx.mm_gen_radius * ctx.mm_gen_radius);
        double min_mm = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n_mm; ++k)
            min_mm = std::min(min_mm, ctx.mm_gen_radius * std::sqrt(uni(rng)));
        if (n_thz == 0 && n_mm == 0) return;
        const double bp_thz = n_thz > 0 ? ctx.log_bias_thz - ctx.k_a * min_thz -
                                              p.thz.pathloss_exponent * std::log(min_thz)
                                        : -std::numeric_limits<double>::infinity();
        const double bp_mm = n_mm > 0 ? ctx.log_bias_mm -
                                            p.mmwave.pathloss_exponent * std::log(min_mm)
                                      : -std::numeric_limits<double>::infinity();
        outcome[i] = bp_thz >= bp_mm ? 1 : 2;
    });
    std::int64_t thz = 0;
    std::int64_t any = 0;
    for (char c : outcome) {
        if (c == 0) continue;
        ++any;
        if (c == 1) ++thz;
    }
    return binomial_estimate(thz, any, n_trials);
}

std::vector<CoverageEstimate> estimate_coverage(const HybridParams& params, std::uint64_t seed,
                                                const std::vector<double>& tau_grid,
                                                std::int64_t n_trials, Mode mode, int threads) {
    if (n_trials < 100) throw std::invalid_argument("estimate_coverage: n_trials must be >= 100");
    const SimContext ctx(apply_mode(params, mode));
    std::vector<double> sinr(n_trials, 0.0);
    std::vector<char> exists(n_trials, 0);
    for_each_trial(seed, n_trials, threads, [&](std::int64_t i, std::mt19937_64& rng) {
        const Realization r = realize(rng, ctx);
        sinr[i] = r.sinr;
        exists[i] = r.serving_in_ball ? 1 : 0;
    });
    std::int64_t n_exist = 0;
    for (char c : exists) n_exist += c;
    std::vector<CoverageEstimate> out;
    out.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        std::int64_t covered = 0;
        for (std::int64_t i = 0; i < n_trials; ++i)
            if (exists[i] && sinr[i] >= tau) ++covered;
        CoverageEstimate ce;
        ce.tau = tau;
        ce.unconditional = binomial_estimate(covered, n_trials, n_trials);
        ce.conditioned = binomial_estimate(covered, n_exist, n_trials);
        out.push_back(ce);
    }
    return out;
}

SeEstimate estimate_se(const HybridParams& params, std::uint64_t seed, std::int64_t n_trials,
                       Mode mode, int threads) {
    if (n_trials < 100) throw std::invalid_argument("estimate_se: n_trials must be >= 100");
    const SimContext ctx(apply_mode(params, mode));
    std::vector<double> value(n_trials, 0.0);
    std::vector<char> tier(n_trials, 0);  // 0 none/blocked, 1 THz, 2 mmWave
    for_each_trial(seed, n_trials, threads, [&](std::int64_t i, std::mt19937_64& rng) {
        const Realization r = realize(rng, ctx);
        if (!r.serving_in_ball) return;
        value[i] = std::log1p(r.sinr);
        tier[i] = r.association == Association::THz ? 1 : 2;
    });
    std::vector<char> all(n_trials, 1);
    std::vector<char> exists(n_trials), is_thz(n_trials), is_mm(n_trials);
    for (std::int64_t i = 0; i < n_trials; ++i) {
        exists[i] = tier[i] != 0;
        is_thz[i] = tier[i] == 1;
        is_mm[i] = tier[i] == 2;
    }
    SeEstimate out;
    out.unconditional = mean_estimate(value, all, n_trials);
    out.conditioned = mean_estimate(value, exists, n_trials);
    out.conditioned_thz = mean_estimate(value, is_thz, n_trials);
    out.conditioned_mm = mean_estimate(value, is_mm, n_trials);
    return out;
}

}  // namespace hybridnet::montecarlo
