#pragma once

#include "hybridnet/antenna.hpp"
#include "hybridnet/params.hpp"
#include "hybridnet/specfun.hpp"

// Closed-form association, coverage, and spectral-efficiency expressions for
// the two-tier THz/mmWave downlink under LOS-ball blockage and biased
// max-average-received-power association.

namespace hybridnet::analysis {

/// Truncated-Rayleigh PDF of the nearest-point distance of a PPP of the given
/// density inside a disc of the given radius, conditioned on the disc being
/// non-empty. Zero outside [0, los_radius].
double nearest_distance_pdf(double density, double los_radius, double x);

/// zeta(z) = 1/z - 1/(z (1+z)^m); tends to m as z -> 0+.
double zeta(double z, int m);

class Analyzer {
  public:
    explicit Analyzer(const HybridParams& params, specfun::QuadratureSpec quad = {});

    const HybridParams& params() const { return params_; }
    const antenna::MlftPattern& thz_pattern() const { return pat_thz_; }
    const antenna::MlftPattern& mm_pattern() const { return pat_mm_; }

    /// Absorption coefficient at the THz carrier, 1/m.
    double k_a() const { return k_a_; }

    /// Tier power ratio epsilon = (B_m P_m N_m)/(B_T P_T N_T) (f_T/f_m)^2.
    double epsilon() const { return eps_; }

    /// Johnson noise and mmWave noise normalized by each tier's boresight
    /// received power at unit distance.
    NormalizedNoise noise() const { return noise_; }

    /// Bound constant a = M (M!)^{-1/M} of the alternating-sum coverage bound.
    double alzer_a() const { return alzer_a_; }

    /// Probability the typical user associates with the THz tier.
    double association_prob_thz() const { return assoc_thz_; }

    /// Weight of the mmWave branch under the conditioned distance density:
    /// integral over [0, R_m] of the unnormalized mmWave serving-distance
    /// density (see README on normalization).
    double mm_conditional_weight() const { return mm_weight_; }

    /// Distance at which a THz link's biased average power equals that of a
    /// mmWave link at distance x_hat: solves eps * r^aT * e^{k_a r} = x_hat^am.
    double nu(double x_hat) const;

    /// Serving-distance density conditioned on THz association, on [0, R_T].
    double conditioned_pdf_thz(double x_hat) const;
    /// Serving-distance density conditioned on mmWave association, on [0, R_m].
    double conditioned_pdf_mmwave(double x_hat) const;

    /// Closed-form interference integral (m^2) and the Laplace transform of
    /// the normalized THz interference seen from a user at distance x.
    double chi_thz(double s, double x) const;
    double laplace_interference_thz(double s, double x) const;

    /// Same pair for the mmWave tier.
    double chi_mmwave(double s, double x) const;
    double laplace_interference_mmwave(double s, double x) const;

    /// Coverage probability P(SINR >= tau) for a THz-only deployment
    /// (alternating-sum lower bound on the Nakagami fading CDF).
    double coverage_thz_standalone(double tau) const;

    /// Exact coverage probability for a mmWave-only deployment.
    double coverage_mmwave_standalone(double tau) const;

    /// Interference-limited mmWave coverage in product form; requires the
    /// mmWave pathloss exponent to be exactly 2.
    double coverage_mmwave_interference_limited(double tau) const;

    /// Coverage of the two-tier network, conditioned on a serving link
    /// existing inside its LOS ball.
    double coverage_hybrid(double tau) const;

    /// Spectral efficiency E[ln(1+SINR)] in nats/s/Hz, conditioned on the
    /// respective association.
    double se_thz() const;
    double se_mmwave() const;
    double se_hybrid() const;

  private:
    double chi_thz_term(double s, double ghat, double t) const;
    double chi_mm_term(double s, double ghat, double t) const;
    double assoc_suppression_thz(double x) const;      // e^{-pi lam_m (...)^{2/am}}
    double assoc_suppression_mmwave(double x) const;   // e^{-pi lam_T nu(x)^2}
    double coverage_thz_kernel(double tau, double x, bool conditioned) const;
    double se_thz_inner(double x) const;
    double se_mm_inner(double x) const;
    double se_thz_weighted() const;  // integral of inner * unnormalized density
    double se_mm_weighted() const;

    HybridParams params_;
    specfun::QuadratureSpec quad_;
    antenna::MlftPattern pat_thz_;
    antenna::MlftPattern pat_mm_;
    std::vector<double> ghat_thz_;  // level gains / N_T
    std::vector<double> ghat_mm_;   // level gains / N_m
    double k_a_ = 0.0;
    double log_eps_ = 0.0;
    double eps_ = 0.0;
    double alzer_a_ = 0.0;
    NormalizedNoise noise_{};
    double assoc_thz_ = 0.0;
    double mm_weight_ = 0.0;
};

}  // namespace hybridnet::analysis
