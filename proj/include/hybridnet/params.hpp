#pragma once

#include <cmath>
#include <stdexcept>

#include "hybridnet/channel.hpp"

namespace hybridnet {

/// dBm -> watts.
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// dB -> linear ratio.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// One network tier's deployment and radio parameters.
struct TierParams {
    double density = 0.0;            // base stations per m^2
    double frequency = 0.0;          // Hz
    double tx_power = 0.0;           // watts
    double bias = 1.0;               // linear association bias
    double pathloss_exponent = 2.0;  // alpha
    double los_radius = 0.0;         // meters
    int array_size = 2;              // antenna elements N

    void validate() const {
        if (!(density >= 0.0)) throw std::invalid_argument("density must be >= 0");
        if (!(frequency > 0.0)) throw std::invalid_argument("frequency must be > 0");
        if (!(tx_power > 0.0)) throw std::invalid_argument("tx_power must be > 0");
        if (!(bias > 0.0)) throw std::invalid_argument("bias must be > 0");
        if (!(pathloss_exponent >= 2.0))
            throw std::invalid_argument("pathloss_exponent must be >= 2");
        if (!(los_radius > 0.0)) throw std::invalid_argument("los_radius must be > 0");
        if (array_size < 2) throw std::invalid_argument("array_size must be >= 2");
    }
};

struct HybridParams {
    TierParams thz{0.05, 350e9, dbm_to_watts(73.0), 10.0, 4.0, 100.0, 64};
    TierParams mmwave{5e-4, 30e9, dbm_to_watts(53.0), 1.0, 2.0, 20.0, 16};
    int nakagami_m = 4;
    double mmwave_noise_power = dbm_to_watts(-85.0);  // watts
    channel::Environment environment{};
    channel::AbsorptionSource absorption{};  // Simplified with default environment

    void validate() const {
        thz.validate();
        mmwave.validate();
        environment.validate();
        if (nakagami_m < 1) throw std::invalid_argument("nakagami_m must be >= 1");
        if (!(mmwave_noise_power > 0.0))
            throw std::invalid_argument("mmwave_noise_power must be > 0");
        if (absorption.kind == channel::AbsorptionSource::Kind::Simplified &&
            !(thz.frequency >= channel::kAbsorptionBandLow &&
              thz.frequency <= channel::kAbsorptionBandHigh))
            throw std::invalid_argument(
                "thz frequency outside the simplified absorption model's"
                " 275-400 GHz validity band");
    }
};

struct NormalizedNoise {
    double thz_hat_n = 0.0;  // Johnson noise over P_T * N_T * (c/4 pi f_T)^2
    double mm_sigma2 = 0.0;  // sigma_m^2 over P_m * N_m * (c/4 pi f_m)^2
};

}  // namespace hybridnet
