#pragma once

#include <cmath>

#include "memgov/error.hpp"
#include "memgov/types.hpp"

namespace memgov::kalman {

inline constexpr double kDefaultProcessNoise = 0.05;      // Q
inline constexpr double kDefaultMeasurementNoise = 0.1;   // R

struct StepResult {
    UtilityState state;
    double gain = 0.0;
};

// Scalar predict-update cycle over the trust estimate:
//   P_prior = P + Q
//   K       = P_prior / (P_prior + R)
//   U'      = U + K (z - U)
//   P'      = (1 - K) P_prior
// With binary z and U0 in [0,1] the update is a convex combination, so the
// trust estimate never leaves [0,1].
inline StepResult step(UtilityState state, double measurement,
                       double process_noise = kDefaultProcessNoise,
                       double measurement_noise = kDefaultMeasurementNoise) {
    if (!(process_noise > 0.0) || !(measurement_noise > 0.0)) {
        throw Error(Errc::DomainError, "noise terms must be positive");
    }
    if (!(state.covariance > 0.0)) {
        throw Error(Errc::DomainError, "covariance must be positive");
    }
    double p_prior = state.covariance + process_noise;
    double gain = p_prior / (p_prior + measurement_noise);
    UtilityState next;
    next.trust = state.trust + gain * (measurement - state.trust);
    next.covariance = (1.0 - gain) * p_prior;
    return {next, gain};
}

// Steady-state posterior covariance: the positive root of
// P^2 + Q P - Q R = 0, reached regardless of the measurement sequence.
inline double steady_state_covariance(double process_noise = kDefaultProcessNoise,
                                      double measurement_noise = kDefaultMeasurementNoise) {
    double q = process_noise;
    double r = measurement_noise;
    return (-q + std::sqrt(q * q + 4.0 * q * r)) / 2.0;
}

}  // namespace memgov::kalman
