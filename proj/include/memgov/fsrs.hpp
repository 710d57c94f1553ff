#pragma once

#include <cmath>

#include "memgov/error.hpp"

namespace memgov::fsrs {

// Power-law forgetting curve constants. The 19/9 factor makes retrievability
// hit exactly 9/28 (~32%) when elapsed time equals stability.
inline constexpr double kDecayFactor = 19.0 / 9.0;
inline constexpr double kGrowthFactor = 0.5;          // FSRS w8
inline constexpr double kDifficultyExponent = 1.5;    // desirable-difficulty exponent
inline constexpr double kMinDifficulty = 1.0;
inline constexpr double kMaxDifficulty = 10.0;

// R(t) = (1 + factor * t/S)^-1. Strictly decreasing in t, R(0) = 1.
inline double retrievability(double stability_days, double elapsed_days,
                             double factor = kDecayFactor) {
    if (!(stability_days > 0.0)) {
        throw Error(Errc::NonPositiveStability, "stability must be positive");
    }
    if (!(elapsed_days >= 0.0)) {
        throw Error(Errc::DomainError, "elapsed time must be non-negative");
    }
    return 1.0 / (1.0 + factor * elapsed_days / stability_days);
}

// S' = S * (1 + w8 * (11 - D) * (e^{1.5(1-R)} - 1)). Growth is largest for
// low-R "close calls" and smallest for easy recalls (R = 1 leaves S unchanged).
inline double update_stability(double stability_days, double difficulty, double retrievability_now,
                               double w8 = kGrowthFactor, double exponent = kDifficultyExponent) {
    if (!(stability_days > 0.0)) {
        throw Error(Errc::NonPositiveStability, "stability must be positive");
    }
    if (!(difficulty >= kMinDifficulty && difficulty <= kMaxDifficulty)) {
        throw Error(Errc::DomainError, "difficulty outside [1,10]");
    }
    if (!(retrievability_now > 0.0 && retrievability_now <= 1.0)) {
        throw Error(Errc::DomainError, "retrievability outside (0,1]");
    }
    double bonus = std::exp(exponent * (1.0 - retrievability_now)) - 1.0;
    return stability_days * (1.0 + w8 * (11.0 - difficulty) * bonus);
}

// Closed-form inverse of the curve: elapsed days at which R(t) == r.
inline double elapsed_for_retrievability(double stability_days, double r,
                                         double factor = kDecayFactor) {
    if (!(stability_days > 0.0)) {
        throw Error(Errc::NonPositiveStability, "stability must be positive");
    }
    if (!(r > 0.0 && r <= 1.0)) {
        throw Error(Errc::DomainError, "retrievability outside (0,1]");
    }
    return stability_days * (1.0 / r - 1.0) / factor;
}

}  // namespace memgov::fsrs
