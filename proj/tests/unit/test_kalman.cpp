#include <doctest.h>

#include <random>

#include "memgov/error.hpp"
#include "memgov/kalman.hpp"

using namespace memgov;

TEST_CASE("measurement equal to the estimate leaves trust unchanged") {
    UtilityState state{0.73, 0.4};
    auto result = kalman::step(state, 0.73);
    CHECK(result.state.trust == doctest::Approx(0.73).epsilon(1e-15));
    CHECK(result.state.covariance != state.covariance);
}

TEST_CASE("two-step trajectory from the maximum-ignorance prior") {
    // Frozen by iterating the recurrence by hand from (U=0.5, P=1.0),
    // Q=0.05, R=0.1, z=1 twice.
    UtilityState state{0.5, 1.0};
    auto step1 = kalman::step(state, 1.0);
    CHECK(step1.gain == doctest::Approx(0.9130434782608695).epsilon(1e-12));
    CHECK(step1.state.trust == doctest::Approx(0.9565217391304348).epsilon(1e-12));
    CHECK(step1.state.covariance == doctest::Approx(0.09130434782608701).epsilon(1e-9));

    auto step2 = kalman::step(step1.state, 1.0);
    // The "weighs new observations at ~60%" point.
    CHECK(step2.gain == doctest::Approx(0.586).epsilon(0.005 / 0.586));
    CHECK(step2.gain == doctest::Approx(0.5855855855855857).epsilon(1e-12));
}

TEST_CASE("gain and covariance converge to the analytic fixed point") {
    // Steady posterior P solves P^2 + QP - QR = 0 -> 0.05; prior 0.1, K 0.5.
    CHECK(kalman::steady_state_covariance() == doctest::Approx(0.05).epsilon(1e-15));

    UtilityState state{0.5, 1.0};
    double gain = 0.0;
    for (int i = 0; i < 50; ++i) {
        auto result = kalman::step(state, i % 2 == 0 ? 1.0 : 0.0);
        state = result.state;
        gain = result.gain;
    }
    CHECK(gain == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(state.covariance == doctest::Approx(0.05).epsilon(1e-3 / 0.05));
}

TEST_CASE("covariance converges from any positive start within 50 steps") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> p0(1e-6, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        UtilityState state{0.5, p0(rng)};
        for (int i = 0; i < 50; ++i) state = kalman::step(state, 1.0).state;
        CHECK(std::abs(state.covariance - 0.05) < 1e-3);
    }
}

TEST_CASE("trust stays in [0,1] for binary measurements") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u0(0.0, 1.0);
    std::bernoulli_distribution z(0.5);
    for (int trial = 0; trial < 100; ++trial) {
        UtilityState state{u0(rng), 1.0};
        for (int i = 0; i < 80; ++i) {
            state = kalman::step(state, z(rng) ? 1.0 : 0.0).state;
            CHECK(state.trust >= 0.0);
            CHECK(state.trust <= 1.0);
            CHECK(state.covariance > 0.0);
        }
    }
}

TEST_CASE("gain lies in (0,1) and is monotone in the prior covariance") {
    double prev = 0.0;
    for (double p : {0.001, 0.01, 0.1, 1.0, 10.0, 100.0}) {
        auto result = kalman::step({0.5, p}, 1.0);
        CHECK(result.gain > 0.0);
        CHECK(result.gain < 1.0);
        CHECK(result.gain > prev);
        prev = result.gain;
    }
}

TEST_CASE("kalman step rejects non-positive noise and covariance") {
    CHECK_THROWS_AS(kalman::step({0.5, 1.0}, 1.0, 0.0, 0.1), Error);
    CHECK_THROWS_AS(kalman::step({0.5, 1.0}, 1.0, 0.05, 0.0), Error);
    CHECK_THROWS_AS(kalman::step({0.5, 0.0}, 1.0), Error);
    CHECK_THROWS_AS(kalman::step({0.5, -1.0}, 1.0), Error);
}
