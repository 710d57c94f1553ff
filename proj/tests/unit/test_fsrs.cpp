#include <doctest.h>

#include <cmath>

#include "memgov/error.hpp"
#include "memgov/fsrs.hpp"

using namespace memgov;

namespace {

// Independent scalar oracle for the forgetting curve.
double curve_oracle(double s, double t) { return 1.0 / (1.0 + (19.0 / 9.0) * (t / s)); }

}  // namespace

TEST_CASE("retrievability at zero elapsed time is exactly one") {
    CHECK(fsrs::retrievability(0.5, 0.0) == 1.0);
    CHECK(fsrs::retrievability(1000.0, 0.0) == 1.0);
}

TEST_CASE("retrievability hits 9/28 when elapsed time equals stability") {
    // 9/28 ~ 0.3214 — the calibration point of the 19/9 factor.
    for (double s : {0.1, 1.0, 10.0, 1000.0}) {
        CHECK(fsrs::retrievability(s, s) == doctest::Approx(9.0 / 28.0).epsilon(1e-12));
    }
}

TEST_CASE("retrievability matches the scalar oracle") {
    CHECK(fsrs::retrievability(10.0, 10.0) == doctest::Approx(curve_oracle(10, 10)).epsilon(1e-15));
    CHECK(fsrs::retrievability(10.0, 20.0) == doctest::Approx(9.0 / 47.0).epsilon(1e-12));
    CHECK(fsrs::retrievability(10.0, 20.0) == doctest::Approx(0.19148936170212766).epsilon(1e-12));
}

TEST_CASE("retrievability domain errors") {
    CHECK_THROWS_AS(fsrs::retrievability(0.0, 1.0), Error);
    CHECK_THROWS_AS(fsrs::retrievability(-1.0, 1.0), Error);
    CHECK_THROWS_AS(fsrs::retrievability(1.0, -0.1), Error);
    try {
        fsrs::retrievability(0.0, 1.0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonPositiveStability);
    }
}

TEST_CASE("retrievability is strictly decreasing in t and increasing in S") {
    for (double s : {0.5, 1.0, 3.0, 50.0}) {
        double prev = 2.0;
        for (double t : {0.0, 0.1, 1.0, 5.0, 50.0, 500.0}) {
            double r = fsrs::retrievability(s, t);
            CHECK(r < prev);
            prev = r;
        }
    }
    for (double t : {0.5, 5.0, 100.0}) {
        double prev = 0.0;
        for (double s : {0.1, 1.0, 10.0, 100.0}) {
            double r = fsrs::retrievability(s, t);
            CHECK(r > prev);
            prev = r;
        }
    }
}

TEST_CASE("perfect recall leaves stability unchanged") {
    CHECK(fsrs::update_stability(10.0, 5.0, 1.0) == 10.0);
    CHECK(fsrs::update_stability(0.25, 1.0, 1.0) == 0.25);
}

TEST_CASE("desirable-difficulty bonus at R=0.1 is e^1.35 - 1") {
    double bonus = std::exp(1.5 * (1.0 - 0.1)) - 1.0;
    CHECK(bonus == doctest::Approx(2.857).epsilon(1e-3));
    CHECK(bonus == doctest::Approx(2.8574255306969745).epsilon(1e-12));
    // full multiplier at D=5: 1 + 0.5 * 6 * bonus
    double got = fsrs::update_stability(1.0, 5.0, 0.1);
    CHECK(got == doctest::Approx(1.0 + 0.5 * 6.0 * bonus).epsilon(1e-12));
}

TEST_CASE("stability update matches the scalar oracle at (10, 5, 0.32)") {
    // 10 * (1 + 3 (e^{1.02} - 1)) — frozen from the oracle evaluation.
    CHECK(fsrs::update_stability(10.0, 5.0, 0.32) ==
          doctest::Approx(63.19584291892893).epsilon(1e-12));
}

TEST_CASE("stability update is monotone decreasing in R and in D") {
    double prev_r = 1e18;
    for (double r = 0.05; r <= 1.0; r += 0.05) {
        double s = fsrs::update_stability(10.0, 5.0, r);
        CHECK(s < prev_r);
        prev_r = s;
    }
    double prev_d = 1e18;
    for (double d = 1.0; d <= 10.0; d += 0.5) {
        double s = fsrs::update_stability(10.0, d, 0.4);
        CHECK(s < prev_d);
        prev_d = s;
    }
}

TEST_CASE("stability growth ratio stays within the formula bound") {
    // Extremes: 1 at R=1, and 1 + 0.5 * 10 * (e^{1.5} - 1) as R->0+, D=1.
    double bound = 1.0 + 0.5 * 10.0 * (std::exp(1.5) - 1.0);
    for (double d = 1.0; d <= 10.0; d += 1.0) {
        for (double r = 0.01; r <= 1.0; r += 0.01) {
            double ratio = fsrs::update_stability(7.0, d, r) / 7.0;
            CHECK(ratio >= 1.0);
            CHECK(ratio <= bound + 1e-12);
        }
    }
}

TEST_CASE("stability update domain errors") {
    CHECK_THROWS_AS(fsrs::update_stability(0.0, 5.0, 0.5), Error);
    CHECK_THROWS_AS(fsrs::update_stability(1.0, 0.5, 0.5), Error);
    CHECK_THROWS_AS(fsrs::update_stability(1.0, 10.5, 0.5), Error);
    CHECK_THROWS_AS(fsrs::update_stability(1.0, 5.0, 0.0), Error);
    CHECK_THROWS_AS(fsrs::update_stability(1.0, 5.0, 1.5), Error);
}

TEST_CASE("elapsed_for_retrievability inverts the curve") {
    for (double s : {0.3, 1.0, 12.0}) {
        for (double r : {0.1, 0.3, 0.5, 0.7, 0.99}) {
            double t = fsrs::elapsed_for_retrievability(s, r);
            CHECK(fsrs::retrievability(s, t) == doctest::Approx(r).epsilon(1e-12));
        }
    }
}
