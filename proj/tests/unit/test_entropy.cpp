#include <doctest.h>

#include <random>

#include "memgov/entropy.hpp"
#include "memgov/error.hpp"

using namespace memgov;

TEST_CASE("repetitive text compresses far below the trigger threshold") {
    std::vector<std::string> contents(100, "The user checked the weather forecast again this morning");
    auto probe = lifecycle::entropy_ratio(contents, 0.4);
    CHECK(probe.ratio < 0.1);
    CHECK(probe.triggered);
}

TEST_CASE("incompressible text stays above the threshold") {
    std::mt19937_64 rng(53);
    static const char kAlnum[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    std::uniform_int_distribution<std::size_t> pick(0, sizeof(kAlnum) - 2);
    std::string noise;
    noise.reserve(6000);
    for (int i = 0; i < 6000; ++i) noise.push_back(kAlnum[pick(rng)]);
    auto probe = lifecycle::entropy_ratio({noise}, 0.4);
    CHECK(probe.ratio > 0.4);
    CHECK_FALSE(probe.triggered);
}

TEST_CASE("the trigger is a strict inequality") {
    std::vector<std::string> contents(20, "some partly repetitive sentence with shared words");
    auto probe = lifecycle::entropy_ratio(contents, 0.4);
    // Re-probing with the observed ratio as the threshold must not fire:
    // ratio < ratio is false.
    auto at_boundary = lifecycle::entropy_ratio(contents, probe.ratio);
    CHECK(at_boundary.ratio == probe.ratio);
    CHECK_FALSE(at_boundary.triggered);
}

TEST_CASE("an empty corpus is an error") {
    CHECK_THROWS_AS(lifecycle::entropy_ratio({}, 0.4), Error);
    CHECK_THROWS_AS(lifecycle::entropy_ratio({""}, 0.4), Error);
    try {
        lifecycle::entropy_ratio({}, 0.4);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptyCorpus);
    }
}

TEST_CASE("records are joined by newline before probing") {
    // Two runs over the same bytes must agree regardless of how the content
    // is sliced into records.
    std::vector<std::string> a = {"alpha beta", "gamma delta"};
    std::vector<std::string> b = {"alpha beta\ngamma delta"};
    CHECK(lifecycle::entropy_ratio(a, 0.4).ratio == lifecycle::entropy_ratio(b, 0.4).ratio);
}
