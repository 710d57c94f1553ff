#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "memgov/kernels.hpp"

using namespace memgov;

TEST_CASE("serial and parallel cosine kernels agree bitwise") {
    std::mt19937_64 rng(101);
    const std::size_t n = 6000, dim = 64;  // past the dispatch threshold
    std::vector<std::vector<double>> embeddings;
    for (std::size_t i = 0; i < n; ++i) {
        embeddings.push_back(testutil::random_unit_vector(rng, dim));
    }
    std::vector<const double*> ptrs;
    for (const auto& e : embeddings) ptrs.push_back(e.data());
    auto query = testutil::random_unit_vector(rng, dim);

    std::vector<double> serial(n), parallel(n), dispatched(n);
    kernels::cosine_scores_serial(ptrs, dim, query, serial);
    kernels::cosine_scores_parallel(ptrs, dim, query, parallel);
    kernels::cosine_scores(ptrs, dim, query, dispatched);
    CHECK(serial == parallel);
    CHECK(serial == dispatched);
}

TEST_CASE("cosine kernel matches an independent naive loop") {
    std::mt19937_64 rng(5);
    const std::size_t n = 50, dim = 16;
    std::vector<std::vector<double>> embeddings;
    for (std::size_t i = 0; i < n; ++i) {
        embeddings.push_back(testutil::random_unit_vector(rng, dim));
    }
    std::vector<const double*> ptrs;
    for (const auto& e : embeddings) ptrs.push_back(e.data());
    auto query = testutil::random_unit_vector(rng, dim);

    std::vector<double> out(n);
    kernels::cosine_scores(ptrs, dim, query, out);
    for (std::size_t i = 0; i < n; ++i) {
        double expected = 0.0;
        for (std::size_t d = 0; d < dim; ++d) expected += embeddings[i][d] * query[d];
        CHECK(out[i] == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("serial and parallel decay kernels agree bitwise") {
    std::mt19937_64 rng(17);
    const std::size_t n = 8000;
    std::uniform_real_distribution<double> s_dist(0.05, 200.0), t_dist(0.0, 500.0);
    std::vector<double> stability(n), elapsed(n);
    for (std::size_t i = 0; i < n; ++i) {
        stability[i] = s_dist(rng);
        elapsed[i] = t_dist(rng);
    }
    std::vector<double> serial(n), parallel(n);
    kernels::retrievability_batch_serial(stability, elapsed, 19.0 / 9.0, serial);
    kernels::retrievability_batch_parallel(stability, elapsed, 19.0 / 9.0, parallel);
    CHECK(serial == parallel);
    for (std::size_t i = 0; i < n; i += 997) {
        CHECK(serial[i] == doctest::Approx(1.0 / (1.0 + (19.0 / 9.0) * elapsed[i] / stability[i]))
                               .epsilon(1e-14));
    }
}

TEST_CASE("serial and parallel auction kernels agree bitwise") {
    std::mt19937_64 rng(23);
    const std::size_t n = 5000;
    std::uniform_real_distribution<double> sim_dist(-1.0, 1.0), r_dist(0.01, 1.0), u_dist(0.0, 1.0);
    std::vector<double> sims(n), rs(n), us(n);
    for (std::size_t i = 0; i < n; ++i) {
        sims[i] = sim_dist(rng);
        rs[i] = r_dist(rng);
        us[i] = u_dist(rng);
    }
    std::vector<double> serial(n), parallel(n);
    kernels::auction_scores_serial(sims, rs, us, 0.5, 1.5, serial);
    kernels::auction_scores_parallel(sims, rs, us, 0.5, 1.5, parallel);
    CHECK(serial == parallel);
    // negative similarity clamps to zero
    std::vector<double> one_sim{-0.4}, one_r{0.5}, one_u{1.0}, out(1);
    kernels::auction_scores_serial(one_sim, one_r, one_u, 1.0, 1.5, out);
    CHECK(out[0] == 0.0);
}
