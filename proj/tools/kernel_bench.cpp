// Benchmarks the serial reference kernels against the OpenMP variants and
// cross-checks bitwise equality while it runs.
//
//   kernel_bench [--dim 512] [--sizes 1000,10000,100000] [--reps 5]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "memgov/kernels.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

std::vector<double> random_unit_vector(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(dim);
    double norm_sq = 0.0;
    for (double& x : v) {
        x = normal(rng);
        norm_sq += x * x;
    }
    double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memgov kernel benchmark (serial reference vs OpenMP)"};
    std::size_t dim = 512;
    std::string sizes_csv = "1000,10000,100000";
    int reps = 5;
    app.add_option("--dim", dim, "embedding dimension")->capture_default_str();
    app.add_option("--sizes", sizes_csv, "comma-separated scan sizes")->capture_default_str();
    app.add_option("--reps", reps, "repetitions per measurement")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    std::vector<std::size_t> sizes;
    {
        std::stringstream ss(sizes_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) sizes.push_back(std::stoull(item));
        }
    }

    std::printf("openmp: %s\n", memgov::kernels::openmp_enabled() ? "enabled" : "disabled");
    std::printf("%-10s %-14s %12s %12s %9s\n", "kernel", "n", "serial(ms)", "parallel(ms)", "speedup");

    std::mt19937_64 rng(42);
    for (std::size_t n : sizes) {
        std::vector<std::vector<double>> embeddings;
        embeddings.reserve(n);
        for (std::size_t i = 0; i < n; ++i) embeddings.push_back(random_unit_vector(rng, dim));
        std::vector<const double*> ptrs;
        ptrs.reserve(n);
        for (const auto& e : embeddings) ptrs.push_back(e.data());
        std::vector<double> query = random_unit_vector(rng, dim);

        std::vector<double> out_serial(n), out_parallel(n);
        double t_serial = 0.0, t_parallel = 0.0;
        for (int r = 0; r < reps; ++r) {
            auto t0 = clock_type::now();
            memgov::kernels::cosine_scores_serial(ptrs, dim, query, out_serial);
            t_serial += ms_since(t0);
            auto t1 = clock_type::now();
            memgov::kernels::cosine_scores_parallel(ptrs, dim, query, out_parallel);
            t_parallel += ms_since(t1);
        }
        if (out_serial != out_parallel) {
            std::fprintf(stderr, "FAIL: cosine kernels disagree at n=%zu\n", n);
            return 1;
        }
        std::printf("%-10s %-14zu %12.3f %12.3f %8.2fx\n", "cosine", n, t_serial / reps,
                    t_parallel / reps, t_serial / std::max(t_parallel, 1e-9));

        std::vector<double> stability(n), elapsed(n), r_serial(n), r_parallel(n);
        std::uniform_real_distribution<double> s_dist(0.1, 100.0), t_dist(0.0, 400.0);
        for (std::size_t i = 0; i < n; ++i) {
            stability[i] = s_dist(rng);
            elapsed[i] = t_dist(rng);
        }
        t_serial = t_parallel = 0.0;
        for (int r = 0; r < reps; ++r) {
            auto t0 = clock_type::now();
            memgov::kernels::retrievability_batch_serial(stability, elapsed, 19.0 / 9.0, r_serial);
            t_serial += ms_since(t0);
            auto t1 = clock_type::now();
            memgov::kernels::retrievability_batch_parallel(stability, elapsed, 19.0 / 9.0, r_parallel);
            t_parallel += ms_since(t1);
        }
        if (r_serial != r_parallel) {
            std::fprintf(stderr, "FAIL: retrievability kernels disagree at n=%zu\n", n);
            return 1;
        }
        std::printf("%-10s %-14zu %12.3f %12.3f %8.2fx\n", "decay", n, t_serial / reps,
                    t_parallel / reps, t_serial / std::max(t_parallel, 1e-9));
    }
    std::printf("all kernel pairs agree bitwise\n");
    return 0;
}
