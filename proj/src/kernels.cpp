#include "memgov/kernels.hpp"

#include <cmath>
#include <cstdint>

namespace memgov::kernels {

namespace {

inline double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

inline double retr(double s, double t, double factor) {
    return 1.0 / (1.0 + factor * t / s);
}

inline double ascore(double sim, double r, double u, double lambda, double beta) {
    double clamped = sim > 0.0 ? sim : 0.0;
    double decay = lambda == 0.0 ? 1.0 : std::pow(r, lambda);
    return clamped * decay * (1.0 + beta * u);
}

}  // namespace

bool openmp_enabled() {
#ifdef MEMGOV_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

void cosine_scores_serial(std::span<const double* const> embeddings, std::size_t dim,
                          std::span<const double> query, std::span<double> out) {
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        out[i] = dot(embeddings[i], query.data(), dim);
    }
}

void cosine_scores_parallel(std::span<const double* const> embeddings, std::size_t dim,
                            std::span<const double> query, std::span<double> out) {
    const std::int64_t n = static_cast<std::int64_t>(embeddings.size());
#ifdef MEMGOV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        out[i] = dot(embeddings[i], query.data(), dim);
    }
}

void cosine_scores(std::span<const double* const> embeddings, std::size_t dim,
                   std::span<const double> query, std::span<double> out) {
    if (openmp_enabled() && embeddings.size() >= kParallelThreshold) {
        cosine_scores_parallel(embeddings, dim, query, out);
    } else {
        cosine_scores_serial(embeddings, dim, query, out);
    }
}

void retrievability_batch_serial(std::span<const double> stability_days,
                                 std::span<const double> elapsed_days, double factor,
                                 std::span<double> out) {
    for (std::size_t i = 0; i < stability_days.size(); ++i) {
        out[i] = retr(stability_days[i], elapsed_days[i], factor);
    }
}

void retrievability_batch_parallel(std::span<const double> stability_days,
                                   std::span<const double> elapsed_days, double factor,
                                   std::span<double> out) {
    const std::int64_t n = static_cast<std::int64_t>(stability_days.size());
#ifdef MEMGOV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        out[i] = retr(stability_days[i], elapsed_days[i], factor);
    }
}

void retrievability_batch(std::span<const double> stability_days,
                          std::span<const double> elapsed_days, double factor,
                          std::span<double> out) {
    if (openmp_enabled() && stability_days.size() >= kParallelThreshold) {
        retrievability_batch_parallel(stability_days, elapsed_days, factor, out);
    } else {
        retrievability_batch_serial(stability_days, elapsed_days, factor, out);
    }
}

void auction_scores_serial(std::span<const double> sims, std::span<const double> retrievabilities,
                           std::span<const double> trusts, double lambda, double beta,
                           std::span<double> out) {
    for (std::size_t i = 0; i < sims.size(); ++i) {
        out[i] = ascore(sims[i], retrievabilities[i], trusts[i], lambda, beta);
    }
}

void auction_scores_parallel(std::span<const double> sims, std::span<const double> retrievabilities,
                             std::span<const double> trusts, double lambda, double beta,
                             std::span<double> out) {
    const std::int64_t n = static_cast<std::int64_t>(sims.size());
#ifdef MEMGOV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        out[i] = ascore(sims[i], retrievabilities[i], trusts[i], lambda, beta);
    }
}

void auction_scores(std::span<const double> sims, std::span<const double> retrievabilities,
                    std::span<const double> trusts, double lambda, double beta,
                    std::span<double> out) {
    if (openmp_enabled() && sims.size() >= kParallelThreshold) {
        auction_scores_parallel(sims, retrievabilities, trusts, lambda, beta, out);
    } else {
        auction_scores_serial(sims, retrievabilities, trusts, lambda, beta, out);
    }
}

}  // namespace memgov::kernels
