#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace memgov::kernels {

// Data-parallel inner loops of the read and background paths. Each kernel has
// a serial reference implementation and an OpenMP variant; results are
// bitwise identical because every output element is computed independently
// (no cross-element reductions). The unsuffixed entry points dispatch to the
// parallel variant above a size threshold when OpenMP is available.

// Parallelism pays for itself only on scans well past desk scale.
inline constexpr std::size_t kParallelThreshold = 4096;

// out[i] = dot(embeddings[i][0..dim), query). Inputs are unit vectors, so the
// dot product is the cosine similarity.
void cosine_scores_serial(std::span<const double* const> embeddings, std::size_t dim,
                          std::span<const double> query, std::span<double> out);
void cosine_scores_parallel(std::span<const double* const> embeddings, std::size_t dim,
                            std::span<const double> query, std::span<double> out);
void cosine_scores(std::span<const double* const> embeddings, std::size_t dim,
                   std::span<const double> query, std::span<double> out);

// out[i] = (1 + factor * elapsed_days[i] / stability_days[i])^-1
void retrievability_batch_serial(std::span<const double> stability_days,
                                 std::span<const double> elapsed_days, double factor,
                                 std::span<double> out);
void retrievability_batch_parallel(std::span<const double> stability_days,
                                   std::span<const double> elapsed_days, double factor,
                                   std::span<double> out);
void retrievability_batch(std::span<const double> stability_days,
                          std::span<const double> elapsed_days, double factor,
                          std::span<double> out);

// out[i] = max(sim[i], 0) * R[i]^lambda * (1 + beta * U[i])
void auction_scores_serial(std::span<const double> sims, std::span<const double> retrievabilities,
                           std::span<const double> trusts, double lambda, double beta,
                           std::span<double> out);
void auction_scores_parallel(std::span<const double> sims, std::span<const double> retrievabilities,
                             std::span<const double> trusts, double lambda, double beta,
                             std::span<double> out);
void auction_scores(std::span<const double> sims, std::span<const double> retrievabilities,
                    std::span<const double> trusts, double lambda, double beta,
                    std::span<double> out);

bool openmp_enabled();

}  // namespace memgov::kernels
