#pragma once

// Data-parallel inner loops of the Monte Carlo model. Each kernel has a serial
// reference and an OpenMP version; both consume the same counter-based random
// stream and therefore produce identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace opinionfp::kernels {

enum class Execution { Serial, Parallel };

/// Applies the binary rule to the adjacent pairs (2p, 2p+1); the caller
/// shuffles the opinions beforehand. Noise for pair p is drawn from counters
/// 2p and 2p+1 of stream `key`. Returns the number of rejected pairs.
std::size_t interact_pairs_serial(std::span<double> opinions, double gamma, double sigma2, std::uint64_t key);
std::size_t interact_pairs_omp(std::span<double> opinions, double gamma, double sigma2, std::uint64_t key);

/// Cell counts of opinions on n_cells uniform cells of [-1, 1].
std::vector<std::uint64_t> bin_counts_serial(std::span<const double> opinions, std::size_t n_cells);
std::vector<std::uint64_t> bin_counts_omp(std::span<const double> opinions, std::size_t n_cells);

inline std::size_t interact_pairs(Execution ex, std::span<double> opinions, double gamma, double sigma2,
                                  std::uint64_t key) {
  return ex == Execution::Serial ? interact_pairs_serial(opinions, gamma, sigma2, key)
                                 : interact_pairs_omp(opinions, gamma, sigma2, key);
}

inline std::vector<std::uint64_t> bin_counts(Execution ex, std::span<const double> opinions, std::size_t n_cells) {
  return ex == Execution::Serial ? bin_counts_serial(opinions, n_cells) : bin_counts_omp(opinions, n_cells);
}

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

}  // namespace opinionfp::kernels
