#include <algorithm>
#include <cmath>

#include "opinionfp/kernels.hpp"
#include "pair_rule.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace opinionfp::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::size_t interact_pairs_omp(std::span<double> opinions, double gamma, double sigma2, std::uint64_t key) {
  const double half_width = std::sqrt(3.0 * sigma2);
  const auto pairs = static_cast<long>(opinions.size() / 2);
  long rejected = 0;
  double* x = opinions.data();
  // Pairs are disjoint, so iterations touch distinct agents.
#pragma omp parallel for schedule(static) reduction(+ : rejected)
  for (long p = 0; p < pairs; ++p) {
    const auto c = static_cast<std::uint64_t>(p);
    const double eta = detail::pair_noise(key, 2 * c, half_width);
    const double eta_star = detail::pair_noise(key, 2 * c + 1, half_width);
    if (!detail::apply_pair(x[2 * p], x[2 * p + 1], gamma, eta, eta_star)) ++rejected;
  }
  return static_cast<std::size_t>(rejected);
}

std::vector<std::uint64_t> bin_counts_omp(std::span<const double> opinions, std::size_t n_cells) {
  std::vector<std::uint64_t> counts(n_cells, 0);
  const double scale = static_cast<double>(n_cells) / 2.0;
  const auto last = static_cast<long>(n_cells) - 1;
  const auto n = static_cast<long>(opinions.size());
  const double* x = opinions.data();
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(n_cells, 0);
#pragma omp for schedule(static) nowait
    for (long j = 0; j < n; ++j) {
      const long i = std::clamp(static_cast<long>(std::floor((x[j] + 1.0) * scale)), 0L, last);
      ++local[static_cast<std::size_t>(i)];
    }
#pragma omp critical
    for (std::size_t i = 0; i < n_cells; ++i) counts[i] += local[i];
  }
  return counts;
}

}  // namespace opinionfp::kernels
