#include <algorithm>
#include <cmath>

#include "opinionfp/kernels.hpp"
#include "pair_rule.hpp"

namespace opinionfp::kernels {

std::size_t interact_pairs_serial(std::span<double> opinions, double gamma, double sigma2, std::uint64_t key) {
  const double half_width = std::sqrt(3.0 * sigma2);
  const std::size_t pairs = opinions.size() / 2;
  std::size_t rejected = 0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const double eta = detail::pair_noise(key, 2 * p, half_width);
    const double eta_star = detail::pair_noise(key, 2 * p + 1, half_width);
    if (!detail::apply_pair(opinions[2 * p], opinions[2 * p + 1], gamma, eta, eta_star)) ++rejected;
  }
  return rejected;
}

std::vector<std::uint64_t> bin_counts_serial(std::span<const double> opinions, std::size_t n_cells) {
  std::vector<std::uint64_t> counts(n_cells, 0);
  const double scale = static_cast<double>(n_cells) / 2.0;
  const auto last = static_cast<long>(n_cells) - 1;
  for (double x : opinions) {
    const long i = std::clamp(static_cast<long>(std::floor((x + 1.0) * scale)), 0L, last);
    ++counts[static_cast<std::size_t>(i)];
  }
  return counts;
}

}  // namespace opinionfp::kernels
