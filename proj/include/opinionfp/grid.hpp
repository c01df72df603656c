#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace opinionfp {

/// Uniform cell-centred discretisation of (-1, 1).
///
/// Cell i covers [-1 + i dy, -1 + (i+1) dy]; interface k sits at -1 + k dy for
/// k = 0..n, so k = 0 and k = n are the boundary interfaces. Centres never
/// touch +-1.
class Grid {
 public:
  /// Throws InvalidArgument for n < 4.
  explicit Grid(std::size_t n_cells);

  std::size_t size() const { return n_; }
  double dy() const { return dy_; }
  double center(std::size_t i) const { return centers_[i]; }
  std::span<const double> centers() const { return centers_; }
  double interface(std::size_t k) const;

  friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_; }

 private:
  std::size_t n_;
  double dy_;
  std::vector<double> centers_;
};

Grid build_grid(std::size_t n_cells);

/// Nonnegative cell values of a density on a Grid.
struct DensityField {
  Grid grid;
  std::vector<double> values;

  explicit DensityField(Grid g) : grid(g), values(g.size(), 0.0) {}
  DensityField(Grid g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  /// sum_i v_i dy
  double mass() const;
  /// sum_i y_i v_i dy
  double mean() const;
  /// Scales to unit mass; throws InvalidArgument if the mass is not positive.
  void normalize();
  bool is_nonnegative() const;
};

/// log(f / g) per cell; only meaningful where f > 0.
struct RatioField {
  Grid grid;
  std::vector<double> log_ratio;
};

/// Throws GridMismatch unless both fields share the grid.
void require_same_grid(const DensityField& a, const DensityField& b);

}  // namespace opinionfp
