#include "opinionfp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opinionfp/errors.hpp"

namespace opinionfp {

Grid::Grid(std::size_t n_cells) : n_(n_cells), dy_(0.0) {
  if (n_cells < 4) {
    throw InvalidArgument("a grid needs at least 4 cells, got " + std::to_string(n_cells));
  }
  dy_ = 2.0 / static_cast<double>(n_);
  centers_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    centers_[i] = -1.0 + (static_cast<double>(i) + 0.5) * dy_;
  }
}

double Grid::interface(std::size_t k) const {
  if (k == 0) return -1.0;
  if (k == n_) return 1.0;
  return -1.0 + static_cast<double>(k) * dy_;
}

Grid build_grid(std::size_t n_cells) { return Grid(n_cells); }

DensityField::DensityField(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw GridMismatch("field has " + std::to_string(values.size()) + " values for a " +
                       std::to_string(grid.size()) + "-cell grid");
  }
}

double DensityField::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.dy();
}

double DensityField::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += grid.center(i) * values[i];
  return s * grid.dy();
}

void DensityField::normalize() {
  const double total = mass();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw InvalidArgument("cannot normalise a field with mass " + std::to_string(total));
  }
  for (double& v : values) v /= total;
}

bool DensityField::is_nonnegative() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return v >= 0.0; });
}

void require_same_grid(const DensityField& a, const DensityField& b) {
  if (!(a.grid == b.grid)) {
    throw GridMismatch("fields live on grids of " + std::to_string(a.grid.size()) + " and " +
                       std::to_string(b.grid.size()) + " cells");
  }
}

}  // namespace opinionfp
