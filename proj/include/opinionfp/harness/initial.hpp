#pragma once

#include <string>

#include "opinionfp/grid.hpp"
#include "opinionfp/harness/config.hpp"

namespace opinionfp::harness {

/// Equal-weight Gaussian mixture at +-1/2 with standard deviation `width`,
/// truncated to (-1, 1) and renormalised. Cell values are exact cell averages.
DensityField bimodal_density(const Grid& grid, double width);

DensityField uniform_density(const Grid& grid);

/// Reads one value per cell from a text file: either a bare value or
/// "y,value" per line; a non-numeric first line is taken as a header. The
/// result is renormalised. Throws IoError or ConfigError.
DensityField density_from_file(const Grid& grid, const std::string& path);

/// Initial density named by cfg.initial on the grid.
DensityField initial_density(const ExperimentConfig& cfg, const Grid& grid);

/// Conservative remap of a piecewise-constant density onto another grid.
DensityField remap_density(const DensityField& f, const Grid& target);

}  // namespace opinionfp::harness
