#pragma once

#include <span>

#include "opinionfp/grid.hpp"
#include "opinionfp/params.hpp"

namespace opinionfp {

/// Equilibrium as a grid field: exp of the exact cell average of log v,
/// renormalised to unit discrete mass. This is the reference density the
/// BetaEquilibrium overloads below compare against.
DensityField equilibrium_field(const BetaEquilibrium& eq, const Grid& grid);

/// Equilibrium sampled at the cell centres and renormalised to unit mass.
DensityField sampled_equilibrium(const BetaEquilibrium& eq, const Grid& grid);

/// log(f/g) per cell. PositivityError unless both fields are strictly positive.
RatioField log_ratio(const DensityField& f, const DensityField& g);

/// Relative Shannon entropy H(f, g) of two fields of equal mass.
///
/// Evaluated through the nonnegative integrand g (u log u - u + 1), u = f/g,
/// which coincides with sum f log(f/g) dy when the masses agree and does not
/// lose the quadratic small-distance regime to cancellation. 0 log 0 = 0.
/// Throws AbsoluteContinuityError if g vanishes on a cell where f > 0.
double relative_entropy(const DensityField& f, const DensityField& g);

/// Weighted Fisher information sum over interior interfaces of
///   (lambda/2)(1 - y^2) (d log(f/g))^2 (f_left + f_right)/2 dy
/// with the interface difference quotient of the log ratio.
double weighted_fisher(const DensityField& f, const DensityField& g, double lambda);
double weighted_fisher(const DensityField& f, const BetaEquilibrium& eq, double lambda);

/// sum (f - g)^2 / g dy; +inf when g = 0 on a cell where f != 0.
double weighted_l2(const DensityField& f, const DensityField& g);
double weighted_l2(const DensityField& f, const BetaEquilibrium& eq);

double l1_distance(const DensityField& f, const DensityField& g);

/// 2 H(f, g) - ||f - g||_1^2. Returns +inf when f is not absolutely
/// continuous with respect to g.
double ckp_slack(const DensityField& f, const DensityField& g);

/// K Ĩ(phi, v) - H(phi, v) against equilibrium_field for p. RegimeError
/// outside the log-Sobolev regime, PositivityError if phi has a zero cell.
double ls_slack(const DensityField& phi, const KineticParams& p);

/// Slack of the uniform-equilibrium inequality (lambda = 1, m = 0) for an
/// arbitrary-sign grid function w:
///   2 int (1-x^2) w'^2 - [int w^2 log w^2 - |w|^2 log(|w|^2 / 2)].
/// Homogeneous of degree two in w. InvalidArgument when w vanishes identically.
double uniform_ls_slack(const Grid& grid, std::span<const double> w);

}  // namespace opinionfp
