#pragma once

#include "lfamg/grid.hpp"
#include "lfamg/linear_op.hpp"

#include <memory>

namespace lfamg {

/// The one transfer pair used throughout: full weighting 1/4 (1, 2, 1) and
/// d-linear interpolation, tensor products per direction.
struct TransferSpec {
  enum class Restriction { FullWeighting } restriction = Restriction::FullWeighting;
  enum class Prolongation { DLinear } prolongation = Prolongation::DLinear;
};

/// Coarse companion of a grid: n halved, same boundary kind and period.
GridSpec coarsen(const GridSpec& fine);

/// Lattice anchor of coarse nodes inside the fine periodic storage: coarse
/// node q sits at fine storage index 2q + a. The odd and mixed extensions
/// place storage 0 at x = h (a = 1); the even extension places it at
/// x = 0 (a = 0). Boundary-value grids are anchored by geometry and
/// ignore a.
int anchor_for(BoundaryKind bc);

std::unique_ptr<LinearOp> full_weighting(const GridSpec& fine, int anchor);
std::unique_ptr<LinearOp> dlinear_interpolation(const GridSpec& fine, int anchor);

/// Convenience, using the grid's own anchor.
std::unique_ptr<LinearOp> full_weighting(const GridSpec& fine);
std::unique_ptr<LinearOp> dlinear_interpolation(const GridSpec& fine);

Vec full_weighting_restrict(const GridSpec& fine, const Vec& u);
Vec dlinear_interpolate(const GridSpec& fine, const Vec& coarse_values);

}  // namespace lfamg
