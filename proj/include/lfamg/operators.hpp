#pragma once

#include "lfamg/grid.hpp"
#include "lfamg/linear_op.hpp"

namespace lfamg {

enum class EndRule { Truncate, Reflect, Wrap };

/// Constant-coefficient three-point stencil with a rule per end. Reflect
/// eliminates the ghost point of a homogeneous Neumann end, which doubles the
/// inner off-diagonal on the boundary row.
struct Stencil1D {
  double center = 0.0;
  double off = 0.0;
  EndRule lo = EndRule::Truncate;
  EndRule hi = EndRule::Truncate;
};

/// Matrix-free Kronecker-sum operator: sum over directions of the 1D stencil
/// swept along lines, plus the reaction c added exactly once.
class DiscreteOperator final : public LinearOp {
 public:
  DiscreteOperator(GridSpec grid, Stencil1D stencil, double reaction);

  const GridSpec& grid() const { return grid_; }
  const Stencil1D& stencil() const { return stencil_; }
  double reaction() const { return c_; }
  /// All supported operators have a constant diagonal d*center + c.
  double diagonal_value() const { return grid_.d * stencil_.center + c_; }

  Index rows() const override { return grid_.total_points(); }
  Index cols() const override { return grid_.total_points(); }
  void apply_to(const Vec& x, Vec& y) const override;

 private:
  GridSpec grid_;
  Stencil1D stencil_;
  double c_;
};

DiscreteOperator dirichlet_operator_1d(int n, double c);
DiscreteOperator periodic_operator_1d(int n, double c);  // N = 2n points
DiscreteOperator neumann_operator_1d(int n, double c);
DiscreteOperator mixed_operator_1d(int n, double c);  // Dirichlet at x=0, Neumann at x=1

/// Lift a 1D operator to d dimensions; the reaction is taken from the 1D
/// operator and added once at the tensor level.
DiscreteOperator assemble_tensor_operator(const DiscreteOperator& op1d, int d);

/// The discrete operator matching a grid's boundary kind (periodic grids may
/// carry period 4 for the mixed embedding).
DiscreteOperator make_operator(const GridSpec& grid, double c);

Mat materialize_dense(const LinearOp& op, Index guard = 10000);

}  // namespace lfamg
