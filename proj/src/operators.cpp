#include "lfamg/operators.hpp"

#include "lfamg/detail/axis.hpp"

#include <stdexcept>
#include <string>

namespace lfamg {

namespace {

void require_positive_reaction(double c) {
  // c = 0 would make the periodic and Neumann embeddings singular.
  if (!(c > 0.0)) throw std::invalid_argument("reaction coefficient must be strictly positive, got " + std::to_string(c));
}

Stencil1D stencil_for(BoundaryKind bc, double h) {
  const double w = 1.0 / (h * h);
  switch (bc) {
    case BoundaryKind::Dirichlet: return {2.0 * w, -w, EndRule::Truncate, EndRule::Truncate};
    case BoundaryKind::Neumann: return {2.0 * w, -w, EndRule::Reflect, EndRule::Reflect};
    case BoundaryKind::MixedDN: return {2.0 * w, -w, EndRule::Truncate, EndRule::Reflect};
    case BoundaryKind::Periodic: return {2.0 * w, -w, EndRule::Wrap, EndRule::Wrap};
  }
  throw std::invalid_argument("unknown boundary kind");
}

}  // namespace

DiscreteOperator::DiscreteOperator(GridSpec grid, Stencil1D stencil, double reaction)
    : grid_(grid), stencil_(stencil), c_(reaction) {
  require_positive_reaction(reaction);
}

void DiscreteOperator::apply_to(const Vec& x, Vec& y) const {
  check_apply_size(*this, x);
  y = c_ * x;
  const auto shape = grid_.shape();
  const double center = stencil_.center;
  const double off = stencil_.off;
  for (int axis = 0; axis < grid_.d; ++axis) {
    detail::for_each_line(shape, grid_.d, axis, [&](Index base, Index stride, int len) {
      for (int k = 0; k < len; ++k) {
        const Index at = base + k * stride;
        double acc = center * x[at];
        if (k > 0) {
          acc += off * x[at - stride];
        } else if (stencil_.lo == EndRule::Reflect) {
          acc += (len > 1) ? off * x[at + stride] : 0.0;
        } else if (stencil_.lo == EndRule::Wrap) {
          acc += off * x[base + (len - 1) * stride];
        }
        if (k < len - 1) {
          acc += off * x[at + stride];
        } else if (stencil_.hi == EndRule::Reflect) {
          acc += (len > 1) ? off * x[at - stride] : 0.0;
        } else if (stencil_.hi == EndRule::Wrap) {
          acc += off * x[base];
        }
        y[at] += acc;
      }
    });
  }
}

DiscreteOperator dirichlet_operator_1d(int n, double c) {
  const GridSpec grid = make_grid(1, n, BoundaryKind::Dirichlet);
  return DiscreteOperator(grid, stencil_for(grid.bc, grid.h()), c);
}

DiscreteOperator periodic_operator_1d(int n, double c) {
  const GridSpec grid = make_periodic_grid(1, n);
  return DiscreteOperator(grid, stencil_for(grid.bc, grid.h()), c);
}

DiscreteOperator neumann_operator_1d(int n, double c) {
  const GridSpec grid = make_grid(1, n, BoundaryKind::Neumann);
  return DiscreteOperator(grid, stencil_for(grid.bc, grid.h()), c);
}

DiscreteOperator mixed_operator_1d(int n, double c) {
  const GridSpec grid = make_grid(1, n, BoundaryKind::MixedDN);
  return DiscreteOperator(grid, stencil_for(grid.bc, grid.h()), c);
}

DiscreteOperator assemble_tensor_operator(const DiscreteOperator& op1d, int d) {
  if (op1d.grid().d != 1) throw std::invalid_argument("assemble_tensor_operator expects a 1D operator");
  GridSpec grid = op1d.grid();
  if (d < 1 || d > 3) throw std::invalid_argument("tensor dimension must be in [1,3]");
  grid.d = d;
  return DiscreteOperator(grid, op1d.stencil(), op1d.reaction());
}

DiscreteOperator make_operator(const GridSpec& grid, double c) {
  return DiscreteOperator(grid, stencil_for(grid.bc, grid.h()), c);
}

Mat materialize_dense(const LinearOp& op, Index guard) { return materialize(op, guard); }

}  // namespace lfamg
