#include "lfamg/smoothers.hpp"

#include "lfamg/detail/axis.hpp"

#include <sstream>
#include <stdexcept>

namespace lfamg {

const char* to_string(SmootherKind kind) {
  switch (kind) {
    case SmootherKind::WeightedJacobi: return "jacobi";
    case SmootherKind::RedBlackGS: return "rbgs";
    case SmootherKind::LineRelaxation: return "line";
    case SmootherKind::Polynomial: return "polynomial";
    case SmootherKind::ExactSolve: return "exact";
  }
  return "?";
}

SmootherSpec SmootherSpec::jacobi(double omega) {
  SmootherSpec s;
  s.kind = SmootherKind::WeightedJacobi;
  s.omega = omega;
  return s;
}

SmootherSpec SmootherSpec::red_black_gs() {
  SmootherSpec s;
  s.kind = SmootherKind::RedBlackGS;
  return s;
}

SmootherSpec SmootherSpec::line_relaxation(int direction) {
  SmootherSpec s;
  s.kind = SmootherKind::LineRelaxation;
  s.line_direction = direction;
  return s;
}

SmootherSpec SmootherSpec::polynomial(std::vector<double> coefficients) {
  SmootherSpec s;
  s.kind = SmootherKind::Polynomial;
  s.coefficients = std::move(coefficients);
  return s;
}

SmootherSpec SmootherSpec::exact_solve() {
  SmootherSpec s;
  s.kind = SmootherKind::ExactSolve;
  return s;
}

void SmootherSpec::validate(const GridSpec& grid) const {
  switch (kind) {
    case SmootherKind::WeightedJacobi:
      if (!(omega > 0.0) || omega > 1.0) throw std::invalid_argument("jacobi weight must lie in (0, 1]");
      break;
    case SmootherKind::LineRelaxation:
      if (grid.d < 2) throw std::invalid_argument("line relaxation needs dimension >= 2");
      if (line_direction < 0 || line_direction >= grid.d)
        throw std::invalid_argument("line direction outside [0, d)");
      break;
    case SmootherKind::Polynomial:
      if (coefficients.empty()) throw std::invalid_argument("polynomial smoother needs a nonempty coefficient list");
      break;
    case SmootherKind::RedBlackGS:
    case SmootherKind::ExactSolve:
      break;
  }
}

std::string SmootherSpec::name() const {
  std::ostringstream os;
  os << to_string(kind);
  if (kind == SmootherKind::WeightedJacobi) os << "(omega=" << omega << ")";
  if (kind == SmootherKind::LineRelaxation) os << "(dir=" << line_direction << ")";
  if (kind == SmootherKind::Polynomial) os << "(" << coefficients.size() << " steps)";
  return os.str();
}

Smoother::Smoother(SmootherSpec spec, DiscreteOperator op) : spec_(std::move(spec)), op_(std::move(op)) {
  const GridSpec& grid = op_.grid();
  spec_.validate(grid);
  if (spec_.kind == SmootherKind::RedBlackGS) {
    point_parity_.resize(static_cast<std::size_t>(grid.total_points()));
    const int m = grid.points_per_dir();
    std::array<int, 3> j{0, 0, 0};
    for (Index flat = 0; flat < grid.total_points(); ++flat) {
      int sum = 0;
      for (int a = 0; a < grid.d; ++a) sum += j[a];
      point_parity_[static_cast<std::size_t>(flat)] = static_cast<std::uint8_t>(sum & 1);
      for (int a = 0; a < grid.d; ++a) {
        if (++j[a] < m) break;
        j[a] = 0;
      }
    }
  }
  if (spec_.kind == SmootherKind::LineRelaxation) {
    // One dense factorization serves every line: the stencil and the
    // transverse diagonal contribution are constant across lines.
    const int len = grid.points_per_dir();
    const Stencil1D& st = op_.stencil();
    Mat block = Mat::Zero(len, len);
    const double diag = op_.diagonal_value();
    for (int i = 0; i < len; ++i) {
      block(i, i) = diag;
      if (i > 0) block(i, i - 1) += st.off;
      if (i < len - 1) block(i, i + 1) += st.off;
    }
    if (st.lo == EndRule::Reflect && len > 1) block(0, 1) += st.off;
    if (st.hi == EndRule::Reflect && len > 1) block(len - 1, len - 2) += st.off;
    if (st.lo == EndRule::Wrap) block(0, len - 1) += st.off;
    if (st.hi == EndRule::Wrap) block(len - 1, 0) += st.off;
    line_lu_ = std::make_shared<Eigen::PartialPivLU<Mat>>(block);

    // Transverse red-black ordering of the lines.
    const auto shape = grid.shape();
    const int axis = spec_.line_direction;
    line_parity_.clear();
    detail::for_each_line(shape, grid.d, axis, [&](Index base, Index stride, int) {
      // Decode the transverse multi-index parity from the base offset.
      Index rest = base;
      int sum = 0;
      Index s = 1;
      for (int a = 0; a < grid.d; ++a) {
        const int size = shape[a];
        if (a != axis) {
          sum += static_cast<int>((rest / s) % size);
        }
        s *= size;
      }
      (void)stride;
      line_parity_.push_back(static_cast<std::uint8_t>(sum & 1));
    });
  }
  if (spec_.kind == SmootherKind::ExactSolve) {
    dense_lu_ = std::make_shared<Eigen::PartialPivLU<Mat>>(materialize(op_));
  }
}

Vec Smoother::rbgs_half_sweep(const Vec& u, const Vec& f, int color) const {
  if (spec_.kind != SmootherKind::RedBlackGS) throw std::logic_error("half sweeps are a red-black operation");
  const double diag = op_.diagonal_value();
  const Vec r = f - op_.apply(u);
  Vec out = u;
  for (Index i = 0; i < out.size(); ++i)
    if (point_parity_[static_cast<std::size_t>(i)] == color) out[i] += r[i] / diag;
  return out;
}

Vec Smoother::line_relaxation_phase(const Vec& u, const Vec& f, int parity) const {
  const GridSpec& grid = op_.grid();
  const auto shape = grid.shape();
  const int axis = spec_.line_direction;
  const Vec r = f - op_.apply(u);
  Vec out = u;
  const int len = grid.points_per_dir();
  Vec rhs(len), delta(len);
  std::size_t line_idx = 0;
  detail::for_each_line(shape, grid.d, axis, [&](Index base, Index stride, int) {
    if (line_parity_[line_idx++] != parity) return;
    for (int k = 0; k < len; ++k) rhs[k] = r[base + k * stride];
    delta = line_lu_->solve(rhs);
    for (int k = 0; k < len; ++k) out[base + k * stride] += delta[k];
  });
  return out;
}

Vec Smoother::step(const Vec& u, const Vec& f) const {
  check_apply_size(op_, u);
  check_apply_size(op_, f);
  switch (spec_.kind) {
    case SmootherKind::WeightedJacobi: {
      const double scale = spec_.omega / op_.diagonal_value();
      return u + scale * (f - op_.apply(u));
    }
    case SmootherKind::RedBlackGS: {
      return rbgs_half_sweep(rbgs_half_sweep(u, f, 0), f, 1);
    }
    case SmootherKind::LineRelaxation: {
      return line_relaxation_phase(line_relaxation_phase(u, f, 0), f, 1);
    }
    case SmootherKind::Polynomial: {
      Vec v = u;
      for (double alpha : spec_.coefficients) v = v + alpha * (f - op_.apply(v));
      return v;
    }
    case SmootherKind::ExactSolve: {
      return u + dense_lu_->solve(f - op_.apply(u));
    }
  }
  throw std::logic_error("unknown smoother kind");
}

std::unique_ptr<LinearOp> Smoother::iterator_op(int steps) const {
  const Index size = op_.rows();
  return std::make_unique<FnOp>(size, size, [sm = *this, steps, size](const Vec& r) {
    Vec u = Vec::Zero(size);
    for (int k = 0; k < steps; ++k) u = sm.step(u, r);
    return u;
  });
}

std::unique_ptr<LinearOp> Smoother::propagator_op(int steps) const {
  const Index size = op_.rows();
  return std::make_unique<FnOp>(size, size, [sm = *this, steps, size](const Vec& e) {
    Vec u = e;
    const Vec zero = Vec::Zero(size);
    for (int k = 0; k < steps; ++k) u = sm.step(u, zero);
    return u;
  });
}

Vec smoother_step(const SmootherSpec& spec, const DiscreteOperator& op, const Vec& u, const Vec& f) {
  return Smoother(spec, op).step(u, f);
}

std::unique_ptr<LinearOp> error_propagator(const SmootherSpec& spec, const DiscreteOperator& op, int steps) {
  return Smoother(spec, op).propagator_op(steps);
}

}  // namespace lfamg
