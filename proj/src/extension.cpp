#include "lfamg/extension.hpp"

#include "lfamg/detail/axis.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace lfamg {

const char* to_string(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::Odd: return "odd";
    case ExtensionKind::Even: return "even";
    case ExtensionKind::Mixed: return "mixed";
  }
  return "?";
}

namespace {

// 1D line maps. x is the source line, y the periodic line (or vice versa for
// the restrictions). All index arithmetic follows the layouts documented in
// the header.

void odd_extend_line(const double* x, Index xs, int m, double* y, Index ys, int N) {
  const int n = m + 1;
  for (int j = 0; j < m; ++j) {
    y[j * ys] = x[j * xs];
    y[(N - 2 - j) * ys] = -x[j * xs];
  }
  y[(n - 1) * ys] = 0.0;
  y[(N - 1) * ys] = 0.0;
}

void odd_restrict_line(const double* x, Index xs, int N, double* y, Index ys, int m) {
  for (int j = 0; j < m; ++j) y[j * ys] = 0.5 * (x[j * xs] - x[(N - 2 - j) * xs]);
}

void even_extend_line(const double* x, Index xs, int m, double* y, Index ys, int N) {
  const int n = m - 1;
  for (int j = 0; j <= n; ++j) y[j * ys] = x[j * xs];
  for (int j = 1; j < n; ++j) y[(N - j) * ys] = x[j * xs];
}

void even_restrict_line(const double* x, Index xs, int N, double* y, Index ys, int m) {
  const int n = m - 1;
  y[0] = x[0];
  y[n * ys] = x[n * xs];
  for (int j = 1; j < n; ++j) y[j * ys] = 0.5 * (x[j * xs] + x[(N - j) * xs]);
}

void mixed_extend_line(const double* x, Index xs, int n, double* y, Index ys, int N) {
  // Even reflection about the Neumann end gives a doubled-interval vector w of
  // size 2n-1; its odd extension has period N = 4n.
  const int wlen = 2 * n - 1;
  auto w = [&](int j) { return (j <= n - 1) ? x[j * xs] : x[(2 * n - 2 - j) * xs]; };
  for (int j = 0; j < wlen; ++j) {
    y[j * ys] = w(j);
    y[(N - 2 - j) * ys] = -w(j);
  }
  y[(2 * n - 1) * ys] = 0.0;
  y[(N - 1) * ys] = 0.0;
}

void mixed_restrict_line(const double* x, Index xs, int N, double* y, Index ys, int n) {
  auto w = [&](int j) { return 0.5 * (x[j * xs] - x[(N - 2 - j) * xs]); };
  for (int j = 0; j < n - 1; ++j) y[j * ys] = 0.5 * (w(j) + w(2 * n - 2 - j));
  y[(n - 1) * ys] = w(n - 1);
}

}  // namespace

ExtensionPair::ExtensionPair(ExtensionKind kind, int n, int d) : kind_(kind), n_(n), d_(d) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("extension pairs need an even subinterval count >= 2");
  if (d < 1 || d > 3) throw std::invalid_argument("extension dimension must be in [1,3]");
}

int ExtensionPair::source_size_per_dir() const {
  switch (kind_) {
    case ExtensionKind::Odd: return n_ - 1;
    case ExtensionKind::Even: return n_ + 1;
    case ExtensionKind::Mixed: return n_;
  }
  return 0;
}

int ExtensionPair::target_size_per_dir() const { return kind_ == ExtensionKind::Mixed ? 4 * n_ : 2 * n_; }

GridSpec ExtensionPair::source_grid() const {
  switch (kind_) {
    case ExtensionKind::Odd: return make_grid(d_, n_, BoundaryKind::Dirichlet);
    case ExtensionKind::Even: return make_grid(d_, n_, BoundaryKind::Neumann);
    case ExtensionKind::Mixed: return make_grid(d_, n_, BoundaryKind::MixedDN);
  }
  throw std::logic_error("unreachable");
}

GridSpec ExtensionPair::target_grid() const {
  return make_periodic_grid(d_, n_, kind_ == ExtensionKind::Mixed ? 4 : 2);
}

Vec ExtensionPair::extend(const Vec& u) const {
  if (u.size() != source_total())
    throw std::invalid_argument("extend: expected source size " + std::to_string(source_total()) + ", got " +
                                std::to_string(u.size()));
  const int m = source_size_per_dir();
  const int N = target_size_per_dir();
  Vec v = u;
  std::array<int, 3> shape{1, 1, 1};
  for (int a = 0; a < d_; ++a) shape[a] = m;
  for (int axis = 0; axis < d_; ++axis) {
    switch (kind_) {
      case ExtensionKind::Odd:
        v = detail::map_axis(v, shape, d_, axis, N, odd_extend_line);
        break;
      case ExtensionKind::Even:
        v = detail::map_axis(v, shape, d_, axis, N, even_extend_line);
        break;
      case ExtensionKind::Mixed:
        v = detail::map_axis(v, shape, d_, axis, N, mixed_extend_line);
        break;
    }
    shape[axis] = N;
  }
  return v;
}

Vec ExtensionPair::restrict_(const Vec& v) const {
  if (v.size() != target_total())
    throw std::invalid_argument("restrict: expected periodic size " + std::to_string(target_total()) + ", got " +
                                std::to_string(v.size()));
  const int m = source_size_per_dir();
  const int N = target_size_per_dir();
  Vec u = v;
  std::array<int, 3> shape{1, 1, 1};
  for (int a = 0; a < d_; ++a) shape[a] = N;
  for (int axis = 0; axis < d_; ++axis) {
    switch (kind_) {
      case ExtensionKind::Odd:
        u = detail::map_axis(u, shape, d_, axis, m, odd_restrict_line);
        break;
      case ExtensionKind::Even:
        u = detail::map_axis(u, shape, d_, axis, m, even_restrict_line);
        break;
      case ExtensionKind::Mixed:
        u = detail::map_axis(u, shape, d_, axis, m, mixed_restrict_line);
        break;
    }
    shape[axis] = m;
  }
  return u;
}

std::unique_ptr<LinearOp> ExtensionPair::extend_op() const {
  return std::make_unique<FnOp>(target_total(), source_total(), [pair = *this](const Vec& u) { return pair.extend(u); });
}

std::unique_ptr<LinearOp> ExtensionPair::restrict_op() const {
  return std::make_unique<FnOp>(source_total(), target_total(),
                                [pair = *this](const Vec& v) { return pair.restrict_(v); });
}

ExtensionPair odd_extension(int n, int d) { return ExtensionPair(ExtensionKind::Odd, n, d); }
ExtensionPair even_extension(int n, int d) { return ExtensionPair(ExtensionKind::Even, n, d); }
ExtensionPair mixed_extension(int n, int d) { return ExtensionPair(ExtensionKind::Mixed, n, d); }

ExtensionPair extension_for(BoundaryKind bc, int n, int d) {
  switch (bc) {
    case BoundaryKind::Dirichlet: return odd_extension(n, d);
    case BoundaryKind::Neumann: return even_extension(n, d);
    case BoundaryKind::MixedDN: return mixed_extension(n, d);
    case BoundaryKind::Periodic: break;
  }
  throw std::invalid_argument("periodic problems have no extension pair");
}

bool in_range_of_extension(const Vec& v, const ExtensionPair& pair, double tol) {
  if (v.size() != pair.target_total()) return false;
  const Vec projected = pair.extend(pair.restrict_(v));
  return (projected - v).lpNorm<Eigen::Infinity>() <= tol;
}

CompatReport check_lfa_compatible(const LinearOp& m_bc, const LinearOp& m_periodic, const ExtensionPair& source,
                                  const ExtensionPair& target, double tol, std::string name_bc,
                                  std::string name_periodic) {
  const Index src_m = source.source_total();
  const Index tgt_m = target.source_total();
  if (src_m > 10000 || tgt_m > 10000) throw std::length_error("compatibility check exceeds the oracle size guard");
  if (m_bc.cols() != src_m || m_bc.rows() != tgt_m)
    throw std::invalid_argument("boundary-side operator does not match the extension pair sizes");
  if (m_periodic.cols() != source.target_total() || m_periodic.rows() != target.target_total())
    throw std::invalid_argument("periodic-side operator does not match the extension pair sizes");

  CompatReport report;
  report.name_bc = std::move(name_bc);
  report.name_periodic = std::move(name_periodic);
  report.tol = tol;
  report.probe = "exhaustive sweep over " + std::to_string(src_m) + " source basis vectors";

  Vec e = Vec::Zero(src_m);
  for (Index i = 0; i < src_m; ++i) {
    e[i] = 1.0;
    const Vec direct = m_bc.apply(e);
    const Vec image = m_periodic.apply(source.extend(e));
    const Vec through = target.restrict_(image);
    const double op_defect = (through - direct).lpNorm<Eigen::Infinity>();
    const double range_defect = (target.extend(target.restrict_(image)) - image).lpNorm<Eigen::Infinity>();
    if ((op_defect > tol || range_defect > tol) && !report.counterexample) report.counterexample = i;
    report.operator_defect = std::max(report.operator_defect, op_defect);
    report.range_defect = std::max(report.range_defect, range_defect);
    e[i] = 0.0;
  }
  report.verdict = report.operator_defect <= tol && report.range_defect <= tol;
  return report;
}

CompatReport check_lfa_compatible(const LinearOp& m_bc, const LinearOp& m_periodic, const ExtensionPair& pair,
                                  double tol, std::string name_bc, std::string name_periodic) {
  return check_lfa_compatible(m_bc, m_periodic, pair, pair, tol, std::move(name_bc), std::move(name_periodic));
}

}  // namespace lfamg
