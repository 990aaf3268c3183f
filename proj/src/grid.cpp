#include "lfamg/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lfamg {

const char* to_string(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::Dirichlet: return "dirichlet";
    case BoundaryKind::Neumann: return "neumann";
    case BoundaryKind::MixedDN: return "mixed";
    case BoundaryKind::Periodic: return "periodic";
  }
  return "?";
}

BoundaryKind boundary_kind_from_string(std::string_view name) {
  if (name == "dirichlet") return BoundaryKind::Dirichlet;
  if (name == "neumann") return BoundaryKind::Neumann;
  if (name == "mixed") return BoundaryKind::MixedDN;
  if (name == "periodic") return BoundaryKind::Periodic;
  throw std::invalid_argument("unknown boundary kind '" + std::string(name) + "'");
}

int GridSpec::points_per_dir() const {
  switch (bc) {
    case BoundaryKind::Dirichlet: return n - 1;
    case BoundaryKind::Neumann: return n + 1;
    case BoundaryKind::MixedDN: return n;
    case BoundaryKind::Periodic: return period * n;
  }
  return 0;
}

Index GridSpec::total_points() const {
  Index total = 1;
  for (int a = 0; a < d; ++a) total *= points_per_dir();
  return total;
}

std::array<int, 3> GridSpec::shape() const {
  std::array<int, 3> s{1, 1, 1};
  for (int a = 0; a < d; ++a) s[a] = points_per_dir();
  return s;
}

namespace {

void validate_common(int d, int n) {
  if (d < 1 || d > 3) throw std::invalid_argument("grid dimension must be in [1,3], got " + std::to_string(d));
  if (n < 2) throw std::invalid_argument("subinterval count must be >= 2, got " + std::to_string(n));
  if (n % 2 != 0)
    throw std::invalid_argument("subinterval count must be even (coarsening and periodic embedding need it), got " +
                                std::to_string(n));
}

}  // namespace

GridSpec make_grid(int d, int n, BoundaryKind bc) {
  validate_common(d, n);
  return GridSpec{d, n, bc, 2};
}

GridSpec make_periodic_grid(int d, int n, int period) {
  validate_common(d, n);
  if (period != 2 && period != 4)
    throw std::invalid_argument("periodic grids support period 2 or 4, got " + std::to_string(period));
  return GridSpec{d, n, BoundaryKind::Periodic, period};
}

Index lex_index(const GridSpec& grid, const std::array<int, 3>& multi) {
  const int m = grid.points_per_dir();
  Index flat = 0;
  Index stride = 1;
  for (int a = 0; a < 3; ++a) {
    if (a < grid.d) {
      if (multi[a] < 0 || multi[a] >= m)
        throw std::out_of_range("multi-index component " + std::to_string(a) + " = " + std::to_string(multi[a]) +
                                " outside [0," + std::to_string(m) + ")");
      flat += stride * multi[a];
      stride *= m;
    } else if (multi[a] != 0) {
      throw std::out_of_range("multi-index component beyond grid dimension must be 0");
    }
  }
  return flat;
}

std::array<int, 3> multi_index(const GridSpec& grid, Index flat) {
  if (flat < 0 || flat >= grid.total_points()) throw std::out_of_range("flat index outside grid");
  const int m = grid.points_per_dir();
  std::array<int, 3> multi{0, 0, 0};
  for (int a = 0; a < grid.d; ++a) {
    multi[a] = static_cast<int>(flat % m);
    flat /= m;
  }
  return multi;
}

template <class Scalar>
GridFunctionT<Scalar> make_grid_function(const GridSpec& grid, Eigen::VectorX<Scalar> values) {
  if (values.size() != grid.total_points())
    throw std::invalid_argument("grid function length " + std::to_string(values.size()) +
                                " does not match grid unknown count " + std::to_string(grid.total_points()));
  return GridFunctionT<Scalar>{grid, std::move(values)};
}

template GridFunctionT<double> make_grid_function(const GridSpec&, Eigen::VectorXd);
template GridFunctionT<std::complex<double>> make_grid_function(const GridSpec&, Eigen::VectorXcd);

ComplexGridFunction fourier_mode(const GridSpec& grid, const std::array<double, 3>& theta) {
  if (grid.bc != BoundaryKind::Periodic)
    throw std::invalid_argument("fourier modes are defined on periodic grids only");
  const int m = grid.points_per_dir();
  CVec values(grid.total_points());
  std::array<int, 3> j{0, 0, 0};
  for (Index flat = 0; flat < values.size(); ++flat) {
    double phase = 0.0;
    for (int a = 0; a < grid.d; ++a) phase += theta[a] * j[a];
    values[flat] = std::polar(1.0, phase);
    for (int a = 0; a < grid.d; ++a) {
      if (++j[a] < m) break;
      j[a] = 0;
    }
  }
  return ComplexGridFunction{grid, std::move(values)};
}

}  // namespace lfamg
