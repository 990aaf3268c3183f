#include "lfamg/lfa.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lfamg {

namespace {

constexpr double kPi = std::numbers::pi;

int wrap_to_canonical(int k, int N) {
  // canonical range (-N/2, N/2]
  k %= N;
  if (k <= -N / 2) k += N;
  if (k > N / 2) k -= N;
  return k;
}

void require_lattice(const GridSpec& grid) {
  if (grid.bc != BoundaryKind::Periodic) throw std::invalid_argument("LFA runs on periodic grids");
  if (grid.points_per_dir() % 4 != 0)
    throw std::invalid_argument("harmonic analysis needs the point count divisible by 4");
}

CMat matrix_power(const CMat& m, int p) {
  CMat out = CMat::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) out = m * out;
  return out;
}

double block_spectral_radius(const CMat& m) {
  Eigen::ComplexEigenSolver<CMat> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("block eigenvalue computation failed");
  double rho = 0.0;
  for (Index i = 0; i < m.rows(); ++i) rho = std::max(rho, std::abs(solver.eigenvalues()[i]));
  return rho;
}

}  // namespace

double Frequency::theta(int axis) const { return 2.0 * kPi * k[axis] / static_cast<double>(N); }

std::array<double, 3> Frequency::angles() const {
  std::array<double, 3> t{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) t[a] = theta(a);
  return t;
}

bool frequency_less(const Frequency& a, const Frequency& b) {
  for (int axis = 0; axis < a.d; ++axis) {
    if (a.k[axis] != b.k[axis]) return a.k[axis] < b.k[axis];
  }
  return false;
}

FrequencySet::FrequencySet(int N, int d) {
  if (N < 4 || N % 4 != 0) throw std::invalid_argument("frequency set needs N divisible by 4");
  if (d < 1 || d > 3) throw std::invalid_argument("frequency set dimension must be in [1,3]");
  const int half = N / 4;
  std::array<int, 3> k{0, 0, 0};
  for (int a = 0; a < d; ++a) k[a] = -half;
  while (true) {
    lows_.push_back(Frequency{k, N, d});
    int a = 0;
    for (; a < d; ++a) {
      if (++k[a] < half) break;
      k[a] = -half;
    }
    if (a == d) break;
  }
}

std::vector<Frequency> harmonics_of(const Frequency& low) {
  const int count = 1 << low.d;
  std::vector<Frequency> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int b = 0; b < count; ++b) {
    Frequency f = low;
    for (int a = 0; a < low.d; ++a) {
      if ((b >> a) & 1) f.k[a] = wrap_to_canonical(f.k[a] + low.N / 2, low.N);
    }
    out.push_back(f);
  }
  return out;
}

std::vector<std::array<double, 3>> harmonic_tuple(const std::array<double, 3>& theta_low, int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("harmonic tuple dimension must be in [1,3]");
  for (int a = 0; a < d; ++a)
    if (theta_low[a] < -kPi / 2 || theta_low[a] >= kPi / 2)
      throw std::invalid_argument("low frequency component outside [-pi/2, pi/2)");
  std::vector<std::array<double, 3>> out;
  out.reserve(static_cast<std::size_t>(1) << d);
  for (int b = 0; b < (1 << d); ++b) {
    std::array<double, 3> t = theta_low;
    for (int a = 0; a < d; ++a) {
      if ((b >> a) & 1) {
        t[a] += kPi;
        if (t[a] > kPi) t[a] -= 2.0 * kPi;
      }
    }
    out.push_back(t);
  }
  return out;
}

double stencil_symbol(const Stencil1D& stencil, double theta) {
  return stencil.center + 2.0 * stencil.off * std::cos(theta);
}

double operator_symbol(const DiscreteOperator& op, const std::array<double, 3>& theta) {
  const Stencil1D& st = op.stencil();
  if (st.lo != EndRule::Wrap || st.hi != EndRule::Wrap)
    throw std::invalid_argument("operator symbols are defined for periodic stencils");
  double sym = op.reaction();
  for (int a = 0; a < op.grid().d; ++a) sym += stencil_symbol(st, theta[a]);
  return sym;
}

double operator_symbol(const DiscreteOperator& op, const Frequency& freq) {
  return operator_symbol(op, freq.angles());
}

CVec harmonic_mode(const GridSpec& grid, const Frequency& freq, int anchor) {
  require_lattice(grid);
  if (grid.points_per_dir() != freq.N) throw std::invalid_argument("frequency lattice does not match the grid");
  const int m = grid.points_per_dir();
  CVec values(grid.total_points());
  std::array<int, 3> j{0, 0, 0};
  for (Index flat = 0; flat < values.size(); ++flat) {
    double phase = 0.0;
    for (int a = 0; a < grid.d; ++a) phase += freq.theta(a) * (j[a] + anchor);
    values[flat] = std::polar(1.0, phase);
    for (int a = 0; a < grid.d; ++a) {
      if (++j[a] < m) break;
      j[a] = 0;
    }
  }
  return values;
}

SymbolBlock extract_block(const LinearOp& op, const GridSpec& grid, const Frequency& low, int anchor, double tol) {
  require_lattice(grid);
  if (op.rows() != grid.total_points() || op.cols() != grid.total_points())
    throw std::invalid_argument("operator does not act on the given grid");
  SymbolBlock block;
  block.low = low;
  block.harmonics = harmonics_of(low);
  const int count = static_cast<int>(block.harmonics.size());
  const double total = static_cast<double>(grid.total_points());
  std::vector<CVec> modes;
  modes.reserve(static_cast<std::size_t>(count));
  for (const Frequency& f : block.harmonics) modes.push_back(harmonic_mode(grid, f, anchor));
  block.matrix.resize(count, count);
  for (int b = 0; b < count; ++b) {
    const CVec image = op.apply_complex(modes[static_cast<std::size_t>(b)]);
    CVec reconstructed = CVec::Zero(image.size());
    for (int a = 0; a < count; ++a) {
      const std::complex<double> coeff = modes[static_cast<std::size_t>(a)].dot(image) / total;
      block.matrix(a, b) = coeff;
      reconstructed += coeff * modes[static_cast<std::size_t>(a)];
    }
    const double residual = (image - reconstructed).norm() / std::sqrt(total);
    if (residual > tol)
      throw std::runtime_error("harmonic projection residual " + std::to_string(residual) +
                               " exceeds tolerance: operator is not block-diagonal on this tuple");
  }
  return block;
}

SymbolBlock smoother_symbol_block(const SmootherSpec& spec, const DiscreteOperator& periodic_op, const Frequency& low,
                                  int anchor, int steps) {
  const Smoother smoother(spec, periodic_op);
  const auto propagator = smoother.propagator_op(steps);
  return extract_block(*propagator, periodic_op.grid(), low, anchor);
}

Eigen::VectorXd transfer_restriction_symbol(const Frequency& low) {
  const auto harmonics = harmonics_of(low);
  Eigen::VectorXd sym(static_cast<Index>(harmonics.size()));
  for (std::size_t b = 0; b < harmonics.size(); ++b) {
    double value = 1.0;
    for (int a = 0; a < low.d; ++a) value *= 0.5 * (1.0 + std::cos(harmonics[b].theta(a)));
    sym[static_cast<Index>(b)] = value;
  }
  return sym;
}

Eigen::VectorXd transfer_prolongation_symbol(const Frequency& low) { return transfer_restriction_symbol(low); }

Eigen::VectorXcd extract_restriction_row(const LinearOp& restriction, const GridSpec& fine, const Frequency& low,
                                         int anchor, double tol) {
  require_lattice(fine);
  const GridSpec coarse = coarsen(fine);
  const auto harmonics = harmonics_of(low);
  Frequency coarse_freq{low.k, coarse.points_per_dir(), low.d};
  for (int a = 0; a < low.d; ++a) coarse_freq.k[a] = wrap_to_canonical(low.k[a], coarse_freq.N);
  const CVec psi = harmonic_mode(coarse, coarse_freq, anchor);
  const double coarse_total = static_cast<double>(coarse.total_points());
  Eigen::VectorXcd row(static_cast<Index>(harmonics.size()));
  for (std::size_t b = 0; b < harmonics.size(); ++b) {
    const CVec image = restriction.apply_complex(harmonic_mode(fine, harmonics[b], anchor));
    const std::complex<double> coeff = psi.dot(image) / coarse_total;
    row[static_cast<Index>(b)] = coeff;
    const double residual = (image - coeff * psi).norm() / std::sqrt(coarse_total);
    if (residual > tol)
      throw std::runtime_error("restriction does not map the harmonic onto the coarse mode, residual " +
                               std::to_string(residual));
  }
  return row;
}

Eigen::VectorXcd extract_prolongation_column(const LinearOp& prolongation, const GridSpec& fine, const Frequency& low,
                                             int anchor, double tol) {
  require_lattice(fine);
  const GridSpec coarse = coarsen(fine);
  const auto harmonics = harmonics_of(low);
  Frequency coarse_freq{low.k, coarse.points_per_dir(), low.d};
  for (int a = 0; a < low.d; ++a) coarse_freq.k[a] = wrap_to_canonical(low.k[a], coarse_freq.N);
  const CVec image = prolongation.apply_complex(harmonic_mode(coarse, coarse_freq, anchor));
  const double fine_total = static_cast<double>(fine.total_points());
  Eigen::VectorXcd column(static_cast<Index>(harmonics.size()));
  CVec reconstructed = CVec::Zero(image.size());
  for (std::size_t b = 0; b < harmonics.size(); ++b) {
    const CVec mode = harmonic_mode(fine, harmonics[b], anchor);
    const std::complex<double> coeff = mode.dot(image) / fine_total;
    column[static_cast<Index>(b)] = coeff;
    reconstructed += coeff * mode;
  }
  const double residual = (image - reconstructed).norm() / std::sqrt(fine_total);
  if (residual > tol)
    throw std::runtime_error("prolongation leaves the harmonic space, residual " + std::to_string(residual));
  return column;
}

SymbolBlock two_grid_symbol_block(const CycleSpec& cycle, const GridSpec& fine_periodic, double c,
                                  const Frequency& low, int anchor) {
  require_lattice(fine_periodic);
  const DiscreteOperator fine_op = make_operator(fine_periodic, c);
  const GridSpec coarse = coarsen(fine_periodic);
  const DiscreteOperator coarse_op = make_operator(coarse, c);

  SymbolBlock block;
  block.low = low;
  block.harmonics = harmonics_of(low);
  const int count = static_cast<int>(block.harmonics.size());

  CMat fine_symbols = CMat::Zero(count, count);
  for (int b = 0; b < count; ++b) fine_symbols(b, b) = operator_symbol(fine_op, block.harmonics[static_cast<std::size_t>(b)]);

  std::array<double, 3> coarse_theta{0.0, 0.0, 0.0};
  for (int a = 0; a < low.d; ++a) coarse_theta[a] = 2.0 * low.theta(a);
  const double coarse_symbol = operator_symbol(coarse_op, coarse_theta);
  if (coarse_symbol == 0.0) throw std::runtime_error("singular coarse symbol (requires c > 0)");

  const Eigen::VectorXd restriction = transfer_restriction_symbol(low);
  const Eigen::VectorXd prolongation = transfer_prolongation_symbol(low);

  CMat cgc = CMat::Identity(count, count);
  cgc -= (prolongation.cast<std::complex<double>>() / coarse_symbol) *
         (restriction.cast<std::complex<double>>().transpose() * fine_symbols);

  if (cycle.nu1 + cycle.nu2 > 0) {
    const SymbolBlock s = smoother_symbol_block(cycle.smoother, fine_op, low, anchor, 1);
    block.matrix = matrix_power(s.matrix, cycle.nu2) * cgc * matrix_power(s.matrix, cycle.nu1);
  } else {
    block.matrix = cgc;
  }
  return block;
}

LfaResult lfa_convergence_factor(const CycleSpec& cycle, const GridSpec& fine_periodic, double c, int anchor) {
  require_lattice(fine_periodic);
  const FrequencySet lows(fine_periodic.points_per_dir(), fine_periodic.d);
  LfaResult result;
  result.argmax = lows.low(0);
  result.table.reserve(lows.size());
  bool first = true;
  for (const Frequency& low : lows.lows()) {
    const SymbolBlock block = two_grid_symbol_block(cycle, fine_periodic, c, low, anchor);
    const double rho = block_spectral_radius(block.matrix);
    result.table.emplace_back(low, rho);
    if (first || rho > result.rho) {
      result.rho = rho;
      result.argmax = low;
      first = false;
    } else if (rho == result.rho && frequency_less(low, result.argmax)) {
      result.argmax = low;
    }
  }
  return result;
}

double lfa_smoothing_factor(const SmootherSpec& spec, const GridSpec& fine_periodic, double c, int anchor) {
  require_lattice(fine_periodic);
  const DiscreteOperator op = make_operator(fine_periodic, c);
  const FrequencySet lows(fine_periodic.points_per_dir(), fine_periodic.d);
  const int count = 1 << fine_periodic.d;
  double mu = 0.0;
  for (const Frequency& low : lows.lows()) {
    const SymbolBlock block = smoother_symbol_block(spec, op, low, anchor, 1);
    // Compression onto the harmonics with at least one shifted component.
    CMat high(count - 1, count - 1);
    for (int b = 1; b < count; ++b)
      for (int a = 1; a < count; ++a) high(a - 1, b - 1) = block.matrix(a, b);
    mu = std::max(mu, block_spectral_radius(high));
  }
  return mu;
}

}  // namespace lfamg
