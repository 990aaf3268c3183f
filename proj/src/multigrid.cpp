#include "lfamg/multigrid.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace lfamg {

const char* to_string(CycleSpec::Type type) {
  return type == CycleSpec::Type::TwoGrid ? "two_grid" : "v_cycle";
}

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void CycleSpec::validate(const GridSpec& fine) const {
  if (nu1 < 0 || nu2 < 0 || nu1 + nu2 < 1) throw std::invalid_argument("cycle needs nu1 + nu2 >= 1");
  if (coarsest_n < 2) throw std::invalid_argument("coarsest_n must be >= 2");
  if (fine.n < 4) throw std::invalid_argument("two-grid coarsening needs fine n >= 4");
  if (type == Type::VCycle) {
    if (!is_power_of_two(fine.n)) throw std::invalid_argument("V-cycle hierarchies need n to be a power of two");
    if (fine.n < 2 * coarsest_n) throw std::invalid_argument("V-cycle needs fine n >= 2 * coarsest_n");
    if (fine.n % coarsest_n != 0 || !is_power_of_two(fine.n / coarsest_n))
      throw std::invalid_argument("fine n must reach coarsest_n by repeated halving");
  }
  smoother.validate(fine);
}

struct Multigrid::Impl {
  struct Level {
    GridSpec grid;
    DiscreteOperator A;
    std::optional<Smoother> smoother;  // absent on the coarsest level
    std::unique_ptr<LinearOp> restrict_;
    std::unique_ptr<LinearOp> prolong_;
  };

  CycleSpec cycle;
  std::vector<Level> levels;
  Eigen::PartialPivLU<Mat> coarse_lu;

  Vec descend(int level, const Vec& u, const Vec& f) const {
    const Level& lv = levels[static_cast<std::size_t>(level)];
    if (level == static_cast<int>(levels.size()) - 1) return coarse_lu.solve(f);
    Vec v = u;
    for (int k = 0; k < cycle.nu1; ++k) v = lv.smoother->step(v, f);
    const Vec residual = f - lv.A.apply(v);
    const Vec coarse_residual = lv.restrict_->apply(residual);
    const Vec correction = descend(level + 1, Vec::Zero(coarse_residual.size()), coarse_residual);
    v += lv.prolong_->apply(correction);
    for (int k = 0; k < cycle.nu2; ++k) v = lv.smoother->step(v, f);
    return v;
  }
};

Multigrid::Multigrid(GridSpec fine, double c, CycleSpec cycle, int anchor) {
  cycle.validate(fine);
  auto impl = std::make_shared<Impl>();
  impl->cycle = cycle;
  const int n_stop = cycle.type == CycleSpec::Type::TwoGrid ? fine.n / 2 : cycle.coarsest_n;
  GridSpec g = fine;
  while (true) {
    Impl::Level level{g, make_operator(g, c), std::nullopt, nullptr, nullptr};
    if (g.n > n_stop) {
      level.smoother.emplace(cycle.smoother, level.A);
      level.restrict_ = full_weighting(g, anchor);
      level.prolong_ = dlinear_interpolation(g, anchor);
      impl->levels.push_back(std::move(level));
      g = coarsen(g);
    } else {
      impl->levels.push_back(std::move(level));
      break;
    }
  }
  if (impl->levels.size() < 2) throw std::invalid_argument("hierarchy needs at least two levels");
  impl->coarse_lu.compute(materialize(impl->levels.back().A));
  impl_ = std::move(impl);
}

Multigrid::Multigrid(GridSpec fine, double c, CycleSpec cycle)
    : Multigrid(fine, c, cycle, anchor_for(fine.bc)) {}

int Multigrid::depth() const { return static_cast<int>(impl_->levels.size()); }
const GridSpec& Multigrid::grid(int level) const { return impl_->levels[static_cast<std::size_t>(level)].grid; }
const DiscreteOperator& Multigrid::op(int level) const { return impl_->levels[static_cast<std::size_t>(level)].A; }
const CycleSpec& Multigrid::cycle_spec() const { return impl_->cycle; }

Vec Multigrid::cycle(const Vec& u, const Vec& f) const {
  check_apply_size(impl_->levels.front().A, u);
  check_apply_size(impl_->levels.front().A, f);
  return impl_->descend(0, u, f);
}

std::unique_ptr<LinearOp> Multigrid::iterator_op() const {
  const Index size = impl_->levels.front().A.rows();
  return std::make_unique<FnOp>(
      size, size, [impl = impl_, size](const Vec& r) { return impl->descend(0, Vec::Zero(size), r); });
}

std::unique_ptr<LinearOp> Multigrid::propagator_op() const {
  const Index size = impl_->levels.front().A.rows();
  return std::make_unique<FnOp>(size, size,
                                [impl = impl_, size](const Vec& e) { return impl->descend(0, e, Vec::Zero(size)); });
}

Vec v_cycle_apply(const Multigrid& mg, const Vec& f, const Vec& u) { return mg.cycle(u, f); }

std::unique_ptr<LinearOp> two_grid_error_propagator(const Multigrid& mg) {
  if (mg.depth() != 2) throw std::invalid_argument("two-grid propagator needs a depth-2 hierarchy");
  return mg.propagator_op();
}

std::vector<Vec> stationary_iterate(const LinearOp& B, const LinearOp& A, const Vec& f, const Vec& u0, int k) {
  if (k < 1) throw std::invalid_argument("stationary iteration needs k >= 1");
  check_apply_size(A, u0);
  std::vector<Vec> history;
  history.reserve(static_cast<std::size_t>(k) + 1);
  history.push_back(u0);
  for (int j = 0; j < k; ++j) {
    const Vec& u = history.back();
    history.push_back(u + B.apply(f - A.apply(u)));
  }
  return history;
}

Vec seeded_random_vector(Index size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vec v(size);
  for (Index i = 0; i < size; ++i) {
    // Portable uniform in [-1, 1): distributions are implementation-defined,
    // the raw generator is not.
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v[i] = 2.0 * unit - 1.0;
  }
  return v;
}

RateMeasurement measure_asymptotic_rate(const LinearOp& propagator, int iterations, std::uint64_t seed) {
  if (iterations < 30) throw std::invalid_argument("rate measurement needs at least 30 iterations");
  if (propagator.rows() != propagator.cols()) throw std::invalid_argument("propagator must be square");
  RateMeasurement result;
  result.seed = seed;
  result.history.reserve(static_cast<std::size_t>(iterations) + 1);
  result.history.push_back(1.0);
  Vec v = seeded_random_vector(propagator.rows(), seed);
  const double initial = v.norm();
  if (initial == 0.0) return result;
  v /= initial;
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(iterations));
  for (int k = 0; k < iterations; ++k) {
    const Vec w = propagator.apply(v);
    const double norm = w.norm();
    ratios.push_back(norm);
    result.history.push_back(norm);
    if (!std::isfinite(norm) || norm > 1e8) {
      result.diverged = true;
      result.rho = norm;
      return result;
    }
    if (norm == 0.0) {
      result.rho = 0.0;
      return result;
    }
    v = w / norm;
  }
  const std::size_t window = 10;
  double log_sum = 0.0;
  for (std::size_t i = ratios.size() - window; i < ratios.size(); ++i) log_sum += std::log(ratios[i]);
  result.rho = std::exp(log_sum / static_cast<double>(window));
  return result;
}

SpectralInfo dense_spectral_info(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("spectral radius needs a square matrix");
  Eigen::EigenSolver<Mat> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation failed");
  std::vector<double> moduli(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) moduli[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  SpectralInfo info;
  info.rho = moduli.empty() ? 0.0 : moduli.front();
  if (moduli.size() > 1 && info.rho > 0.0) info.gap = (moduli[0] - moduli[1]) / moduli[0];
  return info;
}

SpectralInfo dense_spectral_info(const LinearOp& op, Index guard) {
  if (op.rows() > guard)
    throw std::length_error("dense spectral radius guard exceeded: size " + std::to_string(op.rows()) + " > " +
                            std::to_string(guard));
  return dense_spectral_info(materialize(op, guard));
}

double dense_spectral_radius(const LinearOp& op, Index guard) { return dense_spectral_info(op, guard).rho; }

}  // namespace lfamg
