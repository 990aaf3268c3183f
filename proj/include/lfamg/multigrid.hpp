#pragma once

#include "lfamg/operators.hpp"
#include "lfamg/smoothers.hpp"
#include "lfamg/transfer.hpp"

#include <Eigen/LU>

#include <memory>
#include <optional>
#include <vector>

namespace lfamg {

struct CycleSpec {
  enum class Type { TwoGrid, VCycle };
  Type type = Type::TwoGrid;
  int nu1 = 1;
  int nu2 = 0;
  SmootherSpec smoother;
  int coarsest_n = 2;
  TransferSpec transfer;

  void validate(const GridSpec& fine) const;
};

const char* to_string(CycleSpec::Type type);

/// Grid/operator ladder from fine to coarse, each level rediscretized with
/// doubled step size; the coarsest operator is factorized densely so the
/// recursion base is an exact solve. Copies share the underlying levels.
class Multigrid {
 public:
  Multigrid(GridSpec fine, double c, CycleSpec cycle, int anchor);
  Multigrid(GridSpec fine, double c, CycleSpec cycle);

  int depth() const;
  const GridSpec& grid(int level = 0) const;
  const DiscreteOperator& op(int level = 0) const;
  const CycleSpec& cycle_spec() const;

  /// One two-grid or V(nu1, nu2) cycle from iterate u.
  Vec cycle(const Vec& u, const Vec& f) const;

  std::unique_ptr<LinearOp> iterator_op() const;    // B: r -> cycle(0, r)
  std::unique_ptr<LinearOp> propagator_op() const;  // I - B A: e -> cycle(e, 0)

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

Vec v_cycle_apply(const Multigrid& mg, const Vec& f, const Vec& u);
std::unique_ptr<LinearOp> two_grid_error_propagator(const Multigrid& mg);

/// Iterates u^{j+1} = u^j + B(f - A u^j) and returns all k+1 iterates.
std::vector<Vec> stationary_iterate(const LinearOp& B, const LinearOp& A, const Vec& f, const Vec& u0, int k);

struct RateMeasurement {
  double rho = 0.0;
  std::vector<double> history;  // norm ratios, 1.0 prepended; length iterations + 1
  bool diverged = false;
  std::uint64_t seed = 0;
};

/// Power-style measurement: seeded start, repeated application with
/// renormalization, geometric mean of the final 10 norm ratios.
RateMeasurement measure_asymptotic_rate(const LinearOp& propagator, int iterations, std::uint64_t seed);

struct SpectralInfo {
  double rho = 0.0;
  double gap = 0.0;  // (|lambda_1| - |lambda_2|) / |lambda_1|, 0 when rho == 0
};

SpectralInfo dense_spectral_info(const Mat& m);
SpectralInfo dense_spectral_info(const LinearOp& op, Index guard = 4096);
double dense_spectral_radius(const LinearOp& op, Index guard = 4096);

/// Deterministic reproducible pseudo-random vector in [-1, 1)^size.
Vec seeded_random_vector(Index size, std::uint64_t seed);

}  // namespace lfamg
