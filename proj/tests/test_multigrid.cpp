#include "lfamg/multigrid.hpp"

#include "lfamg/experiment.hpp"
#include "lfamg/extension.hpp"
#include "lfamg/lfa.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace lfamg;

namespace {

CycleSpec two_grid_jacobi(double omega, int nu1 = 1, int nu2 = 0) {
  CycleSpec cycle;
  cycle.type = CycleSpec::Type::TwoGrid;
  cycle.nu1 = nu1;
  cycle.nu2 = nu2;
  cycle.smoother = SmootherSpec::jacobi(omega);
  return cycle;
}

}  // namespace

TEST_CASE("stationary iteration with the exact and the zero iterator") {
  const DiscreteOperator a = dirichlet_operator_1d(8, 1.0);
  const Vec f = seeded_random_vector(a.rows(), 3);
  const Vec u0 = seeded_random_vector(a.rows(), 4);

  const DenseSolveOp exact(a);
  const auto history = stationary_iterate(exact, a, f, u0, 3);
  REQUIRE(history.size() == 4);
  CHECK((f - a.apply(history[1])).norm() <= 1e-11 * f.norm());

  const FnOp zero(a.rows(), a.rows(), [](const Vec& v) { return Vec(Vec::Zero(v.size())); });
  const auto frozen = stationary_iterate(zero, a, f, u0, 2);
  CHECK(oracle::max_abs(frozen[2] - u0) == 0.0);

  CHECK_THROWS_AS(stationary_iterate(exact, a, f, u0, 0), std::invalid_argument);
}

TEST_CASE("iterate tracking through the embedding (Jacobi iterator)") {
  const int n = 8;
  const DiscreteOperator a_d = dirichlet_operator_1d(n, 1.0);
  const ExtensionPair pair = odd_extension(n);
  const DiscreteOperator a_p = make_operator(pair.target_grid(), 1.0);
  const Smoother s_d(SmootherSpec::jacobi(2.0 / 3.0), a_d);
  const Smoother s_p(SmootherSpec::jacobi(2.0 / 3.0), a_p);

  const Vec f = seeded_random_vector(a_d.rows(), 31);
  const Vec u0 = seeded_random_vector(a_d.rows(), 32);
  auto u_hist = stationary_iterate(*s_d.iterator_op(), a_d, f, u0, 20);
  auto ut_hist = stationary_iterate(*s_p.iterator_op(), a_p, pair.extend(f), pair.extend(u0), 20);
  for (std::size_t k = 1; k < u_hist.size(); ++k) {
    const Vec defect = ut_hist[k] - pair.extend(u_hist[k]);
    CHECK(defect.norm() <= 1e-10 * (1.0 + ut_hist[k].norm()));
  }
}

TEST_CASE("two-grid propagator equals the dense factor product") {
  const int n = 8;
  const double c = 1.0;
  const GridSpec fine = make_grid(1, n, BoundaryKind::Dirichlet);
  const Multigrid mg(fine, c, two_grid_jacobi(2.0 / 3.0));
  const Mat actual = materialize(*two_grid_error_propagator(mg));

  // Dense oracle: (I - P Ac^-1 R A)(I - (omega/diag) A) with stencil-built
  // transfer matrices.
  const Mat a = oracle::dirichlet_T(n) + c * Mat::Identity(n - 1, n - 1);
  const Mat ac = oracle::dirichlet_T(n / 2) + c * Mat::Identity(n / 2 - 1, n / 2 - 1);
  Mat r = Mat::Zero(n / 2 - 1, n - 1);
  for (int q = 0; q < n / 2 - 1; ++q) {
    r(q, 2 * q) = 0.25;
    r(q, 2 * q + 1) = 0.5;
    r(q, 2 * q + 2) = 0.25;
  }
  const Mat p = 2.0 * r.transpose();
  const double diag = 2.0 * n * n + c;
  const Mat smoother = Mat::Identity(n - 1, n - 1) - (2.0 / 3.0 / diag) * a;
  const Mat cgc = Mat::Identity(n - 1, n - 1) - p * ac.inverse() * r * a;
  CHECK(oracle::max_abs(actual - Mat(cgc * smoother)) <= 1e-11);

  // exact coarse "smoother" drives the propagator to zero
  CycleSpec exact_cycle = two_grid_jacobi(1.0);
  exact_cycle.smoother = SmootherSpec::exact_solve();
  const Multigrid mg_exact(fine, c, exact_cycle);
  CHECK(oracle::max_abs(materialize(*mg_exact.propagator_op())) <= 1e-12);

  // applying to the zero error returns zero
  CHECK(oracle::max_abs(mg.propagator_op()->apply(Vec::Zero(n - 1))) == 0.0);
}

TEST_CASE("depth-2 V-cycle equals the two-grid iteration") {
  const int n = 8;
  const GridSpec fine = make_grid(1, n, BoundaryKind::Dirichlet);
  CycleSpec tg = two_grid_jacobi(2.0 / 3.0, 1, 1);
  CycleSpec vc = tg;
  vc.type = CycleSpec::Type::VCycle;
  vc.coarsest_n = n / 2;
  const Multigrid mg_tg(fine, 1.0, tg);
  const Multigrid mg_vc(fine, 1.0, vc);
  CHECK(mg_vc.depth() == 2);
  CHECK(oracle::max_abs(materialize(*mg_tg.propagator_op()) - materialize(*mg_vc.propagator_op())) <= 1e-12);
}

TEST_CASE("V-cycle convergence and range tracking") {
  // solver sanity at a reduced size (the acceptance suite runs n = 64)
  CycleSpec vc;
  vc.type = CycleSpec::Type::VCycle;
  vc.nu1 = 1;
  vc.nu2 = 1;
  vc.smoother = SmootherSpec::jacobi(0.8);
  vc.coarsest_n = 2;
  const GridSpec fine = make_grid(2, 16, BoundaryKind::Dirichlet);
  const Multigrid mg(fine, 1.0, vc);
  const DiscreteOperator& a = mg.op(0);
  const Vec u_exact = seeded_random_vector(a.rows(), 8);
  const Vec f = a.apply(u_exact);
  Vec u = Vec::Zero(a.rows());
  const double initial = f.norm();
  for (int cycle = 0; cycle < 10; ++cycle) u = mg.cycle(u, f);
  CHECK((f - a.apply(u)).norm() <= 1e-4 * initial);

  // Theorem 5 behaviour: the periodic V-cycle keeps extended data in range(E)
  const int n = 16;
  const ExtensionPair pair = odd_extension(n);
  const Multigrid mg_p(pair.target_grid(), 1.0, vc, anchor_for(BoundaryKind::Dirichlet));
  const Vec f_t = pair.extend(seeded_random_vector(pair.source_total(), 9));
  Vec u_t = pair.extend(seeded_random_vector(pair.source_total(), 10));
  for (int cycle = 0; cycle < 5; ++cycle) {
    u_t = mg_p.cycle(u_t, f_t);
    CHECK(in_range_of_extension(u_t, pair, 1e-11));
  }
}

TEST_CASE("V-cycle error is monotone in the energy norm for symmetric cycles") {
  CycleSpec vc;
  vc.type = CycleSpec::Type::VCycle;
  vc.nu1 = 1;
  vc.nu2 = 1;
  vc.smoother = SmootherSpec::jacobi(0.8);
  vc.coarsest_n = 2;
  const GridSpec fine = make_grid(2, 16, BoundaryKind::Dirichlet);
  const Multigrid mg(fine, 1.0, vc);
  const DiscreteOperator& a = mg.op(0);
  Vec e = seeded_random_vector(a.rows(), 13);
  double energy = e.dot(a.apply(e));
  const Vec zero = Vec::Zero(a.rows());
  for (int cycle = 0; cycle < 10; ++cycle) {
    e = mg.cycle(e, zero);
    const double next = e.dot(a.apply(e));
    CHECK(next <= energy + 1e-12);
    energy = next;
  }
}

TEST_CASE("rate measurement on exact contractions") {
  const Index size = 50;
  const FnOp half(size, size, [](const Vec& v) { return Vec(0.5 * v); });
  const RateMeasurement rho_half = measure_asymptotic_rate(half, 100, 1);
  CHECK(std::abs(rho_half.rho - 0.5) <= 1e-8);
  CHECK(rho_half.history.size() == 101);

  const FnOp zero(size, size, [](const Vec& v) { return Vec(Vec::Zero(v.size())); });
  CHECK(measure_asymptotic_rate(zero, 50, 1).rho == 0.0);

  const FnOp grow(size, size, [](const Vec& v) { return Vec(3.0 * v); });
  // renormalized iteration cannot overflow; the rate is still measured
  CHECK(measure_asymptotic_rate(grow, 60, 1).rho == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(measure_asymptotic_rate(half, 10, 1), std::invalid_argument);
}

TEST_CASE("measured rate matches the dense spectral radius") {
  const GridSpec fine = make_grid(1, 16, BoundaryKind::Dirichlet);
  const Multigrid mg(fine, 1.0, two_grid_jacobi(2.0 / 3.0));
  const auto propagator = mg.propagator_op();
  const SpectralInfo info = dense_spectral_info(*propagator);
  const RateMeasurement measured = measure_asymptotic_rate(*propagator, 100, 42);
  CHECK(std::abs(measured.rho - info.rho) <= 1e-3);
  CHECK(measured.rho >= info.rho - 2e-3);
  CHECK(measured.rho <= info.rho + 2e-3);
}

TEST_CASE("dense spectral radius resolves complex pairs") {
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 0.1;
  diag(1, 1) = -0.7;
  CHECK(dense_spectral_info(diag).rho == doctest::Approx(0.7).epsilon(1e-14));

  Mat rotation(2, 2);
  rotation << 0, -1, 1, 0;  // eigenvalues +-i
  CHECK(dense_spectral_info(rotation).rho == doctest::Approx(1.0).epsilon(1e-12));

  const FnOp big(5000, 5000, [](const Vec& v) { return v; });
  CHECK_THROWS_AS(dense_spectral_radius(big), std::length_error);
}

TEST_CASE("cycle spec validation") {
  const GridSpec fine = make_grid(1, 8, BoundaryKind::Dirichlet);
  CycleSpec bad = two_grid_jacobi(2.0 / 3.0);
  bad.nu1 = 0;
  bad.nu2 = 0;
  CHECK_THROWS_AS(bad.validate(fine), std::invalid_argument);

  CycleSpec vc = two_grid_jacobi(2.0 / 3.0);
  vc.type = CycleSpec::Type::VCycle;
  vc.coarsest_n = 1;
  CHECK_THROWS_AS(vc.validate(fine), std::invalid_argument);
  vc.coarsest_n = 8;
  CHECK_THROWS_AS(vc.validate(fine), std::invalid_argument);
  vc.coarsest_n = 2;
  CHECK_NOTHROW(vc.validate(fine));
  CHECK_THROWS_AS(vc.validate(make_grid(1, 12, BoundaryKind::Dirichlet)), std::invalid_argument);
}
