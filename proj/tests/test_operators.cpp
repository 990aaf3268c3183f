#include "lfamg/operators.hpp"

#include "lfamg/multigrid.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lfamg;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("tensor product identities hold for the dense oracle helper") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (int size = 2; size <= 6; size += 2) {
      auto rand_mat = [&](std::uint64_t s) {
        const Vec v = seeded_random_vector(size * size, s);
        return Mat(Eigen::Map<const Mat>(v.data(), size, size));
      };
      const Mat x = rand_mat(seed * 10 + 1), y = rand_mat(seed * 10 + 2), z = rand_mat(seed * 10 + 3);
      const Mat x1 = rand_mat(seed * 10 + 4), x2 = rand_mat(seed * 10 + 5);
      const Mat y1 = rand_mat(seed * 10 + 6), y2 = rand_mat(seed * 10 + 7);
      CHECK(oracle::max_abs(oracle::kron(x + y, z) - (oracle::kron(x, z) + oracle::kron(y, z))) < 1e-12);
      CHECK(oracle::max_abs(oracle::kron(x1, x2) * oracle::kron(y1, y2) - oracle::kron(Mat(x1 * y1), Mat(x2 * y2))) <
            1e-12);
    }
  }
}

TEST_CASE("1D Dirichlet operator matches the tridiagonal form") {
  const DiscreteOperator a = dirichlet_operator_1d(4, 1.0);
  const Mat dense = materialize_dense(a);
  const Mat t_part = dense - Mat::Identity(3, 3);
  Mat expected(3, 3);
  expected << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  expected *= 16.0;
  CHECK(oracle::max_abs(t_part - expected) == 0.0);

  const DiscreteOperator tiny = dirichlet_operator_1d(2, 1.0);
  CHECK(materialize_dense(tiny)(0, 0) == 9.0);

  // Frozen from the dense matrix-vector oracle.
  const Vec ones = Vec::Ones(3);
  const Vec applied = a.apply(ones);
  CHECK(applied[0] == 17.0);
  CHECK(applied[1] == 1.0);
  CHECK(applied[2] == 17.0);
  CHECK(oracle::max_abs((oracle::dirichlet_T(4) + Mat::Identity(3, 3)) * ones - applied) == 0.0);

  CHECK_THROWS_AS(dirichlet_operator_1d(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dirichlet_operator_1d(4, -1.0), std::invalid_argument);
}

TEST_CASE("1D periodic operator: circulant structure and eigenvectors") {
  const DiscreteOperator a = periodic_operator_1d(2, 1.0);  // N = 4, h = 1/2
  Mat expected(4, 4);
  expected << 2, -1, 0, -1, -1, 2, -1, 0, 0, -1, 2, -1, -1, 0, -1, 2;
  expected *= 4.0;
  expected += Mat::Identity(4, 4);
  CHECK(oracle::max_abs(materialize_dense(a) - expected) == 0.0);

  const Vec constant = Vec::Ones(4);
  CHECK(oracle::max_abs(a.apply(constant) - constant) == 0.0);  // row sums of T vanish

  const auto mode = fourier_mode(a.grid(), {kPi, 0.0, 0.0});
  const CVec image = a.apply_complex(mode.values);
  CHECK((image - 17.0 * mode.values).norm() < 1e-12);
}

TEST_CASE("periodic eigen-identity at every discrete frequency") {
  for (int n : {2, 4}) {
    const DiscreteOperator a1 = periodic_operator_1d(n, 1.0);
    const int N = a1.grid().points_per_dir();
    const double h = a1.grid().h();
    for (int k = 0; k < N; ++k) {
      const double theta = 2.0 * kPi * k / N;
      const auto mode = fourier_mode(a1.grid(), {theta, 0.0, 0.0});
      const double lambda = (2.0 - 2.0 * std::cos(theta)) / (h * h) + 1.0;
      CHECK((a1.apply_complex(mode.values) - lambda * mode.values).norm() <= 1e-11 * lambda * mode.values.norm());
    }
  }
  const DiscreteOperator a2 = assemble_tensor_operator(periodic_operator_1d(4, 1.0), 2);
  const int N = a2.grid().points_per_dir();
  const double h = a2.grid().h();
  for (int k = 0; k < N; ++k) {
    for (int l = 0; l < N; ++l) {
      const double t0 = 2.0 * kPi * k / N, t1 = 2.0 * kPi * l / N;
      const auto mode = fourier_mode(a2.grid(), {t0, t1, 0.0});
      const double lambda = (4.0 - 2.0 * std::cos(t0) - 2.0 * std::cos(t1)) / (h * h) + 1.0;
      CHECK((a2.apply_complex(mode.values) - lambda * mode.values).norm() <= 1e-11 * lambda * mode.values.norm());
    }
  }
}

TEST_CASE("Dirichlet eigen-identity on sine vectors") {
  const int n = 8;
  const DiscreteOperator a = dirichlet_operator_1d(n, 1.0);
  const double h = a.grid().h();
  for (int k = 1; k <= n - 1; ++k) {
    Vec sine(n - 1);
    for (int j = 0; j < n - 1; ++j) sine[j] = std::sin(k * kPi * (j + 1) * h);
    const double lambda = (2.0 - 2.0 * std::cos(k * kPi * h)) / (h * h) + 1.0;
    CHECK((a.apply(sine) - lambda * sine).norm() <= 1e-11 * lambda * sine.norm());
  }
}

TEST_CASE("Neumann operator equals its embedding conjugation and classic stencil") {
  const DiscreteOperator a = neumann_operator_1d(2, 1.0);
  Mat expected(3, 3);
  expected << 2, -2, 0, -1, 2, -1, 0, -2, 2;
  expected *= 4.0;
  expected += Mat::Identity(3, 3);
  const Mat dense = materialize_dense(a);
  CHECK(oracle::max_abs(dense - expected) == 0.0);

  // R_e A^P E_e with the dense oracle.
  const Mat conjugated =
      oracle::even_R(2) * (oracle::periodic_T(2) + Mat::Identity(4, 4)) * oracle::even_E(2);
  CHECK(oracle::max_abs(dense - conjugated) == 0.0);

  const Vec constant = Vec::Ones(3);
  CHECK(oracle::max_abs(a.apply(constant) - constant) == 0.0);

  // Symmetry under the weighted inner product diag(1/2, 1, ..., 1, 1/2).
  const int n = 8;
  const Mat an = materialize_dense(neumann_operator_1d(n, 1.0));
  Vec w = Vec::Ones(n + 1);
  w(0) = 0.5;
  w(n) = 0.5;
  const Mat wa = w.asDiagonal() * an;
  CHECK(oracle::max_abs(wa - wa.transpose()) <= 1e-12 * oracle::max_abs(wa));
}

TEST_CASE("mixed operator equals the period-4n conjugation") {
  const DiscreteOperator a = mixed_operator_1d(2, 1.0);
  Mat expected(2, 2);
  expected << 2, -1, -2, 2;
  expected *= 4.0;
  expected += Mat::Identity(2, 2);
  const Mat dense = materialize_dense(a);
  CHECK(oracle::max_abs(dense - expected) == 0.0);

  const Mat ap4 = oracle::periodic_T_sized(8, 0.5) + Mat::Identity(8, 8);
  const Mat conjugated = oracle::mixed_R(2) * ap4 * oracle::mixed_E(2);
  CHECK(oracle::max_abs(dense - conjugated) == 0.0);

  Vec e1 = Vec::Zero(2);
  e1[0] = 1.0;
  const Vec image = a.apply(e1);
  CHECK(image[0] == 9.0);
  CHECK(image[1] == -8.0);
}

TEST_CASE("tensor assembly matches the dense Kronecker-sum oracle") {
  const DiscreteOperator tiny = assemble_tensor_operator(dirichlet_operator_1d(2, 1.0), 2);
  CHECK(materialize_dense(tiny)(0, 0) == 17.0);

  for (BoundaryKind bc :
       {BoundaryKind::Dirichlet, BoundaryKind::Neumann, BoundaryKind::MixedDN, BoundaryKind::Periodic}) {
    for (int d = 1; d <= 3; ++d) {
      for (int n : {2, 4, 8}) {
        const GridSpec grid = make_grid(d, n, bc);
        if (grid.total_points() > 10000) continue;
        const DiscreteOperator op = make_operator(grid, 1.0);
        const Mat one_d = materialize_dense(make_operator(make_grid(1, n, bc), 1.0)) -
                          Mat::Identity(grid.points_per_dir(), grid.points_per_dir());
        const Mat dense = oracle::kron_sum(one_d, d, 1.0);
        const Vec u = seeded_random_vector(grid.total_points(), 7 * n + d);
        const Vec via_op = op.apply(u);
        const Vec via_dense = dense * u;
        CHECK((via_op - via_dense).norm() <= 1e-13 * via_dense.norm());
      }
    }
  }

  const DiscreteOperator p2 = assemble_tensor_operator(periodic_operator_1d(4, 1.0), 2);
  const Vec constant = Vec::Ones(p2.rows());
  CHECK(oracle::max_abs(p2.apply(constant) - constant) == 0.0);

  CHECK_THROWS_AS(assemble_tensor_operator(dirichlet_operator_1d(4, 1.0), 4), std::invalid_argument);
}

TEST_CASE("materialization round trip and symmetry") {
  const DiscreteOperator a = periodic_operator_1d(4, 1.0);
  const Mat dense = materialize_dense(a);
  const DenseOp as_op(dense);
  CHECK(oracle::max_abs(materialize(as_op) - dense) == 0.0);
  CHECK(oracle::max_abs(dense - dense.transpose()) <= 1e-14);
  const Mat dd = materialize_dense(dirichlet_operator_1d(8, 1.0));
  CHECK(oracle::max_abs(dd - dd.transpose()) <= 1e-14);

  const GridSpec big = make_periodic_grid(3, 14);  // 28^3 points, beyond the guard
  const DiscreteOperator big_op = make_operator(big, 1.0);
  CHECK_THROWS_AS(materialize_dense(big_op), std::length_error);
}

TEST_CASE("operators are symmetric in the unweighted inner product where expected") {
  for (BoundaryKind bc : {BoundaryKind::Dirichlet, BoundaryKind::Periodic}) {
    const GridSpec grid = make_grid(2, 4, bc);
    const DiscreteOperator op = make_operator(grid, 1.0);
    const Vec u = seeded_random_vector(grid.total_points(), 11);
    const Vec v = seeded_random_vector(grid.total_points(), 12);
    const double left = op.apply(u).dot(v);
    const double right = u.dot(op.apply(v));
    CHECK(std::abs(left - right) <= 1e-12 * std::abs(left));
  }
}
