#include "lfamg/extension.hpp"

#include "lfamg/experiment.hpp"
#include "lfamg/operators.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace lfamg;

TEST_CASE("odd extension examples") {
  const ExtensionPair pair2 = odd_extension(2);
  Vec u1(1);
  u1 << 3.5;
  const Vec v1 = pair2.extend(u1);
  CHECK(v1.size() == 4);
  CHECK(v1[0] == 3.5);
  CHECK(v1[1] == 0.0);
  CHECK(v1[2] == -3.5);
  CHECK(v1[3] == 0.0);

  const ExtensionPair pair4 = odd_extension(4);
  Vec u3(3);
  u3 << 1, 2, 3;
  const Vec v3 = pair4.extend(u3);
  Vec expected(8);
  expected << 1, 2, 3, 0, -3, -2, -1, 0;
  CHECK(oracle::max_abs(v3 - expected) == 0.0);

  const ExtensionPair pair2d = odd_extension(2, 2);
  Vec ua(1);
  ua << 2.0;
  const Vec field = pair2d.extend(ua);
  REQUIRE(field.size() == 16);
  // corner values +-a in both directions
  CHECK(field[0] == 2.0);
  CHECK(field[2] == -2.0);
  CHECK(field[8] == -2.0);
  CHECK(field[10] == 2.0);
  CHECK(field[1] == 0.0);

  CHECK_THROWS_AS(pair4.extend(Vec::Zero(2)), std::invalid_argument);
}

TEST_CASE("odd restriction examples") {
  const ExtensionPair pair = odd_extension(2);
  Vec in_range(4);
  in_range << 1, 0, -1, 0;
  CHECK(pair.restrict_(in_range)[0] == 1.0);

  Vec off_range(4);
  off_range << 1, 5, 1, 7;
  CHECK(pair.restrict_(off_range)[0] == 0.0);

  const ExtensionPair pair2d = odd_extension(4, 2);
  const Vec u = seeded_random_vector(pair2d.source_total(), 3);
  CHECK(oracle::max_abs(pair2d.restrict_(pair2d.extend(u)) - u) == 0.0);
}

TEST_CASE("even extension examples") {
  const ExtensionPair pair = even_extension(2);
  Vec u(3);
  u << 1, 2, 3;
  const Vec v = pair.extend(u);
  Vec expected(4);
  expected << 1, 2, 3, 2;
  CHECK(oracle::max_abs(v - expected) == 0.0);
  CHECK(oracle::max_abs(pair.restrict_(v) - u) == 0.0);

  Vec w(4);
  w << 0, 1, 0, 3;
  const Vec r = pair.restrict_(w);
  Vec r_expected(3);
  r_expected << 0, 2, 0;
  CHECK(oracle::max_abs(r - r_expected) == 0.0);
}

TEST_CASE("mixed extension examples") {
  const ExtensionPair pair = mixed_extension(2);
  Vec u(2);
  u << 5, 7;
  const Vec v = pair.extend(u);
  Vec expected(8);
  expected << 5, 7, 5, 0, -5, -7, -5, 0;
  CHECK(oracle::max_abs(v - expected) == 0.0);
  CHECK(oracle::max_abs(pair.restrict_(v) - u) == 0.0);

  for (int n : {2, 4, 8}) {
    const ExtensionPair p = mixed_extension(n);
    for (Index i = 0; i < p.source_total(); ++i) {
      Vec e = Vec::Zero(p.source_total());
      e[i] = 1.0;
      CHECK(oracle::max_abs(p.restrict_(p.extend(e)) - e) == 0.0);
    }
    // The extension lands in the odd-symmetric subspace of the period-4n
    // lattice: v[N-2-j] = -v[j] and the two pivot entries vanish.
    const Vec probe = p.extend(seeded_random_vector(p.source_total(), 17));
    const int N = p.target_size_per_dir();
    CHECK(probe[2 * n - 1] == 0.0);
    CHECK(probe[N - 1] == 0.0);
    for (int j = 0; j <= N - 2 - j; ++j) CHECK(probe[N - 2 - j] == -probe[j]);
  }
}

TEST_CASE("extension identities: R E = I and E R = I on range(E)") {
  for (ExtensionKind kind : {ExtensionKind::Odd, ExtensionKind::Even, ExtensionKind::Mixed}) {
    for (int d = 1; d <= 2; ++d) {
      for (int n : {2, 4, 8}) {
        const ExtensionPair pair(kind, n, d);
        if (pair.source_total() > 200) continue;
        for (Index i = 0; i < pair.source_total(); ++i) {
          Vec e = Vec::Zero(pair.source_total());
          e[i] = 1.0;
          const Vec extended = pair.extend(e);
          CHECK(oracle::max_abs(pair.restrict_(extended) - e) == 0.0);
          CHECK(oracle::max_abs(pair.extend(pair.restrict_(extended)) - extended) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("dense extension operators match the oracle matrices") {
  for (int n : {2, 4, 8}) {
    CHECK(oracle::max_abs(materialize(*odd_extension(n).extend_op()) - oracle::odd_E(n)) == 0.0);
    CHECK(oracle::max_abs(materialize(*odd_extension(n).restrict_op()) - oracle::odd_R(n)) == 0.0);
    CHECK(oracle::max_abs(materialize(*even_extension(n).extend_op()) - oracle::even_E(n)) == 0.0);
    CHECK(oracle::max_abs(materialize(*even_extension(n).restrict_op()) - oracle::even_R(n)) == 0.0);
    CHECK(oracle::max_abs(materialize(*mixed_extension(n).extend_op()) - oracle::mixed_E(n)) == 0.0);
    CHECK(oracle::max_abs(materialize(*mixed_extension(n).restrict_op()) - oracle::mixed_R(n)) == 0.0);
  }
}

TEST_CASE("extensions have full column rank") {
  for (ExtensionKind kind : {ExtensionKind::Odd, ExtensionKind::Even, ExtensionKind::Mixed}) {
    const ExtensionPair pair(kind, 4, 1);
    const Mat e = materialize(*pair.extend_op());
    CHECK(Eigen::FullPivLU<Mat>(e).rank() == pair.source_total());
  }
}

TEST_CASE("range membership test") {
  const ExtensionPair pair = odd_extension(2);
  Vec yes(4);
  yes << 1, 0, -1, 0;
  CHECK(in_range_of_extension(yes, pair, 1e-14));
  Vec no(4);
  no << 1, 0, 1, 0;
  CHECK_FALSE(in_range_of_extension(no, pair, 1e-14));

  const ExtensionPair even = even_extension(2);
  Vec sym(4);
  sym << -3, 8, 2, 8;
  CHECK(in_range_of_extension(sym, even, 1e-14));
}

TEST_CASE("Lemma 2 as a property: solutions track through the embedding") {
  for (int d = 1; d <= 2; ++d) {
    for (int n : {4, 8}) {
      const GridSpec grid = make_grid(d, n, BoundaryKind::Dirichlet);
      const DiscreteOperator a_d = make_operator(grid, 1.0);
      const ExtensionPair pair = odd_extension(n, d);
      const DiscreteOperator a_p = make_operator(pair.target_grid(), 1.0);
      const Vec f = seeded_random_vector(grid.total_points(), 5 * n + d);
      const Vec u = Eigen::PartialPivLU<Mat>(materialize_dense(a_d)).solve(f);
      const Vec lhs = a_p.apply(pair.extend(u));
      const Vec rhs = pair.extend(f);
      CHECK((lhs - rhs).norm() <= 1e-11 * rhs.norm());
    }
  }
}

TEST_CASE("compatibility checker: Lemma 1 and Theorem 3 instances") {
  const int n = 4;
  const DiscreteOperator a_d = dirichlet_operator_1d(n, 1.0);
  const ExtensionPair pair = odd_extension(n);
  const DiscreteOperator a_p = make_operator(pair.target_grid(), 1.0);

  const CompatReport direct = check_lfa_compatible(a_d, a_p, pair, 1e-13, "A_D", "A_P");
  CHECK(direct.verdict);
  CHECK(direct.operator_defect <= 1e-13);
  CHECK(direct.range_defect <= 1e-13);

  const DenseSolveOp inv_d(a_d);
  const DenseSolveOp inv_p(a_p);
  const CompatReport inverse = check_lfa_compatible(inv_d, inv_p, pair, 1e-13, "invA_D", "invA_P");
  CHECK(inverse.verdict);

  // Unscaled wrap corners break the range invariance (the motivation for the
  // 1/h^2 corner scaling).
  const auto corrupted = corrupt_corner_scaling(a_p);
  const CompatReport broken = check_lfa_compatible(a_d, *corrupted, pair, 1e-13, "A_D", "A_P_unscaled");
  CHECK_FALSE(broken.verdict);
  CHECK(broken.counterexample.has_value());
}

TEST_CASE("checker verdict is monotone in tol and catches corrupted entries") {
  const int n = 4;
  const DiscreteOperator a_d = dirichlet_operator_1d(n, 1.0);
  const ExtensionPair pair = odd_extension(n);
  const DiscreteOperator a_p = make_operator(pair.target_grid(), 1.0);

  const double tight = 1e-14, loose = 1e-8;
  CHECK(check_lfa_compatible(a_d, a_p, pair, tight).verdict);
  CHECK(check_lfa_compatible(a_d, a_p, pair, loose).verdict);  // monotone: loosening keeps the verdict

  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Mat corrupted_dense = materialize_dense(a_d);
    const Vec pick = seeded_random_vector(2, seed);
    const Index row = static_cast<Index>((pick[0] + 1.0) / 2.0 * corrupted_dense.rows()) % corrupted_dense.rows();
    const Index col = static_cast<Index>((pick[1] + 1.0) / 2.0 * corrupted_dense.cols()) % corrupted_dense.cols();
    const double tol = 1e-10;
    corrupted_dense(row, col) += 10.0 * tol * 1.5;
    const DenseOp corrupted(corrupted_dense);
    CHECK_FALSE(check_lfa_compatible(corrupted, a_p, pair, tol).verdict);
  }
}

TEST_CASE("compatibility of the 1D pair carries to the 2D tensor operators") {
  const int n = 4;
  const GridSpec grid = make_grid(2, n, BoundaryKind::Dirichlet);
  const DiscreteOperator a_d = make_operator(grid, 1.0);
  const ExtensionPair pair = odd_extension(n, 2);
  const DiscreteOperator a_p = make_operator(pair.target_grid(), 1.0);
  CHECK(check_lfa_compatible(a_d, a_p, pair, 1e-13).verdict);
}
