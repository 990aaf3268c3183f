#pragma once

#include "lfamg/operators.hpp"

#include <Eigen/LU>

#include <memory>
#include <string>
#include <vector>

namespace lfamg {

enum class SmootherKind { WeightedJacobi, RedBlackGS, LineRelaxation, Polynomial, ExactSolve };

const char* to_string(SmootherKind kind);

struct SmootherSpec {
  SmootherKind kind = SmootherKind::WeightedJacobi;
  double omega = 2.0 / 3.0;               // WeightedJacobi
  int line_direction = 0;                 // LineRelaxation
  std::vector<double> coefficients;       // Polynomial (Richardson steps)

  static SmootherSpec jacobi(double omega);
  static SmootherSpec red_black_gs();
  static SmootherSpec line_relaxation(int direction);
  static SmootherSpec polynomial(std::vector<double> coefficients);
  static SmootherSpec exact_solve();

  void validate(const GridSpec& grid) const;
  std::string name() const;
};

/// One relaxation method bound to an operator. A step is affine in (u, f),
/// u' = (I - B A) u + B f, so the induced iterator B and error propagator
/// I - B A are recovered by fixing one argument to zero.
class Smoother {
 public:
  Smoother(SmootherSpec spec, DiscreteOperator op);

  const SmootherSpec& spec() const { return spec_; }
  const DiscreteOperator& op() const { return op_; }

  Vec step(const Vec& u, const Vec& f) const;
  /// Red-black half sweep: exact solve on the given color (0 = red) with the
  /// other color frozen.
  Vec rbgs_half_sweep(const Vec& u, const Vec& f, int color) const;

  /// B_nu with u <- u + B(f - A u) equivalent to nu steps.
  std::unique_ptr<LinearOp> iterator_op(int steps = 1) const;
  /// (I - B A)^nu applied matrix-free.
  std::unique_ptr<LinearOp> propagator_op(int steps = 1) const;

 private:
  Vec line_relaxation_phase(const Vec& u, const Vec& f, int parity) const;

  SmootherSpec spec_;
  DiscreteOperator op_;
  std::vector<std::uint8_t> point_parity_;        // RedBlackGS
  std::vector<std::uint8_t> line_parity_;         // LineRelaxation, per line
  std::shared_ptr<Eigen::PartialPivLU<Mat>> line_lu_;
  std::shared_ptr<Eigen::PartialPivLU<Mat>> dense_lu_;  // ExactSolve
};

Vec smoother_step(const SmootherSpec& spec, const DiscreteOperator& op, const Vec& u, const Vec& f);
std::unique_ptr<LinearOp> error_propagator(const SmootherSpec& spec, const DiscreteOperator& op, int steps = 1);

}  // namespace lfamg
