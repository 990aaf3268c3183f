#pragma once

#include "lfamg/grid.hpp"

#include <Eigen/LU>

#include <functional>
#include <memory>
#include <utility>

namespace lfamg {

/// Real-linear operator applied matrix-free. Complex vectors are handled by
/// applying to real and imaginary parts separately (every operator in this
/// library has a real matrix representation).
class LinearOp {
 public:
  virtual ~LinearOp() = default;
  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  virtual void apply_to(const Vec& x, Vec& y) const = 0;

  Vec apply(const Vec& x) const;
  CVec apply_complex(const CVec& x) const;
};

class FnOp final : public LinearOp {
 public:
  FnOp(Index rows, Index cols, std::function<Vec(const Vec&)> fn)
      : rows_(rows), cols_(cols), fn_(std::move(fn)) {}
  Index rows() const override { return rows_; }
  Index cols() const override { return cols_; }
  void apply_to(const Vec& x, Vec& y) const override;

 private:
  Index rows_;
  Index cols_;
  std::function<Vec(const Vec&)> fn_;
};

class DenseOp final : public LinearOp {
 public:
  explicit DenseOp(Mat m) : m_(std::move(m)) {}
  Index rows() const override { return m_.rows(); }
  Index cols() const override { return m_.cols(); }
  void apply_to(const Vec& x, Vec& y) const override { y = m_ * x; }
  const Mat& matrix() const { return m_; }

 private:
  Mat m_;
};

/// x -> A^{-1} x through a dense LU factorization computed once.
class DenseSolveOp final : public LinearOp {
 public:
  explicit DenseSolveOp(const Mat& a);
  explicit DenseSolveOp(const LinearOp& a, Index guard = 10000);
  Index rows() const override { return size_; }
  Index cols() const override { return size_; }
  void apply_to(const Vec& x, Vec& y) const override { y = lu_.solve(x); }

 private:
  Index size_;
  Eigen::PartialPivLU<Mat> lu_;
};

/// Dense matrix whose column j is op(e_j). Guarded against accidental huge
/// allocations.
Mat materialize(const LinearOp& op, Index guard = 10000);

void check_apply_size(const LinearOp& op, const Vec& x);

}  // namespace lfamg
