#include "lfamg/linear_op.hpp"

#include <stdexcept>
#include <string>

namespace lfamg {

void check_apply_size(const LinearOp& op, const Vec& x) {
  if (x.size() != op.cols())
    throw std::invalid_argument("operator expects input of size " + std::to_string(op.cols()) + ", got " +
                                std::to_string(x.size()));
}

Vec LinearOp::apply(const Vec& x) const {
  check_apply_size(*this, x);
  Vec y(rows());
  apply_to(x, y);
  return y;
}

CVec LinearOp::apply_complex(const CVec& x) const {
  if (x.size() != cols())
    throw std::invalid_argument("operator expects input of size " + std::to_string(cols()));
  const Vec re = apply(Vec(x.real()));
  const Vec im = apply(Vec(x.imag()));
  CVec y(rows());
  y.real() = re;
  y.imag() = im;
  return y;
}

void FnOp::apply_to(const Vec& x, Vec& y) const { y = fn_(x); }

DenseSolveOp::DenseSolveOp(const Mat& a) : size_(a.rows()), lu_(a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("DenseSolveOp needs a square matrix");
}

DenseSolveOp::DenseSolveOp(const LinearOp& a, Index guard) : DenseSolveOp(materialize(a, guard)) {}

Mat materialize(const LinearOp& op, Index guard) {
  if (op.rows() > guard || op.cols() > guard)
    throw std::length_error("materialize: operator size " + std::to_string(op.rows()) + "x" +
                            std::to_string(op.cols()) + " exceeds guard " + std::to_string(guard));
  Mat m(op.rows(), op.cols());
  Vec e = Vec::Zero(op.cols());
  Vec col(op.rows());
  for (Index j = 0; j < op.cols(); ++j) {
    e[j] = 1.0;
    op.apply_to(e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

}  // namespace lfamg
