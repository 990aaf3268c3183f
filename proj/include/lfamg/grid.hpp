#pragma once

#include <Eigen/Core>

#include <array>
#include <complex>
#include <string_view>

namespace lfamg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Index = Eigen::Index;

enum class BoundaryKind { Dirichlet, Neumann, MixedDN, Periodic };

const char* to_string(BoundaryKind bc);
BoundaryKind boundary_kind_from_string(std::string_view name);

/// Uniform tensor-product grid with step h = 1/n in every direction.
///
/// The subinterval count n always refers to the unit interval, so h is
/// recomputed as 1/n and never accumulated. Periodic grids cover a domain
/// of `period` unit intervals (2 for the embeddings of the Dirichlet and
/// Neumann problems, 4 for the mixed one) and carry period*n points per
/// direction.
struct GridSpec {
  int d = 1;
  int n = 2;
  BoundaryKind bc = BoundaryKind::Dirichlet;
  int period = 2;  // used by Periodic grids only

  double h() const { return 1.0 / static_cast<double>(n); }
  int points_per_dir() const;
  Index total_points() const;
  std::array<int, 3> shape() const;  // per-direction point counts, padded with 1

  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int d, int n, BoundaryKind bc);
GridSpec make_periodic_grid(int d, int n, int period = 2);

/// Flat index of a multi-index, first direction fastest. Components beyond
/// the grid dimension must be zero.
Index lex_index(const GridSpec& grid, const std::array<int, 3>& multi);
std::array<int, 3> multi_index(const GridSpec& grid, Index flat);

template <class Scalar>
struct GridFunctionT {
  GridSpec grid;
  Eigen::VectorX<Scalar> values;
};
using GridFunction = GridFunctionT<double>;
using ComplexGridFunction = GridFunctionT<std::complex<double>>;

template <class Scalar>
GridFunctionT<Scalar> make_grid_function(const GridSpec& grid, Eigen::VectorX<Scalar> values);

/// Discrete Fourier mode with value exp(i theta . j) at storage multi-index j.
/// With theta_k = 2*pi*k/N these are exact eigenvectors of every periodic
/// stencil operator.
ComplexGridFunction fourier_mode(const GridSpec& grid, const std::array<double, 3>& theta);

}  // namespace lfamg
