#pragma once

#include "lfamg/multigrid.hpp"

#include <utility>
#include <vector>

namespace lfamg {

/// Discrete frequency theta_a = 2*pi*k_a/N on a periodic lattice with N
/// points per direction; k components canonical in (-N/2, N/2].
struct Frequency {
  std::array<int, 3> k{0, 0, 0};
  int N = 4;
  int d = 1;

  double theta(int axis) const;
  std::array<double, 3> angles() const;
  bool operator==(const Frequency&) const = default;
};

/// Lexicographically increasing angle order, used for deterministic argmax
/// tie-breaking.
bool frequency_less(const Frequency& a, const Frequency& b);

/// Low frequencies: every component in [-pi/2, pi/2), i.e. k in [-N/4, N/4).
/// Each fine frequency appears in exactly one harmonic tuple.
class FrequencySet {
 public:
  FrequencySet(int N, int d);
  std::size_t size() const { return lows_.size(); }
  const Frequency& low(std::size_t i) const { return lows_[i]; }
  const std::vector<Frequency>& lows() const { return lows_; }

 private:
  std::vector<Frequency> lows_;
};

/// The 2^d harmonics theta + pi*s, s in {0,1}^d, wrapped to (-pi, pi];
/// harmonic b has the bit of direction a at (b >> a) & 1.
std::vector<Frequency> harmonics_of(const Frequency& low);

/// Angle-level variant: shifts of theta_low wrapped to (-pi, pi].
std::vector<std::array<double, 3>> harmonic_tuple(const std::array<double, 3>& theta_low, int d);

/// Symbol of a wrap stencil: center + 2 off cos(theta).
double stencil_symbol(const Stencil1D& stencil, double theta);
/// Full symbol of a periodic operator: sum of directional stencil symbols
/// plus the reaction.
double operator_symbol(const DiscreteOperator& op, const std::array<double, 3>& theta);
double operator_symbol(const DiscreteOperator& op, const Frequency& freq);

/// x-anchored discrete Fourier mode: value exp(i theta (j + anchor)) per
/// direction, so that nodes sit at x = (j + anchor) h and transfer symbols
/// come out in their textbook form for either lattice anchor.
CVec harmonic_mode(const GridSpec& grid, const Frequency& freq, int anchor);

struct SymbolBlock {
  Frequency low;
  std::vector<Frequency> harmonics;
  CMat matrix;  // column b holds the coefficients of G(mode_b) in the harmonic basis
};

/// Numeric symbol extraction: apply a (real-linear) operator to every
/// harmonic mode and project back onto the harmonic basis. The projection
/// residual is asserted; a residual above tol means the operator is not
/// block-diagonalized by this harmonic tuple.
SymbolBlock extract_block(const LinearOp& op, const GridSpec& grid, const Frequency& low, int anchor,
                          double tol = 1e-11);

SymbolBlock smoother_symbol_block(const SmootherSpec& spec, const DiscreteOperator& periodic_op,
                                  const Frequency& low, int anchor, int steps = 1);

/// Closed-form full-weighting restriction symbol over the harmonics:
/// product over directions of (1 + cos(theta))/2. The d-linear interpolation
/// symbol takes the same values (the factor 2 relating the matrices cancels
/// against the fine/coarse change of basis).
Eigen::VectorXd transfer_restriction_symbol(const Frequency& low);
Eigen::VectorXd transfer_prolongation_symbol(const Frequency& low);

/// Numeric transfer symbols against the anchored periodic transfer operators.
Eigen::VectorXcd extract_restriction_row(const LinearOp& restriction, const GridSpec& fine, const Frequency& low,
                                         int anchor, double tol = 1e-11);
Eigen::VectorXcd extract_prolongation_column(const LinearOp& prolongation, const GridSpec& fine, const Frequency& low,
                                             int anchor, double tol = 1e-11);

/// Two-grid symbol on one harmonic space:
/// S^{nu2} (I - P (A_2h(2 theta))^{-1} R diag(A_h(theta_s))) S^{nu1},
/// assembled from closed-form A and transfer symbols and the numerically
/// extracted smoother block.
SymbolBlock two_grid_symbol_block(const CycleSpec& cycle, const GridSpec& fine_periodic, double c,
                                  const Frequency& low, int anchor);

struct LfaResult {
  double rho = 0.0;
  Frequency argmax;
  std::vector<std::pair<Frequency, double>> table;  // (low frequency, block spectral radius)
};

/// Predicted two-grid convergence factor: max over the discrete frequency
/// set of the block spectral radius, with the maximizing frequency.
LfaResult lfa_convergence_factor(const CycleSpec& cycle, const GridSpec& fine_periodic, double c, int anchor);

/// Classical smoothing factor: worst modulus of the smoother symbol
/// compressed onto the high-frequency harmonics (s != 0).
double lfa_smoothing_factor(const SmootherSpec& spec, const GridSpec& fine_periodic, double c, int anchor);

}  // namespace lfamg
