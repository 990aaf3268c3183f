#pragma once

#include "lfamg/grid.hpp"
#include "lfamg/linear_op.hpp"

#include <memory>
#include <optional>
#include <string>

namespace lfamg {

enum class ExtensionKind { Odd, Even, Mixed };

const char* to_string(ExtensionKind kind);

/// Extension/restriction pair (E, R) with R E = I linking a boundary-value
/// problem to its periodic embedding, applied per direction as a tensor
/// power.
///
/// Storage layouts in 1D (source size m, periodic size N):
///   Odd   (m = n-1, N = 2n): (u_1..u_{n-1}, 0, -u_{n-1}..-u_1, 0)
///   Even  (m = n+1, N = 2n): (u_0..u_n, u_{n-1}..u_1)
///   Mixed (m = n,   N = 4n): reflect evenly about the Neumann end, then
///                            extend the doubled interval oddly.
class ExtensionPair {
 public:
  ExtensionPair(ExtensionKind kind, int n, int d);

  ExtensionKind kind() const { return kind_; }
  int n() const { return n_; }
  int d() const { return d_; }
  int source_size_per_dir() const;
  int target_size_per_dir() const;
  GridSpec source_grid() const;
  GridSpec target_grid() const;
  Index source_total() const { return source_grid().total_points(); }
  Index target_total() const { return target_grid().total_points(); }

  Vec extend(const Vec& u) const;
  Vec restrict_(const Vec& v) const;

  std::unique_ptr<LinearOp> extend_op() const;
  std::unique_ptr<LinearOp> restrict_op() const;

 private:
  ExtensionKind kind_;
  int n_;
  int d_;
};

ExtensionPair odd_extension(int n, int d = 1);
ExtensionPair even_extension(int n, int d = 1);
ExtensionPair mixed_extension(int n, int d = 1);
/// The pair matching a boundary kind (Periodic has no extension).
ExtensionPair extension_for(BoundaryKind bc, int n, int d);

/// Membership test via the projector E R: true iff ||E(R(v)) - v||_inf <= tol.
bool in_range_of_extension(const Vec& v, const ExtensionPair& pair, double tol);

struct CompatReport {
  std::string name_bc;
  std::string name_periodic;
  double operator_defect = 0.0;   // max entry of |R M^P E - M^bc|
  double range_defect = 0.0;      // max invariance defect over the basis sweep
  double tol = 0.0;
  bool verdict = false;
  std::string probe;
  std::optional<Index> counterexample;  // first failing source basis index
};

/// Executable LFA-compatibility check: assembles R M^P E column by column,
/// compares entrywise with M_bc, and sweeps every source basis vector to
/// verify that M^P maps range(E_source) into range(E_target). Exhaustive by
/// construction, not probabilistic.
CompatReport check_lfa_compatible(const LinearOp& m_bc, const LinearOp& m_periodic,
                                  const ExtensionPair& source, const ExtensionPair& target, double tol,
                                  std::string name_bc = "M_bc", std::string name_periodic = "M_periodic");

/// Square case: one pair serves as source and target.
CompatReport check_lfa_compatible(const LinearOp& m_bc, const LinearOp& m_periodic, const ExtensionPair& pair,
                                  double tol, std::string name_bc = "M_bc",
                                  std::string name_periodic = "M_periodic");

}  // namespace lfamg
