#include "lfamg/transfer.hpp"

#include "lfamg/detail/axis.hpp"

#include <stdexcept>
#include <string>

namespace lfamg {

GridSpec coarsen(const GridSpec& fine) {
  if (fine.n % 2 != 0 || fine.n < 4)
    throw std::invalid_argument("coarsening needs n divisible by 2 with n >= 4, got n = " + std::to_string(fine.n));
  if (fine.bc == BoundaryKind::Periodic) return make_periodic_grid(fine.d, fine.n / 2, fine.period);
  return make_grid(fine.d, fine.n / 2, fine.bc);
}

int anchor_for(BoundaryKind bc) { return bc == BoundaryKind::Neumann ? 0 : 1; }

namespace {

// 1D full-weighting and linear-interpolation line maps per boundary kind.
// Boundary-value variants are fixed by geometry (zero Dirichlet values,
// reflected Neumann ghosts); the compatibility checker certifies that each
// equals the extension-conjugated periodic transfer.

void fw_periodic(const double* x, Index xs, int lf, double* y, Index ys, int lc, int a) {
  auto at = [&](int j) { return x[((j % lf + lf) % lf) * xs]; };
  for (int q = 0; q < lc; ++q) {
    const int cpt = 2 * q + a;
    y[q * ys] = 0.25 * (at(cpt - 1) + 2.0 * at(cpt) + at(cpt + 1));
  }
}

void fw_dirichlet(const double* x, Index xs, int lf, double* y, Index ys, int lc) {
  (void)lf;
  for (int q = 0; q < lc; ++q) y[q * ys] = 0.25 * (x[(2 * q) * xs] + 2.0 * x[(2 * q + 1) * xs] + x[(2 * q + 2) * xs]);
}

void fw_neumann(const double* x, Index xs, int lf, double* y, Index ys, int lc) {
  const int nf = lf - 1;  // index of the last fine node
  y[0] = 0.25 * (2.0 * x[0] + 2.0 * x[xs]);
  for (int q = 1; q < lc - 1; ++q)
    y[q * ys] = 0.25 * (x[(2 * q - 1) * xs] + 2.0 * x[(2 * q) * xs] + x[(2 * q + 1) * xs]);
  y[(lc - 1) * ys] = 0.25 * (2.0 * x[nf * xs] + 2.0 * x[(nf - 1) * xs]);
}

void fw_mixed(const double* x, Index xs, int lf, double* y, Index ys, int lc) {
  for (int q = 0; q < lc - 1; ++q)
    y[q * ys] = 0.25 * (x[(2 * q) * xs] + 2.0 * x[(2 * q + 1) * xs] + x[(2 * q + 2) * xs]);
  y[(lc - 1) * ys] = 0.25 * (2.0 * x[(lf - 1) * xs] + 2.0 * x[(lf - 2) * xs]);
}

void interp_periodic(const double* x, Index xs, int lc, double* y, Index ys, int lf, int a) {
  auto at = [&](int q) { return x[(q % lc) * xs]; };
  for (int p = 0; p < lf; ++p) {
    // Shifting by lf keeps t nonnegative and moves the coarse index by a full
    // wrap (lf = 2 lc), so the value is unchanged.
    const int t = p - a + lf;
    if (t % 2 == 0)
      y[p * ys] = at(t / 2);
    else
      y[p * ys] = 0.5 * (at((t - 1) / 2) + at((t + 1) / 2));
  }
}

void interp_dirichlet(const double* x, Index xs, int lc, double* y, Index ys, int lf) {
  auto at = [&](int q) { return (q < 0 || q >= lc) ? 0.0 : x[q * xs]; };
  for (int p = 0; p < lf; ++p) {
    if (p % 2 == 1)
      y[p * ys] = at((p - 1) / 2);
    else
      y[p * ys] = 0.5 * (at(p / 2 - 1) + at(p / 2));
  }
}

void interp_neumann(const double* x, Index xs, int lc, double* y, Index ys, int lf) {
  (void)lc;
  for (int p = 0; p < lf; ++p) {
    if (p % 2 == 0)
      y[p * ys] = x[(p / 2) * xs];
    else
      y[p * ys] = 0.5 * (x[(p / 2) * xs] + x[(p / 2 + 1) * xs]);
  }
}

void interp_mixed(const double* x, Index xs, int lc, double* y, Index ys, int lf) {
  (void)lc;
  auto at = [&](int q) { return q < 0 ? 0.0 : x[q * xs]; };
  for (int p = 0; p < lf; ++p) {
    if (p % 2 == 1)
      y[p * ys] = at((p - 1) / 2);
    else
      y[p * ys] = 0.5 * (at(p / 2 - 1) + at(p / 2));
  }
}

Vec restrict_all_axes(const GridSpec& fine, const GridSpec& coarse, const Vec& u, int anchor) {
  const int lf = fine.points_per_dir();
  const int lc = coarse.points_per_dir();
  Vec v = u;
  std::array<int, 3> shape{1, 1, 1};
  for (int a = 0; a < fine.d; ++a) shape[a] = lf;
  for (int axis = 0; axis < fine.d; ++axis) {
    switch (fine.bc) {
      case BoundaryKind::Periodic:
        v = detail::map_axis(v, shape, fine.d, axis, lc,
                             [&](const double* x, Index xs, int xl, double* y, Index ys, int yl) {
                               fw_periodic(x, xs, xl, y, ys, yl, anchor);
                             });
        break;
      case BoundaryKind::Dirichlet:
        v = detail::map_axis(v, shape, fine.d, axis, lc, fw_dirichlet);
        break;
      case BoundaryKind::Neumann:
        v = detail::map_axis(v, shape, fine.d, axis, lc, fw_neumann);
        break;
      case BoundaryKind::MixedDN:
        v = detail::map_axis(v, shape, fine.d, axis, lc, fw_mixed);
        break;
    }
    shape[axis] = lc;
  }
  return v;
}

Vec interpolate_all_axes(const GridSpec& fine, const GridSpec& coarse, const Vec& u, int anchor) {
  const int lf = fine.points_per_dir();
  const int lc = coarse.points_per_dir();
  Vec v = u;
  std::array<int, 3> shape{1, 1, 1};
  for (int a = 0; a < fine.d; ++a) shape[a] = lc;
  for (int axis = 0; axis < fine.d; ++axis) {
    switch (fine.bc) {
      case BoundaryKind::Periodic:
        v = detail::map_axis(v, shape, fine.d, axis, lf,
                             [&](const double* x, Index xs, int xl, double* y, Index ys, int yl) {
                               interp_periodic(x, xs, xl, y, ys, yl, anchor);
                             });
        break;
      case BoundaryKind::Dirichlet:
        v = detail::map_axis(v, shape, fine.d, axis, lf, interp_dirichlet);
        break;
      case BoundaryKind::Neumann:
        v = detail::map_axis(v, shape, fine.d, axis, lf, interp_neumann);
        break;
      case BoundaryKind::MixedDN:
        v = detail::map_axis(v, shape, fine.d, axis, lf, interp_mixed);
        break;
    }
    shape[axis] = lf;
  }
  return v;
}

}  // namespace

std::unique_ptr<LinearOp> full_weighting(const GridSpec& fine, int anchor) {
  const GridSpec coarse = coarsen(fine);
  return std::make_unique<FnOp>(coarse.total_points(), fine.total_points(), [fine, coarse, anchor](const Vec& u) {
    return restrict_all_axes(fine, coarse, u, anchor);
  });
}

std::unique_ptr<LinearOp> dlinear_interpolation(const GridSpec& fine, int anchor) {
  const GridSpec coarse = coarsen(fine);
  return std::make_unique<FnOp>(fine.total_points(), coarse.total_points(), [fine, coarse, anchor](const Vec& u) {
    return interpolate_all_axes(fine, coarse, u, anchor);
  });
}

std::unique_ptr<LinearOp> full_weighting(const GridSpec& fine) { return full_weighting(fine, anchor_for(fine.bc)); }

std::unique_ptr<LinearOp> dlinear_interpolation(const GridSpec& fine) {
  return dlinear_interpolation(fine, anchor_for(fine.bc));
}

Vec full_weighting_restrict(const GridSpec& fine, const Vec& u) {
  return restrict_all_axes(fine, coarsen(fine), u, anchor_for(fine.bc));
}

Vec dlinear_interpolate(const GridSpec& fine, const Vec& coarse_values) {
  return interpolate_all_axes(fine, coarsen(fine), coarse_values, anchor_for(fine.bc));
}

}  // namespace lfamg
