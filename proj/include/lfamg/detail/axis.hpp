#pragma once

#include "lfamg/grid.hpp"

#include <cassert>

namespace lfamg::detail {

inline Index shape_total(const std::array<int, 3>& shape, int d) {
  Index total = 1;
  for (int a = 0; a < d; ++a) total *= shape[a];
  return total;
}

/// Visit every 1D line of a flat first-direction-fastest array along `axis`.
/// body(base, stride, len): element k of the line lives at base + k*stride.
template <class F>
void for_each_line(const std::array<int, 3>& shape, int d, int axis, F&& body) {
  assert(axis >= 0 && axis < d);
  Index stride = 1;
  for (int a = 0; a < axis; ++a) stride *= shape[a];
  const int len = shape[axis];
  Index outer = 1;
  for (int a = axis + 1; a < d; ++a) outer *= shape[a];
  const Index block = stride * len;
  for (Index o = 0; o < outer; ++o)
    for (Index i = 0; i < stride; ++i) body(o * block + i, stride, len);
}

/// Apply a 1D map line-by-line along `axis`, producing an array whose shape
/// differs from the input only in that axis. The line map writes the full
/// output line: fn(x, xstride, xlen, y, ystride, ylen).
template <class LineFn>
Vec map_axis(const Vec& in, const std::array<int, 3>& in_shape, int d, int axis, int out_len, LineFn&& fn) {
  assert(axis >= 0 && axis < d);
  std::array<int, 3> out_shape = in_shape;
  out_shape[axis] = out_len;
  Index stride = 1;  // strides below `axis` agree between input and output
  for (int a = 0; a < axis; ++a) stride *= in_shape[a];
  const int in_len = in_shape[axis];
  Index outer = 1;
  for (int a = axis + 1; a < d; ++a) outer *= in_shape[a];
  Vec out(shape_total(out_shape, d));
  const Index in_block = stride * in_len;
  const Index out_block = stride * out_len;
  for (Index o = 0; o < outer; ++o)
    for (Index i = 0; i < stride; ++i)
      fn(in.data() + o * in_block + i, stride, in_len, out.data() + o * out_block + i, stride, out_len);
  return out;
}

}  // namespace lfamg::detail
