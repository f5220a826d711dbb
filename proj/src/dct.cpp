#include "lsf/dct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lsf/rng.hpp"

namespace lsf {

DctMatrix dct_matrix(int d) {
  if (d < 1) throw DimensionError("dct_matrix: order must be >= 1");
  DctMatrix m;
  m.order = d;
  m.entries.resize(std::size_t(d) * d);
  const double c0 = std::sqrt(1.0 / d);
  const double ci = std::sqrt(2.0 / d);
  for (int i = 0; i < d; ++i) {
    const double scale = (i == 0) ? c0 : ci;
    for (int j = 0; j < d; ++j)
      m.entries[std::size_t(i) * d + j] =
          scale * std::cos((j + 0.5) * std::numbers::pi / d * i);
  }
  return m;
}

std::vector<FrequencyIndex> frequency_set(const BasisDims& dims,
                                          FrequencyOrdering ordering,
                                          std::uint64_t seed) {
  std::vector<FrequencyIndex> out;
  out.reserve(std::size_t(dims.count()));
  for (int t = 0; t < dims.frames; ++t)
    for (int c = 0; c < dims.channels; ++c)
      for (int i = 0; i < dims.rows; ++i)
        for (int j = 0; j < dims.cols; ++j) out.push_back({t, c, i, j});

  if (ordering == FrequencyOrdering::kLowFrequencyFirst) {
    std::stable_sort(out.begin(), out.end(),
                     [](const FrequencyIndex& a, const FrequencyIndex& b) {
                       return std::tuple(a.i + a.j, a.i, a.j, a.t, a.c) <
                              std::tuple(b.i + b.j, b.i, b.j, b.t, b.c);
                     });
  } else {
    Rng rng(seed);
    rng.shuffle(out);
  }
  return out;
}

std::vector<double> basis_slice(const DctMatrix& a_rows, const DctMatrix& a_cols,
                                int i, int j) {
  if (i < 0 || i >= a_rows.order || j < 0 || j >= a_cols.order)
    throw DimensionError("basis_slice: frequency index out of range");
  std::vector<double> out(std::size_t(a_rows.order) * a_cols.order);
  for (int y = 0; y < a_rows.order; ++y) {
    const double ry = a_rows.at(i, y);
    for (int x = 0; x < a_cols.order; ++x)
      out[std::size_t(y) * a_cols.order + x] = ry * a_cols.at(j, x);
  }
  return out;
}

std::vector<double> basis_direction(const FrequencyIndex& idx,
                                    const BasisDims& dims) {
  if (idx.t < 0 || idx.t >= dims.frames || idx.c < 0 || idx.c >= dims.channels ||
      idx.i < 0 || idx.i >= dims.rows || idx.j < 0 || idx.j >= dims.cols)
    throw DimensionError("basis_direction: index out of range");
  const DctMatrix ar = dct_matrix(dims.rows);
  const DctMatrix ac = dct_matrix(dims.cols);
  std::vector<double> slice = basis_slice(ar, ac, idx.i, idx.j);

  std::vector<double> out(std::size_t(dims.count()), 0.0);
  for (int y = 0; y < dims.rows; ++y)
    for (int x = 0; x < dims.cols; ++x) {
      const std::size_t at =
          ((std::size_t(idx.t) * dims.rows + y) * dims.cols + x) *
              dims.channels +
          idx.c;
      out[at] = slice[std::size_t(y) * dims.cols + x];
    }
  return out;
}

std::vector<double> dct2(const DctMatrix& a_rows, const DctMatrix& a_cols,
                         const std::vector<double>& slice) {
  const int r = a_rows.order, c = a_cols.order;
  if (slice.size() != std::size_t(r) * c)
    throw DimensionError("dct2: slice size mismatch");
  // tmp = A_r * X
  std::vector<double> tmp(std::size_t(r) * c, 0.0);
  for (int i = 0; i < r; ++i)
    for (int y = 0; y < r; ++y) {
      const double a = a_rows.at(i, y);
      for (int x = 0; x < c; ++x)
        tmp[std::size_t(i) * c + x] += a * slice[std::size_t(y) * c + x];
    }
  // C = tmp * A_c^T
  std::vector<double> out(std::size_t(r) * c, 0.0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      double s = 0.0;
      for (int x = 0; x < c; ++x) s += tmp[std::size_t(i) * c + x] * a_cols.at(j, x);
      out[std::size_t(i) * c + j] = s;
    }
  return out;
}

std::vector<double> idct2(const DctMatrix& a_rows, const DctMatrix& a_cols,
                          const std::vector<double>& coeffs) {
  const int r = a_rows.order, c = a_cols.order;
  if (coeffs.size() != std::size_t(r) * c)
    throw DimensionError("idct2: coeff size mismatch");
  // tmp = A_r^T * C
  std::vector<double> tmp(std::size_t(r) * c, 0.0);
  for (int y = 0; y < r; ++y)
    for (int i = 0; i < r; ++i) {
      const double a = a_rows.at(i, y);
      for (int j = 0; j < c; ++j)
        tmp[std::size_t(y) * c + j] += a * coeffs[std::size_t(i) * c + j];
    }
  // X = tmp * A_c
  std::vector<double> out(std::size_t(r) * c, 0.0);
  for (int y = 0; y < r; ++y)
    for (int x = 0; x < c; ++x) {
      double s = 0.0;
      for (int j = 0; j < c; ++j) s += tmp[std::size_t(y) * c + j] * a_cols.at(j, x);
      out[std::size_t(y) * c + x] = s;
    }
  return out;
}

}  // namespace lsf
