#pragma once

#include <cstdint>
#include <vector>

#include "lsf/error.hpp"

namespace lsf {

// Orthonormal DCT-II matrix: A_ij = c(i) * cos((j + 0.5) * pi * i / d) with
// c(0) = sqrt(1/d) and c(i) = sqrt(2/d) otherwise. Rows have unit l2 norm and
// A * A^T = I.
struct DctMatrix {
  int order = 0;
  std::vector<double> entries;  // row-major order x order

  double at(int i, int j) const { return entries[std::size_t(i) * order + j]; }
};

DctMatrix dct_matrix(int d);

// One coefficient of the separable 2D basis, localized to frame t, channel c.
struct FrequencyIndex {
  int t = 0;  // frame
  int c = 0;  // channel
  int i = 0;  // row frequency
  int j = 0;  // column frequency

  bool operator==(const FrequencyIndex&) const = default;
};

// Spatial support the 2D DCT is taken over.
struct BasisDims {
  int frames = 0;
  int rows = 0;
  int cols = 0;
  int channels = 0;

  std::int64_t count() const {
    return std::int64_t(frames) * rows * cols * channels;
  }
  std::size_t flat(const FrequencyIndex& f) const {
    return ((std::size_t(f.t) * channels + f.c) * rows + f.i) * cols + f.j;
  }
};

enum class FrequencyOrdering { kLowFrequencyFirst, kUniformShuffle };

// All frames x rows x cols x channels indices, no duplicates.
// Low-frequency-first sorts by (i+j, i, j, t, c); uniform shuffle is a
// seeded Fisher-Yates over the canonical enumeration.
std::vector<FrequencyIndex> frequency_set(const BasisDims& dims,
                                          FrequencyOrdering ordering,
                                          std::uint64_t seed = 0);

// rows x cols slice of the inverse transform of a one-hot coefficient at
// (i, j): the outer product of row i of A_rows and row j of A_cols. Unit l2
// norm; distinct (i, j) are mutually orthogonal.
std::vector<double> basis_slice(const DctMatrix& a_rows, const DctMatrix& a_cols,
                                int i, int j);

// Dense video-shaped direction (frames x rows x cols x channels, row-major):
// zero outside the (t, c) slice, which holds basis_slice(i, j).
std::vector<double> basis_direction(const FrequencyIndex& idx,
                                    const BasisDims& dims);

// Separable 2D transforms on a rows x cols slice (row-major).
// Forward: C = A_r * X * A_c^T.  Inverse: X = A_r^T * C * A_c.
std::vector<double> dct2(const DctMatrix& a_rows, const DctMatrix& a_cols,
                         const std::vector<double>& slice);
std::vector<double> idct2(const DctMatrix& a_rows, const DctMatrix& a_cols,
                          const std::vector<double>& coeffs);

}  // namespace lsf
