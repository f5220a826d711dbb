#include <cmath>
#include <set>
#include <tuple>

#include "doctest.h"
#include "lsf/dct.hpp"
#include "lsf/rng.hpp"

using namespace lsf;

TEST_CASE("dct_matrix: d=1 is [[1]] and d=0 is rejected") {
  DctMatrix m = dct_matrix(1);
  CHECK(m.order == 1);
  CHECK(m.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(dct_matrix(0), DimensionError);
}

TEST_CASE("dct_matrix: row 0 entries are all sqrt(1/d)") {
  for (int d : {2, 5, 7, 16}) {
    DctMatrix m = dct_matrix(d);
    for (int j = 0; j < d; ++j)
      CHECK(m.at(0, j) == doctest::Approx(std::sqrt(1.0 / d)).epsilon(1e-12));
  }
}

TEST_CASE("dct_matrix: d=2 hand values") {
  DctMatrix m = dct_matrix(2);
  const double r = 0.7071067811865476;  // c(i) cos(...) evaluated by hand
  CHECK(std::abs(m.at(0, 0) - r) < 1e-9);
  CHECK(std::abs(m.at(0, 1) - r) < 1e-9);
  CHECK(std::abs(m.at(1, 0) - r) < 1e-9);
  CHECK(std::abs(m.at(1, 1) + r) < 1e-9);
}

TEST_CASE("Lemma 1: every row of A has unit l2 norm, d in 1..64") {
  for (int d = 1; d <= 64; ++d) {
    DctMatrix m = dct_matrix(d);
    for (int i = 0; i < d; ++i) {
      double n2 = 0.0;
      for (int j = 0; j < d; ++j) n2 += m.at(i, j) * m.at(i, j);
      CHECK(std::abs(std::sqrt(n2) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("orthonormality: max |A A^T - I| < 1e-9 for d in 1..64") {
  for (int d = 1; d <= 64; ++d) {
    DctMatrix m = dct_matrix(d);
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        double dot = 0.0;
        for (int j = 0; j < d; ++j) dot += m.at(i, j) * m.at(k, j);
        worst = std::max(worst, std::abs(dot - (i == k ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("basis_direction: DC direction is constant 1/sqrt(H*W) on its slice") {
  BasisDims dims{2, 4, 4, 3};
  FrequencyIndex idx{1, 2, 0, 0};
  std::vector<double> dir = basis_direction(idx, dims);
  const double expect = 1.0 / std::sqrt(16.0);
  for (int t = 0; t < dims.frames; ++t)
    for (int y = 0; y < dims.rows; ++y)
      for (int x = 0; x < dims.cols; ++x)
        for (int c = 0; c < dims.channels; ++c) {
          double v = dir[((std::size_t(t) * dims.rows + y) * dims.cols + x) *
                             dims.channels + c];
          if (t == idx.t && c == idx.c)
            CHECK(v == doctest::Approx(expect).epsilon(1e-12));
          else
            CHECK(v == 0.0);
        }
}

TEST_CASE("basis_direction: unit norm and mutual orthogonality") {
  BasisDims dims{2, 6, 3, 2};
  std::vector<FrequencyIndex> picks = {
      {0, 0, 0, 0}, {0, 0, 2, 1}, {1, 1, 5, 2}, {0, 1, 3, 0}, {1, 0, 1, 1}};
  std::vector<std::vector<double>> dirs;
  for (const auto& p : picks) dirs.push_back(basis_direction(p, dims));

  for (std::size_t a = 0; a < dirs.size(); ++a) {
    double n2 = 0.0;
    for (double v : dirs[a]) n2 += v * v;
    CHECK(std::abs(std::sqrt(n2) - 1.0) < 1e-9);
    for (std::size_t b = a + 1; b < dirs.size(); ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < dirs[a].size(); ++i) dot += dirs[a][i] * dirs[b][i];
      CHECK(std::abs(dot) < 1e-9);
    }
  }
}

TEST_CASE("basis_direction: out-of-range index is rejected") {
  BasisDims dims{2, 4, 4, 3};
  CHECK_THROWS_AS(basis_direction({2, 0, 0, 0}, dims), DimensionError);
  CHECK_THROWS_AS(basis_direction({0, 0, 4, 0}, dims), DimensionError);
}

TEST_CASE("forward-then-inverse 2D DCT reconstructs within 1e-7") {
  Rng rng(31);
  DctMatrix ar = dct_matrix(6);
  DctMatrix ac = dct_matrix(9);
  std::vector<double> x(54);
  for (double& v : x) v = rng.next_double(-1.0, 1.0);
  std::vector<double> c = dct2(ar, ac, x);
  std::vector<double> back = idct2(ar, ac, c);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(back[i] - x[i]) < 1e-7);
}

TEST_CASE("frequency_set: full enumeration without duplicates") {
  BasisDims dims{2, 4, 4, 3};
  std::vector<FrequencyIndex> q =
      frequency_set(dims, FrequencyOrdering::kLowFrequencyFirst);
  CHECK(q.size() == 96);  // 2*4*4*3
  std::set<std::tuple<int, int, int, int>> seen;
  for (const auto& f : q) seen.insert({f.t, f.c, f.i, f.j});
  CHECK(seen.size() == q.size());
}

TEST_CASE("frequency_set: low-frequency-first starts at minimal i+j") {
  BasisDims dims{2, 4, 4, 3};
  std::vector<FrequencyIndex> q =
      frequency_set(dims, FrequencyOrdering::kLowFrequencyFirst);
  CHECK(q.front().i + q.front().j == 0);
  for (std::size_t a = 1; a < q.size(); ++a)
    CHECK(q[a - 1].i + q[a - 1].j <= q[a].i + q[a].j);
}

TEST_CASE("frequency_set: shuffle is deterministic in the seed") {
  BasisDims dims{2, 4, 4, 3};
  auto a = frequency_set(dims, FrequencyOrdering::kUniformShuffle, 123);
  auto b = frequency_set(dims, FrequencyOrdering::kUniformShuffle, 123);
  auto c = frequency_set(dims, FrequencyOrdering::kUniformShuffle, 124);
  CHECK(a == b);
  CHECK(a != c);
}
