#include <doctest.h>

#include <array>
#include <vector>

#include "engel/bitmatrix.hpp"
#include "engel/rng.hpp"

using namespace engel;
using namespace engel::gf2;

namespace {

using Dense = std::vector<std::vector<int>>;

BitMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, unsigned density_percent) {
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng.below(100) < density_percent) m.set(r, c);
    }
  }
  return m;
}

Dense to_dense(const BitMatrix& m) {
  Dense d(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) d[r][c] = m.test(r, c);
  }
  return d;
}

// Schoolbook product with integer sums reduced at the end.
Dense naive_product(const Dense& a, const Dense& b) {
  Dense out(a.size(), std::vector<int>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b[0].size(); ++j) {
      int s = 0;
      for (std::size_t k = 0; k < b.size(); ++k) s += a[i][k] * b[k][j];
      out[i][j] = s % 2;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("multiply matches the schoolbook product") {
  Rng rng(3);
  for (auto [r, k, c] : std::vector<std::array<std::size_t, 3>>{{1, 1, 1}, {5, 7, 3}, {64, 64, 64}, {65, 130, 70}}) {
    const auto a = random_matrix(rng, r, k, 40);
    const auto b = random_matrix(rng, k, c, 40);
    CHECK(to_dense(multiply(a, b)) == naive_product(to_dense(a), to_dense(b)));
  }
}

TEST_CASE("identity, associativity, distributivity") {
  Rng rng(5);
  const auto a = random_matrix(rng, 70, 70, 20);
  const auto b = random_matrix(rng, 70, 70, 20);
  const auto c = random_matrix(rng, 70, 70, 20);
  const auto id = BitMatrix::identity(70);
  CHECK(id.is_identity());
  CHECK(multiply(a, id) == a);
  CHECK(multiply(id, a) == a);
  CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  CHECK(multiply(a, b ^ c) == (multiply(a, b) ^ multiply(a, c)));
  CHECK((a ^ a).is_zero());
}

TEST_CASE("apply uses row vectors") {
  BitMatrix m(2, 3);
  m.set(0, 2);
  m.set(1, 0);
  m.set(1, 1);
  BitVector v(2);
  v.set(0);
  v.set(1);
  const auto out = m.apply(v);
  CHECK(out.test(0));
  CHECK(out.test(1));
  CHECK(out.test(2));
  BitVector e(2);
  e.set(1);
  CHECK_FALSE(m.apply(e).test(2));
}

TEST_CASE("flatten round trip") {
  Rng rng(9);
  const auto a = random_matrix(rng, 13, 77, 30);
  CHECK(BitMatrix::unflatten(a.flatten(), 13, 77) == a);
  CHECK(a.flatten().count() == a.count());
}

TEST_CASE("span insertion and rank") {
  Gf2Span span(8);
  BitVector a(8), b(8);
  a.set(0);
  a.set(3);
  b.set(3);
  CHECK(span.insert(a));
  CHECK(span.insert(b));
  CHECK_FALSE(span.insert(a ^ b));
  CHECK(span.dimension() == 2);
  BitVector c(8);
  c.set(0);
  CHECK(span.contains(c));
  BitVector d(8);
  d.set(5);
  CHECK_FALSE(span.contains(d));
  CHECK_FALSE(span.insert(BitVector(8)));
}

TEST_CASE("span rank matches a random construction") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    // rank of k random combinations of an independent set of size k
    const std::size_t k = 1 + rng.below(20);
    Gf2Span span(100);
    std::vector<BitVector> base;
    for (std::size_t i = 0; i < k; ++i) {
      BitVector v(100);
      v.set(i);
      for (std::size_t j = k; j < 100; ++j) {
        if (rng.coin()) v.set(j);
      }
      base.push_back(v);
    }
    for (std::size_t i = 0; i < 3 * k; ++i) {
      BitVector v(100);
      for (const auto& b : base) {
        if (rng.coin()) v ^= b;
      }
      span.insert(v);
    }
    for (const auto& b : base) span.insert(b);
    CHECK(span.dimension() == k);
  }
}

TEST_CASE("left null space annihilates the matrix") {
  Rng rng(17);
  const auto m = random_matrix(rng, 12, 5, 50);
  const auto null = left_null_space(m);
  CHECK(null.size() >= 7);
  for (const auto& v : null) CHECK(m.apply(v).none());
  const auto id = BitMatrix::identity(6);
  CHECK(left_null_space(id).empty());
}
