#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "excat/matrix.hpp"

using namespace excat;

namespace {

Matrix from_longs(const Field& F, int r, int c, std::initializer_list<long> vals) {
  Matrix m(F, r, c);
  auto it = vals.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, F.from_long(*it++));
  return m;
}

Matrix random_matrix(const Field& F, int r, int c, std::mt19937_64& rng) {
  Matrix m(F, r, c);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, F.from_long(d(rng)));
  return m;
}

}  // namespace

TEST_CASE("rref identity over F_5") {
  Field F = Field::prime(5);
  Matrix id = Matrix::identity(F, 2);
  auto r = id.rref();
  CHECK(r.reduced == id);
  CHECK(r.pivot_columns == std::vector<int>{0, 1});
  CHECK(r.rank == 2);
}

TEST_CASE("rref zero matrix") {
  Field F = Field::rationals();
  Matrix z = Matrix::zero(F, 3, 4);
  auto r = z.rref();
  CHECK(r.reduced == z);
  CHECK(r.pivot_columns.empty());
  CHECK(r.rank == 0);
}

TEST_CASE("rref rank-1 over Q") {
  // hand row-reduction: [[1,2],[2,4]] -> [[1,2],[0,0]]
  Field F = Field::rationals();
  Matrix m = from_longs(F, 2, 2, {1, 2, 2, 4});
  auto r = m.rref();
  CHECK(r.rank == 1);
  CHECK(r.pivot_columns == std::vector<int>{0});
  CHECK(r.reduced == from_longs(F, 2, 2, {1, 2, 0, 0}));
}

TEST_CASE("kernel basis cases") {
  Field F = Field::rationals();
  CHECK(Matrix::identity(F, 2).kernel_basis().cols() == 0);
  Matrix z23 = Matrix::zero(F, 2, 3);
  CHECK(z23.kernel_basis() == Matrix::identity(F, 3));
  Matrix m = from_longs(F, 1, 2, {1, 2});
  Matrix k = m.kernel_basis();
  REQUIRE(k.cols() == 1);
  CHECK((m * k).is_zero());
}

TEST_CASE("solve cases") {
  Field F = Field::rationals();
  Matrix id = Matrix::identity(F, 2);
  Matrix b = from_longs(F, 2, 1, {3, 7});
  auto x = id.solve(b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  Matrix a = from_longs(F, 2, 1, {1, 0});
  Matrix bad = from_longs(F, 2, 1, {0, 1});
  CHECK(!a.solve(bad).has_value());

  Matrix two = from_longs(F, 1, 1, {2});
  Matrix one = from_longs(F, 1, 1, {1});
  auto half = two.solve(one);
  REQUIRE(half.has_value());
  CHECK(half->at(0, 0) == mpq_class(1, 2));
}

TEST_CASE("random rank/kernel/solve invariants") {
  std::mt19937_64 rng(12345);
  for (const Field& F : {Field::rationals(), Field::prime(5)}) {
    for (int iter = 0; iter < 40; ++iter) {
      int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
      Matrix m = random_matrix(F, r, c, rng);
      CHECK(m.rank() == m.transpose().rank());
      Matrix k = m.kernel_basis();
      CHECK(m.rank() + k.cols() == c);
      CHECK((m * k).is_zero());
      Matrix b = random_matrix(F, r, 1, rng);
      auto x = m.solve(b);
      bool consistent = m.hstack(b).rank() == m.rank();
      CHECK(x.has_value() == consistent);
      if (x) CHECK(m * *x == b);
    }
  }
}

TEST_CASE("F_p inverse arithmetic") {
  Field F = Field::prime(7);
  mpq_class three(3);
  mpq_class inv = F.inv(three);
  CHECK(F.mul(three, inv) == 1);
  CHECK(F.canon(mpq_class(1, 3)) == inv);
}
