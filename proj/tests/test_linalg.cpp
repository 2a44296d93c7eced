#include "rhi/linalg.hpp"

#include <gtest/gtest.h>

using namespace rhi;
using Q = Rational;

namespace {

Matrix<Q> mat(int r, int c, std::initializer_list<int> xs) {
  Matrix<Q> m(r, c);
  auto it = xs.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Q(*it++);
  return m;
}

}  // namespace

TEST(Echelon, InsertAndContain) {
  Echelon<Q> e(3);
  Vector<Q> a(3), b(3), c(3);
  a << Q(1), Q(2), Q(3);
  b << Q(2), Q(4), Q(6);
  c << Q(0), Q(1), Q(1);
  EXPECT_TRUE(e.insert(a));
  EXPECT_FALSE(e.insert(b));
  EXPECT_TRUE(e.insert(c));
  EXPECT_EQ(e.rank(), 2);
  EXPECT_TRUE(e.contains(Vector<Q>(a + c)));
  Vector<Q> d(3);
  d << Q(0), Q(0), Q(1);
  EXPECT_FALSE(e.contains(d));
  EXPECT_EQ(e.pivot(0), 0);
  EXPECT_EQ(e.pivot_row(1), 1);
}

TEST(Linalg, RankAndNullspace) {
  const Matrix<Q> m = mat(2, 4, {1, 2, 0, 1, 2, 4, 1, 3});
  EXPECT_EQ(rank(m), 2);
  const Matrix<Q> n = nullspace(m);
  EXPECT_EQ(n.cols(), 2);
  EXPECT_TRUE(is_zero<Q>(Matrix<Q>(m * n)));
  EXPECT_EQ(rank(n), 2);
}

TEST(Linalg, NullspaceOfFullRankIsEmpty) {
  const Matrix<Q> m = mat(2, 2, {1, 1, 1, -1});
  EXPECT_EQ(nullspace(m).cols(), 0);
}

TEST(Linalg, RrefOverFp) {
  const FieldSpec f = FieldSpec::prime(3);
  Matrix<Zp> m(2, 2);
  m << Zp(1, 3), Zp(2, 3), Zp(2, 3), Zp(1, 3);  // second row is 2 * first mod 3
  const auto r = rref(m);
  EXPECT_EQ(r.pivots.size(), 1u);
  (void)f;
}

TEST(Linalg, Intersection) {
  Echelon<Q> a(3), b(3);
  Vector<Q> x(3), y(3), z(3);
  x << Q(1), Q(0), Q(0);
  y << Q(0), Q(1), Q(0);
  z << Q(1), Q(1), Q(1);
  a.insert(x);
  a.insert(y);
  b.insert(z);
  b.insert(Vector<Q>(x + y));
  const Echelon<Q> c = intersect(a, b);
  EXPECT_EQ(c.rank(), 1);
  EXPECT_TRUE(c.contains(Vector<Q>(x + y)));
}
