#include "helpers.hpp"
#include "rhi/oracle.hpp"

#include <gtest/gtest.h>

using namespace rhi;
using namespace rhi::testing;

TEST(Ideal, GeneratedSpan) {
  auto A = cproj<Q>(3);
  const auto I = ideal_from_generators(A, {nf(A, "x^2")});
  EXPECT_EQ(I.span.dim(2), 0);
  EXPECT_EQ(I.span.dim(4), 1);
  EXPECT_EQ(I.span.dim(6), 1);
  EXPECT_TRUE(I.complete());
  const auto nil = nilpotency(I);
  EXPECT_EQ(nil.index, 1);
  EXPECT_TRUE(nil.exact);
}

TEST(Ideal, NilpotencyOfPositivePart) {
  for (int l = 1; l <= 5; ++l) {
    auto A = cproj<Q>(l);
    const auto nil = nilpotency(ideal_from_subspace(positive_subspace(A)));
    EXPECT_EQ(nil.index, l);
    ASSERT_EQ(static_cast<int>(nil.factors.size()), l);
    EXPECT_EQ(nil.product, nf(A, "x^" + std::to_string(l)));
    EXPECT_EQ(nil.power_dims.size(), static_cast<std::size_t>(l + 1));
  }
}

TEST(Ideal, ZeroIdeal) {
  auto A = cproj<Q>(2);
  const auto nil = nilpotency(ideal_from_generators(A, {}));
  EXPECT_EQ(nil.index, 0);
  EXPECT_TRUE(nil.factors.empty());
  EXPECT_EQ(nil.product, A->unit());
}

TEST(Ideal, RejectsDegreeZeroAndInhomogeneousGenerators) {
  auto A = cproj<Q>(2);
  EXPECT_THROW(ideal_from_generators(A, {nf(A, "x + x^2")}), AlgebraError);
  GradedSubspace<Q> V = empty_subspace(A, A->max_degree());
  Vector<Q> one(1);
  one << Q(1);
  V.spans[0].insert(one);
  EXPECT_THROW(ideal_from_subspace(V), AlgebraError);
}

TEST(Ideal, ProductAndIntersection) {
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 2}, {"y", 2}}, {"x^3", "y^3"}, 16});
  const auto I = ideal_from_generators(A, {nf(A, "x")});
  const auto J = ideal_from_generators(A, {nf(A, "y")});
  const auto IJ = ideal_product(I, J);
  EXPECT_TRUE(IJ.span.contains(nf(A, "x*y")));
  EXPECT_FALSE(IJ.span.contains(nf(A, "x^2")));
  const auto meet = subspace_intersection(I.span, J.span);
  EXPECT_EQ(meet.dim(4), 1);
  EXPECT_TRUE(meet.contains(nf(A, "x*y")));
  EXPECT_EQ(nilpotency(I).index, 2);
}

TEST(Ideal, TruncatedParentGivesLowerBound) {
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 2}}, {}, 8});
  const auto nil = nilpotency(ideal_from_generators(A, {nf(A, "x")}));
  EXPECT_FALSE(nil.exact);
  EXPECT_EQ(nil.index, 4);
}

TEST(Ideal, MatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RandomInstanceSpec spec;
    spec.seed = seed;
    spec.field = seed % 2 ? QQ() : FieldSpec::prime(5);
    auto run = [&]<class S>(AlgebraPtr<S> A) {
      const auto I = random_ideal(A, seed);
      const auto nil = nilpotency(I);
      EXPECT_TRUE(nil.exact);
      EXPECT_EQ(brute_nilpotency(I, 64), nil.index) << "seed " << seed;
      // Witness factors lie in the ideal and multiply to the product.
      Element<S> p = A->unit();
      for (const auto& f : nil.factors) {
        EXPECT_TRUE(I.span.contains(f));
        p = multiply(*A, p, f);
      }
      EXPECT_EQ(p, nil.product);
      EXPECT_FALSE(p.is_zero());
    };
    if (spec.field.characteristic == 0)
      run(random_algebra<Q>(spec));
    else
      run(random_algebra<Zp>(spec));
  }
}

TEST(Ideal, ImageUnderInjectiveMap) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomInstanceSpec spec;
    spec.seed = seed;
    spec.truncation = 14;
    auto A = random_algebra<Q>(spec);
    const auto f = random_injective_map(A, seed);
    ASSERT_TRUE(check_injective(f).empty());
    const auto I = random_ideal(A, seed);
    EXPECT_EQ(nilpotency(map_image_ideal(f, I)).index, nilpotency(I).index) << "seed " << seed;
  }
}
