#include "helpers.hpp"
#include "rhi/oracle.hpp"

#include <gtest/gtest.h>

using namespace rhi;
using namespace rhi::testing;

TEST(BuildMap, ProjectionOntoQuotient) {
  // Q[x]/(x^3) -> Q[x]/(x^2) sending x to x kills x^2.
  auto A = cproj<Q>(2), B = cproj<Q>(1);
  const auto f = build_map<Q>(A, B, std::map<std::string, std::string>{{"x", "x"}});
  EXPECT_EQ(f.apply(nf(A, "x")), nf(B, "x"));
  EXPECT_TRUE(f.apply(nf(A, "x^2")).is_zero());
  const auto K = kernel(f);
  EXPECT_EQ(K.dim(4), 1);
  EXPECT_EQ(K.dim(2), 0);
  EXPECT_TRUE(check_surjective(f).empty());
  EXPECT_EQ(check_injective(f), std::vector<int>{4});
}

TEST(BuildMap, RelationMustMapToZero) {
  // Q[x]/(x^2) -> Q[x]/(x^3) with x -> x would send x^2 to a nonzero class.
  auto A = cproj<Q>(1), B = cproj<Q>(2);
  EXPECT_THROW(build_map<Q>(A, B, std::map<std::string, std::string>{{"x", "x"}}), AlgebraError);
  EXPECT_NO_THROW(build_map<Q>(A, B, std::map<std::string, std::string>{{"x", "0"}}));
}

TEST(BuildMap, Errors) {
  auto A = cproj<Q>(2);
  using Images = std::map<std::string, std::string>;
  EXPECT_THROW(build_map<Q>(A, A, Images{}), AlgebraError);                          // missing image
  EXPECT_THROW(build_map<Q>(A, A, Images{{"x", "x"}, {"y", "x"}}), AlgebraError);    // unknown generator
  EXPECT_THROW(build_map<Q>(A, A, Images{{"x", "x^2"}}), AlgebraError);              // wrong degree
  EXPECT_THROW(build_map<Q>(A, A, Images{{"x", "x + x^2"}}), AlgebraError);          // inhomogeneous
  auto F = cproj<Zp>(2, FieldSpec::prime(3));
  EXPECT_THROW(build_map<Zp>(F, cproj<Zp>(2, FieldSpec::prime(5)), Images{{"x", "x"}}), AlgebraError);
}

TEST(BuildMap, TableDomainIsCheckedForMultiplicativity) {
  MultiplicationTable t;
  t.basis = {{"1", 0}, {"e", 0}};
  t.unit = "1";
  t.products = {{"1", "1", {{"1", "1"}}}, {"1", "e", {{"1", "e"}}}, {"e", "1", {{"1", "e"}}}, {"e", "e", {{"1", "e"}}}};
  auto S0 = realize_table<Q>(QQ(), t);
  auto pt = realize_presentation<Q>(QQ(), Presentation{{}, {}, 1});
  using Images = std::map<std::string, std::string>;
  EXPECT_NO_THROW(build_map<Q>(S0, pt, Images{{"e", "1"}}));
  EXPECT_NO_THROW(build_map<Q>(S0, pt, Images{{"e", "0"}}));
  EXPECT_THROW(build_map<Q>(S0, pt, Images{{"e", "2"}}), AlgebraError);  // e*e = e but 2*2 != 2
}

TEST(Maps, ComposeAndIdentity) {
  auto A = exterior<Q>(2);
  const auto id = identity_map(A);
  const auto f = build_map<Q>(A, A, std::map<std::string, std::string>{{"x1", "2*x1"}, {"x2", "-x2"}});
  const auto ff = compose(f, f);
  EXPECT_EQ(ff.apply(nf(A, "x1*x2")), nf(A, "4*x1*x2"));
  const auto fid = compose(id, f);
  for (int d = 0; d <= A->max_degree(); ++d) EXPECT_TRUE(equal<Q>(fid.matrix(d), f.matrix(d)));
  EXPECT_TRUE(kernel(id).is_zero());
  EXPECT_FALSE(check_multiplicative(f).has_value());
}

TEST(Maps, AugmentationKernelIsPositivePart) {
  auto A = cproj<Q>(3);
  const auto eps = augmentation(A);
  const auto K = kernel(eps);
  EXPECT_EQ(K.dim(0), 0);
  for (int d = 1; d <= A->max_degree(); ++d) EXPECT_EQ(K.dim(d), A->dim(d));
}

TEST(Maps, RandomMapsAreMultiplicative) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomInstanceSpec sa;
    sa.seed = seed;
    auto A = random_algebra<Q>(sa);
    const auto r = random_map(A, A, seed);
    if (!r.map) continue;
    EXPECT_FALSE(check_multiplicative(*r.map).has_value()) << "seed " << seed;
  }
}

TEST(Maps, ImageAndKernelDimensionsAddUp) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomInstanceSpec sa;
    sa.seed = seed;
    sa.field = FieldSpec::prime(5);
    auto A = random_algebra<Zp>(sa);
    const auto r = random_map(A, A, seed + 100);
    if (!r.map) continue;
    const auto K = kernel(*r.map);
    const auto I = image_subspace(*r.map);
    for (int d = 0; d <= A->max_degree(); ++d) EXPECT_EQ(K.dim(d) + I.dim(d), A->dim(d));
  }
}
