#include "helpers.hpp"
#include "rhi/oracle.hpp"

#include <gtest/gtest.h>

using namespace rhi;
using namespace rhi::testing;

namespace {

MultiplicationTable s0_table() {
  MultiplicationTable t;
  t.basis = {{"1", 0}, {"e", 0}};
  t.unit = "1";
  t.products = {{"1", "1", {{"1", "1"}}}, {"1", "e", {{"1", "e"}}}, {"e", "1", {{"1", "e"}}}, {"e", "e", {{"1", "e"}}}};
  return t;
}

}  // namespace

TEST(Realize, OddGeneratorIsExterior) {
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 3}}, {}, 10});
  EXPECT_EQ(dims(*A), (std::vector<int>{1, 0, 0, 1}));
  EXPECT_TRUE(A->exact());
  EXPECT_EQ(A->finiteness().top_degree, 3);
  EXPECT_EQ(A->dim(7), 0);
}

TEST(Realize, TruncatedPolynomial) {
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 2}}, {"x^3"}, 10});
  EXPECT_EQ(dims(*A), (std::vector<int>{1, 0, 1, 0, 1}));
  EXPECT_TRUE(A->exact());
}

TEST(Realize, CharacteristicTwoProjectivePlane) {
  auto A = realize_presentation<Zp>(FieldSpec::prime(2), Presentation{{{"a", 1}}, {"a^3"}, 6});
  EXPECT_EQ(dims(*A), (std::vector<int>{1, 1, 1}));
  EXPECT_TRUE(A->exact());
  EXPECT_EQ(A->finiteness().top_degree, 2);
  // a is odd but not exterior in characteristic 2.
  EXPECT_FALSE(multiply(*A, nf(A, "a"), nf(A, "a")).is_zero());
}

TEST(Realize, BasisUsesNonPivotMonomials) {
  // x^2 = x*y makes x^2 the pivot, so the degree-4 basis is {x*y, y^2}.
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 2}, {"y", 2}}, {"x^2 - x*y", "y^3", "x*y^2"}, 12});
  ASSERT_EQ(A->dim(4), 2);
  EXPECT_EQ(A->basis_name(4, 0), "x*y");
  EXPECT_EQ(A->basis_name(4, 1), "y^2");
  EXPECT_EQ(nf(A, "x^2"), nf(A, "x*y"));
}

TEST(Realize, NoFinitenessCertificate) {
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 2}}, {}, 6});
  EXPECT_FALSE(A->exact());
  EXPECT_EQ(A->finiteness().truncation, 6);
  try {
    multiply(*A, nf(A, "x^3"), nf(A, "x"));
    FAIL() << "expected a truncation error";
  } catch (const TruncationError& e) {
    EXPECT_EQ(e.degree(), 8);
  }
}

TEST(Realize, CertificateNeedsAFullZeroBand) {
  // Top degree 6 but the zero band (6, 9] is not inside D = 8.
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 3}, {"y", 3}}, {}, 8});
  EXPECT_FALSE(A->exact());
  auto B = realize_presentation<Q>(QQ(), Presentation{{{"x", 3}, {"y", 3}}, {}, 9});
  EXPECT_TRUE(B->exact());
  EXPECT_EQ(B->finiteness().top_degree, 6);
}

TEST(Realize, Errors) {
  EXPECT_THROW(realize_presentation<Q>(QQ(), Presentation{{{"x", 4}}, {}, 3}), AlgebraError);
  EXPECT_THROW(realize_presentation<Q>(QQ(), Presentation{{{"x", 2}}, {"x + x^2"}, 8}), AlgebraError);
  EXPECT_THROW(realize_presentation<Q>(QQ(), Presentation{{{"x", 2}}, {"y^2"}, 8}), AlgebraError);
  EXPECT_THROW(realize_presentation<Q>(QQ(), Presentation{{{"x", 0}}, {}, 8}), AlgebraError);
  EXPECT_THROW(realize_presentation<Q>(QQ(), Presentation{{{"x", 2}, {"x", 2}}, {}, 8}), AlgebraError);
}

TEST(Table, DisconnectedZeroSphere) {
  auto A = realize_table<Zp>(FieldSpec::prime(2), s0_table());
  EXPECT_EQ(A->dim(0), 2);
  EXPECT_TRUE(A->exact());
  const auto e = A->resolve_name("e");
  EXPECT_EQ(multiply(*A, e, e), e);
  EXPECT_EQ(multiply(*A, A->unit(), e), e);
}

TEST(Table, MissingProductIsRejected) {
  auto t = s0_table();
  t.products.pop_back();
  try {
    realize_table<Zp>(FieldSpec::prime(2), t);
    FAIL();
  } catch (const AlgebraError& err) {
    EXPECT_NE(std::string(err.what()).find("e"), std::string::npos);
  }
}

TEST(Table, NonAssociativeTripleIsNamed) {
  MultiplicationTable t;
  t.basis = {{"1", 0}, {"u", 2}, {"v", 2}, {"w", 4}, {"t", 6}};
  t.unit = "1";
  for (const auto& b : t.basis) {
    t.products.push_back({"1", b.name, {{"1", b.name}}});
    if (b.name != "1") t.products.push_back({b.name, "1", {{"1", b.name}}});
  }
  for (const char* l : {"u", "v", "w", "t"})
    for (const char* r : {"u", "v", "w", "t"}) {
      TableProduct p{l, r, {}};
      if (std::string(l) == "u" && std::string(r) == "u") p.value = {{"1", "w"}};
      if ((std::string(l) == "w" && std::string(r) == "v") || (std::string(l) == "v" && std::string(r) == "w"))
        p.value = {{"1", "t"}};
      t.products.push_back(p);
    }
  try {
    realize_table<Q>(QQ(), t);
    FAIL();
  } catch (const AlgebraError& err) {
    EXPECT_NE(std::string(err.what()).find("(u, u, v)"), std::string::npos) << err.what();
  }
}

TEST(Table, DegreeAndSignViolations) {
  MultiplicationTable t;
  t.basis = {{"1", 0}, {"a", 1}, {"b", 1}, {"c", 2}};
  t.unit = "1";
  for (const auto& b : t.basis) {
    t.products.push_back({"1", b.name, {{"1", b.name}}});
    if (b.name != "1") t.products.push_back({b.name, "1", {{"1", b.name}}});
  }
  for (const char* l : {"a", "b", "c"})
    for (const char* r : {"a", "b", "c"}) {
      TableProduct p{l, r, {}};
      if (std::string(l) == "a" && std::string(r) == "b") p.value = {{"1", "c"}};
      if (std::string(l) == "b" && std::string(r) == "a") p.value = {{"1", "c"}};  // should be -c
      t.products.push_back(p);
    }
  EXPECT_THROW(realize_table<Q>(QQ(), t), AlgebraError);
  // The same table is fine in characteristic 2.
  EXPECT_NO_THROW(realize_table<Zp>(FieldSpec::prime(2), t));

  for (auto& p : t.products)
    if (p.left == "a" && p.right == "b") p.value = {{"1", "a"}};
  EXPECT_THROW(realize_table<Zp>(FieldSpec::prime(2), t), AlgebraError);
}

TEST(Multiply, Examples) {
  auto cp2 = cproj<Q>(2);
  EXPECT_EQ(multiply(*cp2, nf(cp2, "x"), nf(cp2, "x")), nf(cp2, "x^2"));
  EXPECT_FALSE(nf(cp2, "x^2").is_zero());
  auto ext = exterior<Q>(1);
  EXPECT_TRUE(multiply(*ext, nf(ext, "x1"), nf(ext, "x1")).is_zero());
  auto rp2 = realize_presentation<Zp>(FieldSpec::prime(2), Presentation{{{"a", 1}}, {"a^3"}, 6});
  EXPECT_EQ(multiply(*rp2, nf(rp2, "a + a^2"), nf(rp2, "a")), nf(rp2, "a^2"));
}

TEST(NormalForm, Examples) {
  auto cp2 = cproj<Q>(2);
  EXPECT_TRUE(nf(cp2, "x^3").is_zero());
  EXPECT_EQ(nf(cp2, "2*x - x"), nf(cp2, "x"));
  EXPECT_EQ(nf(cp2, "1/2*x + 1/2*x"), nf(cp2, "x"));
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 1}, {"y", 1}}, {}, 6});
  EXPECT_TRUE(nf(A, "x*y + y*x").is_zero());
  EXPECT_EQ(nf(A, "y*x"), nf(A, "-x*y"));
  EXPECT_THROW(nf(A, "z"), AlgebraError);
  EXPECT_THROW(nf(A, "x +"), ParseError);
}

TEST(NormalForm, DegreeOverflowInTruncatedAlgebra) {
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 2}}, {}, 6});
  EXPECT_THROW(nf(A, "x^4"), TruncationError);
}

TEST(Properties, TruncatedPolynomialHasLPlusOneDegrees) {
  for (int l = 1; l <= 6; ++l) {
    auto A = cproj<Q>(l);
    int nonzero = 0;
    for (int d = 0; d <= A->max_degree(); ++d) {
      EXPECT_LE(A->dim(d), 1);
      nonzero += A->dim(d);
    }
    EXPECT_EQ(nonzero, l + 1);
  }
}

class RandomAlgebras : public ::testing::TestWithParam<int> {};

TEST_P(RandomAlgebras, Axioms) {
  for (FieldSpec field : {QQ(), FieldSpec::prime(5), FieldSpec::prime(2)}) {
    RandomInstanceSpec spec;
    spec.seed = static_cast<std::uint64_t>(GetParam());
    spec.field = field;
    spec.max_relations = 2;
    auto check = [&]<class S>(AlgebraPtr<S> A) {
      EXPECT_FALSE(check_graded_commutative(*A).has_value());
      EXPECT_FALSE(check_associative(*A, true).has_value());
      EXPECT_FALSE(check_unit(*A).has_value());
      EXPECT_FALSE(check_degrees(*A).has_value());
      if (field.characteristic != 2)
        for (const auto& g : A->generators())
          if (g.degree % 2 == 1) {
            const auto x = A->resolve_name(g.name);
            EXPECT_TRUE(multiply(*A, x, x).is_zero());
          }
      // Normal form is idempotent.
      std::mt19937_64 rng(spec.seed);
      for (int d = 0; d <= A->max_degree(); ++d) {
        const auto e = random_element(*A, d, rng);
        EXPECT_EQ(normal_form(*A, to_expression(*A, e)), e);
      }
      // Certificate soundness: products above the top vanish.
      for (int a = 0; a < A->total_dim(); ++a)
        for (int b = 0; b < A->total_dim(); ++b)
          if (A->degree_of(a) + A->degree_of(b) > A->finiteness().top_degree) {
            EXPECT_TRUE(A->basis_product(a, b).empty());
          }
    };
    if (field.characteristic == 0)
      check(random_algebra<Q>(spec));
    else
      check(random_algebra<Zp>(spec));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomAlgebras, ::testing::Range(1, 31));

TEST(Words, BasisElementsAreProductsOfTheirWords) {
  auto A = realize_presentation<Q>(QQ(), Presentation{{{"x", 2}, {"y", 3}}, {"x^3"}, 16});
  for (int f = 0; f < A->total_dim(); ++f)
    EXPECT_EQ(A->to_sparse(evaluate_word(*A, A->word(f))), (SparseVector<Q>{{f, Q(1)}}));
}
