#pragma once

#include "rhi/invariants.hpp"

#include <ostream>
#include <string>

namespace rhi {

/// Readable gtest output for elements: degree-wise coordinate lists.
template <ExactScalar S>
void PrintTo(const Element<S>& e, std::ostream* os) {
  *os << "{";
  for (const auto& [d, v] : e.components()) {
    *os << " deg " << d << ":";
    for (Eigen::Index i = 0; i < v.size(); ++i) *os << " " << to_string(v[i]);
  }
  *os << " }";
}

}  // namespace rhi

namespace rhi::testing {

using Q = Rational;

inline FieldSpec QQ() { return FieldSpec::rationals(); }

/// H*(S^l) over the given field.
template <ExactScalar S = Q>
AlgebraPtr<S> sphere(int l, FieldSpec f = QQ()) {
  return realize_presentation<S>(f, Presentation{{{"x", l}}, {"x^2"}, 2 * l});
}

/// H*(CP^l) = Q[x]/(x^{l+1}), |x| = 2.
template <ExactScalar S = Q>
AlgebraPtr<S> cproj(int l, FieldSpec f = QQ()) {
  return realize_presentation<S>(f, Presentation{{{"x", 2}}, {"x^" + std::to_string(l + 1)}, 2 * l + 2});
}

/// Exterior algebra on k odd generators of degrees 3, 5, 7, ...
template <ExactScalar S = Q>
AlgebraPtr<S> exterior(int k, FieldSpec f = QQ()) {
  Presentation p;
  int sum = 0;
  for (int i = 0; i < k; ++i) {
    p.generators.push_back({"x" + std::to_string(i + 1), 3 + 2 * i});
    sum += 3 + 2 * i;
  }
  p.truncation_degree = sum + 1 + 2 * k;
  return realize_presentation<S>(f, p);
}

/// Map sending every generator to 0.
template <ExactScalar S>
AlgebraMap<S> zero_positive(const AlgebraPtr<S>& A, const AlgebraPtr<S>& B) {
  std::map<std::string, Element<S>> images;
  for (const auto& g : A->generators()) images[g.name] = Element<S>{};
  return build_map<S>(A, B, images);
}

template <ExactScalar S>
Element<S> nf(const AlgebraPtr<S>& A, const std::string& e) {
  return normal_form(*A, e);
}

template <ExactScalar S>
std::vector<int> dims(const GradedAlgebra<S>& A) {
  std::vector<int> out;
  for (int d = 0; d <= A.max_degree(); ++d) out.push_back(A.dim(d));
  return out;
}

}  // namespace rhi::testing
