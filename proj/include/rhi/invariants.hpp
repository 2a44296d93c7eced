#pragma once

/**
 * @file invariants.hpp
 * @brief Nilpotency formulas for invariants of formal maps, from induced cohomology maps.
 *
 * Every map argument is an induced map on cohomology, f*: H*(Y) → H*(X).
 * Results carry an exactness flag that is false as soon as any participating
 * algebra is only known up to a truncation degree.
 */

#include "rhi/ideal.hpp"
#include "rhi/tensor.hpp"

#include <string>
#include <vector>

namespace rhi {

template <ExactScalar S>
struct InvariantReport {
  std::string name;  // secat | cat | tc_n | tc_mw | hd | relsecat_lb
  int value = 0;
  bool exact = false;
  std::vector<std::string> warnings;
  NilResult<S> nil;
  AlgebraPtr<S> algebra;  // where the witness lives
  std::string formula;
};

/// Plain-data form of a report, as serialized.
struct ReportRecord {
  std::string name;
  int value = 0;
  bool exact = false;
  std::vector<std::string> warnings;
  std::vector<std::string> factors;
  int product_degree = 0;
  std::vector<std::string> product_coordinates;
  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

template <ExactScalar S>
ReportRecord to_record(const InvariantReport<S>& r) {
  ReportRecord out{r.name, r.value, r.exact, r.warnings, {}, 0, {}};
  for (const auto& f : r.nil.factors) out.factors.push_back(to_expression(*r.algebra, f));
  if (!r.nil.product.is_zero()) {
    out.product_degree = r.nil.product.degree();
    const Vector<S>& v = *r.nil.product.component(out.product_degree);
    for (Eigen::Index i = 0; i < v.size(); ++i) out.product_coordinates.push_back(to_string(v[i]));
  }
  return out;
}

/// Subspace of all positive-degree elements.
template <ExactScalar S>
GradedSubspace<S> positive_subspace(const AlgebraPtr<S>& A) {
  GradedSubspace<S> out = empty_subspace(A, A->max_degree());
  for (int d = 1; d <= A->max_degree(); ++d)
    for (int i = 0; i < A->dim(d); ++i) {
      Vector<S> e = Vector<S>::Zero(A->dim(d));
      e[i] = A->scalar(1);
      out.spans[static_cast<std::size_t>(d)].insert(e);
    }
  return out;
}

namespace detail {

template <ExactScalar S>
InvariantReport<S> report(std::string name, std::string formula, const Ideal<S>& J, bool inputs_exact,
                          std::vector<std::string> warnings = {}) {
  InvariantReport<S> r;
  r.name = std::move(name);
  r.formula = std::move(formula);
  r.nil = nilpotency(J);
  r.value = r.nil.index;
  r.exact = r.nil.exact && inputs_exact;
  r.algebra = J.parent;
  r.warnings = std::move(warnings);
  if (!r.exact)
    r.warnings.push_back("truncated input: value " + std::to_string(r.value) + " is only a lower bound");
  return r;
}

template <ExactScalar S>
std::string degree_list(const std::vector<int>& ds) {
  std::string s;
  for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? ", " : "") + std::to_string(ds[i]);
  return s;
}

template <ExactScalar S>
InvariantReport<S> kernel_image_nil(std::string name, std::string formula, const AlgebraMap<S>& phi,
                                    const AlgebraMap<S>& psi, bool warn_surjective) {
  if (!same_algebra(*phi.domain(), *psi.domain()))
    throw AlgebraError(AlgebraError::Kind::mismatch, name + ": the two maps must share their domain");
  std::vector<std::string> warnings;
  if (warn_surjective) {
    const auto bad = check_surjective(psi);
    if (!bad.empty())
      warnings.push_back("hypothesis: psi is not surjective (degrees " + degree_list<S>(bad) + ")");
  }
  const Ideal<S> K = ideal_from_subspace(kernel(psi));
  return report(std::move(name), std::move(formula), map_image_ideal(phi, K), phi.exact() && psi.exact(),
                std::move(warnings));
}

}  // namespace detail

/// nil(φ(ker ψ)) for maps φ, ψ out of a common algebra; warns when ψ is not onto.
template <ExactScalar S>
InvariantReport<S> secat_formal(const AlgebraMap<S>& phi, const AlgebraMap<S>& psi) {
  return detail::kernel_image_nil<S>("secat", "secat = nil(phi(ker psi))", phi, psi, true);
}

/// nil(f(H⁺)) for f: H → H'.
template <ExactScalar S>
InvariantReport<S> cat_formal(const AlgebraMap<S>& f) {
  const Ideal<S> plus = ideal_from_subspace(positive_subspace(f.domain()));
  return detail::report<S>("cat", "cat = nil(f(H+))", map_image_ideal(f, plus), f.exact());
}

/// nil(f^{⊗n}(ker μₙ)), μₙ taken on the domain of f.
template <ExactScalar S>
InvariantReport<S> tc_n_formal(const AlgebraMap<S>& f, int n) {
  if (n < 2) throw AlgebraError(AlgebraError::Kind::configuration, "tc_n needs n >= 2");
  const Ideal<S> K = ideal_from_subspace(kernel(mu_n(f.domain(), n)));
  const AlgebraMap<S> fn = tensor_map(f, n);
  return detail::report<S>("tc_n", "tc_" + std::to_string(n) + " = nil(f^(x" + std::to_string(n) + ")(ker mu_" +
                                       std::to_string(n) + "))",
                           map_image_ideal(fn, K), f.exact());
}

/// nil(⟨ker μ_X ∩ img(f⊗f)⟩), μ_X on the codomain of f.
template <ExactScalar S>
InvariantReport<S> tc_mw_formal(const AlgebraMap<S>& f) {
  const AlgebraMap<S> ff = tensor_map(f, 2);
  const GradedSubspace<S> V = subspace_intersection(kernel(mu_n(f.codomain(), 2)), image_subspace(ff));
  Ideal<S> J = ideal_from_subspace(V);
  return detail::report<S>("tc_mw", "tc_mw = nil(ker mu_X cap img(f(x)f))", J, f.exact());
}

/// nil(μ_X(f⊗g)(ker μ_Y)).
template <ExactScalar S>
InvariantReport<S> hd_formal(const AlgebraMap<S>& f, const AlgebraMap<S>& g) {
  if (!same_algebra(*f.domain(), *g.domain()) || !same_algebra(*f.codomain(), *g.codomain()))
    throw AlgebraError(AlgebraError::Kind::mismatch, "hd: the two maps must share domain and codomain");
  const Ideal<S> K = ideal_from_subspace(kernel(mu_n(f.domain(), 2)));
  const AlgebraMap<S> h = compose(mu_n(f.codomain(), 2), tensor_map_pair(f, g));
  return detail::report<S>("hd", "hd = nil(mu_X(f(x)g)(ker mu_Y))", map_image_ideal(h, K), f.exact() && g.exact());
}

/// nil(f(ker p)): a lower bound for the relative sectional category, exact under formality.
template <ExactScalar S>
InvariantReport<S> relsecat_lower_bound(const AlgebraMap<S>& f, const AlgebraMap<S>& p) {
  return detail::kernel_image_nil<S>("relsecat_lb", "relsecat >= nil(f(ker p))", f, p, false);
}

/// nil(ker q) on its own.
template <ExactScalar S>
NilResult<S> kernel_nilpotency(const AlgebraMap<S>& q) {
  return nilpotency(ideal_from_subspace(kernel(q)));
}

}  // namespace rhi
