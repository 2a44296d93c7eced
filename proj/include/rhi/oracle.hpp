#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force nilpotency and seeded random instances for property tests.
 *
 * brute_nilpotency works only through multiply: it expands k-fold products
 * of spanning vectors directly and shares nothing with the power iteration
 * in ideal.hpp.
 */

#include "rhi/ideal.hpp"
#include "rhi/tensor.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rhi {

namespace detail {

template <ExactScalar S>
bool nonzero_product_exists(const GradedAlgebra<S>& A, const std::vector<Element<S>>& vs, const std::vector<int>& deg,
                            std::size_t start, int remaining, const Element<S>& prefix, int prefix_degree) {
  if (remaining == 0) return true;
  for (std::size_t j = start; j < vs.size(); ++j) {
    // Products of the remaining factors have degree at least remaining * deg[j] (vs sorted by degree).
    if (A.exact() && prefix_degree + remaining * deg[j] > A.max_degree()) break;
    const Element<S> q = multiply(A, prefix, vs[j]);
    if (q.is_zero()) continue;
    if (nonzero_product_exists(A, vs, deg, j, remaining - 1, q, prefix_degree + deg[j])) return true;
  }
  return false;
}

}  // namespace detail

/**
 * Nilpotency of the span of a set of homogeneous positive-degree elements:
 * the largest k such that some k-fold product of the elements is nonzero.
 * Graded commutativity lets products run over non-decreasing index tuples.
 * Returns nullopt if nonzero (cap+1)-fold products exist.
 */
template <ExactScalar S>
std::optional<int> brute_nilpotency_of_set(const GradedAlgebra<S>& A, std::vector<Element<S>> elems, int cap) {
  if (!A.exact()) throw AlgebraError(AlgebraError::Kind::unsupported, "brute_nilpotency needs an exact algebra");
  std::erase_if(elems, [](const Element<S>& e) { return e.is_zero(); });
  std::stable_sort(elems.begin(), elems.end(),
                   [](const Element<S>& a, const Element<S>& b) { return a.degree() < b.degree(); });
  std::vector<int> deg;
  for (const auto& e : elems) {
    if (e.degree() == 0) throw AlgebraError(AlgebraError::Kind::shape, "brute_nilpotency needs positive-degree elements");
    deg.push_back(e.degree());
  }
  for (int k = 1; k <= cap + 1; ++k)
    if (!detail::nonzero_product_exists(A, elems, deg, 0, k, A.unit(), 0)) return k - 1;
  return std::nullopt;
}

template <ExactScalar S>
std::optional<int> brute_nilpotency(const Ideal<S>& I, int cap) {
  return brute_nilpotency_of_set(*I.parent, I.span.basis(), cap);
}

struct RandomInstanceSpec {
  std::uint64_t seed = 0;
  int min_generators = 1;
  int max_generators = 3;
  int min_degree = 1;
  int max_degree = 6;
  int min_relations = 0;
  int max_relations = 1;
  int truncation = 18;
  FieldSpec field = FieldSpec::rationals();
};

namespace detail {

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::string monomial_expr(const std::vector<Generator>& gens, const Monomial& m) {
  std::string s;
  for (std::size_t g = 0; g < m.size(); ++g) {
    if (m[g] == 0) continue;
    if (!s.empty()) s += "*";
    s += gens[g].name;
    if (m[g] > 1) s += "^" + std::to_string(m[g]);
  }
  return s.empty() ? "1" : s;
}

/// Random homogeneous polynomial of degree d with small integer coefficients, or "" if none exists.
inline std::string random_polynomial(std::mt19937_64& rng, const std::vector<Generator>& gens, bool exterior_odd, int d) {
  std::vector<Monomial> monos;
  Monomial cur(gens.size(), 0);
  enumerate_monomials(gens, exterior_odd, d, 0, cur, monos);
  std::string s;
  for (const auto& m : monos) {
    const int c = uniform(rng, -2, 2);
    if (c == 0) continue;
    s += (c < 0 ? " - " : (s.empty() ? "" : " + "));
    if (std::abs(c) != 1) s += std::to_string(std::abs(c)) + "*";
    s += monomial_expr(gens, m);
  }
  return s;
}

}  // namespace detail

/**
 * Seeded random presentation whose realization is exact within the requested
 * truncation. Every generator that is not automatically exterior gets a
 * power relation; extra random homogeneous relations are added on top.
 */
template <ExactScalar S>
AlgebraPtr<S> random_algebra(const RandomInstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const bool exterior_odd = spec.field.characteristic != 2;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Presentation p;
    p.truncation_degree = spec.truncation;
    const int k = detail::uniform(rng, spec.min_generators, spec.max_generators);
    int max_deg = 0;
    for (int i = 0; i < k; ++i) {
      p.generators.push_back({std::string(1, static_cast<char>('a' + i)),
                              detail::uniform(rng, spec.min_degree, spec.max_degree)});
      max_deg = std::max(max_deg, p.generators.back().degree);
    }
    int top_bound = 0;
    for (const auto& g : p.generators) {
      if (exterior_odd && g.degree % 2 == 1) {
        top_bound += g.degree;
        continue;
      }
      const int e = detail::uniform(rng, 2, 4);
      top_bound += (e - 1) * g.degree;
      p.relations.push_back(g.name + "^" + std::to_string(e));
    }
    if (top_bound + max_deg > spec.truncation) continue;
    const int extra = detail::uniform(rng, spec.min_relations, spec.max_relations);
    for (int r = 0; r < extra; ++r) {
      const int d = detail::uniform(rng, 2, std::max(2, top_bound));
      std::string poly = detail::random_polynomial(rng, p.generators, exterior_odd, d);
      if (!poly.empty()) p.relations.push_back(poly);
    }
    auto A = realize_presentation<S>(spec.field, p);
    if (A->exact()) return A;
  }
  throw AlgebraError(AlgebraError::Kind::configuration, "random_algebra: no exact instance found for seed " +
                                                             std::to_string(spec.seed));
}

/// Random homogeneous element of degree d with small coefficients (possibly zero).
template <ExactScalar S>
Element<S> random_element(const GradedAlgebra<S>& A, int d, std::mt19937_64& rng) {
  if (d > A.max_degree() || A.dim(d) == 0) return {};
  Vector<S> v = Vector<S>::Zero(A.dim(d));
  for (int i = 0; i < A.dim(d); ++i) v[i] = A.scalar(detail::uniform(rng, -2, 2));
  return Element<S>::homogeneous(d, v);
}

template <ExactScalar S>
struct RandomMapResult {
  std::optional<AlgebraMap<S>> map;
  int rejections = 0;
};

/**
 * Samples generator images from the codomain span degree by degree and
 * rejects samples whose relation images are nonzero. Later attempts zero out
 * images with growing probability, which keeps acceptance reasonable when
 * the codomain has many relations.
 */
template <ExactScalar S>
RandomMapResult<S> random_map(const AlgebraPtr<S>& A, const AlgebraPtr<S>& B, std::uint64_t seed, int attempts = 64) {
  std::mt19937_64 rng(seed);
  RandomMapResult<S> out;
  for (int t = 0; t < attempts; ++t) {
    std::map<std::string, Element<S>> images;
    const int zero_pct = std::min(90, 10 + 80 * t / std::max(1, attempts - 1));
    for (const auto& g : A->generators()) {
      Element<S> img;
      if (detail::uniform(rng, 1, 100) > zero_pct && g.degree <= B->known_through())
        img = random_element(*B, g.degree, rng);
      images[g.name] = img;
    }
    try {
      out.map = build_map<S>(A, B, images);
      return out;
    } catch (const AlgebraError&) {
      ++out.rejections;
    }
  }
  return out;
}

/**
 * Random injective map out of A: into A itself or A ⊗ C for a small random C,
 * g ↦ c^{|g|} g[1] + (optional random term from the C side), keeping only
 * candidates that are valid and degree-wise injective. The grading-scaled
 * inclusion is the fallback and is always valid.
 */
template <ExactScalar S>
AlgebraMap<S> random_injective_map(const AlgebraPtr<S>& A, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  AlgebraPtr<S> B = A;
  bool tensored = detail::uniform(rng, 0, 1) == 1;
  if (tensored) {
    RandomInstanceSpec cs;
    cs.seed = seed + 1;
    cs.max_generators = 1;
    cs.max_degree = 4;
    cs.max_relations = 0;
    cs.truncation = 12;
    cs.field = A->field();
    B = tensor_product<S>(A, random_algebra<S>(cs));
  }
  int c = detail::uniform(rng, 1, 3) * (detail::uniform(rng, 0, 1) ? 1 : -1);
  if (A->field().characteristic != 0 && A->scalar(c) == A->scalar(0)) c = 1;
  auto scaled = [&](const Generator& g) {
    S k = A->scalar(1);
    for (int i = 0; i < g.degree; ++i) k *= A->scalar(c);
    Element<S> base = tensored ? B->resolve_name(g.name + "[1]") : B->resolve_name(g.name);
    return k * base;
  };
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::map<std::string, Element<S>> images;
    for (const auto& g : A->generators()) {
      Element<S> img = scaled(g);
      if (tensored && detail::uniform(rng, 0, 1)) {
        // Perturb by an element living on the second factor.
        Element<S> extra = random_element(*B, g.degree, rng);
        Element<S> filtered;
        for (int f = 0; f < B->total_dim(); ++f) {
          if (B->degree_of(f) != g.degree) continue;
          const int first = B->factor_flat(f, 0);
          if (B->factor(0)->degree_of(first) != 0) continue;
          if (const Vector<S>* v = extra.component(g.degree)) {
            Vector<S> e = Vector<S>::Zero(B->dim(g.degree));
            e[B->index_of(f)] = (*v)[B->index_of(f)];
            filtered += Element<S>::homogeneous(g.degree, e);
          }
        }
        img += filtered;
      }
      images[g.name] = img;
    }
    try {
      AlgebraMap<S> f = build_map<S>(A, B, images);
      if (check_injective(f).empty()) return f;
    } catch (const AlgebraError&) {
    }
  }
  std::map<std::string, Element<S>> images;
  for (const auto& g : A->generators()) images[g.name] = scaled(g);
  return build_map<S>(A, B, images);
}

/// Ideal generated by 1..max_gens random nonzero homogeneous elements of positive degree.
template <ExactScalar S>
Ideal<S> random_ideal(const AlgebraPtr<S>& A, std::uint64_t seed, int max_gens = 3) {
  std::mt19937_64 rng(seed ^ 0x51ed2705ULL);
  std::vector<int> degrees;
  for (int d = 1; d <= A->max_degree(); ++d)
    if (A->dim(d) > 0) degrees.push_back(d);
  std::vector<Element<S>> gens;
  const int k = detail::uniform(rng, 1, max_gens);
  for (int i = 0; i < k && !degrees.empty(); ++i) {
    const int d = degrees[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<int>(degrees.size()) - 1))];
    Element<S> e;
    for (int t = 0; t < 8 && e.is_zero(); ++t) e = random_element(*A, d, rng);
    if (!e.is_zero()) gens.push_back(e);
  }
  return ideal_from_generators(A, gens);
}

}  // namespace rhi
