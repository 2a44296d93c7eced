#pragma once

/**
 * @file ideal.hpp
 * @brief Homogeneous ideals, their powers, and the nilpotency index with witnesses.
 */

#include "rhi/morphism.hpp"

#include <vector>

namespace rhi {

/// Ideal A·generators, with its per-degree span known in degrees 0..span.limit().
template <ExactScalar S>
struct Ideal {
  AlgebraPtr<S> parent;
  std::vector<Element<S>> generators;
  GradedSubspace<S> span;

  /// True when the span is known in every degree where the parent can be nonzero.
  bool complete() const { return parent->exact() && span.limit() >= parent->max_degree(); }
  bool is_zero() const { return span.is_zero(); }
};

template <ExactScalar S>
struct NilResult {
  int index = 0;
  bool exact = false;
  /// Never certified by this engine; present so reports can carry the flag.
  bool infinite = false;
  /// index-many elements of the ideal whose left-to-right product is nonzero.
  std::vector<Element<S>> factors;
  Element<S> product;
  /// power_dims[k-1][d] = dim (I^k)_d for k = 1..index+1.
  std::vector<std::vector<int>> power_dims;
};

namespace detail {

template <ExactScalar S>
int homogeneous_degree(const Element<S>& g) {
  if (!g.is_homogeneous())
    throw AlgebraError(AlgebraError::Kind::shape, "ideal generators must be homogeneous");
  const int d = g.degree();
  if (d == 0) throw AlgebraError(AlgebraError::Kind::shape, "ideal generators must have positive degree");
  return d;
}

}  // namespace detail

/// Dense degree-t coordinates of a flat sparse vector.
template <ExactScalar S>
Vector<S> dense_in_degree(const GradedAlgebra<S>& A, const SparseVector<S>& v, int t) {
  Vector<S> out = Vector<S>::Zero(A.dim(t));
  for (const auto& [f, c] : v) out[A.index_of(f)] += c;
  return out;
}

/**
 * Ideal generated by homogeneous positive-degree elements. The span is
 * realized in degrees 0..limit (defaults to the parent's top or truncation).
 */
template <ExactScalar S>
Ideal<S> ideal_from_generators(const AlgebraPtr<S>& A, const std::vector<Element<S>>& gens, int limit = -1) {
  if (limit < 0) limit = A->max_degree();
  limit = std::min(limit, A->max_degree());
  Ideal<S> I{A, {}, empty_subspace(A, limit)};
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    const int d = detail::homogeneous_degree(g);
    I.generators.push_back(g);
    if (d > limit) continue;
    const SparseVector<S> gs = A->to_sparse(g);
    for (int b = 0; b < A->total_dim(); ++b) {
      const int t = A->degree_of(b) + d;
      if (t > limit) continue;
      auto& span = I.span.spans[static_cast<std::size_t>(t)];
      if (span.full()) continue;
      const SparseVector<S> p = multiply_sparse(*A, SparseVector<S>{{b, A->scalar(1)}}, gs);
      if (!p.empty()) span.insert(dense_in_degree(*A, p, t));
    }
  }
  return I;
}

/**
 * Ideal generated by a graded subspace, with a minimal generating subset of
 * its basis: vectors are taken in ascending degree and kept only when not
 * already in the ideal generated by the earlier ones.
 */
template <ExactScalar S>
Ideal<S> ideal_from_subspace(const GradedSubspace<S>& V) {
  const AlgebraPtr<S>& A = V.parent;
  const int limit = std::min(V.limit(), A->max_degree());
  Ideal<S> I{A, {}, empty_subspace(A, limit)};
  if (V.limit() >= 0 && !V.spans[0].empty())
    throw AlgebraError(AlgebraError::Kind::shape, "subspace has a degree-0 component; cannot generate a nilpotent ideal");
  for (int d = 1; d <= limit; ++d) {
    const auto& span = V.spans[static_cast<std::size_t>(d)];
    for (int i = 0; i < span.rank(); ++i) {
      const Vector<S>& v = span.row(i);
      if (I.span.spans[static_cast<std::size_t>(d)].contains(v)) continue;
      const Element<S> g = Element<S>::homogeneous(d, v);
      I.generators.push_back(g);
      const SparseVector<S> gs = A->to_sparse(g);
      for (int b = 0; b < A->total_dim(); ++b) {
        const int t = A->degree_of(b) + d;
        if (t > limit) continue;
        auto& target = I.span.spans[static_cast<std::size_t>(t)];
        if (target.full()) continue;
        const SparseVector<S> p = multiply_sparse(*A, SparseVector<S>{{b, A->scalar(1)}}, gs);
        if (!p.empty()) target.insert(dense_in_degree(*A, p, t));
      }
    }
  }
  return I;
}

/// I·J: generated by pairwise generator products; span from products of span bases.
template <ExactScalar S>
Ideal<S> ideal_product(const Ideal<S>& I, const Ideal<S>& J) {
  if (!same_algebra(*I.parent, *J.parent))
    throw AlgebraError(AlgebraError::Kind::mismatch, "ideal_product: ideals live in different algebras");
  const AlgebraPtr<S>& A = I.parent;
  const int limit = std::min(I.span.limit(), J.span.limit());
  Ideal<S> out{A, {}, empty_subspace(A, limit)};
  for (const auto& g : I.generators)
    for (const auto& h : J.generators) {
      if (g.degree() + h.degree() > A->known_through()) continue;
      Element<S> gh = multiply(*A, g, h);
      if (!gh.is_zero()) out.generators.push_back(std::move(gh));
    }
  const auto bi = I.span.basis();
  const auto bj = J.span.basis();
  for (const auto& u : bi)
    for (const auto& v : bj) {
      const int t = u.degree() + v.degree();
      if (t > limit) continue;
      auto& span = out.span.spans[static_cast<std::size_t>(t)];
      if (span.full()) continue;
      const Element<S> uv = multiply(*A, u, v);
      if (const Vector<S>* c = uv.component(t)) span.insert(*c);
    }
  return out;
}

/// Ideal in the codomain generated by the images of I's generators.
template <ExactScalar S>
Ideal<S> map_image_ideal(const AlgebraMap<S>& f, const Ideal<S>& I) {
  if (!same_algebra(*f.domain(), *I.parent))
    throw AlgebraError(AlgebraError::Kind::mismatch, "map_image_ideal: ideal does not live in the map's domain");
  std::vector<Element<S>> images;
  for (const auto& g : I.generators) {
    if (g.degree() > f.window()) continue;
    images.push_back(f.apply(g));
  }
  // A complete ideal has all its generators; otherwise higher generators may be missing.
  const int limit = I.complete() ? f.codomain()->max_degree() : std::min(I.span.limit(), f.codomain()->max_degree());
  return ideal_from_generators(f.codomain(), images, limit);
}

template <ExactScalar S>
GradedSubspace<S> subspace_intersection(const GradedSubspace<S>& a, const GradedSubspace<S>& b) {
  if (!same_algebra(*a.parent, *b.parent))
    throw AlgebraError(AlgebraError::Kind::mismatch, "subspace_intersection: subspaces live in different algebras");
  GradedSubspace<S> out{a.parent, {}};
  const int limit = std::min(a.limit(), b.limit());
  for (int d = 0; d <= limit; ++d)
    out.spans.push_back(intersect<S>(a.spans[static_cast<std::size_t>(d)], b.spans[static_cast<std::size_t>(d)]));
  return out;
}

/**
 * Nilpotency index by power iteration.
 *
 * Each power P_k is held as a basis of actual products: P_1 from b·g and
 * P_{k+1} from p·g, with p in the product basis of P_k and g a generator.
 * This spans P_k·I because P_k is itself an ideal. Every stored vector is
 * literally the left-to-right product of its recorded factors, which gives
 * the witness without any back-substitution.
 */
template <ExactScalar S>
NilResult<S> nilpotency(const Ideal<S>& I) {
  const GradedAlgebra<S>& A = *I.parent;
  const int limit = I.span.limit();
  NilResult<S> res;
  res.exact = I.complete();

  struct Product {
    SparseVector<S> v;
    int degree;
    int prev;  // index into the previous level, or -1 at level 1
    int base;  // flat basis multiplier at level 1
    int gen;
  };
  std::vector<SparseVector<S>> gens;
  std::vector<int> gdeg;
  for (const auto& g : I.generators) {
    if (g.degree() > limit) continue;
    gens.push_back(A.to_sparse(g));
    gdeg.push_back(g.degree());
  }

  auto fresh_spans = [&] {
    std::vector<Echelon<S>> s;
    for (int d = 0; d <= limit; ++d) s.emplace_back(A.dim(d));
    return s;
  };
  auto dims_of = [&](const std::vector<Echelon<S>>& s) {
    std::vector<int> dims;
    for (const auto& e : s) dims.push_back(e.rank());
    return dims;
  };

  std::vector<std::vector<Product>> levels(1);
  auto spans = fresh_spans();
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (int b = 0; b < A.total_dim(); ++b) {
      const int t = A.degree_of(b) + gdeg[gi];
      if (t > limit || spans[static_cast<std::size_t>(t)].full()) continue;
      SparseVector<S> p = multiply_sparse(A, SparseVector<S>{{b, A.scalar(1)}}, gens[gi]);
      if (p.empty() || !spans[static_cast<std::size_t>(t)].insert(dense_in_degree(A, p, t))) continue;
      levels[0].push_back({std::move(p), t, -1, b, static_cast<int>(gi)});
    }
  res.power_dims.push_back(dims_of(spans));

  while (!levels.back().empty()) {
    const auto& prev = levels.back();
    std::vector<Product> next;
    spans = fresh_spans();
    for (std::size_t pi = 0; pi < prev.size(); ++pi)
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const int t = prev[pi].degree + gdeg[gi];
        if (t > limit || spans[static_cast<std::size_t>(t)].full()) continue;
        SparseVector<S> q = multiply_sparse(A, prev[pi].v, gens[gi]);
        if (q.empty() || !spans[static_cast<std::size_t>(t)].insert(dense_in_degree(A, q, t))) continue;
        next.push_back({std::move(q), t, static_cast<int>(pi), -1, static_cast<int>(gi)});
      }
    res.power_dims.push_back(dims_of(spans));
    levels.push_back(std::move(next));
  }
  levels.pop_back();
  res.index = static_cast<int>(levels.size());
  if (res.index == 0) {
    res.product = A.unit();
    return res;
  }

  // Witness: prefer chains whose level-1 multiplier is a scalar, then the lowest product degree.
  const auto& last = levels.back();
  auto score = [&](std::size_t i) {
    int idx = static_cast<int>(i);
    for (std::size_t k = levels.size() - 1; k > 0; --k) idx = levels[k][static_cast<std::size_t>(idx)].prev;
    return std::pair(A.degree_of(levels[0][static_cast<std::size_t>(idx)].base), last[i].degree);
  };
  std::size_t pick = 0;
  auto best = score(0);
  for (std::size_t i = 1; i < last.size(); ++i)
    if (auto s = score(i); s < best) {
      best = s;
      pick = i;
    }
  res.product = A.from_sparse(last[pick].v);
  std::vector<Element<S>> rev;
  int idx = static_cast<int>(pick);
  for (std::size_t k = levels.size(); k-- > 0;) {
    const Product& p = levels[k][static_cast<std::size_t>(idx)];
    const Element<S> g = I.generators.empty() ? Element<S>{} : A.from_sparse(gens[static_cast<std::size_t>(p.gen)]);
    if (k == 0)
      rev.push_back(A.from_sparse(multiply_sparse(A, SparseVector<S>{{p.base, A.scalar(1)}}, gens[static_cast<std::size_t>(p.gen)])));
    else
      rev.push_back(g);
    idx = p.prev;
  }
  res.factors.assign(rev.rbegin(), rev.rend());
  return res;
}

}  // namespace rhi
