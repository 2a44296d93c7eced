#pragma once

/**
 * @file morphism.hpp
 * @brief Degree-preserving unital algebra maps, graded subspaces, kernels and images.
 */

#include "rhi/algebra.hpp"

#include <map>
#include <string>
#include <vector>

namespace rhi {

/// Per-degree echelonized span inside a realized algebra, known in degrees 0..spans.size()-1.
template <ExactScalar S>
struct GradedSubspace {
  AlgebraPtr<S> parent;
  std::vector<Echelon<S>> spans;

  int limit() const { return static_cast<int>(spans.size()) - 1; }
  int dim(int d) const { return d >= 0 && d <= limit() ? spans[static_cast<std::size_t>(d)].rank() : 0; }
  bool is_zero() const {
    for (const auto& s : spans)
      if (!s.empty()) return false;
    return true;
  }
  bool contains(const Element<S>& e) const {
    for (const auto& [d, v] : e.components())
      if (d > limit() || !spans[static_cast<std::size_t>(d)].contains(v)) return false;
    return true;
  }
  /// Basis vectors as homogeneous elements, ascending by degree.
  std::vector<Element<S>> basis() const {
    std::vector<Element<S>> out;
    for (std::size_t d = 0; d < spans.size(); ++d)
      for (int i = 0; i < spans[d].rank(); ++i) out.push_back(Element<S>::homogeneous(static_cast<int>(d), spans[d].row(i)));
    return out;
  }
};

template <ExactScalar S>
GradedSubspace<S> empty_subspace(const AlgebraPtr<S>& A, int limit) {
  GradedSubspace<S> out{A, {}};
  for (int d = 0; d <= limit; ++d) out.spans.emplace_back(A->dim(d));
  return out;
}

/// True when A and B are the same realized algebra: same object, or identical bases and structure constants.
template <ExactScalar S>
bool same_algebra(const GradedAlgebra<S>& A, const GradedAlgebra<S>& B) {
  if (&A == &B) return true;
  if (!(A.field() == B.field()) || A.exact() != B.exact() || A.max_degree() != B.max_degree() ||
      A.total_dim() != B.total_dim())
    return false;
  for (int f = 0; f < A.total_dim(); ++f)
    if (A.degree_of(f) != B.degree_of(f) || A.word(f) != B.word(f)) return false;
  for (int a = 0; a < A.total_dim(); ++a)
    for (int b = 0; b < A.total_dim(); ++b) {
      if (A.degree_of(a) + A.degree_of(b) > A.max_degree()) continue;
      if (!sparse_equal(A.basis_product(a, b), B.basis_product(a, b))) return false;
    }
  return true;
}

/**
 * Unital degree-preserving algebra map, stored as degree-wise matrices
 * (codomain_d × domain_d) for degrees 0..window().
 */
template <ExactScalar S>
class AlgebraMap {
 public:
  AlgebraMap(AlgebraPtr<S> domain, AlgebraPtr<S> codomain, std::vector<Matrix<S>> matrices,
             std::vector<std::pair<std::string, Element<S>>> images = {})
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrices_(std::move(matrices)),
        images_(std::move(images)) {}

  const AlgebraPtr<S>& domain() const { return domain_; }
  const AlgebraPtr<S>& codomain() const { return codomain_; }
  /// Highest degree with a defined matrix.
  int window() const { return static_cast<int>(matrices_.size()) - 1; }
  const Matrix<S>& matrix(int d) const { return matrices_[static_cast<std::size_t>(d)]; }
  const std::vector<Matrix<S>>& matrices() const { return matrices_; }
  /// Named images the map was built from (generators or table basis elements).
  const std::vector<std::pair<std::string, Element<S>>>& images() const { return images_; }
  bool exact() const { return domain_->exact() && codomain_->exact(); }

  Element<S> apply(const Element<S>& e) const {
    Element<S> out;
    for (const auto& [d, v] : e.components()) {
      if (d > window()) throw TruncationError(d, window());
      if (d > codomain_->max_degree()) continue;  // exact codomain vanishes here
      out.add(d, Vector<S>(matrix(d) * v));
    }
    return out;
  }

  SparseVector<S> apply_basis(int flat) const {
    const int d = domain_->degree_of(flat);
    if (d > window()) throw TruncationError(d, window());
    SparseVector<S> out;
    if (d > codomain_->max_degree()) return out;
    const auto col = matrix(d).col(domain_->index_of(flat));
    for (Eigen::Index r = 0; r < col.size(); ++r)
      if (!is_zero(col[r])) out.emplace_back(codomain_->flat(d, static_cast<int>(r)), col[r]);
    return out;
  }

 private:
  AlgebraPtr<S> domain_;
  AlgebraPtr<S> codomain_;
  std::vector<Matrix<S>> matrices_;
  std::vector<std::pair<std::string, Element<S>>> images_;
};

/// Degrees where both the domain is realized and the codomain is known.
template <ExactScalar S>
int common_window(const GradedAlgebra<S>& domain, const GradedAlgebra<S>& codomain) {
  return std::min(domain.max_degree(), codomain.known_through());
}

/// Matrix layout for degrees 0..window, all zero.
template <ExactScalar S>
std::vector<Matrix<S>> zero_matrices(const GradedAlgebra<S>& domain, const GradedAlgebra<S>& codomain, int window) {
  std::vector<Matrix<S>> m;
  for (int d = 0; d <= window; ++d) m.push_back(Matrix<S>::Zero(codomain.dim(d), domain.dim(d)));
  return m;
}

/// First failure of unitality or multiplicativity on basis pairs within the window.
template <ExactScalar S>
std::optional<std::string> check_multiplicative(const AlgebraMap<S>& f) {
  const auto& A = *f.domain();
  const auto& B = *f.codomain();
  if (!(f.apply(A.unit()) == B.unit())) return std::string("map does not send 1 to 1");
  for (int a = 0; a < A.total_dim(); ++a)
    for (int b = 0; b < A.total_dim(); ++b) {
      if (A.degree_of(a) + A.degree_of(b) > f.window()) continue;
      const SparseVector<S> lhs = B.to_sparse(f.apply(A.from_sparse(A.basis_product(a, b))));
      const SparseVector<S> rhs = multiply_sparse(B, f.apply_basis(a), f.apply_basis(b));
      if (!sparse_equal(lhs, rhs))
        return "map is not multiplicative on (" + word_string(A.word(a)) + ", " + word_string(A.word(b)) + ")";
    }
  return std::nullopt;
}

namespace detail {

template <ExactScalar S>
void place_image(std::vector<Matrix<S>>& m, const GradedAlgebra<S>& A, int flat, const Element<S>& image) {
  const int d = A.degree_of(flat);
  if (const Vector<S>* v = image.component(d)) m[static_cast<std::size_t>(d)].col(A.index_of(flat)) = *v;
}

template <ExactScalar S>
void require_degree(const std::string& name, int degree, const Element<S>& image) {
  for (const auto& [d, v] : image.components())
    if (d != degree)
      throw AlgebraError(AlgebraError::Kind::shape, "image of '" + name + "' has degree " + std::to_string(d) +
                                                        " but '" + name + "' has degree " + std::to_string(degree));
}

}  // namespace detail

/**
 * Builds and validates a map from generator images (presentation domains) or
 * basis images (table domains). Relations must map to zero; table-mode maps
 * are checked for unitality and multiplicativity on every basis pair.
 */
template <ExactScalar S>
AlgebraMap<S> build_map(const AlgebraPtr<S>& domain, const AlgebraPtr<S>& codomain,
                        const std::map<std::string, Element<S>>& images) {
  using Kind = AlgebraError::Kind;
  const auto& A = *domain;
  const auto& B = *codomain;
  if (!(A.field() == B.field()))
    throw AlgebraError(Kind::mismatch, "domain field " + A.field().name() + " differs from codomain field " + B.field().name());
  const int window = common_window(A, B);
  auto m = zero_matrices(A, B, window);
  std::vector<std::pair<std::string, Element<S>>> named;

  if (A.mode() == GradedAlgebra<S>::Mode::presentation) {
    for (const auto& [name, img] : images) {
      bool known = false;
      for (const auto& g : A.generators()) known = known || g.name == name;
      if (!known) throw AlgebraError(Kind::unknown_name, "map image given for unknown generator '" + name + "'");
    }
    std::map<std::string, Element<S>> gen_image;
    for (const auto& g : A.generators()) {
      auto it = images.find(g.name);
      if (it == images.end()) throw AlgebraError(Kind::configuration, "no image given for generator '" + g.name + "'");
      detail::require_degree(g.name, g.degree, it->second);
      gen_image[g.name] = it->second;
      named.emplace_back(g.name, it->second);
    }
    auto image_of_poly = [&](const std::map<Monomial, S>& poly) {
      Element<S> acc;
      for (const auto& [mono, c] : poly) {
        Element<S> t = B.unit();
        for (std::size_t g = 0; g < mono.size(); ++g)
          for (int k = 0; k < mono[g]; ++k) t = multiply(B, t, gen_image.at(A.generators()[g].name));
        acc += c * t;
      }
      return acc;
    };
    for (const auto& rel : A.relations()) {
      if (rel.degree > B.known_through()) continue;  // unobservable inside the window
      const Element<S> img = image_of_poly(rel.poly);
      if (!img.is_zero())
        throw AlgebraError(Kind::axiom, "relation '" + rel.text + "' maps to " + to_expression(B, img) + ", not 0");
    }
    for (int f = 0; f < A.total_dim(); ++f) {
      if (A.degree_of(f) > window) continue;
      detail::place_image(m, A, f, image_of_poly({{A.monomial(f), A.scalar(1)}}));
    }
    return AlgebraMap<S>(domain, codomain, std::move(m), std::move(named));
  }

  if (A.mode() == GradedAlgebra<S>::Mode::table) {
    for (const auto& [name, img] : images) {
      const auto& names = A.table_names();
      if (std::find(names.begin(), names.end(), name) == names.end())
        throw AlgebraError(Kind::unknown_name, "map image given for unknown basis element '" + name + "'");
    }
    for (int f = 0; f < A.total_dim(); ++f) {
      const std::string& name = A.table_names()[static_cast<std::size_t>(f)];
      auto it = images.find(name);
      Element<S> img;
      if (it != images.end())
        img = it->second;
      else if (f == A.flat(0, A.unit_index()))
        img = B.unit();
      else
        throw AlgebraError(Kind::configuration, "no image given for basis element '" + name + "'");
      detail::require_degree(name, A.degree_of(f), img);
      named.emplace_back(name, img);
      if (A.degree_of(f) <= window) detail::place_image(m, A, f, img);
    }
    AlgebraMap<S> out(domain, codomain, std::move(m), std::move(named));
    if (auto err = check_multiplicative(out)) throw AlgebraError(Kind::axiom, *err);
    return out;
  }
  throw AlgebraError(Kind::unsupported, "maps out of tensor algebras are built with tensor_map or mu_n");
}

/// Parses image expressions in the codomain and builds the map.
template <ExactScalar S>
AlgebraMap<S> build_map(const AlgebraPtr<S>& domain, const AlgebraPtr<S>& codomain,
                        const std::map<std::string, std::string>& images) {
  std::map<std::string, Element<S>> parsed;
  for (const auto& [name, text] : images) parsed[name] = normal_form(*codomain, text);
  return build_map(domain, codomain, parsed);
}

template <ExactScalar S>
AlgebraMap<S> identity_map(const AlgebraPtr<S>& A) {
  std::vector<Matrix<S>> m;
  for (int d = 0; d <= A->max_degree(); ++d) {
    Matrix<S> id = Matrix<S>::Zero(A->dim(d), A->dim(d));
    for (int i = 0; i < A->dim(d); ++i) id(i, i) = A->scalar(1);
    m.push_back(std::move(id));
  }
  std::vector<std::pair<std::string, Element<S>>> named;
  if (A->mode() == GradedAlgebra<S>::Mode::presentation)
    for (const auto& g : A->generators()) named.emplace_back(g.name, A->resolve_name(g.name));
  return AlgebraMap<S>(A, A, std::move(m), std::move(named));
}

/// The composite g∘f.
template <ExactScalar S>
AlgebraMap<S> compose(const AlgebraMap<S>& g, const AlgebraMap<S>& f) {
  if (!same_algebra(*f.codomain(), *g.domain()))
    throw AlgebraError(AlgebraError::Kind::mismatch, "compose: codomain of the first map is not the domain of the second");
  const int window = std::min(f.window(), g.window());
  std::vector<Matrix<S>> m;
  for (int d = 0; d <= window; ++d) {
    if (d > f.codomain()->max_degree())
      m.push_back(Matrix<S>::Zero(g.codomain()->dim(d), f.domain()->dim(d)));
    else
      m.push_back(g.matrix(d) * f.matrix(d));
  }
  std::vector<std::pair<std::string, Element<S>>> named;
  for (const auto& [name, img] : f.images()) named.emplace_back(name, g.apply(img));
  return AlgebraMap<S>(f.domain(), g.codomain(), std::move(m), std::move(named));
}

template <ExactScalar S>
GradedSubspace<S> kernel(const AlgebraMap<S>& f) {
  GradedSubspace<S> out{f.domain(), {}};
  for (int d = 0; d <= f.window(); ++d) {
    Echelon<S> span(f.domain()->dim(d));
    const Matrix<S>& m = f.matrix(d);
    if (m.rows() == 0) {
      for (int i = 0; i < m.cols(); ++i) {
        Vector<S> e = Vector<S>::Zero(m.cols());
        e[i] = f.domain()->scalar(1);
        span.insert(e);
      }
    } else {
      const Matrix<S> ns = nullspace<S>(m);
      for (Eigen::Index k = 0; k < ns.cols(); ++k) span.insert(ns.col(k));
    }
    out.spans.push_back(std::move(span));
  }
  return out;
}

template <ExactScalar S>
GradedSubspace<S> image_subspace(const AlgebraMap<S>& f) {
  const int limit = std::min(f.window(), f.codomain()->max_degree());
  GradedSubspace<S> out{f.codomain(), {}};
  for (int d = 0; d <= limit; ++d) {
    Echelon<S> span(f.codomain()->dim(d));
    const Matrix<S>& m = f.matrix(d);
    for (Eigen::Index c = 0; c < m.cols(); ++c) span.insert(m.col(c));
    out.spans.push_back(std::move(span));
  }
  return out;
}

/// Map to the ground field killing positive degrees; requires a one-dimensional degree-0 component.
template <ExactScalar S>
AlgebraMap<S> augmentation(const AlgebraPtr<S>& A) {
  if (A->dim(0) != 1)
    throw AlgebraError(AlgebraError::Kind::unsupported,
                       "augmentation needs a connected algebra; degree 0 has dimension " + std::to_string(A->dim(0)));
  auto k = ground_field<S>(A->field());
  auto m = zero_matrices(*A, *k, A->max_degree());
  m[0](0, 0) = A->scalar(1);
  std::vector<std::pair<std::string, Element<S>>> named;
  if (A->mode() == GradedAlgebra<S>::Mode::presentation)
    for (const auto& g : A->generators()) named.emplace_back(g.name, Element<S>{});
  return AlgebraMap<S>(A, k, std::move(m), std::move(named));
}

/// Degrees (where both sides are known) in which f fails to be onto.
template <ExactScalar S>
std::vector<int> check_surjective(const AlgebraMap<S>& f) {
  std::vector<int> bad;
  const int limit = std::min(f.codomain()->max_degree(), f.domain()->known_through());
  for (int d = 0; d <= limit; ++d) {
    const int target = f.codomain()->dim(d);
    const int r = d <= f.window() ? rank<S>(f.matrix(d)) : 0;
    if (r < target) bad.push_back(d);
  }
  return bad;
}

/// Degrees in which f fails to be injective.
template <ExactScalar S>
std::vector<int> check_injective(const AlgebraMap<S>& f) {
  std::vector<int> bad;
  for (int d = 0; d <= f.window(); ++d)
    if (rank<S>(f.matrix(d)) < f.domain()->dim(d)) bad.push_back(d);
  return bad;
}

}  // namespace rhi
