#pragma once

/**
 * @file algebra.hpp
 * @brief Finite-type graded-commutative algebras over ℚ or 𝔽ₚ.
 *
 * An algebra is realized degree by degree up to a truncation degree. Bases are
 * explicit, elements are per-degree coordinate vectors, and multiplication is
 * given by structure constants on basis pairs. Three realizations share one
 * type: quotients of free graded-commutative algebras by homogeneous
 * relations, explicit multiplication tables, and Koszul-signed tensor products
 * (built in tensor.hpp).
 */

#include "rhi/expression.hpp"
#include "rhi/koszul.hpp"
#include "rhi/linalg.hpp"
#include "rhi/scalar.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rhi {

class AlgebraError : public std::runtime_error {
 public:
  enum class Kind { configuration, shape, axiom, truncation, unknown_name, unsupported, mismatch, too_large };
  AlgebraError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Raised when a product or expression leaves the realized degree window of a truncated algebra.
class TruncationError : public AlgebraError {
 public:
  TruncationError(int degree, int truncation)
      : AlgebraError(Kind::truncation, "degree " + std::to_string(degree) + " exceeds truncation degree " +
                                           std::to_string(truncation)),
        degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

struct Generator {
  std::string name;
  int degree = 0;
};

struct Presentation {
  std::vector<Generator> generators;
  std::vector<std::string> relations;
  int truncation_degree = 0;
};

struct TableBasis {
  std::string name;
  int degree = 0;
};

struct TableProduct {
  std::string left;
  std::string right;
  std::vector<std::pair<std::string, std::string>> value;  // (coefficient literal, basis name)
};

struct MultiplicationTable {
  std::vector<TableBasis> basis;
  std::string unit;
  std::vector<TableProduct> products;
};

/// Exponent vector over the generators, in declaration order.
using Monomial = std::vector<int>;

/// A basis element written as the ordered product of named factors v^e.
using Word = std::vector<std::pair<std::string, int>>;

inline std::string word_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += w[i].first;
    if (w[i].second != 1) s += "^" + std::to_string(w[i].second);
  }
  return s;
}

struct Finiteness {
  bool exact = false;
  int top_degree = 0;   // highest nonzero degree; meaningful when exact
  int truncation = 0;   // realization window
};

/// Sparse coordinates over the flat (all-degree) basis of an algebra.
template <class S>
using SparseVector = std::vector<std::pair<int, S>>;

// ---------------------------------------------------------------------------
// Element

/// Exact element: one coordinate vector per nonzero degree component.
template <ExactScalar S>
class Element {
 public:
  Element() = default;

  static Element homogeneous(int degree, Vector<S> coords) {
    Element e;
    e.add(degree, coords);
    return e;
  }

  const std::map<int, Vector<S>>& components() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }
  bool is_homogeneous() const { return parts_.size() <= 1; }

  /// Degree of a nonzero homogeneous element.
  int degree() const {
    if (parts_.size() != 1) throw AlgebraError(AlgebraError::Kind::shape, "element is not homogeneous and nonzero");
    return parts_.begin()->first;
  }

  const Vector<S>* component(int d) const {
    auto it = parts_.find(d);
    return it == parts_.end() ? nullptr : &it->second;
  }

  void add(int d, const Vector<S>& v) {
    auto it = parts_.find(d);
    if (it == parts_.end()) {
      if (!rhi::is_zero<S>(v)) parts_.emplace(d, v);
      return;
    }
    it->second += v;
    if (rhi::is_zero<S>(it->second)) parts_.erase(it);
  }

  Element& operator+=(const Element& o) {
    for (const auto& [d, v] : o.parts_) add(d, v);
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (const auto& [d, v] : o.parts_) add(d, Vector<S>(-v));
    return *this;
  }
  Element& operator*=(const S& c) {
    if (rhi::is_zero(c)) {
      parts_.clear();
      return *this;
    }
    for (auto& [d, v] : parts_) v *= c;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= S(-1); }
  friend Element operator*(const S& c, Element a) { return a *= c; }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.parts_.size() != b.parts_.size()) return false;
    for (auto ia = a.parts_.begin(), ib = b.parts_.begin(); ia != a.parts_.end(); ++ia, ++ib)
      if (ia->first != ib->first || !equal<S>(ia->second, ib->second)) return false;
    return true;
  }

 private:
  std::map<int, Vector<S>> parts_;
};

template <ExactScalar S>
class GradedAlgebra;

namespace detail {

template <ExactScalar S>
struct RelationData {
  std::string text;
  std::map<Monomial, S> poly;
  int degree;
};

/// Per-degree reduction data of a presentation: monomials modulo relation multiples.
template <ExactScalar S>
struct DegreeReduction {
  std::vector<Monomial> monomials;       // graded-lex descending
  std::map<Monomial, int> index;
  Echelon<S> relations{0};
  std::vector<int> column_to_basis;      // -1 for pivot (eliminated) monomials
};

template <ExactScalar S>
struct AlgebraData {
  enum class Mode { presentation, table, tensor };
  Mode mode = Mode::presentation;
  FieldSpec field;
  int max_degree = 0;  // highest realized degree (top degree when exact)
  bool exact = false;
  int window = 0;      // realization window reported in the finiteness certificate

  std::vector<int> offset;  // offset[d] = flat index of the first degree-d basis element; size max_degree + 2
  std::vector<int> flat_degree;
  std::vector<Word> words;

  // Structure constants cache, indexed [fa * N + fb]; empty when computed on demand.
  std::vector<SparseVector<S>> table;

  // presentation
  std::vector<Generator> generators;
  std::vector<RelationData<S>> relations;
  std::vector<Monomial> flat_monomial;
  std::vector<DegreeReduction<S>> reductions;
  bool exterior_odd = true;

  // table
  std::vector<std::string> names;
  int unit_flat = 0;

  // tensor
  std::vector<std::shared_ptr<const GradedAlgebra<S>>> factors;
  std::vector<int> tuples;        // flat tensor index * n + j -> flat index in factor j
  std::vector<int> strides;
  std::vector<int> code_to_flat;  // mixed-radix code of a factor tuple -> flat tensor index
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Free graded-commutative monomial arithmetic

/// Product of two monomials in the free graded-commutative algebra: (sign, monomial), or nullopt if zero.
template <ExactScalar S>
std::optional<std::pair<S, Monomial>> monomial_product(const std::vector<Generator>& gens, bool exterior_odd,
                                                       const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    m[i] = a[i] + b[i];
    if (exterior_odd && gens[i].degree % 2 == 1 && m[i] > 1) return std::nullopt;
  }
  // Moving each b-block left past the a-blocks of later generators.
  long long parity = 0;
  int odd_a_after = 0;
  for (std::size_t j = a.size(); j-- > 0;) {
    if (gens[j].degree % 2 == 1 && b[j] % 2 == 1) parity += odd_a_after;
    if (gens[j].degree % 2 == 1 && a[j] % 2 == 1) ++odd_a_after;
  }
  return std::make_pair(parity % 2 ? S(-1) : S(1), std::move(m));
}

template <ExactScalar S>
class GradedAlgebra {
 public:
  using Mode = typename detail::AlgebraData<S>::Mode;

  explicit GradedAlgebra(detail::AlgebraData<S> data) : d_(std::move(data)) {}

  Mode mode() const { return d_.mode; }
  const FieldSpec& field() const { return d_.field; }
  bool exact() const { return d_.exact; }
  int max_degree() const { return d_.max_degree; }
  int top_degree() const { return d_.max_degree; }
  Finiteness finiteness() const { return {d_.exact, d_.max_degree, d_.window}; }
  /// Highest degree whose component is known: unbounded for exact algebras.
  int known_through() const { return d_.exact ? INT_MAX : d_.max_degree; }

  int dim(int d) const {
    if (d < 0) return 0;
    if (d > d_.max_degree) {
      if (d_.exact) return 0;
      throw TruncationError(d, d_.max_degree);
    }
    return d_.offset[static_cast<std::size_t>(d) + 1] - d_.offset[static_cast<std::size_t>(d)];
  }
  int total_dim() const { return d_.offset.back(); }

  int flat(int d, int i) const { return d_.offset[static_cast<std::size_t>(d)] + i; }
  int degree_of(int flat) const { return d_.flat_degree[static_cast<std::size_t>(flat)]; }
  int index_of(int flat) const { return flat - d_.offset[static_cast<std::size_t>(degree_of(flat))]; }

  const Word& word(int flat) const { return d_.words[static_cast<std::size_t>(flat)]; }
  std::string basis_name(int d, int i) const { return word_string(word(flat(d, i))); }

  S scalar(long long n) const { return ScalarOps<S>::from_int(d_.field, n); }
  S parse_scalar(std::string_view text) const { return ScalarOps<S>::parse(d_.field, text); }

  Element<S> unit() const { return basis_element(0, unit_index()); }
  int unit_index() const { return d_.mode == Mode::table ? index_of(d_.unit_flat) : 0; }

  Element<S> basis_element(int d, int i) const {
    Vector<S> v = Vector<S>::Zero(dim(d));
    v[i] = scalar(1);
    return Element<S>::homogeneous(d, std::move(v));
  }

  Element<S> from_sparse(const SparseVector<S>& sv) const {
    Element<S> e;
    std::map<int, Vector<S>> parts;
    for (const auto& [f, c] : sv) {
      const int d = degree_of(f);
      auto it = parts.find(d);
      if (it == parts.end()) it = parts.emplace(d, Vector<S>::Zero(dim(d))).first;
      it->second[index_of(f)] += c;
    }
    for (auto& [d, v] : parts) e.add(d, v);
    return e;
  }

  SparseVector<S> to_sparse(const Element<S>& e) const {
    SparseVector<S> out;
    for (const auto& [d, v] : e.components())
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) out.emplace_back(flat(d, static_cast<int>(i)), v[i]);
    return out;
  }

  /**
   * Structure constants of the product of flat basis elements fa·fb, written
   * into out as flat-indexed terms. The caller guarantees the product degree
   * is realized or the algebra is exact (then anything above the top is 0).
   */
  void basis_product(int fa, int fb, SparseVector<S>& out) const {
    out.clear();
    const int t = degree_of(fa) + degree_of(fb);
    if (t > d_.max_degree) {
      if (d_.exact) return;
      throw TruncationError(t, d_.max_degree);
    }
    if (!d_.table.empty()) {
      out = d_.table[static_cast<std::size_t>(fa) * static_cast<std::size_t>(total_dim()) +
                     static_cast<std::size_t>(fb)];
      return;
    }
    compute_product(fa, fb, out);
  }

  SparseVector<S> basis_product(int fa, int fb) const {
    SparseVector<S> out;
    basis_product(fa, fb, out);
    return out;
  }

  /// Resolves a generator or basis name; names of tensor algebras carry a factor suffix "[i]".
  Element<S> resolve_name(std::string_view name) const;

  // presentation accessors
  const std::vector<Generator>& generators() const { return d_.generators; }
  const std::vector<detail::RelationData<S>>& relations() const { return d_.relations; }
  const Monomial& monomial(int flat) const { return d_.flat_monomial[static_cast<std::size_t>(flat)]; }
  /// Reduces monomial coordinates in degree d to basis coordinates (presentation mode only).
  Vector<S> reduce_monomial_coords(int d, Vector<S> coords) const;
  /// Normal form of a single monomial.
  Element<S> monomial_class(const Monomial& m) const;

  // table accessors
  const std::vector<std::string>& table_names() const { return d_.names; }

  // tensor accessors
  std::size_t factor_count() const { return d_.factors.size(); }
  const std::shared_ptr<const GradedAlgebra<S>>& factor(std::size_t j) const { return d_.factors[j]; }
  int factor_flat(int flat, std::size_t j) const {
    return d_.tuples[static_cast<std::size_t>(flat) * d_.factors.size() + j];
  }
  /// Flat tensor index of a tuple of factor flat indices.
  int tuple_flat(std::span<const int> tuple) const {
    std::size_t code = 0;
    for (std::size_t j = 0; j < tuple.size(); ++j) code += static_cast<std::size_t>(tuple[j]) * d_.strides[j];
    return d_.code_to_flat[code];
  }

  const detail::AlgebraData<S>& data() const { return d_; }

 private:
  void compute_product(int fa, int fb, SparseVector<S>& out) const;
  void compute_tensor_product(int fa, int fb, SparseVector<S>& out) const;

  detail::AlgebraData<S> d_;
};

template <ExactScalar S>
using AlgebraPtr = std::shared_ptr<const GradedAlgebra<S>>;

// ---------------------------------------------------------------------------
// Multiplication of elements

template <ExactScalar S>
Element<S> multiply(const GradedAlgebra<S>& A, const Element<S>& a, const Element<S>& b) {
  Element<S> out;
  SparseVector<S> prod;
  for (const auto& [da, va] : a.components()) {
    for (const auto& [db, vb] : b.components()) {
      const int t = da + db;
      if (t > A.max_degree()) {
        if (A.exact()) continue;
        throw TruncationError(t, A.max_degree());
      }
      Vector<S> acc = Vector<S>::Zero(A.dim(t));
      const int base = A.flat(t, 0);
      for (Eigen::Index i = 0; i < va.size(); ++i) {
        if (is_zero(va[i])) continue;
        const int fa = A.flat(da, static_cast<int>(i));
        for (Eigen::Index j = 0; j < vb.size(); ++j) {
          if (is_zero(vb[j])) continue;
          A.basis_product(fa, A.flat(db, static_cast<int>(j)), prod);
          if (prod.empty()) continue;
          const S c = va[i] * vb[j];
          for (const auto& [f, k] : prod) acc[f - base] += c * k;
        }
      }
      out.add(t, acc);
    }
  }
  return out;
}

/// Product of flat-indexed sparse vectors.
template <ExactScalar S>
SparseVector<S> multiply_sparse(const GradedAlgebra<S>& A, const SparseVector<S>& a, const SparseVector<S>& b) {
  SparseVector<S> prod;
  if (a.size() == 1 && b.size() == 1) {
    A.basis_product(a[0].first, b[0].first, prod);
    const S c = a[0].second * b[0].second;
    for (auto& [f, k] : prod) k *= c;
    std::erase_if(prod, [](const auto& t) { return is_zero(t.second); });
    return prod;
  }
  std::map<int, S> acc;
  for (const auto& [fa, ca] : a)
    for (const auto& [fb, cb] : b) {
      A.basis_product(fa, fb, prod);
      for (const auto& [f, k] : prod) {
        auto [it, inserted] = acc.try_emplace(f, ca * cb * k);
        if (!inserted) it->second += ca * cb * k;
      }
    }
  SparseVector<S> out;
  for (auto& [f, c] : acc)
    if (!is_zero(c)) out.emplace_back(f, std::move(c));
  return out;
}

template <ExactScalar S>
bool sparse_equal(const SparseVector<S>& a, const SparseVector<S>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !(a[i].second == b[i].second)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Expressions evaluated in an algebra

template <ExactScalar S>
struct AlgebraRing {
  const GradedAlgebra<S>& A;
  Element<S> one() const { return A.unit(); }
  Element<S> literal(const std::string& text) const { return A.parse_scalar(text) * A.unit(); }
  Element<S> name(const std::string& text) const { return A.resolve_name(text); }
  Element<S> add(const Element<S>& a, const Element<S>& b) const { return a + b; }
  Element<S> sub(const Element<S>& a, const Element<S>& b) const { return a - b; }
  Element<S> mul(const Element<S>& a, const Element<S>& b) const { return multiply(A, a, b); }
  Element<S> neg(const Element<S>& a) const { return -a; }
};

/// Parses and evaluates an expression in A, returning its normal form.
template <ExactScalar S>
Element<S> normal_form(const GradedAlgebra<S>& A, std::string_view expression) {
  return evaluate(parse_expression(expression), AlgebraRing<S>{A});
}

/// Evaluates a word (ordered product of named factors) in A.
template <ExactScalar S>
Element<S> evaluate_word(const GradedAlgebra<S>& A, const Word& w) {
  Element<S> acc = A.unit();
  for (const auto& [name, e] : w) {
    const Element<S> g = A.resolve_name(name);
    for (int k = 0; k < e; ++k) acc = multiply(A, acc, g);
  }
  return acc;
}

/// Renders an element as an expression string that normal_form parses back to the same element.
template <ExactScalar S>
std::string to_expression(const GradedAlgebra<S>& A, const Element<S>& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [d, v] : e.components()) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (is_zero(v[i])) continue;
      std::string c = to_string(v[i]);
      bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      const Word& w = A.word(A.flat(d, static_cast<int>(i)));
      std::string term;
      if (w.empty())
        term = c;
      else if (c == "1")
        term = word_string(w);
      else
        term = c + "*" + word_string(w);
      if (first)
        out += negative ? "-" + term : term;
      else
        out += (negative ? " - " : " + ") + term;
      first = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Name resolution and on-demand products

template <ExactScalar S>
Element<S> GradedAlgebra<S>::resolve_name(std::string_view name) const {
  switch (d_.mode) {
    case Mode::presentation:
      for (std::size_t g = 0; g < d_.generators.size(); ++g)
        if (d_.generators[g].name == name) {
          Monomial m(d_.generators.size(), 0);
          m[g] = 1;
          return monomial_class(m);
        }
      break;
    case Mode::table:
      for (std::size_t f = 0; f < d_.names.size(); ++f)
        if (d_.names[f] == name) return basis_element(degree_of(static_cast<int>(f)), index_of(static_cast<int>(f)));
      break;
    case Mode::tensor: {
      if (name.empty() || name.back() != ']') break;
      const auto open = name.rfind('[');
      if (open == std::string_view::npos) break;
      const std::size_t slot = std::stoul(std::string(name.substr(open + 1, name.size() - open - 2)));
      if (slot < 1 || slot > d_.factors.size()) break;
      const GradedAlgebra<S>& F = *d_.factors[slot - 1];
      const SparseVector<S> inner = F.to_sparse(F.resolve_name(name.substr(0, open)));
      SparseVector<S> out;
      std::vector<int> tuple(d_.factors.size());
      for (const auto& [ff, c] : inner) {
        for (std::size_t j = 0; j < tuple.size(); ++j)
          tuple[j] = d_.factors[j]->flat(0, d_.factors[j]->unit_index());
        tuple[slot - 1] = ff;
        out.emplace_back(tuple_flat(tuple), c);
      }
      return from_sparse(out);
    }
  }
  throw AlgebraError(AlgebraError::Kind::unknown_name, "unknown generator '" + std::string(name) + "'");
}

template <ExactScalar S>
Vector<S> GradedAlgebra<S>::reduce_monomial_coords(int d, Vector<S> coords) const {
  const auto& red = d_.reductions[static_cast<std::size_t>(d)];
  red.relations.reduce(coords);
  Vector<S> out = Vector<S>::Zero(dim(d));
  for (std::size_t c = 0; c < red.column_to_basis.size(); ++c)
    if (red.column_to_basis[c] >= 0) out[red.column_to_basis[c]] = coords[static_cast<Eigen::Index>(c)];
  return out;
}

template <ExactScalar S>
Element<S> GradedAlgebra<S>::monomial_class(const Monomial& m) const {
  int d = 0;
  for (std::size_t g = 0; g < m.size(); ++g) d += m[g] * d_.generators[g].degree;
  if (d > d_.max_degree) {
    if (d_.exact) return {};
    throw TruncationError(d, d_.max_degree);
  }
  const auto& red = d_.reductions[static_cast<std::size_t>(d)];
  auto it = red.index.find(m);
  if (it == red.index.end()) return {};  // an odd generator squared
  Vector<S> coords = Vector<S>::Zero(static_cast<Eigen::Index>(red.monomials.size()));
  coords[it->second] = scalar(1);
  return Element<S>::homogeneous(d, reduce_monomial_coords(d, std::move(coords)));
}

template <ExactScalar S>
void GradedAlgebra<S>::compute_product(int fa, int fb, SparseVector<S>& out) const {
  if (d_.mode == Mode::tensor) {
    compute_tensor_product(fa, fb, out);
    return;
  }
  if (d_.mode != Mode::presentation) throw std::logic_error("table algebras always cache products");
  auto prod = monomial_product<S>(d_.generators, d_.exterior_odd, monomial(fa), monomial(fb));
  if (!prod) return;
  const Element<S> cls = monomial_class(prod->second);
  for (const auto& [f, c] : to_sparse(cls)) {
    S k = c * prod->first;
    if (!is_zero(k)) out.emplace_back(f, k);
  }
}

template <ExactScalar S>
void GradedAlgebra<S>::compute_tensor_product(int fa, int fb, SparseVector<S>& out) const {
  const std::size_t n = d_.factors.size();
  // Scratch reused across calls; this is the hot path of the axiom checks.
  thread_local std::vector<int> left_deg, right_deg;
  thread_local std::vector<SparseVector<S>> parts;
  thread_local std::vector<std::size_t> pick;
  left_deg.resize(n);
  right_deg.resize(n);
  if (parts.size() < n) parts.resize(n);
  pick.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& F = *d_.factors[j];
    const int a = factor_flat(fa, j), b = factor_flat(fb, j);
    left_deg[j] = F.degree_of(a);
    right_deg[j] = F.degree_of(b);
    F.basis_product(a, b, parts[j]);
    if (parts[j].empty()) return;
  }
  const S sign = koszul_sign<S>(left_deg, right_deg);
  // Expand the tensor product of the factor products.
  while (true) {
    std::size_t code = 0;
    S c = sign;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& [f, k] = parts[j][pick[j]];
      code += static_cast<std::size_t>(f) * d_.strides[j];
      c *= k;
    }
    if (!is_zero(c)) out.emplace_back(d_.code_to_flat[code], c);
    std::size_t j = n;
    while (j-- > 0) {
      if (++pick[j] < parts[j].size()) break;
      pick[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
}

// ---------------------------------------------------------------------------
// Realization from a presentation

namespace detail {

template <ExactScalar S>
struct FreeRing {
  using Poly = std::map<Monomial, S>;
  const FieldSpec& field;
  const std::vector<Generator>& gens;
  bool exterior_odd;

  Poly one() const { return {{Monomial(gens.size(), 0), ScalarOps<S>::from_int(field, 1)}}; }
  Poly literal(const std::string& text) const {
    S c = ScalarOps<S>::parse(field, text);
    if (is_zero(c)) return {};
    return {{Monomial(gens.size(), 0), c}};
  }
  Poly name(const std::string& text) const {
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (gens[g].name == text) {
        Monomial m(gens.size(), 0);
        m[g] = 1;
        return {{m, ScalarOps<S>::from_int(field, 1)}};
      }
    throw AlgebraError(AlgebraError::Kind::unknown_name, "unknown generator '" + text + "'");
  }
  static void accumulate(Poly& p, const Monomial& m, const S& c) {
    auto [it, inserted] = p.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) p.erase(it);
    } else if (is_zero(c)) {
      p.erase(it);
    }
  }
  Poly add(Poly a, const Poly& b) const {
    for (const auto& [m, c] : b) accumulate(a, m, c);
    return a;
  }
  Poly sub(Poly a, const Poly& b) const {
    for (const auto& [m, c] : b) accumulate(a, m, -c);
    return a;
  }
  Poly neg(Poly a) const {
    for (auto& [m, c] : a) c = -c;
    return a;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    Poly out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b)
        if (auto p = monomial_product<S>(gens, exterior_odd, ma, mb)) accumulate(out, p->second, ca * cb * p->first);
    return out;
  }
};

inline int monomial_degree(const std::vector<Generator>& gens, const Monomial& m) {
  int d = 0;
  for (std::size_t g = 0; g < m.size(); ++g) d += m[g] * gens[g].degree;
  return d;
}

/// Monomials of degree d in graded-lex descending order (first generator most significant).
inline void enumerate_monomials(const std::vector<Generator>& gens, bool exterior_odd, int d, std::size_t g,
                                Monomial& cur, std::vector<Monomial>& out) {
  if (g == gens.size()) {
    if (d == 0) out.push_back(cur);
    return;
  }
  int cap = d / gens[g].degree;
  if (exterior_odd && gens[g].degree % 2 == 1) cap = std::min(cap, 1);
  for (int e = cap; e >= 0; --e) {
    cur[g] = e;
    enumerate_monomials(gens, exterior_odd, d - e * gens[g].degree, g + 1, cur, out);
  }
  cur[g] = 0;
}

constexpr std::size_t kMaxMonomialsPerDegree = 20000;
constexpr int kMaxCachedProducts = 1024;  // algebras with more basis elements compute products on demand

template <ExactScalar S>
void cache_products(AlgebraData<S>& d, const GradedAlgebra<S>& partial) {
  const int n = d.offset.back();
  if (n > kMaxCachedProducts) return;
  std::vector<SparseVector<S>> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (d.flat_degree[static_cast<std::size_t>(a)] + d.flat_degree[static_cast<std::size_t>(b)] <= d.max_degree)
        partial.basis_product(a, b, table[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                                          static_cast<std::size_t>(b)]);
  d.table = std::move(table);
}

}  // namespace detail

/**
 * Realizes the quotient of the free graded-commutative algebra on the
 * generators by the ideal generated by the relations, degree by degree up to
 * the truncation degree.
 */
template <ExactScalar S>
AlgebraPtr<S> realize_presentation(const FieldSpec& field, const Presentation& pres) {
  using Kind = AlgebraError::Kind;
  if (!ScalarOps<S>::matches(field)) throw AlgebraError(Kind::mismatch, "scalar type does not match field " + field.name());
  std::set<std::string> seen;
  int max_gen = 0;
  for (const auto& g : pres.generators) {
    if (!is_identifier(g.name) || g.name.find('[') != std::string::npos)
      throw AlgebraError(Kind::configuration, "generator name '" + g.name + "' is not an identifier");
    if (!seen.insert(g.name).second) throw AlgebraError(Kind::configuration, "duplicate generator '" + g.name + "'");
    if (g.degree < 1)
      throw AlgebraError(Kind::configuration,
                         "generator '" + g.name + "' has degree " + std::to_string(g.degree) + "; degrees must be >= 1");
    max_gen = std::max(max_gen, g.degree);
  }
  const int D = pres.truncation_degree;
  if (D < 1) throw AlgebraError(Kind::configuration, "truncation_degree must be positive");
  if (D < max_gen)
    throw AlgebraError(Kind::configuration, "truncation_degree " + std::to_string(D) +
                                                " is below the maximum generator degree " + std::to_string(max_gen));

  detail::AlgebraData<S> d;
  d.mode = detail::AlgebraData<S>::Mode::presentation;
  d.field = field;
  d.generators = pres.generators;
  d.exterior_odd = field.characteristic != 2;
  d.window = D;

  detail::FreeRing<S> ring{field, d.generators, d.exterior_odd};
  for (const auto& text : pres.relations) {
    auto poly = evaluate(parse_expression(text), ring);
    if (poly.empty()) continue;
    const int deg = detail::monomial_degree(d.generators, poly.begin()->first);
    for (const auto& [m, c] : poly)
      if (detail::monomial_degree(d.generators, m) != deg)
        throw AlgebraError(Kind::shape, "relation '" + text + "' is not homogeneous");
    d.relations.push_back({text, std::move(poly), deg});
  }

  // Degree-wise quotient by relation multiples.
  std::vector<int> dims;
  std::vector<std::vector<Monomial>> by_degree(static_cast<std::size_t>(D) + 1);
  for (int deg = 0; deg <= D; ++deg) {
    Monomial cur(d.generators.size(), 0);
    detail::enumerate_monomials(d.generators, d.exterior_odd, deg, 0, cur, by_degree[static_cast<std::size_t>(deg)]);
    if (by_degree[static_cast<std::size_t>(deg)].size() > detail::kMaxMonomialsPerDegree)
      throw AlgebraError(Kind::too_large, "presentation has too many monomials in degree " + std::to_string(deg));
  }
  for (int deg = 0; deg <= D; ++deg) {
    detail::DegreeReduction<S> red;
    red.monomials = by_degree[static_cast<std::size_t>(deg)];
    for (std::size_t i = 0; i < red.monomials.size(); ++i) red.index.emplace(red.monomials[i], static_cast<int>(i));
    const auto cols = static_cast<int>(red.monomials.size());
    red.relations = Echelon<S>(cols);
    for (const auto& rel : d.relations) {
      if (rel.degree > deg) continue;
      for (const auto& m : by_degree[static_cast<std::size_t>(deg - rel.degree)]) {
        Vector<S> row = Vector<S>::Zero(cols);
        bool any = false;
        for (const auto& [rm, rc] : rel.poly)
          if (auto p = monomial_product<S>(d.generators, d.exterior_odd, m, rm)) {
            row[red.index.at(p->second)] += rc * p->first;
            any = true;
          }
        if (any) red.relations.insert(row);
      }
    }
    red.column_to_basis.assign(static_cast<std::size_t>(cols), -1);
    int k = 0;
    for (int c = 0; c < cols; ++c)
      if (red.relations.pivot_row(c) < 0) red.column_to_basis[static_cast<std::size_t>(c)] = k++;
    dims.push_back(k);
    d.reductions.push_back(std::move(red));
  }

  // Finiteness certificate: a zero band of width max_gen at T+1..T+max_gen inside the window.
  d.exact = false;
  d.max_degree = D;
  if (max_gen == 0) {
    d.exact = true;
    d.max_degree = 0;
  } else {
    int last_nonzero = 0;
    for (int deg = 0; deg <= D; ++deg) {
      if (dims[static_cast<std::size_t>(deg)] > 0) {
        last_nonzero = deg;
        continue;
      }
      if (deg - last_nonzero >= max_gen) {
        d.exact = true;
        d.max_degree = last_nonzero;
        break;
      }
    }
  }
  d.reductions.resize(static_cast<std::size_t>(d.max_degree) + 1);

  d.offset.assign(1, 0);
  for (int deg = 0; deg <= d.max_degree; ++deg) {
    const auto& red = d.reductions[static_cast<std::size_t>(deg)];
    for (std::size_t c = 0; c < red.monomials.size(); ++c) {
      if (red.column_to_basis[c] < 0) continue;
      const Monomial& m = red.monomials[c];
      d.flat_monomial.push_back(m);
      d.flat_degree.push_back(deg);
      Word w;
      for (std::size_t g = 0; g < m.size(); ++g)
        if (m[g] > 0) w.emplace_back(d.generators[g].name, m[g]);
      d.words.push_back(std::move(w));
    }
    d.offset.push_back(static_cast<int>(d.flat_degree.size()));
  }

  GradedAlgebra<S> partial(d);
  detail::cache_products(d, partial);
  return std::make_shared<const GradedAlgebra<S>>(std::move(d));
}

// ---------------------------------------------------------------------------
// Axiom checks

/// First violation of the unit axioms, if any.
template <ExactScalar S>
std::optional<std::string> check_unit(const GradedAlgebra<S>& A) {
  const int u = A.flat(0, A.unit_index());
  for (int f = 0; f < A.total_dim(); ++f) {
    const SparseVector<S> expect{{f, A.scalar(1)}};
    if (!sparse_equal(A.basis_product(u, f), expect) || !sparse_equal(A.basis_product(f, u), expect))
      return "unit " + word_string(A.word(u)) + " does not act as identity on " + word_string(A.word(f));
  }
  return std::nullopt;
}

/// Degree additivity of all structure constants within the realized window.
template <ExactScalar S>
std::optional<std::string> check_degrees(const GradedAlgebra<S>& A) {
  SparseVector<S> prod;
  for (int a = 0; a < A.total_dim(); ++a)
    for (int b = 0; b < A.total_dim(); ++b) {
      if (A.degree_of(a) + A.degree_of(b) > A.max_degree()) continue;
      A.basis_product(a, b, prod);
      for (const auto& [f, c] : prod)
        if (A.degree_of(f) != A.degree_of(a) + A.degree_of(b))
          return "product " + word_string(A.word(a)) + "*" + word_string(A.word(b)) + " leaves degree " +
                 std::to_string(A.degree_of(a) + A.degree_of(b));
    }
  return std::nullopt;
}

/**
 * Graded commutativity b·a = (-1)^{|a||b|} a·b on every basis pair within the
 * realized window. Pairs whose degree sum exceeds the top of an exact algebra
 * vanish on both sides by degree additivity and are skipped.
 */
template <ExactScalar S>
std::optional<std::string> check_graded_commutative(const GradedAlgebra<S>& A) {
  SparseVector<S> ab, ba;
  for (int a = 0; a < A.total_dim(); ++a)
    for (int b = a + 1; b < A.total_dim(); ++b) {
      const int da = A.degree_of(a), db = A.degree_of(b);
      if (da + db > A.max_degree()) continue;
      A.basis_product(a, b, ab);
      A.basis_product(b, a, ba);
      if (da % 2 == 1 && db % 2 == 1)
        for (auto& [f, c] : ab) c = -c;
      if (!sparse_equal(ab, ba))
        return "graded commutativity fails for pair (" + word_string(A.word(a)) + ", " + word_string(A.word(b)) + ")";
    }
  return std::nullopt;
}

namespace detail {

/// For every flat basis element u, the elements v with u·v != 0.
template <ExactScalar S>
std::vector<std::vector<int>> nonzero_partners(const GradedAlgebra<S>& A) {
  std::vector<std::vector<int>> nz(static_cast<std::size_t>(A.total_dim()));
  SparseVector<S> prod;
  for (int a = 0; a < A.total_dim(); ++a)
    for (int b = 0; b < A.total_dim(); ++b) {
      if (A.degree_of(a) + A.degree_of(b) > A.max_degree()) continue;
      A.basis_product(a, b, prod);
      if (!prod.empty()) nz[static_cast<std::size_t>(a)].push_back(b);
    }
  return nz;
}

template <ExactScalar S>
std::string triple_name(const GradedAlgebra<S>& A, const std::string& a, int b, int c) {
  return "(" + a + ", " + word_string(A.word(b)) + ", " + word_string(A.word(c)) + ")";
}

/**
 * Checks (x·b)·c = x·(b·c) for the given left factors x and all basis b, c.
 * Triples where both x·b and b·c vanish are zero on both sides; the remaining
 * candidates c come from the nonzero-partner lists.
 */
template <ExactScalar S>
std::optional<std::string> check_left_associativity(const GradedAlgebra<S>& A,
                                                    const std::vector<std::pair<std::string, SparseVector<S>>>& lefts,
                                                    const std::vector<std::vector<int>>& nz) {
  const int n = A.total_dim();
  auto fits = [&](const SparseVector<S>& v, int extra) {
    if (v.empty()) return true;
    return A.degree_of(v.front().first) + extra <= A.known_through();
  };
  SparseVector<S> bc;
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  std::vector<int> cands;
  for (const auto& [xname, x] : lefts) {
    if (x.empty()) continue;
    const int dx = A.degree_of(x.front().first);
    for (int b = 0; b < n; ++b) {
      if (dx + A.degree_of(b) > A.known_through()) continue;
      const SparseVector<S> xb = multiply_sparse(A, x, SparseVector<S>{{b, A.scalar(1)}});
      cands.clear();
      auto add = [&](int c) {
        if (!mark[static_cast<std::size_t>(c)]) {
          mark[static_cast<std::size_t>(c)] = 1;
          cands.push_back(c);
        }
      };
      for (int c : nz[static_cast<std::size_t>(b)]) add(c);
      for (const auto& [u, k] : xb)
        for (int c : nz[static_cast<std::size_t>(u)]) add(c);
      for (int c : cands) {
        mark[static_cast<std::size_t>(c)] = 0;
        if (!fits(xb, A.degree_of(c)) || dx + A.degree_of(b) + A.degree_of(c) > A.known_through()) continue;
        A.basis_product(b, c, bc);
        const SparseVector<S> lhs = multiply_sparse(A, xb, SparseVector<S>{{c, A.scalar(1)}});
        const SparseVector<S> rhs = multiply_sparse(A, x, bc);
        if (!sparse_equal(lhs, rhs)) return "associativity fails for triple " + triple_name(A, xname, b, c);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * Associativity on every basis triple within the realized window.
 *
 * Small algebras are checked triple by triple. Larger ones are reduced to
 * triples (g, b, c) with g ranging over the generating names of the basis
 * words: once each basis element is verified to equal the left-to-right
 * product of its word, (g·b)·c = g·(b·c) for all generators g and basis b, c
 * implies associativity on all triples by induction on word length.
 */
template <ExactScalar S>
std::optional<std::string> check_associative(const GradedAlgebra<S>& A, bool force_all_triples = false) {
  const auto nz = detail::nonzero_partners(A);
  std::vector<std::pair<std::string, SparseVector<S>>> lefts;
  if (force_all_triples || A.total_dim() <= 128) {
    for (int a = 0; a < A.total_dim(); ++a) lefts.emplace_back(word_string(A.word(a)), SparseVector<S>{{a, A.scalar(1)}});
    return detail::check_left_associativity(A, lefts, nz);
  }
  std::vector<std::string> names;
  for (int f = 0; f < A.total_dim(); ++f) {
    for (const auto& [name, e] : A.word(f))
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    const SparseVector<S> expect{{f, A.scalar(1)}};
    if (!sparse_equal(A.to_sparse(evaluate_word(A, A.word(f))), expect))
      return "basis element " + word_string(A.word(f)) + " is not the product of its word";
  }
  for (const auto& name : names) lefts.emplace_back(name, A.to_sparse(A.resolve_name(name)));
  return detail::check_left_associativity(A, lefts, nz);
}

// ---------------------------------------------------------------------------
// Realization from a multiplication table

template <ExactScalar S>
AlgebraPtr<S> realize_table(const FieldSpec& field, const MultiplicationTable& table) {
  using Kind = AlgebraError::Kind;
  if (!ScalarOps<S>::matches(field)) throw AlgebraError(Kind::mismatch, "scalar type does not match field " + field.name());
  if (table.basis.empty()) throw AlgebraError(Kind::configuration, "table has an empty basis");

  std::map<std::string, int> listed;
  int top = 0;
  for (std::size_t i = 0; i < table.basis.size(); ++i) {
    const auto& b = table.basis[i];
    if (b.degree < 0) throw AlgebraError(Kind::configuration, "basis element '" + b.name + "' has negative degree");
    if (b.name != table.unit && (!is_identifier(b.name) || b.name.find('[') != std::string::npos))
      throw AlgebraError(Kind::configuration, "basis name '" + b.name + "' is not an identifier");
    if (!listed.emplace(b.name, static_cast<int>(i)).second)
      throw AlgebraError(Kind::configuration, "duplicate basis element '" + b.name + "'");
    top = std::max(top, b.degree);
  }
  auto unit_it = listed.find(table.unit);
  if (unit_it == listed.end()) throw AlgebraError(Kind::configuration, "unit '" + table.unit + "' is not a basis element");
  if (table.basis[static_cast<std::size_t>(unit_it->second)].degree != 0)
    throw AlgebraError(Kind::axiom, "unit '" + table.unit + "' must have degree 0");

  detail::AlgebraData<S> d;
  d.mode = detail::AlgebraData<S>::Mode::table;
  d.field = field;
  d.exact = true;
  d.max_degree = top;
  d.window = top;

  // Flat order: by degree, unit first in degree 0, then listing order.
  std::vector<int> order;
  order.push_back(unit_it->second);
  for (int deg = 0; deg <= top; ++deg)
    for (std::size_t i = 0; i < table.basis.size(); ++i)
      if (table.basis[i].degree == deg && static_cast<int>(i) != unit_it->second) order.push_back(static_cast<int>(i));
  std::map<std::string, int> flat_of;
  d.offset.assign(static_cast<std::size_t>(top) + 2, 0);
  for (std::size_t f = 0; f < order.size(); ++f) {
    const auto& b = table.basis[static_cast<std::size_t>(order[f])];
    flat_of[b.name] = static_cast<int>(f);
    d.names.push_back(b.name);
    d.flat_degree.push_back(b.degree);
    d.words.push_back(b.name == table.unit ? Word{} : Word{{b.name, 1}});
    d.offset[static_cast<std::size_t>(b.degree) + 1]++;
  }
  for (int deg = 0; deg <= top; ++deg)
    d.offset[static_cast<std::size_t>(deg) + 1] += d.offset[static_cast<std::size_t>(deg)];
  d.unit_flat = 0;

  const int n = static_cast<int>(order.size());
  d.table.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
  std::vector<char> given(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (const auto& p : table.products) {
    auto l = flat_of.find(p.left), r = flat_of.find(p.right);
    if (l == flat_of.end() || r == flat_of.end())
      throw AlgebraError(Kind::unknown_name, "product " + p.left + "*" + p.right + " names an unknown basis element");
    const std::size_t slot = static_cast<std::size_t>(l->second) * static_cast<std::size_t>(n) +
                             static_cast<std::size_t>(r->second);
    if (given[slot]) throw AlgebraError(Kind::configuration, "product " + p.left + "*" + p.right + " given twice");
    given[slot] = 1;
    const int deg = d.flat_degree[static_cast<std::size_t>(l->second)] + d.flat_degree[static_cast<std::size_t>(r->second)];
    std::map<int, S> acc;
    for (const auto& [coeff, name] : p.value) {
      auto t = flat_of.find(name);
      if (t == flat_of.end())
        throw AlgebraError(Kind::unknown_name, "product " + p.left + "*" + p.right + " uses unknown basis element '" + name + "'");
      if (d.flat_degree[static_cast<std::size_t>(t->second)] != deg)
        throw AlgebraError(Kind::axiom, "product " + p.left + "*" + p.right + " must land in degree " +
                                            std::to_string(deg) + " but names '" + name + "'");
      S c = ScalarOps<S>::parse(field, coeff);
      auto [it, inserted] = acc.try_emplace(t->second, c);
      if (!inserted) it->second += c;
    }
    for (auto& [f, c] : acc)
      if (!is_zero(c)) d.table[slot].emplace_back(f, std::move(c));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!given[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)])
        throw AlgebraError(Kind::configuration, "completeness: product " + d.names[static_cast<std::size_t>(a)] + "*" +
                                                    d.names[static_cast<std::size_t>(b)] + " is missing");

  auto A = std::make_shared<const GradedAlgebra<S>>(std::move(d));
  if (auto err = check_unit(*A)) throw AlgebraError(Kind::axiom, *err);
  if (auto err = check_graded_commutative(*A)) throw AlgebraError(Kind::axiom, *err);
  if (auto err = check_associative(*A, true)) throw AlgebraError(Kind::axiom, *err);
  return A;
}

/// The ground field as a one-dimensional algebra concentrated in degree 0.
template <ExactScalar S>
AlgebraPtr<S> ground_field(const FieldSpec& field) {
  return realize_presentation<S>(field, Presentation{{}, {}, 1});
}

}  // namespace rhi
