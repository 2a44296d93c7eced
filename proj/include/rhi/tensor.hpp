#pragma once

/**
 * @file tensor.hpp
 * @brief Koszul-signed tensor products, the multiplication maps μₙ, and tensor products of maps.
 *
 * A tensor algebra's degree-d basis is every tuple of factor basis elements
 * with degrees summing to d, ordered by (degree composition, factor indices).
 * Tensor algebras are memoized on their factor list, so A^{⊗2} and A ⊗ A
 * built anywhere in a process are the same object.
 */

#include "rhi/morphism.hpp"

#include <mutex>
#include <numeric>
#include <tuple>

namespace rhi {

namespace detail {

constexpr std::size_t kMaxTensorTuples = std::size_t{1} << 20;

inline std::string slot_name(const std::string& name, std::size_t slot) {
  return name + "[" + std::to_string(slot + 1) + "]";
}

template <ExactScalar S>
AlgebraPtr<S> build_tensor(const std::vector<AlgebraPtr<S>>& factors) {
  using Kind = AlgebraError::Kind;
  const std::size_t n = factors.size();
  AlgebraData<S> d;
  d.mode = AlgebraData<S>::Mode::tensor;
  d.field = factors.front()->field();
  d.factors = factors;

  bool exact = true;
  int top = 0;
  int truncation = INT_MAX;
  for (const auto& F : factors) {
    if (!(F->field() == d.field)) throw AlgebraError(Kind::mismatch, "tensor factors over different fields");
    top += F->max_degree();
    if (!F->exact()) {
      exact = false;
      truncation = std::min(truncation, F->max_degree());
    }
  }
  d.exact = exact;
  d.max_degree = exact ? top : std::min(truncation, top);
  d.window = d.max_degree;

  d.strides.assign(n, 1);
  std::size_t codes = 1;
  for (std::size_t j = n; j-- > 0;) {
    d.strides[j] = static_cast<int>(codes);
    codes *= static_cast<std::size_t>(factors[j]->total_dim());
    if (codes > kMaxTensorTuples) throw AlgebraError(Kind::too_large, "tensor product has too many basis tuples");
  }

  // Enumerate tuples and sort by (total degree, composition, indices).
  struct Entry {
    std::vector<int> key;  // total degree, per-factor degrees, per-factor indices
    std::size_t code;
  };
  std::vector<Entry> entries;
  std::vector<int> tuple(n, 0);
  for (std::size_t code = 0; code < codes; ++code) {
    std::size_t rest = code;
    int total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      tuple[j] = static_cast<int>(rest / static_cast<std::size_t>(d.strides[j]));
      rest %= static_cast<std::size_t>(d.strides[j]);
      total += factors[j]->degree_of(tuple[j]);
    }
    if (total > d.max_degree) continue;
    Entry e{{total}, code};
    for (std::size_t j = 0; j < n; ++j) e.key.push_back(factors[j]->degree_of(tuple[j]));
    for (std::size_t j = 0; j < n; ++j) e.key.push_back(factors[j]->index_of(tuple[j]));
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });

  d.code_to_flat.assign(codes, -1);
  d.offset.assign(static_cast<std::size_t>(d.max_degree) + 2, 0);
  for (std::size_t f = 0; f < entries.size(); ++f) {
    const auto& e = entries[f];
    d.code_to_flat[e.code] = static_cast<int>(f);
    d.flat_degree.push_back(e.key[0]);
    d.offset[static_cast<std::size_t>(e.key[0]) + 1]++;
    Word w;
    std::size_t rest = e.code;
    for (std::size_t j = 0; j < n; ++j) {
      const int ff = static_cast<int>(rest / static_cast<std::size_t>(d.strides[j]));
      rest %= static_cast<std::size_t>(d.strides[j]);
      d.tuples.push_back(ff);
      for (const auto& [name, ex] : factors[j]->word(ff)) w.emplace_back(slot_name(name, j), ex);
    }
    d.words.push_back(std::move(w));
  }
  for (int deg = 0; deg <= d.max_degree; ++deg)
    d.offset[static_cast<std::size_t>(deg) + 1] += d.offset[static_cast<std::size_t>(deg)];

  GradedAlgebra<S> partial(d);
  cache_products(d, partial);
  return std::make_shared<const GradedAlgebra<S>>(std::move(d));
}

}  // namespace detail

/// Tensor product of the given factors, in order. A single factor is returned unchanged.
template <ExactScalar S>
AlgebraPtr<S> tensor_product(const std::vector<AlgebraPtr<S>>& factors) {
  if (factors.empty()) throw AlgebraError(AlgebraError::Kind::configuration, "tensor product of no factors");
  if (factors.size() == 1) return factors.front();
  static std::mutex mu;
  static std::map<std::vector<const void*>, std::weak_ptr<const GradedAlgebra<S>>> memo;
  std::vector<const void*> key;
  for (const auto& f : factors) key.push_back(f.get());
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = memo.find(key); it != memo.end())
    if (auto alive = it->second.lock()) return alive;
  auto T = detail::build_tensor(factors);
  memo[key] = T;
  return T;
}

template <ExactScalar S>
AlgebraPtr<S> tensor_product(const AlgebraPtr<S>& A, const AlgebraPtr<S>& B) {
  return tensor_product<S>(std::vector<AlgebraPtr<S>>{A, B});
}

template <ExactScalar S>
AlgebraPtr<S> tensor_power(const AlgebraPtr<S>& A, int n) {
  if (n < 1) throw AlgebraError(AlgebraError::Kind::configuration, "tensor power needs n >= 1");
  return tensor_product<S>(std::vector<AlgebraPtr<S>>(static_cast<std::size_t>(n), A));
}

/// Inclusion of A into slot i (0-based) of A^{⊗n}: a ↦ 1⊗…⊗a⊗…⊗1.
template <ExactScalar S>
AlgebraMap<S> slot_inclusion(const AlgebraPtr<S>& A, int n, int slot) {
  auto T = tensor_power(A, n);
  const int window = common_window(*A, *T);
  auto m = zero_matrices(*A, *T, window);
  if (n == 1) return identity_map(A);
  std::vector<int> tuple(static_cast<std::size_t>(n), A->flat(0, A->unit_index()));
  for (int f = 0; f < A->total_dim(); ++f) {
    const int d = A->degree_of(f);
    if (d > window) continue;
    tuple[static_cast<std::size_t>(slot)] = f;
    m[static_cast<std::size_t>(d)](T->index_of(T->tuple_flat(tuple)), A->index_of(f)) = A->scalar(1);
  }
  return AlgebraMap<S>(A, T, std::move(m));
}

/// μₙ: A^{⊗n} → A, a₁⊗…⊗aₙ ↦ a₁⋯aₙ.
template <ExactScalar S>
AlgebraMap<S> mu_n(const AlgebraPtr<S>& A, int n) {
  auto T = tensor_power(A, n);
  if (n == 1) return identity_map(A);
  const int window = common_window(*T, *A);
  auto m = zero_matrices(*T, *A, window);
  for (int f = 0; f < T->total_dim(); ++f) {
    const int d = T->degree_of(f);
    if (d > window || d > A->max_degree()) continue;
    SparseVector<S> acc{{T->factor_flat(f, 0), A->scalar(1)}};
    for (int j = 1; j < n && !acc.empty(); ++j)
      acc = multiply_sparse(*A, acc, SparseVector<S>{{T->factor_flat(f, static_cast<std::size_t>(j)), A->scalar(1)}});
    for (const auto& [g, c] : acc) m[static_cast<std::size_t>(d)](A->index_of(g), T->index_of(f)) = c;
  }
  return AlgebraMap<S>(T, A, std::move(m));
}

namespace detail {

/// f₁⊗…⊗fₙ on basis tuples, sign-free since every fⱼ preserves degree.
template <ExactScalar S>
AlgebraMap<S> tensor_of_maps(const std::vector<const AlgebraMap<S>*>& maps) {
  std::vector<AlgebraPtr<S>> doms, cods;
  for (const auto* f : maps) {
    doms.push_back(f->domain());
    cods.push_back(f->codomain());
  }
  auto D = tensor_product<S>(doms);
  auto C = tensor_product<S>(cods);
  const int window = common_window(*D, *C);
  auto m = zero_matrices(*D, *C, window);
  const std::size_t n = maps.size();
  std::vector<SparseVector<S>> parts(n);
  std::vector<int> tuple(n);
  for (int f = 0; f < D->total_dim(); ++f) {
    const int d = D->degree_of(f);
    if (d > window || d > C->max_degree()) continue;
    bool zero = false;
    for (std::size_t j = 0; j < n && !zero; ++j) {
      parts[j] = maps[j]->apply_basis(D->factor_flat(f, j));
      zero = parts[j].empty();
    }
    if (zero) continue;
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      S c = D->scalar(1);
      for (std::size_t j = 0; j < n; ++j) {
        tuple[j] = parts[j][pick[j]].first;
        c *= parts[j][pick[j]].second;
      }
      m[static_cast<std::size_t>(d)](C->index_of(C->tuple_flat(tuple)), D->index_of(f)) += c;
      std::size_t j = n;
      while (j-- > 0) {
        if (++pick[j] < parts[j].size()) break;
        pick[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
  }
  return AlgebraMap<S>(D, C, std::move(m));
}

}  // namespace detail

/// f^{⊗n}.
template <ExactScalar S>
AlgebraMap<S> tensor_map(const AlgebraMap<S>& f, int n) {
  if (n < 1) throw AlgebraError(AlgebraError::Kind::configuration, "tensor power of a map needs n >= 1");
  if (n == 1) return f;
  return detail::tensor_of_maps(std::vector<const AlgebraMap<S>*>(static_cast<std::size_t>(n), &f));
}

/// f⊗g.
template <ExactScalar S>
AlgebraMap<S> tensor_map_pair(const AlgebraMap<S>& f, const AlgebraMap<S>& g) {
  if (!(f.domain()->field() == g.domain()->field()))
    throw AlgebraError(AlgebraError::Kind::mismatch, "tensor_map_pair: maps over different fields");
  return detail::tensor_of_maps(std::vector<const AlgebraMap<S>*>{&f, &g});
}

}  // namespace rhi
