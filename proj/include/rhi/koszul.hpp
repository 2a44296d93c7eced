#pragma once

// Koszul sign of (a_1 ⊗ … ⊗ a_n)(b_1 ⊗ … ⊗ b_n) = ± (a_1 b_1) ⊗ … ⊗ (a_n b_n):
// moving each b_j left past a_i for i > j contributes |a_i||b_j|.

#include <cstddef>
#include <span>

namespace rhi {

/// Parity of sum_{j<i} |a_i| |b_j|.
inline int koszul_parity(std::span<const int> left, std::span<const int> right) {
  int odd_right_before = 0;
  int parity = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (left[i] % 2 != 0) parity ^= odd_right_before & 1;
    if (right[i] % 2 != 0) ++odd_right_before;
  }
  return parity;
}

template <class S>
S koszul_sign(std::span<const int> left, std::span<const int> right) {
  return koszul_parity(left, right) ? S(-1) : S(1);
}

}  // namespace rhi
