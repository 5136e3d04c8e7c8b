#pragma once

#include <bit>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vck/error.hpp"

namespace vck {

namespace detail {

inline void bit_reverse_permute(auto& values) {
  const std::size_t n = values.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(values[i], values[j]);
  }
}

}  // namespace detail

// In-place radix-2 transform: values[i] <- sum_j values[j] * root^(i*j),
// where root is a primitive n-th root of unity. Natural order in and out.
template <class F>
void ntt_with_root(std::span<F> values, F root) {
  const std::size_t n = values.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n)) throw UsageError("NTT size must be a power of two");
  detail::bit_reverse_permute(values);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const F step = root.pow(n / len);
    std::vector<F> twiddles(len / 2);
    twiddles[0] = F::one();
    for (std::size_t k = 1; k < len / 2; ++k) twiddles[k] = twiddles[k - 1] * step;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        F u = values[start + k];
        F v = values[start + k + len / 2] * twiddles[k];
        values[start + k] = u + v;
        values[start + k + len / 2] = u - v;
      }
    }
  }
}

template <class F>
void ntt(std::span<F> values) {
  if (values.size() <= 1) return;
  ntt_with_root(values, F::root_of_unity(values.size()));
}

template <class F>
void inverse_ntt(std::span<F> values) {
  if (values.size() <= 1) return;
  ntt_with_root(values, F::root_of_unity(values.size()).inverse());
  const F n_inv = F(values.size()).inverse();
  for (F& v : values) v *= n_inv;
}

}  // namespace vck
