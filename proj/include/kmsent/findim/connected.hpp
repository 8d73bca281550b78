#pragma once

// Connected (truncated) functions of a state by Moebius inversion over set
// partitions. Operator subsets are bitmasks over positions 0..n-1; products
// always keep the original left-to-right order.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kmsent/errors.hpp"
#include "kmsent/findim/linalg.hpp"
#include "kmsent/findim/states.hpp"

namespace kmsent::findim {

inline constexpr int kMaxConnectedOrder = 5;

using Mask = std::uint32_t;

inline void require_connected_order(int n) {
  if (n < 0 || n > kMaxConnectedOrder)
    throw unsupported_order_error("connected functions are supported for n <= 5 (got " + std::to_string(n) + ")");
}

/// Calls visit(blocks) once for every set partition of `set` (a bitmask).
/// Blocks are listed with increasing lowest element.
template <class Visit>
void for_each_set_partition(Mask set, Visit&& visit) {
  std::vector<Mask> blocks;
  std::function<void(Mask)> rec = [&](Mask rest) {
    if (rest == 0) {
      visit(static_cast<const std::vector<Mask>&>(blocks));
      return;
    }
    const Mask low = rest & (~rest + 1);
    const Mask others = rest & ~low;
    // Enumerate every subset of `others` to join the block containing `low`.
    Mask sub = others;
    while (true) {
      blocks.push_back(low | sub);
      rec(others & ~sub);
      blocks.pop_back();
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
  };
  rec(set);
}

inline std::size_t count_set_partitions(int n) {
  std::size_t count = 0;
  for_each_set_partition(n == 0 ? 0u : (Mask{1} << n) - 1, [&](const std::vector<Mask>&) { ++count; });
  return count;
}

/// Table of moments omega(prod_{i in S} A_i) for every subset S of n operators.
class MomentTable {
 public:
  MomentTable(const Matrix& rho, const std::vector<Matrix>& ops) : n_(static_cast<int>(ops.size())) {
    require_connected_order(n_);
    const Mask full = full_mask();
    values_.assign(static_cast<std::size_t>(full) + 1, Complex(0.0));
    values_[0] = Complex(1.0);
    for (Mask s = 1; s <= full; ++s) {
      Matrix product;
      bool first = true;
      for (int i = 0; i < n_; ++i) {
        if (!(s & (Mask{1} << i))) continue;
        if (first) {
          product = ops[static_cast<std::size_t>(i)];
          first = false;
        } else {
          product = product * ops[static_cast<std::size_t>(i)];
        }
      }
      values_[s] = expectation(rho, product);
    }
  }

  int size() const noexcept { return n_; }
  Mask full_mask() const noexcept { return n_ == 0 ? 0u : (Mask{1} << n_) - 1; }
  Complex operator()(Mask s) const { return values_.at(s); }

 private:
  int n_;
  std::vector<Complex> values_;
};

/// Recursive route: omega^c(S) = omega(S) - sum over proper blocks B containing
/// min(S) of omega^c(B) omega(S \ B). Returns the connected part of every subset.
inline std::vector<Complex> connected_table(const MomentTable& moments) {
  const Mask full = moments.full_mask();
  std::vector<Complex> connected(static_cast<std::size_t>(full) + 1, Complex(0.0));
  for (Mask s = 1; s <= full; ++s) {
    if ((s & full) != s) continue;
    const Mask low = s & (~s + 1);
    const Mask others = s & ~low;
    Complex value = moments(s);
    // Proper subsets B of s with low in B: B = low | sub, sub a proper subset of others.
    if (others != 0) {
      Mask sub = (others - 1) & others;
      while (true) {
        const Mask block = low | sub;
        value -= connected[block] * moments(s & ~block);
        if (sub == 0) break;
        sub = (sub - 1) & others;
      }
    }
    connected[s] = value;
  }
  return connected;
}

/// omega^c(A_1 (x) ... (x) A_n). The empty product (n = 0) has connected part 0.
inline Complex connected_function(const Matrix& rho, const std::vector<Matrix>& ops) {
  require_connected_order(static_cast<int>(ops.size()));
  if (ops.empty()) return Complex(0.0);
  const MomentTable moments(rho, ops);
  return connected_table(moments)[moments.full_mask()];
}

/// Closed Moebius form: sum over partitions P of (-1)^{|P|-1} (|P|-1)! prod omega(B).
inline Complex connected_function_moebius(const Matrix& rho, const std::vector<Matrix>& ops) {
  require_connected_order(static_cast<int>(ops.size()));
  if (ops.empty()) return Complex(0.0);
  const MomentTable moments(rho, ops);
  Complex total(0.0);
  for_each_set_partition(moments.full_mask(), [&](const std::vector<Mask>& blocks) {
    const int k = static_cast<int>(blocks.size());
    double coefficient = (k % 2 == 1) ? 1.0 : -1.0;
    for (int j = 2; j < k; ++j) coefficient *= j;
    Complex product(1.0);
    for (Mask b : blocks) product *= moments(b);
    total += coefficient * product;
  });
  return total;
}

/// Re-sums connected parts over all partitions of the full set; reproduces the moment.
inline Complex resum_connected(const std::vector<Complex>& connected, Mask full) {
  Complex total(0.0);
  for_each_set_partition(full, [&](const std::vector<Mask>& blocks) {
    Complex product(1.0);
    for (Mask b : blocks) product *= connected.at(b);
    total += product;
  });
  return total;
}

}  // namespace kmsent::findim
