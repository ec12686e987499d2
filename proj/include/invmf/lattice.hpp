#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "invmf/arith.hpp"
#include "invmf/bigint.hpp"

namespace invmf {

using DivisorIndex = std::uint32_t;

struct LatticeOptions {
  /// Upper bound on tau(n); larger inputs raise ResourceLimitError.
  std::uint64_t max_divisors = 1ull << 24;
};

/// The divisors of n in increasing order, each carried both as an exponent
/// vector over n's primes and as a value.
///
/// Every divisor also has a mixed-radix code  sum_i v_i * stride_i  with
/// stride_i = prod_{j<i} (e_j + 1). When i | j the code of j/i is
/// code(j) - code(i), so the quotient lookup never touches big integers.
class DivisorLattice {
 public:
  explicit DivisorLattice(FactoredInteger n, const LatticeOptions& options = {}) : base_(std::move(n)) {
    const auto& factors = base_.factors();
    rank_ = factors.size();

    std::uint64_t tau = 1;
    strides_.reserve(rank_);
    for (const auto& pp : factors) {
      strides_.push_back(tau);
      if (pp.exponent + 1 > options.max_divisors / tau) {
        throw ResourceLimitError("divisor count of " + base_.to_string() + " exceeds the cap of " +
                                 std::to_string(options.max_divisors));
      }
      tau *= pp.exponent + 1;
    }
    const std::size_t count = static_cast<std::size_t>(tau);

    // Mixed-radix enumeration; code order is the enumeration order.
    std::vector<BigInt> by_code(count);
    std::vector<std::uint32_t> digits(rank_, 0);
    by_code[0] = 1;
    for (std::size_t code = 1; code < count; ++code) {
      std::size_t i = 0;
      while (digits[i] == factors[i].exponent) digits[i++] = 0;
      ++digits[i];
      // value(code) = value(code - stride_i) * p_i, undoing the reset digits
      by_code[code] = by_code[code - strides_[i]] * factors[i].prime;
    }

    std::vector<std::uint64_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::uint64_t a, std::uint64_t b) { return by_code[a] < by_code[b]; });

    values_.resize(count);
    codes_.resize(count);
    index_of_code_.resize(count);
    exponents_.resize(count * rank_);
    for (std::size_t idx = 0; idx < count; ++idx) {
      const std::uint64_t code = order[idx];
      values_[idx] = std::move(by_code[code]);
      codes_[idx] = code;
      index_of_code_[code] = static_cast<DivisorIndex>(idx);
      std::uint64_t rest = code;
      for (std::size_t i = 0; i < rank_; ++i) {
        const std::uint64_t radix = factors[i].exponent + 1;
        exponents_[idx * rank_ + i] = static_cast<std::uint32_t>(rest % radix);
        rest /= radix;
      }
    }
  }

  const FactoredInteger& base() const { return base_; }
  std::size_t size() const { return values_.size(); }
  std::size_t rank() const { return rank_; }

  const BigInt& value(DivisorIndex i) const { return values_.at(i); }
  const std::vector<BigInt>& values() const { return values_; }
  DivisorIndex top() const { return static_cast<DivisorIndex>(values_.size() - 1); }

  std::span<const std::uint32_t> exponents(DivisorIndex i) const {
    return {exponents_.data() + static_cast<std::size_t>(i) * rank_, rank_};
  }
  std::uint64_t code(DivisorIndex i) const { return codes_[i]; }
  DivisorIndex index_of_code(std::uint64_t code) const { return index_of_code_[code]; }

  /// Position of value in D, if present.
  std::optional<DivisorIndex> index_of(const BigInt& value) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), value);
    if (it == values_.end() || *it != value) return std::nullopt;
    return static_cast<DivisorIndex>(it - values_.begin());
  }

  /// Index of candidate when it divides n; the divisibility test runs first
  /// so non-divisors are rejected without a search.
  std::optional<DivisorIndex> locate_divisor(const BigInt& candidate) const {
    if (sgn(candidate) <= 0 || !invmf::divides(candidate, base_.value())) return std::nullopt;
    return index_of(candidate);
  }

  /// Componentwise comparison of exponent vectors.
  bool divides(DivisorIndex i, DivisorIndex j) const {
    const std::uint32_t* a = exponents_.data() + static_cast<std::size_t>(i) * rank_;
    const std::uint32_t* b = exponents_.data() + static_cast<std::size_t>(j) * rank_;
    for (std::size_t k = 0; k < rank_; ++k) {
      if (a[k] > b[k]) return false;
    }
    return true;
  }

  /// Index of value(j) / value(i); requires i | j.
  DivisorIndex quotient(DivisorIndex j, DivisorIndex i) const {
    if (!divides(i, j)) {
      throw std::invalid_argument("quotient: " + to_decimal(value(i)) + " does not divide " +
                                  to_decimal(value(j)));
    }
    return index_of_code_[codes_[j] - codes_[i]];
  }

  /// All divisor indices of j, largest value first.
  std::vector<DivisorIndex> divisors_of(DivisorIndex j) const {
    const auto bound = exponents(j);
    std::vector<DivisorIndex> out;
    std::vector<std::uint32_t> digits(rank_, 0);
    std::uint64_t code = 0;
    for (;;) {
      out.push_back(index_of_code_[code]);
      std::size_t k = 0;
      while (k < rank_ && digits[k] == bound[k]) {
        code -= digits[k] * strides_[k];
        digits[k++] = 0;
      }
      if (k == rank_) break;
      ++digits[k];
      code += strides_[k];
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }

  /// tau(value(i)).
  std::uint64_t tau(DivisorIndex i) const {
    std::uint64_t t = 1;
    for (std::uint32_t v : exponents(i)) t *= v + 1;
    return t;
  }

  /// sum over d | n of tau(d) = prod (e_i + 1)(e_i + 2) / 2.
  BigInt divisor_pair_count() const {
    BigInt total = 1;
    for (const auto& pp : base_.factors()) {
      total *= BigInt(pp.exponent + 1) * (pp.exponent + 2) / 2;
    }
    return total;
  }

 private:
  FactoredInteger base_;
  std::size_t rank_ = 0;
  std::vector<std::uint64_t> strides_;
  std::vector<BigInt> values_;
  std::vector<std::uint64_t> codes_;
  std::vector<DivisorIndex> index_of_code_;
  std::vector<std::uint32_t> exponents_;
};

inline DivisorLattice build_lattice(const FactoredInteger& n, const LatticeOptions& options = {}) {
  return DivisorLattice(n, options);
}

}  // namespace invmf
