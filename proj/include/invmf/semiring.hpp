#pragma once

#include <algorithm>
#include <concepts>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "invmf/bigint.hpp"

// Checked mode verifies the weak-homomorphism preconditions (coprime
// operands for mul, disjoint operands for add) on every SET operation.
#ifndef INVMF_CHECKED
#ifdef NDEBUG
#define INVMF_CHECKED 0
#else
#define INVMF_CHECKED 1
#endif
#endif

namespace invmf {

enum class AggregateKind { Set, Count, Sum, SumPow, Min, Max };

/// A weak homomorphism C from finite sets of positive integers into a
/// commutative semiring (X, mul, add), described by C({1}) and C({p^e}).
template <typename A>
concept Aggregator = requires(const A& agg, const typename A::value_type& x, const BigInt& p, unsigned long e) {
  typename A::value_type;
  { agg.one() } -> std::convertible_to<typename A::value_type>;
  { agg.lift(p, e) } -> std::convertible_to<typename A::value_type>;
  { agg.mul(x, x) } -> std::convertible_to<typename A::value_type>;
  { agg.add(x, x) } -> std::convertible_to<typename A::value_type>;
  { agg.kind() } -> std::same_as<AggregateKind>;
};

/// Identity homomorphism: sets under element-wise product and union.
/// Values are sorted, duplicate-free.
struct SetAggregator {
  using value_type = std::vector<BigInt>;

  value_type one() const { return {BigInt(1)}; }
  value_type lift(const BigInt& p, unsigned long e) const { return {pow(p, e)}; }

  value_type mul(const value_type& a, const value_type& b) const {
#if INVMF_CHECKED
    BigInt g;
    for (const auto& u : a) {
      for (const auto& v : b) {
        mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
        if (g != 1) {
          throw std::logic_error("set product of non-coprime elements " + to_decimal(u) + " and " +
                                 to_decimal(v));
        }
      }
    }
#endif
    value_type out;
    out.reserve(a.size() * b.size());
    for (const auto& u : a) {
      for (const auto& v : b) out.push_back(u * v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  value_type add(const value_type& a, const value_type& b) const {
    value_type out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
#if INVMF_CHECKED
    if (out.size() != a.size() + b.size()) {
      throw std::logic_error("union of overlapping sets");
    }
#endif
    return out;
  }

  AggregateKind kind() const { return AggregateKind::Set; }
};

/// C_q(U) = sum of u^q over U. q = 0 counts, q = 1 sums.
struct SumPowAggregator {
  using value_type = BigInt;

  unsigned long q = 0;

  value_type one() const { return 1; }
  value_type lift(const BigInt& p, unsigned long e) const { return pow(p, e * q); }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }

  AggregateKind kind() const {
    return q == 0 ? AggregateKind::Count : q == 1 ? AggregateKind::Sum : AggregateKind::SumPow;
  }
};

struct MinAggregator {
  using value_type = BigInt;

  value_type one() const { return 1; }
  value_type lift(const BigInt& p, unsigned long e) const { return pow(p, e); }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type add(const value_type& a, const value_type& b) const { return a < b ? a : b; }
  AggregateKind kind() const { return AggregateKind::Min; }
};

struct MaxAggregator {
  using value_type = BigInt;

  value_type one() const { return 1; }
  value_type lift(const BigInt& p, unsigned long e) const { return pow(p, e); }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type add(const value_type& a, const value_type& b) const { return a < b ? b : a; }
  AggregateKind kind() const { return AggregateKind::Max; }
};

static_assert(Aggregator<SetAggregator>);
static_assert(Aggregator<SumPowAggregator>);
static_assert(Aggregator<MinAggregator>);
static_assert(Aggregator<MaxAggregator>);

/// A series coefficient; nullopt is the adjoined zero (empty pre-image).
template <Aggregator A>
using Coefficient = std::optional<typename A::value_type>;

template <Aggregator A>
Coefficient<A> coeff_add(const Coefficient<A>& a, const Coefficient<A>& b, const A& agg) {
  if (!a) return b;
  if (!b) return a;
  return agg.add(*a, *b);
}

template <Aggregator A>
Coefficient<A> coeff_mul(const Coefficient<A>& a, const Coefficient<A>& b, const A& agg) {
  if (!a || !b) return std::nullopt;
  return agg.mul(*a, *b);
}

// ---------------------------------------------------------------------------
// Runtime selection
// ---------------------------------------------------------------------------

struct AggregateSpec {
  AggregateKind kind = AggregateKind::Set;
  unsigned long q = 0;  // SumPow only

  friend bool operator==(const AggregateSpec&, const AggregateSpec&) = default;
};

/// Parses set | count | sum | sumpow:Q | min | max.
inline AggregateSpec parse_aggregate(std::string_view text) {
  if (text == "set") return {AggregateKind::Set};
  if (text == "count") return {AggregateKind::Count};
  if (text == "sum") return {AggregateKind::Sum, 1};
  if (text == "min") return {AggregateKind::Min};
  if (text == "max") return {AggregateKind::Max};
  constexpr std::string_view prefix = "sumpow:";
  if (text.starts_with(prefix)) {
    const std::string_view digits = text.substr(prefix.size());
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
        digits.size() <= 9) {
      return {AggregateKind::SumPow, std::stoul(std::string(digits))};
    }
  }
  throw std::invalid_argument("unknown aggregate '" + std::string(text) +
                              "' (expected set, count, sum, sumpow:Q, min or max)");
}

inline std::string to_string(const AggregateSpec& spec) {
  switch (spec.kind) {
    case AggregateKind::Set: return "set";
    case AggregateKind::Count: return "count";
    case AggregateKind::Sum: return "sum";
    case AggregateKind::SumPow: return "sumpow:" + std::to_string(spec.q);
    case AggregateKind::Min: return "min";
    case AggregateKind::Max: return "max";
  }
  return "?";
}

using AnyAggregator = std::variant<SetAggregator, SumPowAggregator, MinAggregator, MaxAggregator>;

inline AnyAggregator make_aggregator(const AggregateSpec& spec) {
  switch (spec.kind) {
    case AggregateKind::Set: return SetAggregator{};
    case AggregateKind::Count: return SumPowAggregator{0};
    case AggregateKind::Sum: return SumPowAggregator{1};
    case AggregateKind::SumPow: return SumPowAggregator{spec.q};
    case AggregateKind::Min: return MinAggregator{};
    case AggregateKind::Max: return MaxAggregator{};
  }
  throw std::invalid_argument("unknown aggregate kind");
}

}  // namespace invmf
