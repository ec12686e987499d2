#pragma once

#include <algorithm>
#include <concepts>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "invmf/arith.hpp"
#include "invmf/lattice.hpp"
#include "invmf/semiring.hpp"

namespace invmf {

/// One prime power p^e with f(p^e) equal to the divisor at `index`.
struct PrimePowerTerm {
  BigInt prime;
  unsigned long exponent = 0;
  DivisorIndex index = 0;

  friend bool operator==(const PrimePowerTerm&, const PrimePowerTerm&) = default;
};

/// A multiplicative function that can be inverted: evaluation on prime
/// powers, plus enumeration of every p^e whose image divides the lattice base.
template <typename F>
concept MultiplicativeFunction = requires(const F& f, const BigInt& p, unsigned long e, const DivisorLattice& lat) {
  { f.name() } -> std::convertible_to<std::string>;
  { f.eval(p, e) } -> std::convertible_to<BigInt>;
  { f.enumerate_terms(lat) } -> std::convertible_to<std::vector<PrimePowerTerm>>;
};

/// Euler's totient.
struct Totient {
  std::string name() const { return "phi"; }
  BigInt eval(const BigInt& p, unsigned long e) const { return eval_phi(p, e); }

  // phi(p^e) | n forces (p - 1) | n and e <= v_p(n) + 1.
  std::vector<PrimePowerTerm> enumerate_terms(const DivisorLattice& lat) const {
    std::vector<PrimePowerTerm> terms;
    for (DivisorIndex i = 0; i < lat.size(); ++i) {
      const BigInt p = lat.value(i) + 1;
      if (!is_prime(p)) continue;
      const unsigned long top = valuation(p, lat.base()) + 1;
      for (unsigned long e = 1; e <= top; ++e) {
        if (auto idx = lat.locate_divisor(eval_phi(p, e))) terms.push_back({p, e, *idx});
      }
    }
    return terms;
  }
};

/// sigma_k, the sum of k-th powers of divisors.
struct DivisorPowerSum {
  unsigned long k = 1;

  std::string name() const { return "sigma"; }
  BigInt eval(const BigInt& p, unsigned long e) const { return eval_sigma(p, e, k); }

  // sigma_k(p^e) = d implies p^(ek) < d <= (p + 1)^(ek), so p is the
  // (ek)-th root of d - 1. Neighbours of the root are tried as well and every
  // candidate is confirmed by exact evaluation.
  std::vector<PrimePowerTerm> enumerate_terms(const DivisorLattice& lat) const {
    if (k == 0) throw std::invalid_argument("sigma_k requires k >= 1");
    std::vector<PrimePowerTerm> terms;
    for (DivisorIndex i = 0; i < lat.size(); ++i) {
      const BigInt& d = lat.value(i);
      if (d < 3) continue;
      const BigInt d_minus_1 = d - 1;
      for (unsigned long e = 1;; ++e) {
        BigInt lower;
        mpz_ui_pow_ui(lower.get_mpz_t(), 2, e * k);
        if (lower >= d) break;
        const BigInt root = integer_root(d_minus_1, e * k);
        for (const BigInt& p : {BigInt(root - 1), root, BigInt(root + 1)}) {
          if (p < 2 || !is_prime(p)) continue;
          if (eval_sigma(p, e, k) == d) terms.push_back({p, e, i});
        }
      }
    }
    return terms;
  }
};

static_assert(MultiplicativeFunction<Totient>);
static_assert(MultiplicativeFunction<DivisorPowerSum>);

/// f(m) from the factorization of m.
template <MultiplicativeFunction F>
BigInt evaluate(const F& f, const FactoredInteger& m) {
  BigInt out = 1;
  for (const auto& [p, e] : m.factors()) out *= f.eval(p, e);
  return out;
}

/// L_p without its implicit C({1}) term at divisor 1. Each stored coefficient
/// is A_d, the sum of lift(p, e) over e with f(p^e) = d.
template <Aggregator A>
struct AtomicSeries {
  BigInt prime;
  std::vector<std::pair<DivisorIndex, typename A::value_type>> terms;  // sorted by index
};

template <MultiplicativeFunction F, Aggregator A>
std::vector<AtomicSeries<A>> build_atomics(const F& f, const DivisorLattice& lat, const A& agg) {
  std::map<BigInt, std::map<DivisorIndex, Coefficient<A>>> grouped;
  for (const PrimePowerTerm& t : f.enumerate_terms(lat)) {
    auto& slot = grouped[t.prime][t.index];
    slot = coeff_add<A>(slot, agg.lift(t.prime, t.exponent), agg);
  }
  std::vector<AtomicSeries<A>> out;
  out.reserve(grouped.size());
  for (auto& [p, by_index] : grouped) {
    AtomicSeries<A> series{p, {}};
    series.terms.reserve(by_index.size());
    for (auto& [idx, coeff] : by_index) series.terms.emplace_back(idx, std::move(*coeff));
    out.push_back(std::move(series));
  }
  return out;
}

template <Aggregator A>
std::vector<AtomicSeries<A>> build_phi_atomics(const DivisorLattice& lat, const A& agg) {
  return build_atomics(Totient{}, lat, agg);
}

template <Aggregator A>
std::vector<AtomicSeries<A>> build_sigma_atomics(const DivisorLattice& lat, unsigned long k, const A& agg) {
  return build_atomics(DivisorPowerSum{k}, lat, agg);
}

}  // namespace invmf
