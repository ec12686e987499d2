#pragma once

#include <cstdint>
#include <vector>

#include "invmf/engine.hpp"

namespace invmf::testing {

inline std::vector<BigInt> to_big(const std::vector<std::uint64_t>& xs) {
  std::vector<BigInt> out;
  out.reserve(xs.size());
  for (auto x : xs) out.push_back(from_u64(x));
  return out;
}

inline std::vector<BigInt> set_or_empty(const Coefficient<SetAggregator>& c) {
  return c ? *c : std::vector<BigInt>{};
}

/// Out-of-place restricted product by the literal formula
///   B'_d = sum over t | d of B_t (x) A_{d/t},
/// with L_p expanded to a dense array whose entry at divisor 1 includes C({1}).
template <Aggregator A>
SparseSeries<A> multiply_restricted_reference(const SparseSeries<A>& series, const AtomicSeries<A>& atomic,
                                              const DivisorLattice& lat, const A& agg) {
  std::vector<Coefficient<A>> dense(lat.size());
  dense[0] = agg.one();
  for (const auto& [i, a] : atomic.terms) dense[i] = coeff_add<A>(dense[i], a, agg);

  SparseSeries<A> out;
  out.coeffs.resize(lat.size());
  for (DivisorIndex d = 0; d < lat.size(); ++d) {
    for (DivisorIndex t : lat.divisors_of(d)) {
      out[d] = coeff_add<A>(out[d], coeff_mul<A>(series[t], dense[lat.quotient(d, t)], agg), agg);
    }
  }
  return out;
}

}  // namespace invmf::testing
