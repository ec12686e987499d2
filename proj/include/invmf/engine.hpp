#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "invmf/arith.hpp"
#include "invmf/functions.hpp"
#include "invmf/lattice.hpp"
#include "invmf/semiring.hpp"

namespace invmf {

struct OpCounter {
  std::uint64_t mul_count = 0;
  std::uint64_t add_count = 0;
};

/// A Dirichlet series over the aggregator's semiring, restricted to the
/// divisors of n: one coefficient slot per divisor index.
template <Aggregator A>
struct SparseSeries {
  std::vector<Coefficient<A>> coeffs;

  const Coefficient<A>& operator[](DivisorIndex i) const { return coeffs[i]; }
  Coefficient<A>& operator[](DivisorIndex i) { return coeffs[i]; }
  std::size_t size() const { return coeffs.size(); }
};

/// P_0 = C({1}) / 1^s.
template <Aggregator A>
SparseSeries<A> initial_series(const DivisorLattice& lat, const A& agg) {
  SparseSeries<A> series;
  series.coeffs.resize(lat.size());
  series.coeffs[0] = agg.one();
  return series;
}

/// P <- P (x)_D L_p, in place.
///
/// Divisors are visited in decreasing order. The new B_d combines the old
/// B_d (the implicit identity term of L_p) with B_{d/d'} (x) A_{d'} for every
/// explicit term d' | d. For d' > 1 the quotient is smaller than d and still
/// holds its old value; for d' = 1 the quotient is d itself, read before the
/// slot is overwritten.
template <Aggregator A>
void multiply_restricted(SparseSeries<A>& series, const AtomicSeries<A>& atomic, const DivisorLattice& lat,
                         const A& agg, OpCounter& ops) {
  for (std::size_t jj = series.size(); jj-- > 0;) {
    const auto j = static_cast<DivisorIndex>(jj);
    Coefficient<A> extra;
    for (const auto& [i, a] : atomic.terms) {
      if (i > j) break;
      if (!lat.divides(i, j)) continue;
      const Coefficient<A>& b = series[lat.index_of_code(lat.code(j) - lat.code(i))];
      if (!b) continue;
      auto product = agg.mul(*b, a);
      ++ops.mul_count;
      if (extra) {
        extra = agg.add(*extra, product);
        ++ops.add_count;
      } else {
        extra = std::move(product);
      }
    }
    if (!extra) continue;
    if (series[j]) {
      series[j] = agg.add(*series[j], *extra);
      ++ops.add_count;
    } else {
      series[j] = std::move(extra);
    }
  }
}

/// Folds atomic series into P_0 in the given order.
template <Aggregator A>
SparseSeries<A> multiply_all(const DivisorLattice& lat, std::span<const AtomicSeries<A>> atomics, const A& agg,
                             OpCounter& ops) {
  SparseSeries<A> series = initial_series(lat, agg);
  for (const auto& atomic : atomics) multiply_restricted(series, atomic, lat, agg, ops);
  return series;
}

struct InvertOptions {
  LatticeOptions lattice;
  /// Also report the coefficient at every d | n.
  bool all_divisors = false;
};

template <Aggregator A>
struct InverseReport {
  BigInt n;
  Coefficient<A> result;  // nullopt: empty pre-image
  std::vector<std::pair<BigInt, Coefficient<A>>> divisor_results;  // ascending d, when requested
  OpCounter ops;
  std::size_t atomic_count = 0;
  std::size_t divisor_count = 0;
  BigInt pair_bound;  // sum over d | n of tau(d)
  double elapsed_ms = 0.0;
};

/// C(f^{-1}(n)) as the coefficient of n^{-s} in the product of the atomic
/// series of f, restricted to the divisors of n.
template <MultiplicativeFunction F, Aggregator A>
InverseReport<A> invert(const FactoredInteger& n, const F& f, const A& agg, const InvertOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  const DivisorLattice lat(n, options.lattice);
  const auto atomics = build_atomics(f, lat, agg);

  InverseReport<A> report;
  report.n = n.value();
  SparseSeries<A> series = multiply_all<A>(lat, atomics, agg, report.ops);

  report.atomic_count = atomics.size();
  report.divisor_count = lat.size();
  report.pair_bound = lat.divisor_pair_count();
  if (options.all_divisors) {
    report.divisor_results.reserve(lat.size());
    for (DivisorIndex i = 0; i < lat.size(); ++i) report.divisor_results.emplace_back(lat.value(i), series[i]);
  }
  report.result = std::move(series[lat.top()]);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Runtime selection of function and aggregate
// ---------------------------------------------------------------------------

using AnyFunction = std::variant<Totient, DivisorPowerSum>;

inline AnyFunction make_function(const std::string& name, unsigned long k = 1) {
  if (name == "phi") return Totient{};
  if (name == "sigma") {
    if (k == 0) throw std::invalid_argument("sigma requires k >= 1");
    return DivisorPowerSum{k};
  }
  throw std::invalid_argument("unknown function '" + name + "' (expected phi or sigma)");
}

inline std::string function_label(const AnyFunction& f) {
  return std::visit([](const auto& g) { return g.name(); }, f);
}

/// Aggregate value with its type erased: a number or a sorted set.
using AnyValue = std::variant<BigInt, std::vector<BigInt>>;
using AnyResult = std::optional<AnyValue>;

struct AnyReport {
  BigInt n;
  AggregateSpec aggregate;
  AnyResult result;
  std::vector<std::pair<BigInt, AnyResult>> divisor_results;
  OpCounter ops;
  std::size_t atomic_count = 0;
  std::size_t divisor_count = 0;
  BigInt pair_bound;
  double elapsed_ms = 0.0;
};

inline AnyReport invert(const FactoredInteger& n, const AnyFunction& f, const AggregateSpec& aggregate,
                        const InvertOptions& options = {}) {
  const AnyAggregator agg = make_aggregator(aggregate);
  return std::visit(
      [&](const auto& fn, const auto& ag) {
        auto typed = invert(n, fn, ag, options);
        auto erase = [](auto& coeff) -> AnyResult {
          if (!coeff) return std::nullopt;
          return AnyValue(std::move(*coeff));
        };
        AnyReport out;
        out.n = std::move(typed.n);
        out.aggregate = aggregate;
        out.result = erase(typed.result);
        out.divisor_results.reserve(typed.divisor_results.size());
        for (auto& [d, c] : typed.divisor_results) out.divisor_results.emplace_back(std::move(d), erase(c));
        out.ops = typed.ops;
        out.atomic_count = typed.atomic_count;
        out.divisor_count = typed.divisor_count;
        out.pair_bound = std::move(typed.pair_bound);
        out.elapsed_ms = typed.elapsed_ms;
        return out;
      },
      f, agg);
}

}  // namespace invmf
