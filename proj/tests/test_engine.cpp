#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "invmf/engine.hpp"
#include "invmf/oracle.hpp"
#include "support.hpp"

using invmf::BigInt;
using invmf::DivisorLattice;
using invmf::FactoredInteger;
using invmf::SetAggregator;
using invmf::testing::set_or_empty;
using invmf::testing::to_big;

namespace {

FactoredInteger fact(std::uint64_t n) { return invmf::factorize(BigInt(n)); }

template <invmf::MultiplicativeFunction F>
std::vector<BigInt> invert_set(std::uint64_t n, const F& f) {
  return set_or_empty(invmf::invert(fact(n), f, SetAggregator{}).result);
}

}  // namespace

TEST(InitialSeries, Examples) {
  const DivisorLattice lat(fact(12));
  const auto set = invmf::initial_series(lat, SetAggregator{});
  EXPECT_EQ(set[0], to_big({1}));
  for (invmf::DivisorIndex i = 1; i < lat.size(); ++i) EXPECT_FALSE(set[i]);
  EXPECT_EQ(invmf::initial_series(lat, invmf::SumPowAggregator{0})[0], 1);
  EXPECT_EQ(invmf::initial_series(lat, invmf::MinAggregator{})[0], 1);
}

TEST(MultiplyRestricted, FirstFactorIsCopiedWithExplicitIdentity) {
  const DivisorLattice lat(fact(60));
  const SetAggregator agg;
  for (const auto& atomic : invmf::build_phi_atomics(lat, agg)) {
    auto series = invmf::initial_series(lat, agg);
    invmf::OpCounter ops;
    invmf::multiply_restricted(series, atomic, lat, agg, ops);
    std::vector<invmf::Coefficient<SetAggregator>> expected(lat.size());
    expected[0] = to_big({1});
    for (const auto& [i, a] : atomic.terms) expected[i] = invmf::coeff_add<SetAggregator>(expected[i], a, agg);
    EXPECT_EQ(series.coeffs, expected) << atomic.prime;
  }
}

TEST(MultiplyRestricted, SmallTotientProducts) {
  EXPECT_EQ(invert_set(4, invmf::Totient{}), to_big({5, 8, 10, 12}));
  EXPECT_EQ(invert_set(2, invmf::Totient{}), to_big({3, 4, 6}));
}

TEST(Invert, DerivedSpotValues) {
  EXPECT_EQ(invert_set(1, invmf::Totient{}), to_big({1, 2}));
  EXPECT_FALSE(invmf::invert(fact(3), invmf::Totient{}, invmf::SumPowAggregator{0}).result);
  EXPECT_EQ(invert_set(24, invmf::Totient{}), to_big({35, 39, 45, 52, 56, 70, 72, 78, 84, 90}));
  EXPECT_EQ(invmf::invert(fact(24), invmf::Totient{}, invmf::SumPowAggregator{0}).result, 10);
  EXPECT_EQ(invmf::invert(fact(24), invmf::Totient{}, invmf::MinAggregator{}).result, 35);
  EXPECT_EQ(invmf::invert(fact(24), invmf::Totient{}, invmf::MaxAggregator{}).result, 90);
  EXPECT_EQ(invert_set(12, invmf::DivisorPowerSum{1}), to_big({6, 11}));
  EXPECT_EQ(invert_set(14, invmf::Totient{}), std::vector<BigInt>{});
  EXPECT_EQ(invert_set(10, invmf::DivisorPowerSum{2}), to_big({3}));
}

TEST(Invert, AgreesWithPhiOracle) {
  constexpr std::uint64_t kMax = 300;
  const auto table = invmf::oracle::preimage_table({invmf::oracle::Function::Phi}, kMax);
  for (std::uint64_t n = 1; n <= kMax; ++n) ASSERT_EQ(invert_set(n, invmf::Totient{}), to_big(table[n])) << n;
}

TEST(Invert, AgreesWithSigmaOracle) {
  for (unsigned long k : {1ul, 2ul, 3ul}) {
    constexpr std::uint64_t kMax = 2000;
    const auto table = invmf::oracle::preimage_table({invmf::oracle::Function::Sigma, k}, kMax);
    for (std::uint64_t n = 1; n <= kMax; ++n) {
      ASSERT_EQ(invert_set(n, invmf::DivisorPowerSum{k}), to_big(table[n])) << "k=" << k << " n=" << n;
    }
  }
}

TEST(Invert, AggregatesMatchReductionsOfTheSet) {
  std::mt19937_64 rng(42);
  const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::uint64_t> chosen = primes;
    std::shuffle(chosen.begin(), chosen.end(), rng);
    chosen.resize(1 + rng() % 4);
    std::sort(chosen.begin(), chosen.end());
    std::vector<invmf::PrimePower> factors;
    for (auto p : chosen) factors.push_back({BigInt(p), 1 + rng() % 4});
    const auto n = FactoredInteger::from_factors(factors);

    for (const invmf::AnyFunction& f : {invmf::AnyFunction{invmf::Totient{}}, invmf::AnyFunction{invmf::DivisorPowerSum{1}}}) {
      std::visit(
          [&](const auto& fn) {
            const auto set = set_or_empty(invmf::invert(n, fn, SetAggregator{}).result);
            const auto count = invmf::invert(n, fn, invmf::SumPowAggregator{0}).result;
            const auto sum = invmf::invert(n, fn, invmf::SumPowAggregator{1}).result;
            const auto sum2 = invmf::invert(n, fn, invmf::SumPowAggregator{2}).result;
            const auto min = invmf::invert(n, fn, invmf::MinAggregator{}).result;
            const auto max = invmf::invert(n, fn, invmf::MaxAggregator{}).result;
            ASSERT_EQ(set.empty(), !count);
            ASSERT_EQ(set.empty(), !min);
            ASSERT_EQ(set.empty(), !max);
            if (set.empty()) return;
            BigInt s1 = 0, s2 = 0;
            for (const auto& m : set) {
              s1 += m;
              s2 += m * m;
            }
            ASSERT_EQ(*count, set.size());
            ASSERT_EQ(*sum, s1);
            ASSERT_EQ(*sum2, s2);
            ASSERT_EQ(*min, set.front());
            ASSERT_EQ(*max, set.back());
          },
          f);
    }
  }
}

TEST(Invert, MembersMapToN) {
  for (std::uint64_t n : {1ull, 2ull, 24ull, 720ull, 5040ull, 40320ull, 65536ull, 1'000'000ull}) {
    for (const auto& m : invert_set(n, invmf::Totient{})) ASSERT_EQ(invmf::oracle::phi_direct(m), n) << m;
    for (const auto& m : invert_set(n, invmf::DivisorPowerSum{1})) ASSERT_EQ(invmf::oracle::sigma_direct(1, m), n);
    for (const auto& m : invert_set(n, invmf::DivisorPowerSum{2})) ASSERT_EQ(invmf::oracle::sigma_direct(2, m), n);
  }
}

TEST(Invert, DivisorCoefficientsMatchStandaloneRuns) {
  invmf::InvertOptions all;
  all.all_divisors = true;
  for (std::uint64_t n = 1; n <= 500; ++n) {
    const auto report = invmf::invert(fact(n), invmf::Totient{}, SetAggregator{}, all);
    ASSERT_EQ(report.divisor_results.size(), DivisorLattice(fact(n)).size());
    for (const auto& [d, c] : report.divisor_results) {
      ASSERT_EQ(set_or_empty(c), invert_set(invmf::to_u64(d), invmf::Totient{})) << n << ' ' << d;
    }
    ASSERT_EQ(report.divisor_results.back().second, report.result);
  }
}

TEST(MultiplyRestricted, InPlaceMatchesOutOfPlaceReference) {
  for (std::uint64_t n = 1; n <= 400; ++n) {
    const DivisorLattice lat(fact(n));
    auto check = [&](const auto& f, const auto& agg) {
      using A = std::decay_t<decltype(agg)>;
      auto in_place = invmf::initial_series(lat, agg);
      auto reference = in_place;
      invmf::OpCounter ops;
      for (const auto& atomic : invmf::build_atomics(f, lat, agg)) {
        invmf::multiply_restricted<A>(in_place, atomic, lat, agg, ops);
        reference = invmf::testing::multiply_restricted_reference<A>(reference, atomic, lat, agg);
        ASSERT_EQ(in_place.coeffs, reference.coeffs) << n;
      }
    };
    check(invmf::Totient{}, SetAggregator{});
    check(invmf::Totient{}, invmf::SumPowAggregator{0});
    check(invmf::DivisorPowerSum{1}, SetAggregator{});
    check(invmf::DivisorPowerSum{1}, invmf::MaxAggregator{});
  }
}

TEST(MultiplyAll, OrderOfAtomicSeriesDoesNotMatter) {
  std::mt19937_64 rng(5);
  for (std::uint64_t n : {24ull, 720ull, 5040ull, 362880ull}) {
    const DivisorLattice lat(fact(n));
    const SetAggregator agg;
    auto atomics = invmf::build_phi_atomics(lat, agg);
    invmf::OpCounter ops;
    const auto ascending = invmf::multiply_all<SetAggregator>(lat, atomics, agg, ops);
    for (int round = 0; round < 3; ++round) {
      std::shuffle(atomics.begin(), atomics.end(), rng);
      const auto permuted = invmf::multiply_all<SetAggregator>(lat, atomics, agg, ops);
      ASSERT_EQ(permuted.coeffs, ascending.coeffs) << n;
    }
  }
}

TEST(Invert, OpCountStaysWithinPairBound) {
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    for (const auto& report : {invmf::invert(fact(n), invmf::Totient{}, invmf::SumPowAggregator{0}),
                               invmf::invert(fact(n), invmf::DivisorPowerSum{1}, invmf::SumPowAggregator{0})}) {
      ASSERT_LE(BigInt(report.ops.mul_count), report.atomic_count * report.pair_bound) << n;
      ASSERT_EQ(report.divisor_count, DivisorLattice(fact(n)).size());
    }
  }
}

TEST(SparseSeries, SetCoefficientsMapOntoTheirDivisor) {
  for (std::uint64_t n = 1; n <= 200; ++n) {
    const DivisorLattice lat(fact(n));
    invmf::OpCounter ops;
    const auto atomics = invmf::build_phi_atomics(lat, SetAggregator{});
    const auto series = invmf::multiply_all<SetAggregator>(lat, atomics, SetAggregator{}, ops);
    for (invmf::DivisorIndex i = 0; i < lat.size(); ++i) {
      for (const auto& m : set_or_empty(series[i])) ASSERT_EQ(invmf::oracle::phi_direct(m), lat.value(i));
    }
  }
}

TEST(Invert, RuntimeSelection) {
  const auto report = invmf::invert(fact(24), invmf::make_function("phi"), invmf::parse_aggregate("count"));
  ASSERT_TRUE(report.result);
  EXPECT_EQ(std::get<BigInt>(*report.result), 10);
  const auto set = invmf::invert(fact(12), invmf::make_function("sigma", 1), invmf::parse_aggregate("set"));
  EXPECT_EQ(std::get<std::vector<BigInt>>(*set.result), to_big({6, 11}));
  EXPECT_THROW(invmf::make_function("tau"), std::invalid_argument);
  EXPECT_THROW(invmf::make_function("sigma", 0), std::invalid_argument);
}

TEST(Invert, LatticeCapPropagates) {
  invmf::InvertOptions options;
  options.lattice.max_divisors = 100;
  EXPECT_THROW(invmf::invert(fact(720720), invmf::Totient{}, invmf::SumPowAggregator{0}, options),
               invmf::ResourceLimitError);
}
