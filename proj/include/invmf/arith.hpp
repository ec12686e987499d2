#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "invmf/bigint.hpp"

namespace invmf {

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline constexpr std::array<std::uint32_t, 25> kSmallPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Strong probable-prime test to base a for odd n > 2.
inline bool strong_probable_prime_u64(std::uint64_t n, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Jim Sinclair's base set is deterministic for all n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint32_t p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 97ull * 97ull) return true;
  static constexpr std::array<std::uint64_t, 7> kBases = {
      2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (std::uint64_t a : kBases) {
    if (!strong_probable_prime_u64(n, a)) return false;
  }
  return true;
}

inline bool strong_probable_prime(const BigInt& n, const BigInt& a) {
  BigInt d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

inline void halve_mod(BigInt& x, const BigInt& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
}

inline void reduce_mod(BigInt& x, const BigInt& n) {
  mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
// n must be odd, > 2, and not a perfect square.
inline bool strong_lucas_probable_prime(const BigInt& n) {
  long d_param = 5;
  for (;;) {
    const BigInt d_big(d_param);
    const int j = mpz_jacobi(d_big.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) {
      BigInt g = abs(d_big);
      if (g != n) return false;
    }
    d_param = d_param > 0 ? -(d_param + 2) : -d_param + 2;
  }
  const long p_param = 1;
  const BigInt q_param((1 - d_param) / 4);

  BigInt k = n + 1;
  const unsigned long s = mpz_scan1(k.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(k.get_mpz_t(), k.get_mpz_t(), s);

  BigInt u = 1;
  BigInt v = p_param;
  BigInt qk = q_param;
  reduce_mod(qk, n);
  const BigInt d_mod = [&] {
    BigInt t(d_param);
    reduce_mod(t, n);
    return t;
  }();
  BigInt q_mod = q_param;
  reduce_mod(q_mod, n);

  const long bits = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2));
  for (long i = bits - 2; i >= 0; --i) {
    // doubling: index m -> 2m
    u = u * v;
    reduce_mod(u, n);
    v = v * v - 2 * qk;
    reduce_mod(v, n);
    qk = qk * qk;
    reduce_mod(qk, n);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      // increment: index m -> m + 1
      BigInt u_next = p_param * u + v;
      BigInt v_next = d_mod * u + p_param * v;
      reduce_mod(u_next, n);
      reduce_mod(v_next, n);
      halve_mod(u_next, n);
      halve_mod(v_next, n);
      u = std::move(u_next);
      v = std::move(v_next);
      qk = qk * q_mod;
      reduce_mod(qk, n);
    }
  }
  if (sgn(u) == 0 || sgn(v) == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = v * v - 2 * qk;
    reduce_mod(v, n);
    if (sgn(v) == 0) return true;
    qk = qk * qk;
    reduce_mod(qk, n);
  }
  return false;
}

}  // namespace detail

/// Primality test. Exact below 2^64; above, a Baillie-PSW check followed by
/// 64 Miller-Rabin rounds with pseudo-random bases drawn from a fixed seed, so
/// the answer is a pure function of x.
inline bool is_prime(const BigInt& x) {
  if (sgn(x) <= 0) return false;
  if (fits_u64(x)) return detail::is_prime_u64(to_u64(x));
  for (std::uint32_t p : detail::kSmallPrimes) {
    if (mpz_divisible_ui_p(x.get_mpz_t(), p)) return false;
  }
  if (!detail::strong_probable_prime(x, BigInt(2))) return false;
  if (mpz_perfect_square_p(x.get_mpz_t())) return false;
  if (!detail::strong_lucas_probable_prime(x)) return false;

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x9E3779B97F4A7C15ul);
  const BigInt span = x - 3;  // bases drawn from [2, x-2]
  for (int round = 0; round < 64; ++round) {
    const BigInt a = rng.get_z_range(span) + 2;
    if (!detail::strong_probable_prime(x, a)) return false;
  }
  return true;
}

inline bool is_prime(std::uint64_t x) { return detail::is_prime_u64(x); }

// ---------------------------------------------------------------------------
// Integer roots
// ---------------------------------------------------------------------------

/// Largest t with t^r <= x, for x >= 1 and r >= 1.
inline BigInt integer_root(const BigInt& x, unsigned long r) {
  if (r == 0) throw std::invalid_argument("integer_root: r must be positive");
  if (sgn(x) < 0) throw std::invalid_argument("integer_root: x must be nonnegative");
  if (r == 1 || x <= 1) return x;
  if (r >= mpz_sizeinbase(x.get_mpz_t(), 2)) return 1;  // 2^r > x

  // Floating-point estimate of x^(1/r) from log2(x).
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  const double log2_root = (std::log2(mant) + static_cast<double>(exp2)) / static_cast<double>(r);
  BigInt t;
  if (log2_root < 52.0) {
    t = BigInt(std::ceil(std::exp2(log2_root) * (1.0 + 0x1p-30))) + 1;
  } else {
    const long shift = static_cast<long>(log2_root) - 52;
    mpz_set_d(t.get_mpz_t(), std::exp2(log2_root - static_cast<double>(shift)) * (1.0 + 0x1p-30));
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    t += 1;
  }
  // Newton's method descends monotonically to the floor only from above.
  while (pow(t, r) < x) t *= 2;

  for (;;) {
    const BigInt t_pow = pow(t, r - 1);
    BigInt next = ((r - 1) * t + x / t_pow) / r;
    if (next >= t) break;
    t = std::move(next);
  }
  while (pow(t, r) > x) --t;
  while (pow(t + 1, r) <= x) ++t;
  return t;
}

// ---------------------------------------------------------------------------
// Factored integers
// ---------------------------------------------------------------------------

struct PrimePower {
  BigInt prime;
  unsigned long exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer carried together with its canonical prime factorization.
class FactoredInteger {
 public:
  FactoredInteger() : value_(1) {}

  /// Validates primality, ordering and exponents; throws std::invalid_argument.
  static FactoredInteger from_factors(std::vector<PrimePower> factors) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].exponent == 0) {
        throw std::invalid_argument("zero exponent for prime " + to_decimal(factors[i].prime));
      }
      if (!is_prime(factors[i].prime)) {
        throw std::invalid_argument(to_decimal(factors[i].prime) + " is not prime");
      }
      if (i > 0 && factors[i - 1].prime >= factors[i].prime) {
        throw std::invalid_argument("primes must be strictly increasing");
      }
    }
    return FactoredInteger(std::move(factors));
  }

  /// Builds from an unordered prime -> exponent multiset; primality is checked.
  static FactoredInteger from_map(const std::map<BigInt, unsigned long>& exponents) {
    std::vector<PrimePower> factors;
    for (const auto& [p, e] : exponents) {
      if (e > 0) factors.push_back({p, e});
    }
    return from_factors(std::move(factors));
  }

  const BigInt& value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  std::size_t omega() const { return factors_.size(); }

  unsigned long exponent_of(const BigInt& p) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                               [](const PrimePower& pp, const BigInt& q) { return pp.prime < q; });
    return (it != factors_.end() && it->prime == p) ? it->exponent : 0;
  }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& [p, e] : factors_) {
      if (!out.empty()) out += '*';
      out += to_decimal(p);
      if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
  }

  friend bool operator==(const FactoredInteger& a, const FactoredInteger& b) {
    return a.factors_ == b.factors_;
  }

  friend FactoredInteger operator*(const FactoredInteger& a, const FactoredInteger& b) {
    std::vector<PrimePower> merged;
    merged.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
      if (j == b.factors_.end() || (i != a.factors_.end() && i->prime < j->prime)) {
        merged.push_back(*i++);
      } else if (i == a.factors_.end() || j->prime < i->prime) {
        merged.push_back(*j++);
      } else {
        merged.push_back({i->prime, i->exponent + j->exponent});
        ++i;
        ++j;
      }
    }
    return FactoredInteger(std::move(merged));
  }

 private:
  explicit FactoredInteger(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
    value_ = 1;
    for (const auto& [p, e] : factors_) value_ *= pow(p, e);
  }

  BigInt value_;
  std::vector<PrimePower> factors_;
};

/// Exponent of p in x (0 when p does not divide x).
inline unsigned long valuation(const BigInt& p, const FactoredInteger& x) { return x.exponent_of(p); }

inline unsigned long valuation(const BigInt& p, const BigInt& x) {
  if (p < 2) throw std::invalid_argument("valuation: p must be at least 2");
  if (sgn(x) == 0) throw std::invalid_argument("valuation: x must be nonzero");
  BigInt rest;
  return mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
}

// ---------------------------------------------------------------------------
// Factorization (convenience for moderate inputs)
// ---------------------------------------------------------------------------

/// Primes <= limit by the sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

struct FactorizeOptions {
  std::uint32_t trial_limit = 1'000'000;
  /// Total Pollard-rho iterations allowed across all splits.
  std::uint64_t rho_budget = 1ull << 26;
};

namespace detail {

inline const std::vector<std::uint32_t>& trial_primes(std::uint32_t limit) {
  static const std::vector<std::uint32_t> table = primes_up_to(1'000'000);
  if (limit > 1'000'000) throw std::invalid_argument("trial_limit above 10^6 is not supported");
  return table;
}

// Brent's variant of Pollard's rho. Returns a nontrivial factor of the odd
// composite n, or 0 once the budget is spent.
inline BigInt pollard_brent(const BigInt& n, std::uint64_t& budget) {
  constexpr std::uint64_t kBatch = 128;
  for (unsigned long c = 1; c < 64; ++c) {
    BigInt y = 2, x, ys, g = 1, q = 1;
    std::uint64_t r = 1;
    auto step = [&](BigInt& v) {
      v = v * v + c;
      reduce_mod(v, n);
    };
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t m = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < m; ++i) {
          step(y);
          q = q * abs(x - y);
          reduce_mod(q, n);
        }
        if (budget < m) return 0;
        budget -= m;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      // Batched gcd overshot; replay one step at a time.
      do {
        step(ys);
        BigInt diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

inline void split_composite(const BigInt& n, std::map<BigInt, unsigned long>& out, std::uint64_t& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long r = mpz_sizeinbase(n.get_mpz_t(), 2); r >= 2; --r) {
      BigInt root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), r) != 0) {
        std::map<BigInt, unsigned long> sub;
        split_composite(root, sub, budget);
        for (const auto& [p, e] : sub) out[p] += e * r;
        return;
      }
    }
  }
  const BigInt f = pollard_brent(n, budget);
  if (f == 0) {
    throw ResourceLimitError("factorization effort exhausted on " + to_decimal(n) +
                             "; supply the factored form explicitly");
  }
  split_composite(f, out, budget);
  split_composite(n / f, out, budget);
}

}  // namespace detail

/// Canonical factorization by trial division and Pollard-Brent. Throws
/// ResourceLimitError once the configured effort is exhausted.
inline FactoredInteger factorize(const BigInt& x, const FactorizeOptions& options = {}) {
  if (sgn(x) <= 0) throw std::invalid_argument("factorize: x must be positive");
  std::map<BigInt, unsigned long> exponents;
  BigInt rest = x;
  for (std::uint32_t p : detail::trial_primes(options.trial_limit)) {
    if (p > options.trial_limit) break;
    if (BigInt(p) * p > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      const BigInt pb(p);
      exponents[pb] = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pb.get_mpz_t());
    }
  }
  std::uint64_t budget = options.rho_budget;
  detail::split_composite(rest, exponents, budget);
  return FactoredInteger::from_map(exponents);
}

// ---------------------------------------------------------------------------
// Multiplicative functions on prime powers
// ---------------------------------------------------------------------------

/// phi(p^e) = (p - 1) p^(e - 1).
inline BigInt eval_phi(const BigInt& p, unsigned long e) {
  if (e == 0) return 1;
  return (p - 1) * pow(p, e - 1);
}

/// sigma_k(p^e) = 1 + p^k + ... + p^(ek), summed exactly.
inline BigInt eval_sigma(const BigInt& p, unsigned long e, unsigned long k) {
  const BigInt pk = pow(p, k);
  BigInt s = 1;
  for (unsigned long i = 0; i < e; ++i) s = s * pk + 1;
  return s;
}

}  // namespace invmf
