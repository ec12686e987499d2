#pragma once

// Brute-force reference computations. Nothing here calls into the engine's
// arithmetic (primality, roots, factorize, eval_*); only the big-integer layer
// is shared.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "invmf/bigint.hpp"

namespace invmf::oracle {

struct OracleOptions {
  /// Largest sieve length accepted (phi: 4 bytes per entry).
  std::uint64_t max_entries = 1ull << 26;
};

/// phi(m) for m = 0..limit (index 0 unused) by an Eratosthenes-style sieve.
inline std::vector<std::uint32_t> sieve_phi(std::uint64_t limit, const OracleOptions& options = {}) {
  if (limit == 0) throw std::invalid_argument("sieve_phi: limit must be positive");
  if (limit > options.max_entries || limit >= (1ull << 32)) {
    throw ResourceLimitError("sieve_phi: limit " + std::to_string(limit) + " exceeds the memory budget");
  }
  std::vector<std::uint32_t> phi(limit + 1);
  for (std::uint64_t i = 0; i <= limit; ++i) phi[i] = static_cast<std::uint32_t>(i);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (phi[p] != p) continue;  // untouched entries are prime
    for (std::uint64_t m = p; m <= limit; m += p) phi[m] -= phi[m] / static_cast<std::uint32_t>(p);
  }
  return phi;
}

/// sigma_k(m) for m = 0..limit by summing d^k into every multiple of d.
inline std::vector<BigInt> sieve_sigma(unsigned long k, std::uint64_t limit, const OracleOptions& options = {}) {
  if (limit == 0) throw std::invalid_argument("sieve_sigma: limit must be positive");
  if (limit > options.max_entries / 8) {
    throw ResourceLimitError("sieve_sigma: limit " + std::to_string(limit) + " exceeds the memory budget");
  }
  std::vector<BigInt> sigma(limit + 1, BigInt(0));
  for (std::uint64_t d = 1; d <= limit; ++d) {
    BigInt dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
    for (std::uint64_t m = d; m <= limit; m += d) sigma[m] += dk;
  }
  return sigma;
}

/// Smallest bound that contains every phi-pre-image of n: phi(m) >= sqrt(m/2).
inline std::uint64_t phi_search_bound(std::uint64_t n) { return 2 * n * n; }

/// sigma_k(m) >= m.
inline std::uint64_t sigma_search_bound(std::uint64_t n) { return n; }

enum class Function { Phi, Sigma };

struct FunctionRef {
  Function which = Function::Phi;
  unsigned long k = 1;
};

/// All m <= bound with f(m) = n, ascending.
inline std::vector<std::uint64_t> oracle_preimages(const FunctionRef& f, std::uint64_t n, std::uint64_t bound,
                                                   const OracleOptions& options = {}) {
  std::vector<std::uint64_t> out;
  if (f.which == Function::Phi) {
    const auto phi = sieve_phi(bound, options);
    for (std::uint64_t m = 1; m <= bound; ++m) {
      if (phi[m] == n) out.push_back(m);
    }
  } else {
    const auto sigma = sieve_sigma(f.k, bound, options);
    const BigInt target = from_u64(n);
    for (std::uint64_t m = 1; m <= bound; ++m) {
      if (sigma[m] == target) out.push_back(m);
    }
  }
  return out;
}

/// Pre-images of every n in [1, max_n] from a single sieve, indexed by n.
inline std::vector<std::vector<std::uint64_t>> preimage_table(const FunctionRef& f, std::uint64_t max_n,
                                                              const OracleOptions& options = {}) {
  std::vector<std::vector<std::uint64_t>> table(max_n + 1);
  if (f.which == Function::Phi) {
    const std::uint64_t bound = phi_search_bound(max_n);
    const auto phi = sieve_phi(bound, options);
    for (std::uint64_t m = 1; m <= bound; ++m) {
      if (phi[m] <= max_n) table[phi[m]].push_back(m);
    }
  } else {
    const std::uint64_t bound = sigma_search_bound(max_n);
    const auto sigma = sieve_sigma(f.k, bound, options);
    for (std::uint64_t m = 1; m <= bound; ++m) {
      if (sigma[m] <= max_n) table[sigma[m].get_ui()].push_back(m);
    }
  }
  return table;
}

/// phi(m) by trial division, for spot checks on values too large to sieve.
inline BigInt phi_direct(const BigInt& m) {
  BigInt rest = m, result = m;
  for (BigInt p = 2; p * p <= rest; ++p) {
    if (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p;
      result -= result / p;
    }
  }
  if (rest > 1) result -= result / rest;
  return result;
}

/// sigma_k(m) by trial division.
inline BigInt sigma_direct(unsigned long k, const BigInt& m) {
  BigInt rest = m, result = 1;
  auto power_sum = [k](const BigInt& p, unsigned long e) {
    BigInt pk, term = 1, sum = 1;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    for (unsigned long i = 0; i < e; ++i) {
      term *= pk;
      sum += term;
    }
    return sum;
  };
  for (BigInt p = 2; p * p <= rest; ++p) {
    unsigned long e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++e;
    }
    if (e > 0) result *= power_sum(p, e);
  }
  if (rest > 1) result *= power_sum(rest, 1);
  return result;
}

}  // namespace invmf::oracle
