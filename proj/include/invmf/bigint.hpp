#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace invmf {

static_assert(sizeof(unsigned long) == 8, "invmf assumes an LP64 platform");

/// Arbitrary-precision integer used for every value that may exceed a machine word.
using BigInt = mpz_class;

/// Raised when an input is too large for the configured effort or memory bound.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

inline BigInt from_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a decimal integer: " + std::string(text));
    }
  }
  return BigInt(std::string(text), 10);
}

inline bool fits_u64(const BigInt& x) {
  return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& x) {
  if (!fits_u64(x)) throw std::out_of_range("value does not fit in 64 bits");
  return mpz_get_ui(x.get_mpz_t());
}

inline BigInt from_u64(std::uint64_t x) {
  BigInt r;
  mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(x));
  return r;
}

inline BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline bool divides(const BigInt& d, const BigInt& x) {
  return sgn(d) != 0 && mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace invmf
