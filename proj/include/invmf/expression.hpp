#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "invmf/arith.hpp"
#include "invmf/bigint.hpp"

namespace invmf {

/// Input rejected by the expression parser; `position` is a 0-based offset
/// into the source text.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Largest m accepted for m! and m#; the prime sieve is built up to m.
inline constexpr std::uint64_t kMaxSymbolicArgument = 100'000'000;

// ---------------------------------------------------------------------------
// Symbolic factorizations
// ---------------------------------------------------------------------------

/// m! via Legendre's formula: v_p(m!) = sum_{i>=1} floor(m / p^i).
inline FactoredInteger factorial_factored(std::uint64_t m) {
  if (m > kMaxSymbolicArgument) throw ResourceLimitError("factorial argument too large: " + std::to_string(m));
  std::vector<PrimePower> factors;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(m))) {
    unsigned long e = 0;
    for (std::uint64_t q = m / p; q > 0; q /= p) e += q;
    factors.push_back({BigInt(p), e});
  }
  return FactoredInteger::from_factors(std::move(factors));
}

/// m#: product of the primes <= m.
inline FactoredInteger primorial_factored(std::uint64_t m) {
  if (m > kMaxSymbolicArgument) throw ResourceLimitError("primorial argument too large: " + std::to_string(m));
  std::vector<PrimePower> factors;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(m))) factors.push_back({BigInt(p), 1});
  return FactoredInteger::from_factors(std::move(factors));
}

/// Product of the first `count` primes (p_count#).
inline FactoredInteger first_primes_product(std::uint64_t count) {
  if (count > 5'000'000) throw ResourceLimitError("too many primes requested: " + std::to_string(count));
  std::vector<PrimePower> factors;
  std::uint32_t limit = 64;
  std::vector<std::uint32_t> primes = primes_up_to(limit);
  while (primes.size() < count) {
    limit *= 2;
    primes = primes_up_to(limit);
  }
  for (std::uint64_t i = 0; i < count; ++i) factors.push_back({BigInt(primes[i]), 1});
  return FactoredInteger::from_factors(std::move(factors));
}

/// base^exp, factoring only the base.
inline FactoredInteger power_factored(const BigInt& base, unsigned long exp, const FactorizeOptions& options = {}) {
  if (exp == 0 || base == 1) return FactoredInteger{};
  std::vector<PrimePower> factors = factorize(base, options).factors();
  for (auto& pp : factors) {
    if (pp.exponent > ~0ul / exp) throw ResourceLimitError("exponent overflow in power");
    pp.exponent *= exp;
  }
  return FactoredInteger::from_factors(std::move(factors));
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class TermKind { Integer, Factorial, Primorial, Power };

struct ExpressionTerm {
  TermKind kind = TermKind::Integer;
  BigInt base;
  unsigned long exponent = 1;  // Power only
  std::size_t position = 0;
};

enum class ExpressionKind { Literal, Factored, Factorial, Primorial, Power, Product };

/// Parsed form of an input such as "10!", "7#", "10^6" or "2^4*3^2*5*7".
///
/// A product made only of plain integers and integer powers is a factored
/// literal: every base must be prime. Any other product is evaluated term by
/// term, factoring plain integers and power bases as needed.
struct InputExpression {
  std::string source;
  ExpressionKind kind = ExpressionKind::Literal;
  std::vector<ExpressionTerm> terms;
};

namespace detail {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  std::vector<ExpressionTerm> parse() {
    std::vector<ExpressionTerm> terms;
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    terms.push_back(term());
    for (;;) {
      skip_space();
      if (pos_ == text_.size()) break;
      if (text_[pos_] != '*') throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
      ++pos_;
      terms.push_back(term());
    }
    return terms;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  BigInt integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected an integer", start);
    return BigInt(std::string(text_.substr(start, pos_ - start)), 10);
  }

  ExpressionTerm term() {
    skip_space();
    ExpressionTerm t;
    t.position = pos_;
    t.base = integer();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '!') {
      ++pos_;
      t.kind = TermKind::Factorial;
    } else if (pos_ < text_.size() && text_[pos_] == '#') {
      ++pos_;
      t.kind = TermKind::Primorial;
    } else if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      const std::size_t exp_pos = pos_;
      const BigInt e = integer();
      if (!fits_u64(e) || e > BigInt(1'000'000'000)) throw ParseError("exponent too large", exp_pos);
      t.kind = TermKind::Power;
      t.exponent = e.get_ui();
    }
    if (sgn(t.base) == 0 && (t.kind == TermKind::Integer || t.kind == TermKind::Power)) {
      throw ParseError("zero is not a valid factor", t.position);
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline InputExpression parse_input(std::string_view text) {
  InputExpression expr;
  expr.source = std::string(text);
  expr.terms = detail::ExpressionParser(text).parse();

  if (expr.terms.size() == 1) {
    switch (expr.terms.front().kind) {
      case TermKind::Integer: expr.kind = ExpressionKind::Literal; break;
      case TermKind::Factorial: expr.kind = ExpressionKind::Factorial; break;
      case TermKind::Primorial: expr.kind = ExpressionKind::Primorial; break;
      case TermKind::Power: expr.kind = ExpressionKind::Power; break;
    }
    return expr;
  }

  const bool plain = std::all_of(expr.terms.begin(), expr.terms.end(), [](const ExpressionTerm& t) {
    return t.kind == TermKind::Integer || t.kind == TermKind::Power;
  });
  expr.kind = plain ? ExpressionKind::Factored : ExpressionKind::Product;
  if (plain) {
    for (const auto& t : expr.terms) {
      if (t.base == 1) continue;
      if (!is_prime(t.base)) {
        throw ParseError("factored literal has non-prime base " + to_decimal(t.base), t.position);
      }
    }
  }
  return expr;
}

inline FactoredInteger evaluate(const InputExpression& expr, const FactorizeOptions& options = {}) {
  auto small_argument = [](const ExpressionTerm& t) {
    if (!fits_u64(t.base)) throw ResourceLimitError("argument too large: " + to_decimal(t.base));
    return to_u64(t.base);
  };

  FactoredInteger out;
  for (const auto& t : expr.terms) {
    switch (t.kind) {
      case TermKind::Integer:
        out = out * (expr.kind == ExpressionKind::Factored && t.base != 1
                         ? FactoredInteger::from_factors({{t.base, 1}})
                         : factorize(t.base, options));
        break;
      case TermKind::Factorial: out = out * factorial_factored(small_argument(t)); break;
      case TermKind::Primorial: out = out * primorial_factored(small_argument(t)); break;
      case TermKind::Power:
        if (t.exponent == 0) break;
        out = out * (expr.kind == ExpressionKind::Factored && t.base != 1
                         ? FactoredInteger::from_factors({{t.base, t.exponent}})
                         : power_factored(t.base, t.exponent, options));
        break;
    }
  }
  return out;
}

inline FactoredInteger parse_and_evaluate(std::string_view text, const FactorizeOptions& options = {}) {
  return evaluate(parse_input(text), options);
}

}  // namespace invmf
