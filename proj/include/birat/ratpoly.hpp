#pragma once

#include <gmpxx.h>

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace birat {

/// Arbitrary-precision rational, always kept in canonical form (gcd 1, positive denominator).
using BigRational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal such as "-0.25" or "1e-2" exactly.
/// Throws ParseError on malformed input or a zero denominator.
BigRational parse_rational(std::string_view text);

std::string to_string(const BigRational& q);

/// Exact rational square root, when q is the square of a rational.
std::optional<BigRational> rational_sqrt(const BigRational& q);

/// Sparse polynomial in the three indeterminates x, y, h with exact rational coefficients.
///
/// Terms are kept in lexicographic order (x before y before h), leading term first.
/// No zero coefficient is ever stored.
class MultiPoly {
 public:
  enum Var : int { X = 0, Y = 1, H = 2 };
  using Exponents = std::array<unsigned, 3>;
  using TermMap = std::map<Exponents, BigRational, std::greater<>>;
  using VarNames = std::array<std::string_view, 3>;

  static constexpr VarNames kDefaultNames{"x", "y", "h"};

  MultiPoly() = default;
  MultiPoly(const BigRational& c);  // NOLINT: constants convert implicitly
  MultiPoly(long c);                // NOLINT
  MultiPoly(int c) : MultiPoly(static_cast<long>(c)) {}  // NOLINT

  static MultiPoly var(Var v);
  static MultiPoly monomial(const BigRational& c, Exponents e);

  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  BigRational coefficient(const Exponents& e) const;
  unsigned degree(Var v) const;
  unsigned total_degree() const;
  /// Leading (lexicographically largest) term; std::nullopt for the zero polynomial.
  std::optional<std::pair<Exponents, BigRational>> leading_term() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly operator-() const;
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  MultiPoly pow(unsigned n) const;

  BigRational eval(const BigRational& x, const BigRational& y, const BigRational& h) const;
  double eval_double(double x, double y, double h) const;

  /// Renders e.g. "3/2*x^2*h - y"; the zero polynomial renders as "0".
  std::string to_string(const VarNames& names = kDefaultNames) const;

  /// Parses the rendering grammar, plus parentheses and division by constants.
  static MultiPoly parse(std::string_view text);

 private:
  void add_term(const Exponents& e, const BigRational& c);

  TermMap terms_;
};

/// Square root r (positive leading coefficient) with r * r == p, or std::nullopt.
///
/// Digit-by-digit extraction in lexicographic order: each new term of r is fixed by
/// the leading term of p - r^2, so the undetermined coefficients come out of a
/// triangular system. The candidate root is verified by exact multiplication.
std::optional<MultiPoly> is_perfect_square(const MultiPoly& p);

}  // namespace birat
