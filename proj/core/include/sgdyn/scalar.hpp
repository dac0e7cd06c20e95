#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sgdyn {

/// Exact rational with 64-bit numerator and positive denominator, always in
/// lowest terms. Intermediate products run through 128-bit arithmetic and any
/// result that does not fit back into 64 bits throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  Rational inverse() const;

  /// "a" when integral, otherwise "a/b".
  std::string str() const;

  static Rational parse(const std::string& s);

 private:
  static Rational make(__int128 n, __int128 d);
  long long num_;
  long long den_;
};

/// Largest radicand the canonicalizer will factor. Square-free extraction is
/// plain trial division, which is fine for products of small cocycle
/// denominators but not for arbitrary integers.
inline constexpr long long kMaxRadicand = 1'000'000'000'000LL;

/// Splits n > 0 as s*s*r with r square-free; returns {s, r}.
std::pair<long long, long long> square_free_split(long long n);

/// Finite sum  sum_i q_i * sqrt(r_i)  over pairwise distinct square-free
/// radicands r_i >= 1, with rational q_i. The radicand-1 term is the rational
/// part. Terms with zero coefficient are never stored and terms are kept
/// sorted by radicand, so a value has exactly one representation and equality
/// is representation equality. All scalars are real; conjugation is the
/// identity.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Rational& q);
  Scalar(long long n) : Scalar(Rational(n)) {}

  /// q * sqrt(r) in canonical form, r a positive rational: sqrt(a/b) is
  /// rewritten as sqrt(ab)/b and the largest square factor is extracted from
  /// the integer radicand. Throws std::domain_error for r <= 0.
  static Scalar radical(const Rational& q, const Rational& r);

  /// sqrt(r) for positive rational r.
  static Scalar sqrt(const Rational& r) { return radical(Rational(1), r); }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Rational part access; throws unless the value is rational.
  Rational rational_value() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Multiplicative inverse of a single-term scalar q*sqrt(r). General
  /// multi-term inverses are not needed anywhere and throw.
  Scalar inverse() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  const std::vector<std::pair<long long, Rational>>& terms() const { return terms_; }

  /// "q1*sqrt(r1) + q2*sqrt(r2)" with the rational part rendered bare.
  std::string str() const;

 private:
  void add_term(long long radicand, const Rational& q);
  // (radicand, coefficient), sorted by radicand, no zero coefficients.
  std::vector<std::pair<long long, Rational>> terms_;
};

}  // namespace sgdyn
