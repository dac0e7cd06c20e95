#include "sgdyn/scalar.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace sgdyn {

namespace {

long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

__int128 gcd_128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMaxLL = std::numeric_limits<long long>::max();

}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd_128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMaxLL || n < -kMaxLL || d > kMaxLL)
    throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<long long>(n);
  r.den_ = static_cast<long long>(d);
  return r;
}

Rational::Rational(long long n, long long d) { *this = make(n, d); }

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  *this = make(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
               static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  *this = make(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("division by zero rational");
  *this = make(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
  return *this;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

Rational Rational::inverse() const {
  if (num_ == 0) throw std::domain_error("inverse of zero rational");
  return Rational(den_, num_);
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num_;
  if (den_ != 1) os << '/' << den_;
  return os.str();
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational: " + s);
  }
}

std::pair<long long, long long> square_free_split(long long n) {
  if (n <= 0) throw std::domain_error("square-free split needs a positive integer");
  if (n > kMaxRadicand) throw std::overflow_error("radicand exceeds supported bound");
  long long outside = 1, inside = 1;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int mult = 0;
    while (n % d == 0) {
      n /= d;
      ++mult;
    }
    for (int i = 0; i < mult / 2; ++i) outside *= d;
    if (mult % 2) inside *= d;
  }
  inside *= n;  // leftover prime
  return {outside, inside};
}

Scalar::Scalar(const Rational& q) {
  if (!q.is_zero()) terms_.emplace_back(1, q);
}

void Scalar::add_term(long long radicand, const Rational& q) {
  if (q.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), radicand,
                             [](const auto& t, long long r) { return t.first < r; });
  if (it != terms_.end() && it->first == radicand) {
    it->second += q;
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, {radicand, q});
  }
}

Scalar Scalar::radical(const Rational& q, const Rational& r) {
  if (r.num() <= 0) throw std::domain_error("radicand must be positive");
  // sqrt(a/b) = sqrt(a*b)/b
  __int128 ab = static_cast<__int128>(r.num()) * r.den();
  if (ab > kMaxRadicand) throw std::overflow_error("radicand exceeds supported bound");
  auto [outside, inside] = square_free_split(static_cast<long long>(ab));
  Scalar s;
  s.add_term(inside, q * Rational(outside, r.den()));
  return s;
}

bool Scalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1);
}

Rational Scalar::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].first == 1) return terms_[0].second;
  throw std::domain_error("scalar is not rational: " + str());
}

Scalar Scalar::operator-() const {
  Scalar s(*this);
  for (auto& t : s.terms_) t.second = -t.second;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [r, q] : o.terms_) add_term(r, q);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [r1, q1] : a.terms_) {
    for (const auto& [r2, q2] : b.terms_) {
      // sqrt(r1)*sqrt(r2) = g*sqrt((r1/g)*(r2/g)) with g = gcd; the cofactors
      // are coprime and square-free, so the new radicand needs no refactoring.
      long long g = gcd_ll(r1, r2);
      __int128 rad = static_cast<__int128>(r1 / g) * (r2 / g);
      if (rad > kMaxRadicand) throw std::overflow_error("radicand exceeds supported bound");
      out.add_term(static_cast<long long>(rad), q1 * q2 * Rational(g));
    }
  }
  return out;
}

Scalar Scalar::inverse() const {
  if (terms_.empty()) throw std::domain_error("inverse of zero scalar");
  if (terms_.size() != 1)
    throw std::domain_error("inverse of multi-term scalar not supported: " + str());
  // 1/(q*sqrt(r)) = (1/(q*r))*sqrt(r)
  auto [r, q] = terms_[0];
  Scalar s;
  s.add_term(r, (q * Rational(r)).inverse());
  return s;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, q] : terms_) {
    Rational coeff = q;
    if (first) {
      first = false;
    } else if (coeff.is_negative()) {
      os << " - ";
      coeff = -coeff;
    } else {
      os << " + ";
    }
    if (r == 1) {
      os << coeff.str();
    } else if (coeff == Rational(1)) {
      os << "sqrt(" << r << ")";
    } else if (coeff == Rational(-1)) {
      os << "-sqrt(" << r << ")";
    } else {
      os << coeff.str() << "*sqrt(" << r << ")";
    }
  }
  return os.str();
}

}  // namespace sgdyn
