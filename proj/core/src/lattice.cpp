#include "sgdyn/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sgdyn {

namespace {

std::vector<std::pair<long long, long long>> factorize(long long n) {
  if (n <= 0) throw std::domain_error("positive integer expected");
  std::vector<std::pair<long long, long long>> f;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    long long e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    f.emplace_back(d, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

void require_same_group(const LatticeElement& a, const LatticeElement& b) {
  if (a.kind() != b.kind() || a.vec().size() != b.vec().size())
    throw std::invalid_argument("lattice elements from different groups");
}

}  // namespace

LatticeGroup LatticeGroup::int_vector(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  LatticeGroup g;
  g.kind_ = LatticeKind::int_vector;
  g.dim_ = dim;
  return g;
}

LatticeGroup LatticeGroup::positive_rationals() {
  LatticeGroup g;
  g.kind_ = LatticeKind::positive_rationals;
  g.dim_ = 0;
  return g;
}

LatticeElement LatticeGroup::identity() const {
  LatticeElement e;
  e.kind_ = kind_;
  if (kind_ == LatticeKind::int_vector) e.vec_.assign(dim_, 0);
  return e;
}

LatticeElement LatticeGroup::from_vector(const std::vector<long long>& v) const {
  if (kind_ != LatticeKind::int_vector || static_cast<int>(v.size()) != dim_)
    throw std::invalid_argument("vector does not fit this group");
  LatticeElement e;
  e.kind_ = kind_;
  e.vec_ = v;
  return e;
}

LatticeElement LatticeGroup::from_integer(long long n) const {
  if (kind_ != LatticeKind::positive_rationals)
    throw std::invalid_argument("from_integer needs the positive-rationals group");
  LatticeElement e;
  e.kind_ = kind_;
  e.factors_ = factorize(n);
  return e;
}

std::vector<LatticeElement> LatticeGroup::positive_box(int bound) const {
  if (bound < 1) throw std::invalid_argument("box bound must be >= 1");
  std::vector<LatticeElement> out;
  if (kind_ == LatticeKind::positive_rationals) {
    for (long long n = 1; n <= bound; ++n) out.push_back(from_integer(n));
    return out;
  }
  std::vector<long long> v(dim_, 0);
  while (true) {
    out.push_back(from_vector(v));
    int i = dim_ - 1;
    while (i >= 0 && v[i] == bound) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

std::vector<LatticeElement> LatticeGroup::group_box(int bound) const {
  if (kind_ != LatticeKind::int_vector)
    throw std::invalid_argument("group_box is only enumerable for Z^d");
  std::vector<LatticeElement> out;
  std::vector<long long> v(dim_, -bound);
  while (true) {
    out.push_back(from_vector(v));
    int i = dim_ - 1;
    while (i >= 0 && v[i] == bound) v[i--] = -bound;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

bool LatticeElement::is_identity() const {
  if (kind_ == LatticeKind::positive_rationals) return factors_.empty();
  return std::all_of(vec_.begin(), vec_.end(), [](long long c) { return c == 0; });
}

bool LatticeElement::is_positive() const {
  if (kind_ == LatticeKind::positive_rationals)
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const auto& f) { return f.second >= 0; });
  return std::all_of(vec_.begin(), vec_.end(), [](long long c) { return c >= 0; });
}

LatticeElement LatticeElement::operator*(const LatticeElement& o) const {
  require_same_group(*this, o);
  LatticeElement r;
  r.kind_ = kind_;
  if (kind_ == LatticeKind::int_vector) {
    r.vec_.resize(vec_.size());
    for (size_t i = 0; i < vec_.size(); ++i) r.vec_[i] = vec_[i] + o.vec_[i];
    return r;
  }
  // merge exponent maps
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      long long e = a->second + b->second;
      if (e != 0) r.factors_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return r;
}

LatticeElement LatticeElement::inverse() const {
  LatticeElement r(*this);
  for (auto& c : r.vec_) c = -c;
  for (auto& f : r.factors_) f.second = -f.second;
  return r;
}

LatticeElement LatticeElement::meet(const LatticeElement& o) const {
  require_same_group(*this, o);
  LatticeElement r;
  r.kind_ = kind_;
  if (kind_ == LatticeKind::int_vector) {
    r.vec_.resize(vec_.size());
    for (size_t i = 0; i < vec_.size(); ++i) r.vec_[i] = std::min(vec_[i], o.vec_[i]);
    return r;
  }
  // componentwise min of exponents; on positive integers this is the gcd
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      if (a->second < 0) r.factors_.push_back(*a);
      ++a;
    } else if (a == factors_.end() || b->first < a->first) {
      if (b->second < 0) r.factors_.push_back(*b);
      ++b;
    } else {
      long long e = std::min(a->second, b->second);
      if (e != 0) r.factors_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return r;
}

LatticeElement LatticeElement::join(const LatticeElement& o) const {
  return inverse().meet(o.inverse()).inverse();
}

bool LatticeElement::leq(const LatticeElement& o) const {
  return (inverse() * o).is_positive();
}

long long LatticeElement::to_integer() const {
  if (kind_ != LatticeKind::positive_rationals || !is_positive())
    throw std::domain_error("to_integer needs a positive-rationals element in P");
  long long n = 1;
  for (const auto& [p, e] : factors_)
    for (long long i = 0; i < e; ++i) {
      if (n > kMaxRadicand / p) throw std::overflow_error("lattice element too large");
      n *= p;
    }
  return n;
}

bool operator<(const LatticeElement& a, const LatticeElement& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.vec_ != b.vec_) return a.vec_ < b.vec_;
  return a.factors_ < b.factors_;
}

std::string LatticeElement::str() const {
  std::ostringstream os;
  if (kind_ == LatticeKind::int_vector) {
    if (vec_.size() == 1) {
      os << vec_[0];
    } else {
      os << '(';
      for (size_t i = 0; i < vec_.size(); ++i) os << (i ? "," : "") << vec_[i];
      os << ')';
    }
    return os.str();
  }
  if (factors_.empty()) return "1";
  bool first = true;
  for (const auto& [p, e] : factors_) {
    if (!first) os << '*';
    first = false;
    os << p;
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

std::string MiniSquare::str() const {
  return "(" + s.str() + ", " + t.str() + ", " + u.str() + ", " + v.str() + ")";
}

bool is_mini_square(const MiniSquare& q) {
  if (!q.s.is_positive() || !q.t.is_positive() || !q.u.is_positive() || !q.v.is_positive())
    return false;
  if (q.s * q.u != q.t * q.v) return false;
  if (!q.s.meet(q.t).is_identity()) return false;
  return q.u.inverse().join(q.v.inverse()).is_identity();
}

MiniSquare mini_square_from_pair(const LatticeElement& m, const LatticeElement& n) {
  LatticeElement lo = m.meet(n), hi = m.join(n);
  MiniSquare q{lo.inverse() * m, lo.inverse() * n, m.inverse() * hi, n.inverse() * hi};
  if (!is_mini_square(q))
    throw std::logic_error("mini-square construction failed for " + m.str() + ", " + n.str());
  return q;
}

std::pair<LatticeElement, LatticeElement> complete_mini_square(const LatticeElement& s,
                                                               const LatticeElement& t) {
  if (!s.is_positive() || !t.is_positive() || !s.meet(t).is_identity())
    throw std::invalid_argument("completion needs s,t in P with s meet t = 1");
  LatticeElement hi = s.join(t);
  return {s.inverse() * hi, t.inverse() * hi};
}

std::pair<LatticeElement, LatticeElement> decompose_left(const LatticeElement& x) {
  LatticeElement lo = x.meet(x.inverse() * x);  // x ^ 1
  return {lo.inverse(), lo.inverse() * x};
}

std::pair<LatticeElement, LatticeElement> decompose_right(const LatticeElement& x) {
  LatticeElement hi = x.join(x.inverse() * x);  // x v 1
  return {hi, x.inverse() * hi};
}

std::vector<MiniSquare> mini_squares_in_box(const LatticeGroup& g, int bound) {
  std::vector<MiniSquare> out;
  auto box = g.positive_box(bound);
  for (const auto& s : box) {
    for (const auto& t : box) {
      if (!s.meet(t).is_identity()) continue;
      auto [u, v] = complete_mini_square(s, t);
      out.push_back(MiniSquare{s, t, u, v});
    }
  }
  return out;
}

}  // namespace sgdyn
