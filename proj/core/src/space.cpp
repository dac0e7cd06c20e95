#include "sgdyn/space.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sgdyn {

namespace {

bool is_binary(const std::string& w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

// Smallest period of w: w is a power of its length-p prefix.
size_t primitive_period(const std::string& w) {
  for (size_t p = 1; p < w.size(); ++p) {
    if (w.size() % p) continue;
    bool ok = true;
    for (size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return w.size();
}

}  // namespace

Point Point::word(std::string prefix, std::string cycle) {
  if (cycle.empty()) throw std::invalid_argument("cycle must be nonempty");
  if (!is_binary(prefix) || !is_binary(cycle))
    throw std::invalid_argument("words must be over {0,1}");
  cycle.resize(primitive_period(cycle));
  // Absorb prefix symbols that already follow the cycle pattern: the sequence
  // p + c^inf equals p[:-1] + rot(c)^inf exactly when p ends with c's last
  // symbol, where rot moves that symbol to the front.
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    prefix.pop_back();
    cycle.insert(cycle.begin(), cycle.back());
    cycle.pop_back();
  }
  Point p;
  p.kind_ = Kind::word;
  p.prefix_ = std::move(prefix);
  p.cycle_ = std::move(cycle);
  return p;
}

Point Point::angle(const Rational& value) {
  if (value < Rational(0) || value >= Rational(1))
    throw std::invalid_argument("angle must lie in [0,1)");
  Point p;
  p.kind_ = Kind::angle;
  p.value_ = value;
  return p;
}

Point Point::parse(const std::string& literal) {
  auto bar = literal.find('|');
  if (bar != std::string::npos)
    return word(literal.substr(0, bar), literal.substr(bar + 1));
  return angle(Rational::parse(literal));
}

const Rational& Point::angle_value() const {
  if (kind_ != Kind::angle) throw std::domain_error("not an angle point");
  return value_;
}

int Point::bit(size_t i) const {
  if (kind_ != Kind::word) throw std::domain_error("coordinates need a word point");
  if (i < prefix_.size()) return prefix_[i] - '0';
  return cycle_[(i - prefix_.size()) % cycle_.size()] - '0';
}

std::string Point::head(size_t k) const {
  std::string h(k, '0');
  for (size_t i = 0; i < k; ++i) h[i] = static_cast<char>('0' + bit(i));
  return h;
}

std::string Point::str() const {
  if (kind_ == Kind::angle) return value_.str();
  return prefix_ + "|" + cycle_;
}

bool operator<(const Point& a, const Point& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.kind_ == Point::Kind::angle) {
    if (a.value_ != b.value_) return a.value_ < b.value_;
    return false;
  }
  if (a.prefix_.size() != b.prefix_.size()) return a.prefix_.size() < b.prefix_.size();
  if (a.cycle_.size() != b.cycle_.size()) return a.cycle_.size() < b.cycle_.size();
  if (a.prefix_ != b.prefix_) return a.prefix_ < b.prefix_;
  return a.cycle_ < b.cycle_;
}

size_t PointHash::operator()(const Point& p) const {
  std::hash<std::string> hs;
  size_t h = p.kind() == Point::Kind::word ? 0x9e3779b97f4a7c15ull : 0x517cc1b727220a95ull;
  if (p.kind() == Point::Kind::word) {
    h ^= hs(p.prefix()) + 0x9e3779b9 + (h << 6) + (h >> 2);
    h ^= hs(p.cycle()) + 0x9e3779b9 + (h << 6) + (h >> 2);
  } else {
    h ^= std::hash<long long>()(p.angle_value().num()) * 1000003u;
    h ^= std::hash<long long>()(p.angle_value().den());
  }
  return h;
}

std::vector<std::string> words_of_length(int len) {
  std::vector<std::string> out;
  out.reserve(size_t(1) << len);
  for (size_t i = 0; i < (size_t(1) << len); ++i) {
    std::string w(len, '0');
    for (int j = 0; j < len; ++j)
      if (i >> (len - 1 - j) & 1) w[j] = '1';
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Point> canonical_points(int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  std::vector<Point> out;
  for (int cl = 1; cl <= depth; ++cl) {
    for (const auto& cyc : words_of_length(cl)) {
      if (primitive_period(cyc) != cyc.size()) continue;
      for (int pl = 0; pl <= depth; ++pl) {
        for (const auto& pre : words_of_length(pl)) {
          if (!pre.empty() && pre.back() == cyc.back()) continue;  // not canonical
          Point p = Point::word(pre, cyc);
          out.push_back(std::move(p));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> circle_points(int count) {
  std::vector<Point> out;
  for (long long den = 1; static_cast<int>(out.size()) < count; ++den) {
    for (long long num = 0; num < den && static_cast<int>(out.size()) < count; ++num) {
      if (std::gcd(num, den) != 1) continue;
      out.push_back(Point::angle(Rational(num, den)));
    }
  }
  return out;
}

bool CylinderSet::contains(const Point& p) const { return p.head(word.size()) == word; }

size_t CylinderFunction::index_of(const std::string& word) {
  size_t idx = 0;
  for (char c : word) idx = idx * 2 + (c - '0');
  return idx;
}

CylinderFunction CylinderFunction::constant(const Scalar& c) {
  CylinderFunction f;
  f.depth_ = 0;
  f.table_ = {c};
  return f;
}

CylinderFunction CylinderFunction::indicator(const std::string& word, int cap) {
  if (!is_binary(word)) throw std::invalid_argument("indicator word must be binary");
  if (static_cast<int>(word.size()) > cap) throw std::length_error("depth cap exceeded");
  CylinderFunction f;
  f.depth_ = static_cast<int>(word.size());
  f.table_.assign(size_t(1) << f.depth_, Scalar());
  f.table_[index_of(word)] = Scalar(Rational(1));
  return f;
}

CylinderFunction CylinderFunction::from_table(int depth, std::vector<Scalar> table, int cap) {
  if (depth < 0 || depth > cap) throw std::length_error("depth cap exceeded");
  if (table.size() != (size_t(1) << depth))
    throw std::invalid_argument("table size must be 2^depth");
  CylinderFunction f;
  f.depth_ = depth;
  f.table_ = std::move(table);
  return f;
}

Scalar CylinderFunction::eval(const Point& p) const { return at(p.head(depth_)); }

const Scalar& CylinderFunction::at(const std::string& word) const {
  if (static_cast<int>(word.size()) != depth_)
    throw std::invalid_argument("word length must equal depth");
  return table_[index_of(word)];
}

CylinderFunction CylinderFunction::refined(int new_depth, int cap) const {
  if (new_depth < depth_) throw std::invalid_argument("refinement cannot lower depth");
  if (new_depth > cap) throw std::length_error("depth cap exceeded");
  CylinderFunction f;
  f.depth_ = new_depth;
  f.table_.resize(size_t(1) << new_depth);
  for (size_t i = 0; i < f.table_.size(); ++i)
    f.table_[i] = table_[i >> (new_depth - depth_)];
  return f;
}

CylinderFunction operator+(const CylinderFunction& a, const CylinderFunction& b) {
  int d = std::max(a.depth_, b.depth_);
  CylinderFunction fa = a.refined(d), fb = b.refined(d), out;
  out.depth_ = d;
  out.table_.resize(size_t(1) << d);
  for (size_t i = 0; i < out.table_.size(); ++i) out.table_[i] = fa.table_[i] + fb.table_[i];
  return out;
}

CylinderFunction operator*(const CylinderFunction& a, const CylinderFunction& b) {
  int d = std::max(a.depth_, b.depth_);
  CylinderFunction fa = a.refined(d), fb = b.refined(d), out;
  out.depth_ = d;
  out.table_.resize(size_t(1) << d);
  for (size_t i = 0; i < out.table_.size(); ++i) out.table_[i] = fa.table_[i] * fb.table_[i];
  return out;
}

CylinderFunction CylinderFunction::scaled(const Scalar& c) const {
  CylinderFunction out(*this);
  for (auto& v : out.table_) v = v * c;
  return out;
}

bool operator==(const CylinderFunction& a, const CylinderFunction& b) {
  int d = std::max(a.depth_, b.depth_);
  return a.refined(d).table_ == b.refined(d).table_;
}

}  // namespace sgdyn
