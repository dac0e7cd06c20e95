#include "sgdyn/dynamics.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sgdyn {

namespace {

void require_word(const Point& p) {
  if (!p.is_word()) throw std::invalid_argument("word point expected");
}

void require_angle(const Point& p) {
  if (p.is_word()) throw std::invalid_argument("angle point expected");
}

}  // namespace

Dictionary Dictionary::of(int width, std::vector<std::string> words) {
  if (width < 1) throw std::invalid_argument("dictionary width must be >= 1");
  for (const auto& w : words) {
    if (static_cast<int>(w.size()) != width)
      throw std::invalid_argument("dictionary word of wrong length: " + w);
    if (!std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; }))
      throw std::invalid_argument("dictionary word must be binary: " + w);
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  Dictionary d;
  d.width = width;
  d.words = std::move(words);
  return d;
}

Dictionary Dictionary::parse(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("width=", 0) != 0)
    throw std::invalid_argument("dictionary file must start with width=p");
  int width = 0;
  try {
    width = std::stoi(line.substr(6));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed width line: " + line);
  }
  std::vector<std::string> words;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    words.push_back(line);
  }
  return of(width, std::move(words));
}

Dictionary Dictionary::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dictionary file: " + path);
  return parse(in);
}

bool Dictionary::contains(const std::string& w) const {
  return std::binary_search(words.begin(), words.end(), w);
}

std::string Dictionary::str() const {
  std::string s = "{";
  for (size_t i = 0; i < words.size(); ++i) s += (i ? "," : "") + words[i];
  return s + "}";
}

ProgressiveCheck check_progressive(const Dictionary& d) {
  ProgressiveCheck r;
  for (const auto& stem : words_of_length(d.width - 1)) {
    bool zero = d.contains(stem + "0");
    bool one = d.contains(stem + "1");
    if (zero == one) {
      r.progressive = false;
      r.violating_stem = stem;
      r.choice.clear();
      return r;
    }
    r.choice.emplace_back(stem, zero ? '0' : '1');
  }
  r.progressive = true;
  return r;
}

long long progressive_count(int width) {
  if (width < 1 || width > 6) throw std::invalid_argument("width out of range");
  return 1LL << (1LL << (width - 1));
}

std::vector<Dictionary> progressive_dictionaries(int width) {
  auto stems = words_of_length(width - 1);
  long long total = progressive_count(width);
  std::vector<Dictionary> out;
  out.reserve(total);
  for (long long mask = 0; mask < total; ++mask) {
    std::vector<std::string> words;
    for (size_t i = 0; i < stems.size(); ++i)
      words.push_back(stems[i] + (mask >> i & 1 ? "1" : "0"));
    out.push_back(Dictionary::of(width, std::move(words)));
  }
  return out;
}

Point ca_apply(const Dictionary& d, const Point& x) {
  require_word(x);
  // Windows starting at k >= |prefix| repeat with the cycle, so the image has
  // prefix length <= |prefix| and cycle length dividing |cycle|.
  size_t h = x.prefix().size(), c = x.cycle().size();
  std::string out_prefix(h, '0'), out_cycle(c, '0');
  auto image_bit = [&](size_t k) {
    std::string w(d.width, '0');
    for (int j = 0; j < d.width; ++j) w[j] = static_cast<char>('0' + x.bit(k + j));
    return d.contains(w) ? '1' : '0';
  };
  for (size_t k = 0; k < h; ++k) out_prefix[k] = image_bit(k);
  for (size_t k = 0; k < c; ++k) out_cycle[k] = image_bit(h + k);
  return Point::word(out_prefix, out_cycle);
}

std::vector<Point> ca_preimages(const Dictionary& d, const Point& y) {
  require_word(y);
  auto prog = check_progressive(d);
  if (!prog.progressive)
    throw std::invalid_argument("preimages need a progressive dictionary");
  std::map<std::string, char> in_choice;  // stem -> bit giving a word in D
  for (const auto& [stem, bit] : prog.choice) in_choice[stem] = bit;

  size_t h = y.prefix().size(), c = y.cycle().size();
  std::vector<Point> out;
  for (const auto& beta : words_of_length(d.width - 1)) {
    // Greedy extension: the next bit is determined by whether y's bit asks
    // the current window to land in the dictionary or not.
    std::string bits = beta;
    std::string window = beta;
    // State = (window, position in y's cycle); a repeat pins the cycle.
    std::map<std::pair<std::string, size_t>, size_t> seen;  // state -> index where bits starts
    size_t cycle_start = 0, cycle_len = 0;
    for (size_t k = 0;; ++k) {
      if (k >= h) {
        auto key = std::make_pair(window, (k - h) % c);
        auto it = seen.find(key);
        if (it != seen.end()) {
          cycle_start = it->second;
          cycle_len = k - it->second;
          break;
        }
        seen[key] = k;
      }
      char choice = in_choice[window];
      char next = y.bit(k) ? choice : static_cast<char>('0' + '1' - choice);
      bits.push_back(next);
      if (d.width > 1) window = window.substr(1) + next;
    }
    out.push_back(Point::word(bits.substr(0, cycle_start),
                              bits.substr(cycle_start, cycle_len)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != size_t(1) << (d.width - 1))
    throw std::logic_error("preimage count mismatch for " + d.str());
  return out;
}

Endo Endo::shift() {
  Endo e;
  e.kind_ = Kind::shift;
  return e;
}

Endo Endo::cellular(Dictionary d) {
  if (!check_progressive(d).progressive)
    throw std::invalid_argument("cellular endomorphism needs a progressive dictionary");
  Endo e;
  e.kind_ = Kind::cellular;
  e.dict_ = std::move(d);
  return e;
}

Endo Endo::circle_mul(long long n) {
  if (n < 1) throw std::invalid_argument("circle factor must be positive");
  Endo e;
  e.kind_ = Kind::circle_mul;
  e.n_ = n;
  return e;
}

const Dictionary& Endo::dictionary() const {
  if (kind_ != Kind::cellular) throw std::domain_error("not a cellular map");
  return dict_;
}

long long Endo::modulus() const {
  if (kind_ != Kind::circle_mul) throw std::domain_error("not a circle map");
  return n_;
}

Point Endo::apply(const Point& x) const {
  switch (kind_) {
    case Kind::shift: {
      require_word(x);
      if (!x.prefix().empty()) return Point::word(x.prefix().substr(1), x.cycle());
      return Point::word("", x.cycle().substr(1) + x.cycle()[0]);
    }
    case Kind::cellular:
      return ca_apply(dict_, x);
    case Kind::circle_mul: {
      require_angle(x);
      Rational v = x.angle_value() * Rational(n_);
      long long whole = v.num() / v.den();
      return Point::angle(v - Rational(whole));
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<Point> Endo::preimages(const Point& y) const {
  switch (kind_) {
    case Kind::shift: {
      require_word(y);
      std::vector<Point> out{Point::word("0" + y.prefix(), y.cycle()),
                             Point::word("1" + y.prefix(), y.cycle())};
      std::sort(out.begin(), out.end());
      return out;
    }
    case Kind::cellular:
      return ca_preimages(dict_, y);
    case Kind::circle_mul: {
      require_angle(y);
      std::vector<Point> out;
      for (long long j = 0; j < n_; ++j)
        out.push_back(Point::angle((y.angle_value() + Rational(j)) / Rational(n_)));
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

long long Endo::degree() const {
  switch (kind_) {
    case Kind::shift:
      return 2;
    case Kind::cellular:
      return 1LL << (dict_.width - 1);
    case Kind::circle_mul:
      return n_;
  }
  throw std::logic_error("unreachable");
}

std::string Endo::str() const {
  switch (kind_) {
    case Kind::shift:
      return "shift";
    case Kind::cellular:
      return "ca" + dict_.str();
    case Kind::circle_mul:
      return "mul(" + std::to_string(n_) + ")";
  }
  throw std::logic_error("unreachable");
}

Action Action::single(Endo e) {
  if (e.kind() == Endo::Kind::circle_mul)
    throw std::invalid_argument("use Action::circle for the circle family");
  Action a;
  a.group_ = LatticeGroup::int_vector(1);
  a.gens_ = {std::move(e)};
  return a;
}

Action Action::pair(Endo s, Endo t, int commute_check_depth) {
  if (s.kind() == Endo::Kind::circle_mul || t.kind() == Endo::Kind::circle_mul)
    throw std::invalid_argument("pair actions live on the shift space");
  Action a;
  a.group_ = LatticeGroup::int_vector(2);
  a.gens_ = {std::move(s), std::move(t)};
  for (const auto& p : canonical_points(commute_check_depth)) {
    if (a.gens_[0].apply(a.gens_[1].apply(p)) != a.gens_[1].apply(a.gens_[0].apply(p)))
      throw std::invalid_argument("generators do not commute at " + p.str());
  }
  return a;
}

Action Action::circle() {
  Action a;
  a.group_ = LatticeGroup::positive_rationals();
  a.circle_ = true;
  return a;
}

const Endo& Action::generator(int i) const {
  if (i < 0 || i >= static_cast<int>(gens_.size()))
    throw std::out_of_range("generator index");
  return gens_[i];
}

Point Action::apply(const LatticeElement& n, const Point& x) const {
  if (!n.is_positive()) throw std::invalid_argument("action applies to P only");
  if (circle_) return Endo::circle_mul(n.to_integer()).apply(x);
  // theta_(a,b) = S^a T^b; the generators commute so composition order is
  // immaterial.
  Point cur = x;
  for (size_t i = 0; i < gens_.size(); ++i) {
    long long reps = n.vec()[i];
    for (long long k = 0; k < reps; ++k) cur = gens_[i].apply(cur);
  }
  return cur;
}

std::vector<Point> Action::preimages(const LatticeElement& n, const Point& y) const {
  if (!n.is_positive()) throw std::invalid_argument("action applies to P only");
  if (circle_) return Endo::circle_mul(n.to_integer()).preimages(y);
  std::vector<Point> cur{y};
  // Preimage fibers of distinct points are disjoint, so no dedup is needed.
  for (size_t i = gens_.size(); i-- > 0;) {
    for (long long k = 0; k < n.vec()[i]; ++k) {
      std::vector<Point> next;
      for (const auto& p : cur) {
        auto pre = gens_[i].preimages(p);
        next.insert(next.end(), pre.begin(), pre.end());
      }
      cur = std::move(next);
    }
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

std::vector<Point> Action::sample_points(int depth) const {
  if (circle_) return circle_points(10 + 10 * depth);
  return canonical_points(depth);
}

std::string Action::str() const {
  if (circle_) return "circle";
  std::string s = gens_[0].str();
  for (size_t i = 1; i < gens_.size(); ++i) s += ", " + gens_[i].str();
  return s;
}

StarCommuteResult check_star_commuting(const Endo& s, const Endo& t, int depth) {
  StarCommuteResult r;
  auto pts = canonical_points(depth);
  for (const auto& x : pts) {
    Point tx = t.apply(x);
    for (const auto& y : pts) {
      if (s.apply(y) != tx) continue;
      ++r.pairs_checked;
      long long count = 0;
      for (const auto& z : s.preimages(x))
        if (t.apply(z) == y) ++count;
      if (count != 1) {
        r.star_commuting = false;
        r.witness = {x, y};
        r.witness_count = count;
        return r;
      }
    }
  }
  r.star_commuting = true;
  return r;
}

bool relation_compose_member(const Endo& a, const Endo& b, const Point& x, const Point& z) {
  Point bz = b.apply(z);
  for (const auto& y : a.preimages(a.apply(x)))
    if (b.apply(y) == bz) return true;
  return false;
}

std::vector<std::vector<int>> ledrappier_block(const Point& first_row, int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("block must be nonempty");
  // Row q+1 is one cell shorter than row q, so start wide enough.
  std::vector<std::vector<int>> wide(rows);
  wide[0].resize(cols + rows - 1);
  for (int p = 0; p < cols + rows - 1; ++p) wide[0][p] = first_row.bit(p);
  for (int q = 1; q < rows; ++q) {
    wide[q].resize(cols + rows - 1 - q);
    for (int p = 0; p < static_cast<int>(wide[q].size()); ++p)
      wide[q][p] = (wide[q - 1][p] + wide[q - 1][p + 1]) % 2;
  }
  for (auto& row : wide) row.resize(cols);
  return wide;
}

Dictionary ledrappier_dictionary() { return Dictionary::of(2, {"01", "10"}); }

}  // namespace sgdyn
