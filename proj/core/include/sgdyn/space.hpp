#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sgdyn/scalar.hpp"

namespace sgdyn {

/// A point of one of the two concrete spaces:
///   word:  an eventually periodic binary sequence prefix + cycle^inf, stored
///          canonically (primitive cycle, minimal prefix) so equal sequences
///          have identical representations and equality is exact;
///   angle: a rational in [0,1) on the circle.
/// Word literals render as "prefix|cycle" ("0|1" = 0111..., "|0" = 000...),
/// angles as "a/b".
class Point {
 public:
  enum class Kind { word, angle };

  static Point word(std::string prefix, std::string cycle);
  static Point angle(const Rational& value);
  static Point parse(const std::string& literal);

  Kind kind() const { return kind_; }
  bool is_word() const { return kind_ == Kind::word; }
  const std::string& prefix() const { return prefix_; }
  const std::string& cycle() const { return cycle_; }
  const Rational& angle_value() const;

  /// i-th coordinate of a word point (0-based).
  int bit(size_t i) const;
  /// First k coordinates of a word point.
  std::string head(size_t k) const;

  std::string str() const;

  friend bool operator==(const Point& a, const Point& b) {
    return a.kind_ == b.kind_ && a.prefix_ == b.prefix_ && a.cycle_ == b.cycle_ &&
           a.value_ == b.value_;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b);

 private:
  Kind kind_ = Kind::word;
  std::string prefix_, cycle_;  // word
  Rational value_;              // angle
};

struct PointHash {
  size_t operator()(const Point& p) const;
};

/// All canonical word points with |prefix| <= depth and |cycle| <= depth, in
/// deterministic (graded lexicographic) order. This is the sampling
/// convention used by every sweep: "depth d" always means this set.
std::vector<Point> canonical_points(int depth);

/// First `count` reduced fractions in [0,1), ordered by denominator then
/// numerator; the deterministic circle sample set.
std::vector<Point> circle_points(int count);

/// The set of sequences extending a fixed finite word.
struct CylinderSet {
  std::string word;
  bool contains(const Point& p) const;
  std::string str() const { return "[" + word + "]"; }
};

inline constexpr int kDefaultDepthCap = 12;

/// Function on the full shift depending on the first `depth` coordinates,
/// tabulated on all 2^depth words. Entries are Scalars so that square-root
/// weights are representable exactly.
class CylinderFunction {
 public:
  CylinderFunction() : depth_(0), table_(1, Scalar()) {}

  static CylinderFunction constant(const Scalar& c);
  static CylinderFunction indicator(const std::string& word, int cap = kDefaultDepthCap);
  static CylinderFunction from_table(int depth, std::vector<Scalar> table,
                                     int cap = kDefaultDepthCap);

  int depth() const { return depth_; }
  const std::vector<Scalar>& table() const { return table_; }

  Scalar eval(const Point& p) const;
  /// Table entry for a depth-length word.
  const Scalar& at(const std::string& word) const;

  /// Same function tabulated at a finer depth.
  CylinderFunction refined(int new_depth, int cap = kDefaultDepthCap) const;

  friend CylinderFunction operator+(const CylinderFunction& a, const CylinderFunction& b);
  friend CylinderFunction operator*(const CylinderFunction& a, const CylinderFunction& b);
  CylinderFunction scaled(const Scalar& c) const;

  friend bool operator==(const CylinderFunction& a, const CylinderFunction& b);

 private:
  static size_t index_of(const std::string& word);
  int depth_;
  std::vector<Scalar> table_;  // index bits read the word left to right
};

/// All binary words of the given length, lexicographic.
std::vector<std::string> words_of_length(int len);

}  // namespace sgdyn
