#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgdyn/lattice.hpp"
#include "sgdyn/space.hpp"

namespace sgdyn {

/// A width-p set of binary words, the local rule of a sliding-window map:
/// T(x)_k = 1 exactly when the window (x_k,...,x_{k+p-1}) is in the set.
struct Dictionary {
  int width = 1;
  std::vector<std::string> words;  // sorted, distinct, each of length width

  static Dictionary of(int width, std::vector<std::string> words);
  /// File format: first line "width=p", then one word per line.
  static Dictionary parse(std::istream& in);
  static Dictionary parse_file(const std::string& path);

  bool contains(const std::string& w) const;
  std::string str() const;
};

struct ProgressiveCheck {
  bool progressive = false;
  /// For each (p-1)-word beta, the unique extension bit when progressive.
  std::vector<std::pair<std::string, char>> choice;
  std::string violating_stem;  // set when not progressive
};

/// A dictionary is progressive when every (p-1)-word extends into it by
/// exactly one final bit; exactly those dictionaries give sliding-window maps
/// that are surjective local homeomorphisms with 2^{p-1} preimages per point.
ProgressiveCheck check_progressive(const Dictionary& d);

/// Number of progressive dictionaries of the given width (2^(2^(p-1))).
long long progressive_count(int width);
/// All progressive dictionaries of the given width, deterministic order.
std::vector<Dictionary> progressive_dictionaries(int width);

/// Sliding-window image of an eventually periodic point; works for any
/// dictionary, and preserves eventual periodicity exactly.
Point ca_apply(const Dictionary& d, const Point& x);

/// The 2^{p-1} preimages of y, one per initial (p-1)-window, built by the
/// greedy extension rule; requires a progressive dictionary. Each output is
/// detected eventually periodic by state repetition and round-trips under
/// ca_apply.
std::vector<Point> ca_preimages(const Dictionary& d, const Point& y);

/// A surjective local homeomorphism of one of the concrete spaces.
class Endo {
 public:
  enum class Kind { shift, cellular, circle_mul };

  static Endo shift();
  static Endo cellular(Dictionary d);  // requires a progressive dictionary
  static Endo circle_mul(long long n);

  Kind kind() const { return kind_; }
  const Dictionary& dictionary() const;
  long long modulus() const;  // circle_mul factor

  Point apply(const Point& x) const;
  std::vector<Point> preimages(const Point& y) const;  // sorted, duplicate-free
  long long degree() const;                            // constant fiber size

  std::string str() const;

 private:
  Kind kind_ = Kind::shift;
  Dictionary dict_;
  long long n_ = 1;
};

/// Right action of the positive cone P of a lattice-ordered group on a
/// concrete space, generated by commuting endomorphisms:
///   single:  P = N,   theta_n = E^n
///   pair:    P = N^2, theta_(n,m) = S^n T^m (commutation spot-checked on a
///            sample set at construction)
///   circle:  P = positive integers, theta_n(x) = n*x mod 1.
class Action {
 public:
  static Action single(Endo e);
  static Action pair(Endo s, Endo t, int commute_check_depth = 3);
  static Action circle();

  const LatticeGroup& group() const { return group_; }
  const Endo& generator(int i) const;
  int generator_count() const { return static_cast<int>(gens_.size()); }

  Point apply(const LatticeElement& n, const Point& x) const;
  std::vector<Point> preimages(const LatticeElement& n, const Point& y) const;

  /// Deterministic sample set: canonical word points of the given depth for
  /// shift spaces, the first 10 + 10*depth reduced fractions for the circle.
  std::vector<Point> sample_points(int depth) const;

  std::string str() const;

 private:
  LatticeGroup group_ = LatticeGroup::int_vector(1);
  std::vector<Endo> gens_;
  bool circle_ = false;
};

struct StarCommuteResult {
  bool star_commuting = false;
  /// When false: a pair with T(x)=S(y) whose joint lift count differs from 1.
  std::optional<std::pair<Point, Point>> witness;
  long long witness_count = 0;  // lift count at the witness
  long long pairs_checked = 0;
};

/// Exhaustive check over depth-bounded canonical pairs (x,y) with T(x)=S(y):
/// is there exactly one z with S(z)=x and T(z)=y?
StarCommuteResult check_star_commuting(const Endo& s, const Endo& t, int depth);

/// Membership of (x,z) in the composed relation R_A o R_B, where
/// (x,y) in R_A iff A(x)=A(y). Decided exactly via the finite fiber of A(x).
bool relation_compose_member(const Endo& a, const Endo& b, const Point& x, const Point& z);

/// Fills a rows-by-cols block of the two-dimensional 3-dot system from its
/// first row: cell(p,q+1) = cell(p,q) + cell(p+1,q) mod 2. Every interior
/// cell satisfies the defining relation cell(p,q)+cell(p+1,q)+cell(p,q+1)=0.
std::vector<std::vector<int>> ledrappier_block(const Point& first_row, int rows, int cols);

/// The pair (S = shift, T = width-2 parity window) generating the
/// one-dimensional picture of the 3-dot system.
Dictionary ledrappier_dictionary();

}  // namespace sgdyn
