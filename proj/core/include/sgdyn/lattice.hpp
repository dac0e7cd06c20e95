#pragma once

#include <string>
#include <vector>

#include "sgdyn/scalar.hpp"

namespace sgdyn {

enum class LatticeKind {
  int_vector,          // Z^d with P = componentwise nonnegative tuples
  positive_rationals,  // Q_+^x as prime-exponent maps, P = positive integers
};

class LatticeElement;

/// One of the two concrete lattice-ordered group families used throughout:
/// (Z^d, N^d) with the product order, and (Q_+^x, Z_{>=1}) with divisibility.
/// The order is the left-invariant one, x <= y iff x^{-1} y in P; both
/// families are commutative so meets and joins are componentwise.
class LatticeGroup {
 public:
  static LatticeGroup int_vector(int dim);
  static LatticeGroup positive_rationals();

  LatticeKind kind() const { return kind_; }
  int dim() const { return dim_; }

  LatticeElement identity() const;
  LatticeElement from_vector(const std::vector<long long>& v) const;
  /// positive_rationals only: the element of the given positive integer.
  LatticeElement from_integer(long long n) const;

  /// All elements of P with generator exponents in [0, bound]. For Z^d these
  /// are the tuples with components <= bound; for the positive rationals, the
  /// integers 1..bound (the natural box for the circle action sweeps).
  std::vector<LatticeElement> positive_box(int bound) const;
  /// All group elements with |components| <= bound (int_vector only).
  std::vector<LatticeElement> group_box(int bound) const;

  friend bool operator==(const LatticeGroup& a, const LatticeGroup& b) {
    return a.kind_ == b.kind_ && a.dim_ == b.dim_;
  }
  friend bool operator!=(const LatticeGroup& a, const LatticeGroup& b) { return !(a == b); }

 private:
  LatticeKind kind_ = LatticeKind::int_vector;
  int dim_ = 1;
};

class LatticeElement {
 public:
  LatticeElement() = default;

  LatticeKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(vec_.size()); }
  const std::vector<long long>& vec() const { return vec_; }
  const std::vector<std::pair<long long, long long>>& factors() const { return factors_; }

  bool is_identity() const;
  /// Membership in the positive cone P.
  bool is_positive() const;

  LatticeElement operator*(const LatticeElement& o) const;
  LatticeElement inverse() const;
  LatticeElement meet(const LatticeElement& o) const;
  LatticeElement join(const LatticeElement& o) const;
  bool leq(const LatticeElement& o) const;  // left-invariant order

  /// positive_rationals in P only: the integer value.
  long long to_integer() const;

  friend bool operator==(const LatticeElement& a, const LatticeElement& b) {
    return a.kind_ == b.kind_ && a.vec_ == b.vec_ && a.factors_ == b.factors_;
  }
  friend bool operator!=(const LatticeElement& a, const LatticeElement& b) { return !(a == b); }
  friend bool operator<(const LatticeElement& a, const LatticeElement& b);

  /// "(a,b)" for Z^d with d >= 2, a bare integer for Z, "p1^e1*p2^e2" for the
  /// positive rationals ("1" for the identity).
  std::string str() const;

 private:
  friend class LatticeGroup;
  LatticeKind kind_ = LatticeKind::int_vector;
  std::vector<long long> vec_;                            // int_vector
  std::vector<std::pair<long long, long long>> factors_;  // (prime, exponent), sorted, no zeros
};

/// Quadruple (s,t,u,v) in P^4 with su = tv, s meet t = 1 and u,v minimal on
/// the right (equivalently u^{-1} join v^{-1} = 1).
struct MiniSquare {
  LatticeElement s, t, u, v;
  std::string str() const;
};

/// s = (m^n)^{-1} m, t = (m^n)^{-1} n, u = m^{-1}(mvn), v = n^{-1}(mvn); always
/// a mini-square (validated).
MiniSquare mini_square_from_pair(const LatticeElement& m, const LatticeElement& n);

/// The unique completion (u,v) of coprime s,t in P. Throws if s meet t != 1.
std::pair<LatticeElement, LatticeElement> complete_mini_square(const LatticeElement& s,
                                                               const LatticeElement& t);

/// Validates the three mini-square conditions.
bool is_mini_square(const MiniSquare& q);

/// Canonical factorizations of an arbitrary group element:
///   decompose_left:  x = a^{-1} b with a = (x^1)^{-1}, b = (x^1)^{-1} x  (P^{-1}P)
///   decompose_right: x = n m^{-1} with n = xv1,       m = x^{-1}(xv1)    (PP^{-1})
/// Both components land in P.
std::pair<LatticeElement, LatticeElement> decompose_left(const LatticeElement& x);
std::pair<LatticeElement, LatticeElement> decompose_right(const LatticeElement& x);

/// All mini-squares (s,t,u,v) with s,t drawn from the positive box of the
/// group, deduplicated, in deterministic order.
std::vector<MiniSquare> mini_squares_in_box(const LatticeGroup& g, int bound);

}  // namespace sgdyn
