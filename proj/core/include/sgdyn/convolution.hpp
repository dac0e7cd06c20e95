#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sgdyn/groupoid.hpp"
#include "sgdyn/operators.hpp"

namespace sgdyn {

/// Candidate evaluation point (x, g, y); the indicator brackets inside every
/// monomial decide whether it actually supports anything there.
struct Triple {
  Point x;
  LatticeElement g;
  Point y;
  std::string str() const;
  friend bool operator==(const Triple& a, const Triple& b) {
    return a.x == b.x && a.g == b.g && a.y == b.y;
  }
  friend bool operator<(const Triple& a, const Triple& b);
};

/// Named pointwise coefficient function (the u and v of a monomial).
struct Coeff {
  std::string name;
  std::function<Scalar(const Point&)> fn;

  static Coeff one();
  static Coeff cyl(const CylinderFunction& f, std::string name = "f");
  static Coeff of(std::string name, std::function<Scalar(const Point&)> fn);
  Scalar operator()(const Point& p) const { return fn(p); }
};

/// u S_n S_m^* v; evaluates at (x,g,y) to
///   u(x) w(n,x)^{1/2} w(m,y)^{1/2} v(y) [g = n m^{-1}] [theta_n(x) = theta_m(y)].
struct Monomial {
  Coeff u;
  LatticeElement n, m;
  Coeff v;
  std::string str() const;
};

/// Finite sum of scalar-weighted monomials; the adjoint swaps the legs
/// ((u S_n S_m^* v)^* = v S_m S_n^* u, all scalars real).
class AlgebraElement {
 public:
  AlgebraElement() = default;

  AlgebraElement& add_term(Scalar coeff, Monomial t);
  const std::vector<std::pair<Scalar, Monomial>>& terms() const { return terms_; }
  AlgebraElement adjoint() const;
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
  std::string str() const;

 private:
  std::vector<std::pair<Scalar, Monomial>> terms_;
};

/// Binds an action and cocycle; builds the standard elements and evaluates
/// convolution products pointwise by expanding each leg's finite fiber. No
/// closed-form rewriting of products is ever attempted: every identity is
/// checked by evaluating both sides at concrete triples.
class Convolver {
 public:
  Convolver(const Action& a, const Cocycle& w);
  ~Convolver();
  Convolver(Convolver&&) noexcept;

  const Action& action() const;
  const Cocycle& cocycle() const;

  AlgebraElement unit() const;
  AlgebraElement s(const LatticeElement& n) const;
  AlgebraElement s_star(const LatticeElement& n) const;
  AlgebraElement pi(Coeff f) const;

  /// The partial-representation element sigma_g = S_a^* * S_b as a two-leg
  /// chain, for the canonical factorization g = a^{-1} b.
  std::vector<AlgebraElement> sigma(const LatticeElement& g) const;
  /// Same with the factorization (p a, p b).
  std::vector<AlgebraElement> sigma_via(const LatticeElement& a, const LatticeElement& b) const;

  /// Plain pointwise value (no convolution).
  Scalar value(const AlgebraElement& a, const Triple& e);

  /// Convolution product of the chain, left leg driving the fiber sums.
  Scalar convolve(const std::vector<AlgebraElement>& chain, const Triple& e);

  /// Same product evaluated with the last leg driving the middle sum; used to
  /// cross-check associativity of the fiber expansion.
  Scalar convolve_right(const std::vector<AlgebraElement>& chain, const Triple& e);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Deterministic sample triples (genuine groupoid elements) from sampled x,
/// box witnesses and fibers.
std::vector<Triple> sample_triples(const Action& a, int depth, int box);

/// S_n^* S_n = 1 and S_n S_m = S_{nm} at sampled triples.
std::vector<CheckResult> check_isometry_semigroup(Convolver& cv, int depth, int box);

/// S_n S_n^* equals its closed form w(n,x)^{1/2} w(n,y)^{1/2} [g=1][theta_n(x)=theta_n(y)].
CheckResult check_ss_star_formula(Convolver& cv, int depth, int box);

/// (a*b)* = b* * a* and (a*)* = a at sampled triples.
CheckResult check_adjoint(Convolver& cv, int depth, int box);

/// (a*b)*c = a*(b*c) via the two fiber-expansion orders on monomial triples.
CheckResult check_associativity(Convolver& cv, int depth, int box);

/// S_n S_n^* and S_m S_m^* commute, plus the two exchange-symmetric weight
/// identities behind that commutation:
///   (i)  W_m(C^{n,m}_{x,x}) W_n(C^{m,n}_{x,z}) is n<->m symmetric
///   (ii) the sqrt-weighted sum over C^{m,n}_{x,z} is n<->m symmetric.
std::vector<CheckResult> check_projection_commutation(Convolver& cv, int depth, int box);

/// sigma is well defined across factorizations, sigma_n = S_n on P, and the
/// partial-representation law sigma_g sigma_h sigma_{h^-1} = sigma_{gh}
/// sigma_{h^-1} holds at sampled triples.
std::vector<CheckResult> check_partial_representation(Convolver& cv, int depth, int box);

/// sigma_g pi(f) sigma_{g^-1} = pi(V_g f) sigma_g sigma_{g^-1} over the
/// indicator basis and the group box; exercises g in P, g in P^{-1} and the
/// mixed case.
CheckResult check_covariance(Convolver& cv, Evaluator& ev, int depth, int box,
                             int basis_depth = 2);

/// With u_i = indicator(cylinder_i) w(n,.)^{-1/2} over depth-d cylinders
/// (theta_n injective on each, verified by enumeration), the sum of
/// pi(u_i) S_n S_n^* pi(u_i) is the unit. d defaults to the window-growth
/// bound of theta_n.
CheckResult check_partition_of_unity(Convolver& cv, const LatticeElement& n, int depth, int box,
                                     int cylinder_depth = -1);

/// Window-growth bound: depth d such that theta_n is injective on depth-d
/// cylinders (shift contributes its exponent, a width-p window map p-1 per
/// application).
int injectivity_depth(const Action& a, const LatticeElement& n);

}  // namespace sgdyn
