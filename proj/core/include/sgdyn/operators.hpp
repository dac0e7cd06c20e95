#pragma once

#include <memory>
#include <vector>

#include "sgdyn/cocycle.hpp"

namespace sgdyn {

namespace detail {
struct ObsNode;
class Engine;
}  // namespace detail

/// Immutable expression over the function algebra of the space, built from
/// cylinder functions (or polynomials on the circle) and the operators
///   alpha_n f = f o theta_n
///   L_n f|_y  = sum over theta_n(x)=y of w(n,x) f(x)
///   E_n       = alpha_n o L_n
///   V_g       = L_n alpha_m for the canonical factorization g = n^{-1} m
///   W_k       = V_(k,-k) on N^2 actions.
/// Evaluation is exact; every operator node expands into a finite fiber sum.
class Observable {
 public:
  static Observable cylinder(CylinderFunction f);
  /// Polynomial sum_i c_i x^i evaluated at rational circle points.
  static Observable circle_poly(std::vector<Rational> coeffs);
  static Observable constant(Scalar c);
  static Observable alpha(const LatticeElement& n, Observable e);
  static Observable transfer(const LatticeElement& n, Observable e);
  static Observable expectation(const LatticeElement& n, Observable e);
  /// V_g with the canonical factorization from decompose_left(g).
  static Observable interaction(const LatticeElement& g, Observable e);
  /// L_n alpha_m with an explicit factorization; used to confirm that V_g
  /// does not depend on the factorization chosen.
  static Observable interaction_via(const LatticeElement& n, const LatticeElement& m,
                                    Observable e);
  static Observable poly_w(long long k, Observable e);
  static Observable add(Observable a, Observable b);
  static Observable mul(Observable a, Observable b);
  static Observable scale(Scalar c, Observable e);

  const detail::ObsNode* node() const { return node_.get(); }
  std::shared_ptr<const detail::ObsNode> share() const { return node_; }

 private:
  explicit Observable(std::shared_ptr<const detail::ObsNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::ObsNode> node_;
};

/// Binds an action and cocycle and evaluates observables exactly, memoizing
/// per (node, point). Reusing one evaluator across a sweep is what keeps the
/// nested fiber sums linear in the number of distinct points touched.
class Evaluator {
 public:
  Evaluator(const Action& a, const Cocycle& w);
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;

  Scalar eval(const Observable& e, const Point& x);

  /// Tabulates the observable on depth-d cylinders. Every entry is computed
  /// at two representatives (tails 0^inf and 1^inf) and must agree exactly;
  /// disagreement means the requested depth does not determine the value and
  /// throws std::domain_error.
  CylinderFunction materialize(const Observable& e, int depth, int cap = kDefaultDepthCap);

  /// Drops the memo tables (between unrelated sweeps, to bound memory).
  void clear_cache();

  const Action& action() const;
  const Cocycle& cocycle() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Constant 1 plus all cylinder-set indicators up to the given depth (shift
/// spaces), or 1, x, x^2 (circle); the generating family used by the
/// operator-identity sweeps.
std::vector<Observable> basis_observables(const Action& a, int basis_depth);

/// L_n(f alpha_n(g)) = L_n(f) g over the basis, samples and the box.
CheckResult check_transfer_axiom(Evaluator& ev, int depth, int box, int basis_depth = 2);

/// L_{nm} = L_m L_n over the basis, samples and box pairs.
CheckResult check_transfer_antimult(Evaluator& ev, int depth, int box, int basis_depth = 2);

/// Both faces of the commutation criterion for conditional expectations: the
/// operator identity E_n E_m = E_m E_n on the basis, the weight identity
///   sum over C^m_x cap C^n_z of w(n,y) w(m,x)  =  sum over C^n_x cap C^m_z of w(m,y) w(n,x)
/// on sample pairs, and agreement of the two verdicts.
std::vector<CheckResult> check_e_commutation(Evaluator& ev, const LatticeElement& n,
                                             const LatticeElement& m, int depth,
                                             int basis_depth = 2);

/// The four interaction-group axioms for V over g,h in the group box, plus
/// factorization independence:
///   (1) V_1 = id
///   (2) V_g V_h V_{h^-1} = V_{gh} V_{h^-1}
///   (3) V_{g^-1} V_g V_h = V_{g^-1} V_{gh}
///   (4) V_g(a b) = V_g(a) V_g(b) for b in the range of V_{g^-1}
std::vector<CheckResult> check_interaction_axioms(Evaluator& ev, int depth, int group_box,
                                                  int basis_depth = 2, int jobs = 1);

/// W_k agrees with V_(k,-k) for |k| <= box, and W_0 = id.
CheckResult check_poly_w(Evaluator& ev, int depth, int box, int basis_depth = 2);

}  // namespace sgdyn
