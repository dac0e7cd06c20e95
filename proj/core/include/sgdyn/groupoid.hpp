#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgdyn/cocycle.hpp"

namespace sgdyn {

/// An element (x, g, y) of the transformation groupoid together with a
/// validated witness pair (n, m) in P x P such that g = n m^{-1} and
/// theta_n(x) = theta_m(y).
struct GroupoidElement {
  Point x;
  LatticeElement g;
  Point y;
  LatticeElement wn, wm;

  std::string str() const;

  friend bool operator==(const GroupoidElement& a, const GroupoidElement& b) {
    return a.x == b.x && a.g == b.g && a.y == b.y;
  }
};

/// Validates the witness and builds the element; throws on a bad witness.
GroupoidElement make_element(const Action& a, Point x, LatticeElement g, Point y,
                             LatticeElement n, LatticeElement m);

/// Basic bisection data (n, m, A, B): the set of (x, nm^{-1}, y) with x in A,
/// y in B and theta_n(x) = theta_m(y). Kept as data only.
struct BasicBisection {
  LatticeElement n, m;
  CylinderSet a, b;
  bool contains(const Action& act, const GroupoidElement& e) const;
};

enum class Membership { yes, no, unknown };

struct MembershipResult {
  Membership status = Membership::unknown;
  std::optional<std::pair<LatticeElement, LatticeElement>> witness;
  long long states_explored = 0;
};

/// Is (x, g, y) in the groupoid? Witnesses have the shape n = (g v 1)c,
/// m = (g^-1 v 1)c with c in P, so the question is whether the pair orbit
/// (theta_c(x~), theta_c(y~)) ever hits the diagonal. On shift spaces that
/// orbit lives in a finite set of eventually periodic points, so exhausting
/// it proves No; the state bound is a safety valve (Unknown beyond it). On
/// the circle the synchronization denominator is computed directly.
MembershipResult membership(const Action& a, const Point& x, const LatticeElement& g,
                            const Point& y, long long state_bound = 200000);

/// (x,g,y)(y,h,z) = (x,gh,z); the product witness is (n u, q v) where
/// m^{-1} p = u v^{-1} via the canonical right decomposition.
GroupoidElement compose(const Action& a, const GroupoidElement& e1, const GroupoidElement& e2);

GroupoidElement inverse(const GroupoidElement& e);

GroupoidElement unit_at(const Action& a, const Point& x);

/// Deterministic sample of groupoid elements: (x, n m^{-1}, y) for sampled x,
/// box witnesses (n, m), and y running over the theta_m-fiber of theta_n(x).
std::vector<GroupoidElement> sample_elements(const Action& a, int depth, int box);

/// Unit laws, inverses, witness recomposition and associativity over sampled
/// composable pairs/triples.
std::vector<CheckResult> check_groupoid_axioms(const Action& a, int depth, int box);

/// Unique-lift property: for every box mini-square (s,t,u,v), sampled x and
/// every y with theta_u(x) = theta_v(y), exactly one z has theta_s(z) = x and
/// theta_t(z) = y.
CheckResult check_admissible_action(const Action& a, int depth, int box);

/// theta_m^{-1}(p) cap theta_n^{-1}(q) computed via the mini-square of (m,n):
/// empty when theta_u(p) != theta_v(q), otherwise the theta_{m^n}-fiber of
/// the unique common lift w. Throws if the instance violates admissibility.
std::vector<Point> preimage_intersection(const Action& a, const LatticeElement& m,
                                         const Point& p, const LatticeElement& n,
                                         const Point& q);

/// preimage_intersection agrees with the brute-force intersection of the two
/// preimage sets on every sampled instance.
CheckResult check_preimage_intersection(const Action& a, int depth, int box);

/// phi(z) = (theta_s(z), theta_t(z)) maps C^{svt}_z bijectively onto
/// C^u_{x} x C^v_{y}; checked exactly, including the cardinality product.
CheckResult check_class_product_bijection(const Action& a, int depth, int box);

/// Element (x, k, y) of the polymorphism groupoid over Z: witness (n, m) in
/// N^2 with k = n - m and S^n T^m (x) = S^m T^n (y).
struct PolyElement {
  Point x;
  long long k = 0;
  Point y;
  long long wn = 0, wm = 0;
  std::string str() const;
};

PolyElement make_poly_element(const Action& a, Point x, long long k, Point y, long long n,
                              long long m);

/// Witness search along (n,m) = (max(k,0)+j, max(-k,0)+j): the pair orbit
/// under ST is eventually periodic, so exhaustion proves No.
MembershipResult poly_membership(const Action& a, const Point& x, long long k, const Point& y,
                                 long long state_bound = 200000);

PolyElement poly_compose(const Action& a, const PolyElement& e1, const PolyElement& e2);

/// d(x,(n,m),y) = n + m, a groupoid homomorphism to Z.
long long degree_map(const GroupoidElement& e);

/// phi(x,k,y) = (x,(k,-k),y), an isomorphism onto ker d.
GroupoidElement poly_to_groupoid(const Action& a, const PolyElement& e);

/// Section of phi on ker d: back-fills a polymorphism witness from a kernel
/// element's witness by padding, per l + s - p >= 0.
PolyElement groupoid_to_poly(const Action& a, const GroupoidElement& e);

/// d additivity, phi lands in ker d, and phi/section round trips on samples.
std::vector<CheckResult> check_poly_groupoid(const Action& a, int depth, int box);

}  // namespace sgdyn
