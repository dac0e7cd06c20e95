// Acceptance suite: one line per criterion, every comparison exact. The
// binary exits nonzero if any criterion fails, so ctest reports it directly.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sgdyn/convolution.hpp"
#include "sgdyn/groupoid.hpp"
#include "sgdyn/operators.hpp"
#include "sgdyn/suites.hpp"

using namespace sgdyn;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body,
               long long budget_ms = 0) {
  auto start = Clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" [exception: ") + e.what() + "]";
  }
  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  if (budget_ms > 0 && elapsed > budget_ms) {
    ok = false;
    note += " [over budget " + std::to_string(budget_ms) + "ms]";
  }
  if (!ok) ++failures;
  std::printf("[%s] criterion %2d: %s (%lldms)%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
              static_cast<long long>(elapsed), note.c_str());
  std::fflush(stdout);
}

bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return true;
}

}  // namespace

int main() {
  // 1. The concrete relation-composition witness, reproduced exactly.
  criterion(
      1, "counter-example pair (0|1,|0) crosses R_S o R_T but not R_T o R_S",
      [] {
        Endo s = Endo::shift();
        Endo t = Endo::cellular(counterexample_dictionary());
        Point x = Point::parse("0|1"), y = Point::parse("|1"), z = Point::parse("|0");
        bool fwd = relation_compose_member(s, t, x, z);
        bool via = s.apply(x) == s.apply(y) && t.apply(y) == t.apply(z);
        bool bwd = relation_compose_member(t, s, x, z);
        // both candidates y' with S(y') = S(z) are rejected
        auto candidates = s.preimages(s.apply(z));
        bool rejected = candidates.size() == 2;
        for (const auto& cand : candidates) rejected = rejected && t.apply(x) != t.apply(cand);
        return fwd && via && !bwd && rejected;
      },
      1000);

  // 2. Progressive-dictionary census at width 3.
  criterion(
      2, "width-3 census: 16 dictionaries; the counter-example flagged twice",
      [] {
        auto dicts = progressive_dictionaries(3);
        if (dicts.size() != 16) return false;
        Endo s = Endo::shift();
        bool found = false;
        for (const auto& d : dicts) {
          if (d.words != counterexample_dictionary().words) continue;
          found = true;
          Action act = Action::pair(s, Endo::cellular(d));
          auto rel = check_relation_commutation(act, 3, 2);
          auto star = check_star_commuting(s, Endo::cellular(d), 4);
          if (rel.commutes || star.star_commuting) return false;
          if (!star.witness.has_value()) return false;
        }
        return found;
      },
      10000);

  // 3. Preimage counts for every progressive width-3 window map.
  criterion(3, "2^(p-1) = 4 preimages, each round-tripping, for 20 targets x 16 dictionaries",
            [] {
              auto targets = canonical_points(3);
              targets.resize(20);
              for (const auto& d : progressive_dictionaries(3)) {
                for (const auto& y : targets) {
                  auto pre = ca_preimages(d, y);
                  if (pre.size() != 4) return false;
                  for (const auto& zz : pre)
                    if (ca_apply(d, zz) != y) return false;
                }
              }
              return true;
            });

  // 4. The full cocycle battery at depth 4, box 3.
  criterion(
      4, "cocycle suite (shift + 3-dot pair): normalized, identity, admissible, coherent",
      [] {
        Cocycle ws = iterate_cocycle(shift_action());
        Cocycle wl = product_cocycle(ledrappier_action());
        for (const Cocycle* w : {&ws, &wl}) {
          if (!check_normalized(*w, 4, 3).passed) return false;
          if (!check_cocycle_identity(*w, 4, 3).passed) return false;
          if (!all_pass(check_admissible_cocycle(*w, 4, 3))) return false;
          if (!check_coherence(*w, 4, 3).passed) return false;
        }
        return true;
      },
      60000);

  // 5. Negative controls: broken normalization, impossible coherence.
  criterion(5, "perturbed cocycle fails normalization; candidate fails coherence, with witnesses",
            [] {
              Action shift = shift_action();
              Cocycle broken(
                  shift,
                  [&shift](const LatticeElement& n, const Point& x) {
                    if (n.vec()[0] >= 1 && x.bit(0) == 0) return Rational(1, 3);
                    return iterate_weight(shift.generator(0), n.vec()[0], x);
                  },
                  true, "broken");
              auto norm = check_normalized(broken, 4, 3);
              if (norm.passed || norm.witnesses.empty()) return false;

              Cocycle cand = product_candidate(counterexample_action());
              auto coh = check_coherence(cand, 4, 3);
              return !coh.passed && !coh.witnesses.empty();
            });

  // 6. Interaction-group axioms over the indicator basis.
  criterion(6, "interaction axioms for Z (shift) and Z^2 (3-dot pair), box 2, depth 4",
            [] {
              Action shift = shift_action();
              Cocycle ws = iterate_cocycle(shift);
              Evaluator evs(shift, ws);
              if (!all_pass(check_interaction_axioms(evs, 4, 2))) return false;
              Action led = ledrappier_action();
              Cocycle wl = product_cocycle(led);
              Evaluator evl(led, wl);
              return all_pass(check_interaction_axioms(evl, 4, 2));
            });

  // 7. The convolution-algebra identities on the 3-dot system.
  criterion(
      7, "convolution suite: isometries, exchange identities, partial rep, covariance, partition",
      [] {
        Action led = ledrappier_action();
        Cocycle w = product_cocycle(led);
        Convolver cv(led, w);
        Evaluator ev(led, w);
        if (!all_pass(check_isometry_semigroup(cv, 3, 2))) return false;
        if (!check_ss_star_formula(cv, 3, 2).passed) return false;
        if (!all_pass(check_projection_commutation(cv, 3, 2))) return false;
        if (!all_pass(check_partial_representation(cv, 3, 2))) return false;
        if (!check_covariance(cv, ev, 3, 2).passed) return false;
        return check_partition_of_unity(cv, led.group().from_vector({1, 1}), 3, 2).passed;
      },
      300000);

  // 8. Lattice calculus over the stated grids.
  criterion(8, "mini-squares, svt = su = tv, unique completion, decompositions", [] {
    auto z2 = LatticeGroup::int_vector(2);
    auto posq = LatticeGroup::positive_rationals();
    auto box = z2.positive_box(6);
    for (long long a = -3; a <= 3; ++a)
      for (long long b = -3; b <= 3; ++b)
        for (long long c = -3; c <= 3; ++c)
          for (long long d = -3; d <= 3; ++d) {
            LatticeElement m = z2.from_vector({a, b}), n = z2.from_vector({c, d});
            MiniSquare q = mini_square_from_pair(m, n);
            if (!is_mini_square(q)) return false;
            if (q.s.join(q.t) != q.s * q.u || q.s.join(q.t) != q.t * q.v) return false;
          }
    for (long long a = 0; a <= 3; ++a)
      for (long long b = 0; b <= 3; ++b)
        for (long long c = 0; c <= 3; ++c)
          for (long long d = 0; d <= 3; ++d) {
            LatticeElement s = z2.from_vector({a, b}), t = z2.from_vector({c, d});
            if (!s.meet(t).is_identity()) continue;
            int found = 0;
            for (const auto& u : box)
              for (const auto& v : box)
                if (is_mini_square(MiniSquare{s, t, u, v})) ++found;
            if (found != 1) return false;
          }
    for (long long m = 1; m <= 30; ++m)
      for (long long n = 1; n <= 30; ++n) {
        MiniSquare q = mini_square_from_pair(posq.from_integer(m), posq.from_integer(n));
        if (!is_mini_square(q)) return false;
      }
    for (long long a = -3; a <= 3; ++a)
      for (long long b = -3; b <= 3; ++b) {
        LatticeElement g = z2.from_vector({a, b});
        auto [l1, l2] = decompose_left(g);
        auto [r1, r2] = decompose_right(g);
        if (l1.inverse() * l2 != g || r1 * r2.inverse() != g) return false;
        if (!l1.is_positive() || !l2.is_positive() || !r1.is_positive() || !r2.is_positive())
          return false;
      }
    return true;
  });

  // 9. Groupoid structure on sampled elements.
  criterion(9, "groupoid axioms, preimage intersections, class bijection, degree kernel", [] {
    Action led = ledrappier_action();
    auto axioms = check_groupoid_axioms(led, 3, 2);
    if (!all_pass(axioms)) return false;
    // at least 100 composable pairs actually exercised
    for (const auto& r : axioms)
      if (r.name == "groupoid-witness" && r.samples < 100) return false;
    if (!check_preimage_intersection(led, 3, 2).passed) return false;
    if (!check_class_product_bijection(led, 3, 2).passed) return false;
    if (fiber_class(led, led.group().from_vector({1, 1}), Point::parse("|0")).size() != 4)
      return false;
    return all_pass(check_poly_groupoid(led, 3, 2));
  });

  // 10. The circle family with w(n,x) = 1/n.
  criterion(10, "circle: 1/n cocycle coherent over 50 rationals; admissibility at (2,3),(3,5),(4,9)",
            [] {
              Action circ = Action::circle();
              Cocycle w = circle_cocycle(circ);
              if (circ.sample_points(4).size() != 50) return false;
              if (!check_normalized(w, 4, 6).passed) return false;
              if (!check_cocycle_identity(w, 4, 6).passed) return false;
              if (!check_coherence(w, 4, 6).passed) return false;
              auto g = circ.group();
              for (auto [sn, tn] : {std::pair<int, int>{2, 3}, {3, 5}, {4, 9}}) {
                LatticeElement s = g.from_integer(sn), t = g.from_integer(tn);
                auto [u, v] = complete_mini_square(s, t);
                for (const auto& x : circ.sample_points(4)) {
                  Point ux = circ.apply(u, x);
                  for (const auto& y : circ.preimages(v, ux)) {
                    long long lifts = 0;
                    for (const auto& z : circ.preimages(s, x))
                      if (circ.apply(t, z) == y) ++lifts;
                    if (lifts != 1) return false;
                  }
                }
              }
              return true;
            });

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
