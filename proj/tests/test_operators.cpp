#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sgdyn/operators.hpp"
#include "sgdyn/suites.hpp"

using namespace sgdyn;

namespace {

Observable ind(const std::string& w) {
  return Observable::cylinder(CylinderFunction::indicator(w));
}

}  // namespace

TEST_CASE("transfer averages over the fiber") {
  Action shift = shift_action();
  Cocycle w = iterate_cocycle(shift);
  Evaluator ev(shift, w);
  auto n1 = shift.group().from_vector({1});
  Observable lf = Observable::transfer(n1, ind("1"));
  // (f(0y) + f(1y))/2 = 1/2 regardless of y
  for (const auto& y : canonical_points(3))
    CHECK(ev.eval(lf, y) == Scalar(Rational(1, 2)));
}

TEST_CASE("composition operator is unital") {
  Action shift = shift_action();
  Cocycle w = iterate_cocycle(shift);
  Evaluator ev(shift, w);
  auto n2 = shift.group().from_vector({2});
  Observable a1 = Observable::alpha(n2, Observable::constant(Scalar(Rational(1))));
  for (const auto& y : canonical_points(3)) CHECK(ev.eval(a1, y) == Scalar(Rational(1)));
}

TEST_CASE("interaction on the circle: worked value") {
  Action circ = Action::circle();
  Cocycle w = circle_cocycle(circ);
  Evaluator ev(circ, w);
  // g = 2^{-1} 3, f(x) = x, y = 0: preimages of 0 under doubling are {0, 1/2},
  // tripled they land on {0, 1/2}, so the weighted average is 1/4
  LatticeElement g = circ.group().from_integer(3) * circ.group().from_integer(2).inverse();
  Observable f = Observable::circle_poly({Rational(0), Rational(1)});
  CHECK(ev.eval(Observable::interaction(g, f), Point::parse("0/1")) == Scalar(Rational(1, 4)));
}

TEST_CASE("materialization with tail-independence") {
  Action shift = shift_action();
  Cocycle w = iterate_cocycle(shift);
  Evaluator ev(shift, w);
  auto n1 = shift.group().from_vector({1});

  CylinderFunction lf = ev.materialize(Observable::transfer(n1, ind("1")), 0);
  CHECK(lf == CylinderFunction::constant(Scalar(Rational(1, 2))));

  CylinderFunction af = ev.materialize(Observable::alpha(n1, ind("1")), 2);
  CHECK(af == CylinderFunction::indicator("01") + CylinderFunction::indicator("11"));

  CylinderFunction ef = ev.materialize(Observable::expectation(n1, ind("1")), 1);
  CHECK(ef.at("0") == Scalar(Rational(1, 2)));
  CHECK(ef.at("1") == Scalar(Rational(1, 2)));

  // the indicator of [1] genuinely depends on the first coordinate, so a
  // depth-0 table cannot exist
  CHECK_THROWS_AS(ev.materialize(ind("1"), 0), std::domain_error);
  CHECK_THROWS_AS(ev.materialize(ind("1"), 20), std::length_error);
}

TEST_CASE("transfer axiom and antimultiplicativity") {
  Action shift = shift_action();
  Cocycle ws = iterate_cocycle(shift);
  Evaluator evs(shift, ws);
  CHECK(check_transfer_axiom(evs, 3, 2).passed);
  CHECK(check_transfer_antimult(evs, 3, 2).passed);

  Action circ = Action::circle();
  Cocycle wc = circle_cocycle(circ);
  Evaluator evc(circ, wc);
  CHECK(check_transfer_axiom(evc, 3, 4).passed);
  CHECK(check_transfer_antimult(evc, 3, 4).passed);
}

TEST_CASE("L_n is unital and positive on the basis") {
  Action led = ledrappier_action();
  Cocycle w = product_cocycle(led);
  Evaluator ev(led, w);
  auto n = led.group().from_vector({1, 1});
  Observable one = Observable::constant(Scalar(Rational(1)));
  for (const auto& y : canonical_points(3)) {
    CHECK(ev.eval(Observable::transfer(n, one), y) == Scalar(Rational(1)));
    for (const auto& f : basis_observables(led, 2)) {
      Scalar v = ev.eval(Observable::transfer(n, f), y);
      CHECK(v.is_rational());
      CHECK(v.rational_value() >= Rational(0));
    }
  }
}

TEST_CASE("L_n alpha_n = id on the basis") {
  Action shift = shift_action();
  Cocycle w = iterate_cocycle(shift);
  Evaluator ev(shift, w);
  auto n2 = shift.group().from_vector({2});
  for (const auto& f : basis_observables(shift, 2)) {
    Observable la = Observable::transfer(n2, Observable::alpha(n2, f));
    for (const auto& y : canonical_points(3)) CHECK(ev.eval(la, y) == ev.eval(f, y));
  }
}

TEST_CASE("E_n is idempotent and fixes the range of alpha_n") {
  Action shift = shift_action();
  Cocycle w = iterate_cocycle(shift);
  Evaluator ev(shift, w);
  auto n1 = shift.group().from_vector({1});
  Observable f = ind("10");
  CylinderFunction e1 = ev.materialize(Observable::expectation(n1, f), 2);
  CylinderFunction e2 = ev.materialize(
      Observable::expectation(n1, Observable::expectation(n1, f)), 2);
  CHECK(e1 == e2);
  // E_n(alpha_n(g)) = alpha_n(g)
  Observable ag = Observable::alpha(n1, ind("1"));
  CHECK(ev.materialize(Observable::expectation(n1, ag), 2) == ev.materialize(ag, 2));
}

TEST_CASE("conditional expectations commute exactly when the weights say so") {
  Action led = ledrappier_action();
  Cocycle w = product_cocycle(led);
  Evaluator ev(led, w);
  auto s1 = led.group().from_vector({1, 0});
  auto t1 = led.group().from_vector({0, 1});
  auto rs = check_e_commutation(ev, s1, t1, 3);
  for (const auto& r : rs) CHECK(r.passed);
  // n = m commutes trivially
  auto rr = check_e_commutation(ev, s1, s1, 2);
  for (const auto& r : rr) CHECK(r.passed);

  // the counter-example pair fails the weight identity
  Action bad = counterexample_action();
  Cocycle cand = product_candidate(bad);
  Evaluator evb(bad, cand);
  auto rb = check_e_commutation(evb, bad.group().from_vector({1, 0}),
                                bad.group().from_vector({0, 1}), 3);
  CHECK(!rb[1].passed);  // weight identity has a witness
}

TEST_CASE("interaction group axioms") {
  Action shift = shift_action();
  Cocycle ws = iterate_cocycle(shift);
  Evaluator evs(shift, ws);
  for (const auto& r : check_interaction_axioms(evs, 3, 2)) CHECK(r.passed);
}

TEST_CASE("partial-composition instance: V_-1 V_1 V_-1 = L_1") {
  Action shift = shift_action();
  Cocycle w = iterate_cocycle(shift);
  Evaluator ev(shift, w);
  auto g = shift.group();
  Observable f = ind("01");
  Observable lhs = Observable::interaction(
      g.from_vector({-1}),
      Observable::interaction(g.from_vector({1}),
                              Observable::interaction(g.from_vector({-1}), f)));
  Observable rhs = Observable::transfer(g.from_vector({1}), f);
  for (const auto& y : canonical_points(3)) CHECK(ev.eval(lhs, y) == ev.eval(rhs, y));
}

TEST_CASE("interaction matches the direct fiber sum on the 3-dot pair") {
  Action led = ledrappier_action();
  Cocycle w = product_cocycle(led);
  Evaluator ev(led, w);
  auto g = led.group();
  LatticeElement gm = g.from_vector({1, -1});
  Observable f = ind("1");
  Observable vg = Observable::interaction(gm, f);
  // V_(1,-1)(f)|_y = sum over T(x)=y of w((0,1),x) f(S(x))
  for (const auto& y : canonical_points(3)) {
    Scalar direct;
    for (const auto& x : led.preimages(g.from_vector({0, 1}), y))
      direct += Scalar(w.eval(g.from_vector({0, 1}), x)) *
                ev.eval(f, led.apply(g.from_vector({1, 0}), x));
    CHECK(ev.eval(vg, y) == direct);
  }
}

TEST_CASE("polymorphism operators") {
  Action led = ledrappier_action();
  Cocycle w = product_cocycle(led);
  Evaluator ev(led, w);
  CHECK(check_poly_w(ev, 3, 2).passed);

  // worked value: W_1(ind 1) at |0 averages f over S(T^{-1}(|0)) = {|0, |1}
  Observable w1 = Observable::poly_w(1, ind("1"));
  CHECK(ev.eval(w1, Point::parse("|0")) == Scalar(Rational(1, 2)));

  // W_-1 W_1 is not the identity (only a range projection away)
  Observable both = Observable::poly_w(-1, Observable::poly_w(1, ind("1")));
  bool differs = false;
  for (const auto& y : canonical_points(3))
    differs = differs || ev.eval(both, y) != ev.eval(ind("1"), y);
  CHECK(differs);
}

TEST_CASE("well-definedness across factorizations, directly") {
  Action led = ledrappier_action();
  Cocycle w = product_cocycle(led);
  Evaluator ev(led, w);
  auto g = led.group();
  LatticeElement gm = g.from_vector({1, -2});
  auto [a, b] = decompose_left(gm);
  LatticeElement p = g.from_vector({1, 1});
  Observable f = ind("0");
  Observable v1 = Observable::interaction_via(a, b, f);
  Observable v2 = Observable::interaction_via(p * a, p * b, f);
  for (const auto& y : canonical_points(3)) CHECK(ev.eval(v1, y) == ev.eval(v2, y));
}
