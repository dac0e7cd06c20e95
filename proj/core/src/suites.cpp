#include "sgdyn/suites.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace sgdyn {

Action shift_action() { return Action::single(Endo::shift()); }

Action ledrappier_action() {
  return Action::pair(Endo::shift(), Endo::cellular(ledrappier_dictionary()));
}

Dictionary counterexample_dictionary() {
  return Dictionary::of(3, {"000", "100", "010", "111"});
}

Action counterexample_action() {
  return Action::pair(Endo::shift(), Endo::cellular(counterexample_dictionary()));
}

namespace {

// Small deterministic PRNG for the scalar property sweeps.
struct XorShift {
  uint64_t state;
  explicit XorShift(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

Scalar random_scalar(XorShift& rng) {
  Scalar s;
  int terms = static_cast<int>(rng.range(0, 3));
  for (int i = 0; i < terms; ++i) {
    Rational q(rng.range(-9, 9), rng.range(1, 9));
    Rational r(rng.range(1, 100));
    s += Scalar::radical(q, r);
  }
  return s;
}

void run_scalar(Report& rep) {
  {  // canonicalization identities: the worked normal forms
    bool ok = Scalar::radical(Rational(1), Rational(8)) == Scalar::radical(Rational(2), Rational(2));
    ok = ok && Scalar::radical(Rational(3), Rational(1)) == Scalar(Rational(3));
    ok = ok && Scalar::radical(Rational(1), Rational(1, 2)) ==
                   Scalar::radical(Rational(1, 2), Rational(2));
    rep.checks.push_back(ok ? CheckResult::pass("canonical-form", "radical normal forms", 3)
                            : CheckResult::fail("canonical-form", "radical normal forms", 3, {}));
  }
  {  // sqrt(r)*sqrt(r) = r for square-free r <= 100
    bool ok = true;
    std::string wit;
    long long count = 0;
    for (long long r = 1; r <= 100; ++r) {
      if (square_free_split(r).first != 1) continue;  // not square-free
      ++count;
      if (Scalar::sqrt(Rational(r)) * Scalar::sqrt(Rational(r)) != Scalar(Rational(r))) {
        ok = false;
        wit = "r=" + std::to_string(r);
        break;
      }
    }
    rep.checks.push_back(ok ? CheckResult::pass("sqrt-square", "sqrt(r)*sqrt(r) = r", count)
                            : CheckResult::fail("sqrt-square", "sqrt(r)*sqrt(r) = r", count,
                                                {wit}));
  }
  {  // ring laws on random term maps
    XorShift rng(0x5eed5eed1234ull);
    bool ok = true;
    std::string wit;
    long long count = 0;
    for (int i = 0; i < 500 && ok; ++i) {
      Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
      ++count;
      if ((a + b) + c != a + (b + c) || a + b != b + a || (a * b) * c != a * (b * c) ||
          a * b != b * a || a * (b + c) != a * b + a * c || a + (-a) != Scalar()) {
        ok = false;
        wit = "a=" + a.str() + ", b=" + b.str() + ", c=" + c.str();
      }
    }
    rep.checks.push_back(ok ? CheckResult::pass("ring-laws",
                                                "associativity, commutativity, distributivity",
                                                count)
                            : CheckResult::fail("ring-laws",
                                                "associativity, commutativity, distributivity",
                                                count, {wit}));
  }
}

void run_lattice(Report& rep) {
  auto z2 = LatticeGroup::int_vector(2);
  auto posq = LatticeGroup::positive_rationals();

  {  // mini-square laws over the Z^2 grid and positive integers
    bool ok = true;
    std::string wit;
    long long count = 0;
    auto check_square = [&](const LatticeElement& m, const LatticeElement& n) {
      ++count;
      MiniSquare q = mini_square_from_pair(m, n);
      if (!is_mini_square(q) || q.s.join(q.t) != q.s * q.u || q.s.join(q.t) != q.t * q.v) {
        ok = false;
        wit = "m=" + m.str() + ", n=" + n.str();
      }
    };
    for (long long a = -3; a <= 3 && ok; ++a)
      for (long long b = -3; b <= 3 && ok; ++b)
        for (long long c = -3; c <= 3 && ok; ++c)
          for (long long d = -3; d <= 3 && ok; ++d)
            check_square(z2.from_vector({a, b}), z2.from_vector({c, d}));
    for (long long m = 1; m <= 30 && ok; ++m)
      for (long long n = 1; n <= 30 && ok; ++n)
        check_square(posq.from_integer(m), posq.from_integer(n));
    const char* law = "mini-square invariants and svt = su = tv";
    rep.checks.push_back(ok ? CheckResult::pass("mini-square", law, count)
                            : CheckResult::fail("mini-square", law, count, {wit}));
  }

  {  // uniqueness of completion, by brute force over bounded candidates
    bool ok = true;
    std::string wit;
    long long count = 0;
    auto box_z2 = z2.positive_box(6);
    for (long long a = 0; a <= 3 && ok; ++a) {
      for (long long b = 0; b <= 3 && ok; ++b) {
        for (long long c = 0; c <= 3 && ok; ++c) {
          for (long long d = 0; d <= 3 && ok; ++d) {
            LatticeElement s = z2.from_vector({a, b}), t = z2.from_vector({c, d});
            if (!s.meet(t).is_identity()) continue;
            ++count;
            long long found = 0;
            for (const auto& u : box_z2)
              for (const auto& v : box_z2)
                if (is_mini_square(MiniSquare{s, t, u, v})) ++found;
            auto [u, v] = complete_mini_square(s, t);
            if (found != 1 || !is_mini_square(MiniSquare{s, t, u, v})) {
              ok = false;
              wit = "s=" + s.str() + ", t=" + t.str() + ", solutions=" + std::to_string(found);
            }
          }
        }
      }
    }
    // commutative groups: the unique completion is (t, s)
    for (long long m = 1; m <= 30 && ok; ++m) {
      for (long long n = 1; n <= 30 && ok; ++n) {
        LatticeElement s = posq.from_integer(m), t = posq.from_integer(n);
        if (!s.meet(t).is_identity()) continue;
        ++count;
        auto [u, v] = complete_mini_square(s, t);
        if (u != t || v != s) {
          ok = false;
          wit = "s=" + s.str() + ", t=" + t.str();
        }
      }
    }
    const char* law = "completion of coprime (s,t) exists uniquely; (u,v)=(t,s) when abelian";
    rep.checks.push_back(ok ? CheckResult::pass("completion-unique", law, count)
                            : CheckResult::fail("completion-unique", law, count, {wit}));
  }

  {  // decompositions recompose
    bool ok = true;
    std::string wit;
    long long count = 0;
    for (long long a = -3; a <= 3 && ok; ++a) {
      for (long long b = -3; b <= 3 && ok; ++b) {
        LatticeElement x = z2.from_vector({a, b});
        ++count;
        auto [l1, l2] = decompose_left(x);
        auto [r1, r2] = decompose_right(x);
        if (!l1.is_positive() || !l2.is_positive() || l1.inverse() * l2 != x ||
            !r1.is_positive() || !r2.is_positive() || r1 * r2.inverse() != x) {
          ok = false;
          wit = "x=" + x.str();
        }
      }
    }
    const char* law = "x = a^{-1} b and x = n m^{-1} with all parts in P";
    rep.checks.push_back(ok ? CheckResult::pass("decompose", law, count)
                            : CheckResult::fail("decompose", law, count, {wit}));
  }
}

void run_cocycle_for(Report& rep, const Cocycle& w, const std::string& tag, int depth, int box,
                     int jobs) {
  auto push = [&](CheckResult r) {
    r.name = tag + "/" + r.name;
    rep.checks.push_back(std::move(r));
  };
  push(check_normalized(w, depth, box, jobs));
  push(check_cocycle_identity(w, depth, box, jobs));
  for (auto& r : check_admissible_cocycle(w, depth, box)) push(std::move(r));
  push(check_coherence(w, depth, box, jobs));
}

void run_cocycle(Report& rep, const RunConfig& cfg) {
  if (!cfg.dictionary_path.empty()) {
    Dictionary d = Dictionary::parse_file(cfg.dictionary_path);
    auto prog = check_progressive(d);
    if (!prog.progressive)
      throw std::invalid_argument("dictionary is not progressive; stem " + prog.violating_stem +
                                  " has no unique extension");
    Action act = Action::single(Endo::cellular(d));
    Cocycle w = iterate_cocycle(act);
    run_cocycle_for(rep, w, "ca", cfg.depth, cfg.box, cfg.jobs);
    return;
  }
  Action shift = shift_action();
  Cocycle ws = iterate_cocycle(shift);
  run_cocycle_for(rep, ws, "shift", cfg.depth, cfg.box, cfg.jobs);
  Action led = ledrappier_action();
  Cocycle wl = product_cocycle(led);
  run_cocycle_for(rep, wl, "ledrappier", cfg.depth, cfg.box, cfg.jobs);
}

void run_operators_for(Report& rep, const Action& act, const Cocycle& w, const std::string& tag,
                       const RunConfig& cfg) {
  auto push = [&](CheckResult r) {
    r.name = tag + "/" + r.name;
    rep.checks.push_back(std::move(r));
  };
  Evaluator ev(act, w);
  push(check_transfer_axiom(ev, cfg.depth, cfg.box));
  push(check_transfer_antimult(ev, cfg.depth, cfg.box));
  // E-commutation across the generator directions
  if (act.group() == LatticeGroup::int_vector(2)) {
    for (auto& r : check_e_commutation(ev, act.group().from_vector({1, 0}),
                                       act.group().from_vector({0, 1}), cfg.depth))
      push(std::move(r));
  } else if (act.group() == LatticeGroup::int_vector(1)) {
    for (auto& r : check_e_commutation(ev, act.group().from_vector({1}),
                                       act.group().from_vector({2}), cfg.depth))
      push(std::move(r));
  }
  for (auto& r : check_interaction_axioms(ev, cfg.depth, cfg.box, 2, cfg.jobs))
    push(std::move(r));
  if (act.group() == LatticeGroup::int_vector(2)) push(check_poly_w(ev, cfg.depth, cfg.box));
}

void run_operators(Report& rep, const RunConfig& cfg) {
  Action shift = shift_action();
  Cocycle ws = iterate_cocycle(shift);
  run_operators_for(rep, shift, ws, "shift", cfg);
  Action led = ledrappier_action();
  Cocycle wl = product_cocycle(led);
  run_operators_for(rep, led, wl, "ledrappier", cfg);
}

void run_groupoid(Report& rep, const RunConfig& cfg) {
  Action led = ledrappier_action();
  for (auto& r : check_groupoid_axioms(led, cfg.depth, cfg.box)) rep.checks.push_back(r);
  rep.checks.push_back(check_admissible_action(led, cfg.depth, cfg.box));
  rep.checks.push_back(check_preimage_intersection(led, cfg.depth, cfg.box));
  rep.checks.push_back(check_class_product_bijection(led, cfg.depth, cfg.box));
  for (auto& r : check_poly_groupoid(led, cfg.depth, cfg.box)) rep.checks.push_back(r);
}

void run_convolution(Report& rep, const RunConfig& cfg) {
  Action led = ledrappier_action();
  Cocycle w = product_cocycle(led);
  Convolver cv(led, w);
  Evaluator ev(led, w);
  for (auto& r : check_isometry_semigroup(cv, cfg.depth, cfg.box)) rep.checks.push_back(r);
  rep.checks.push_back(check_ss_star_formula(cv, cfg.depth, cfg.box));
  rep.checks.push_back(check_adjoint(cv, cfg.depth, cfg.box));
  rep.checks.push_back(check_associativity(cv, cfg.depth, cfg.box));
  for (auto& r : check_projection_commutation(cv, cfg.depth, cfg.box)) rep.checks.push_back(r);
  for (auto& r : check_partial_representation(cv, cfg.depth, cfg.box)) rep.checks.push_back(r);
  rep.checks.push_back(check_covariance(cv, ev, cfg.depth, cfg.box));
  LatticeElement n11 = led.group().from_vector({1, 1});
  rep.checks.push_back(check_partition_of_unity(cv, n11, cfg.depth, cfg.box));
}

void run_ledrappier(Report& rep, const RunConfig& cfg) {
  Action led = ledrappier_action();
  Endo s = led.generator(0), t = led.generator(1);

  {  // star-commutation of the generating pair
    auto star = check_star_commuting(s, t, cfg.depth);
    const char* law = "unique joint lift for T(x) = S(y)";
    rep.checks.push_back(star.star_commuting
                             ? CheckResult::pass("star-commutation", law, star.pairs_checked)
                             : CheckResult::fail("star-commutation", law, star.pairs_checked,
                                                 {star.witness->first.str() + ", " +
                                                  star.witness->second.str()}));
  }

  {  // two-dimensional reconstruction matches the window map row by row
    bool ok = true;
    std::string wit;
    long long count = 0;
    for (const auto& row0 : canonical_points(cfg.depth)) {
      ++count;
      auto block = ledrappier_block(row0, 3, 8);
      Point trow = ca_apply(ledrappier_dictionary(), row0);
      Point srow = s.apply(row0);
      auto block_t = ledrappier_block(trow, 2, 8);
      auto block_s = ledrappier_block(srow, 2, 8);
      bool good = true;
      for (int c = 0; c < 8; ++c) {
        good = good && block[1][c] == block_t[0][c];    // vertical step = T
        good = good && block[0][c] == row0.bit(c);      // row zero is the seed
      }
      for (int c = 0; c + 1 < 8; ++c) {
        good = good && block_s[0][c] == block[0][c + 1];  // horizontal step = S
        good = good && block[1][c] == (block[0][c] + block[0][c + 1]) % 2;
      }
      if (!good) {
        ok = false;
        wit = "first row " + row0.str();
        break;
      }
    }
    const char* law = "row q+1 = window image of row q; shifts act as S and T";
    rep.checks.push_back(ok ? CheckResult::pass("reconstruction", law, count)
                            : CheckResult::fail("reconstruction", law, count, {wit}));
  }

  {  // relations commute here (contrast with the counterexample)
    auto rel = check_relation_commutation(led, std::min(cfg.depth, 3), std::min(cfg.box, 2));
    const char* law = "R_S and R_T commute on sampled pairs";
    rep.checks.push_back(rel.commutes
                             ? CheckResult::pass("relation-commutation", law, rel.pairs_checked)
                             : CheckResult::fail("relation-commutation", law, rel.pairs_checked,
                                                 {rel.witness}));
  }
}

void run_circle(Report& rep, const RunConfig& cfg) {
  Action circ = Action::circle();
  Cocycle w = circle_cocycle(circ);
  run_cocycle_for(rep, w, "circle", cfg.depth, cfg.box, cfg.jobs);
  rep.checks.push_back(check_admissible_action(circ, cfg.depth, cfg.box));
  Evaluator ev(circ, w);
  rep.checks.push_back(check_transfer_axiom(ev, cfg.depth, std::min(cfg.box, 4)));
  rep.checks.push_back(check_transfer_antimult(ev, cfg.depth, std::min(cfg.box, 4)));
}

void run_counterexample(Report& rep, const RunConfig& cfg) {
  Action act = counterexample_action();
  Endo s = act.generator(0), t = act.generator(1);
  Point x = Point::parse("0|1"), y = Point::parse("|1"), z = Point::parse("|0");

  {  // the concrete witness: (x,z) crosses R_S o R_T but not R_T o R_S
    bool fwd = relation_compose_member(s, t, x, z);
    bool via_y = s.apply(x) == s.apply(y) && t.apply(y) == t.apply(z);
    bool bwd = relation_compose_member(t, s, x, z);
    bool ok = fwd && via_y && !bwd;
    CheckResult r = ok ? CheckResult::pass("witness-pair",
                                           "(0|1, |0) in R_S o R_T \\ R_T o R_S", 3)
                       : CheckResult::fail("witness-pair",
                                           "(0|1, |0) in R_S o R_T \\ R_T o R_S", 3, {});
    r.witnesses.push_back("x=" + x.str() + ", z=" + z.str() + " via y=" + y.str());
    for (const auto& cand : s.preimages(s.apply(z)))
      r.witnesses.push_back("rejected y'=" + cand.str() + ": T(x) != T(y')");
    rep.checks.push_back(std::move(r));
  }

  {  // the sweep finds non-commutation on its own
    auto rel = check_relation_commutation(act, std::min(cfg.depth, 3), std::min(cfg.box, 2));
    const char* law = "R_S and R_T fail to commute";
    CheckResult r = !rel.commutes
                        ? CheckResult::pass("relation-noncommutation", law, rel.pairs_checked)
                        : CheckResult::fail("relation-noncommutation", law, rel.pairs_checked,
                                            {"no witness found"});
    if (!rel.commutes) r.witnesses.push_back(rel.witness);
    rep.checks.push_back(std::move(r));
  }

  {  // star-commutation fails with a witness
    auto star = check_star_commuting(s, t, cfg.depth);
    const char* law = "(S, T_D) is not star-commuting";
    CheckResult r = !star.star_commuting
                        ? CheckResult::pass("star-commutation-fails", law, star.pairs_checked)
                        : CheckResult::fail("star-commutation-fails", law, star.pairs_checked,
                                            {"no witness found"});
    if (!star.star_commuting)
      r.witnesses.push_back("x=" + star.witness->first.str() + ", y=" +
                            star.witness->second.str() + ", lifts=" +
                            std::to_string(star.witness_count));
    rep.checks.push_back(std::move(r));
  }

  {  // the product-form candidate cannot be coherent
    Cocycle cand = product_candidate(act);
    auto coh = check_coherence(cand, std::min(cfg.depth, 3), std::min(cfg.box, 2), cfg.jobs);
    const char* law = "product candidate fails coherence";
    CheckResult r = !coh.passed
                        ? CheckResult::pass("candidate-incoherent", law, coh.samples)
                        : CheckResult::fail("candidate-incoherent", law, coh.samples,
                                            {"candidate passed coherence unexpectedly"});
    r.witnesses.insert(r.witnesses.end(), coh.witnesses.begin(), coh.witnesses.end());
    rep.checks.push_back(std::move(r));

    rep.checks.push_back(check_relation_commutation_implication(cand, std::min(cfg.depth, 3),
                                                                std::min(cfg.box, 2)));
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"scalar",  "lattice",    "cocycle", "operators",     "groupoid",
          "convolution", "ledrappier", "circle",  "counterexample"};
}

Report run_suite(const RunConfig& cfg) {
  Report rep;
  rep.suite = cfg.suite;
  rep.config = cfg;
  auto start = std::chrono::steady_clock::now();
  if (cfg.suite == "scalar") {
    run_scalar(rep);
  } else if (cfg.suite == "lattice") {
    run_lattice(rep);
  } else if (cfg.suite == "cocycle") {
    run_cocycle(rep, cfg);
  } else if (cfg.suite == "operators") {
    run_operators(rep, cfg);
  } else if (cfg.suite == "groupoid") {
    run_groupoid(rep, cfg);
  } else if (cfg.suite == "convolution") {
    run_convolution(rep, cfg);
  } else if (cfg.suite == "ledrappier") {
    run_ledrappier(rep, cfg);
  } else if (cfg.suite == "circle") {
    run_circle(rep, cfg);
  } else if (cfg.suite == "counterexample") {
    run_counterexample(rep, cfg);
  } else {
    throw std::invalid_argument("unknown suite: " + cfg.suite);
  }
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

Report search_dictionaries(int width, const RunConfig& cfg) {
  if (width < 1 || width > 5) throw std::invalid_argument("width must be between 1 and 5");
  Report rep;
  rep.suite = "search-dictionaries";
  rep.config = cfg;
  auto start = std::chrono::steady_clock::now();

  auto dicts = progressive_dictionaries(width);
  Endo s = Endo::shift();
  for (const auto& d : dicts) {
    Endo t = Endo::cellular(d);
    CheckResult row = CheckResult::pass("D=" + d.str(), "census", 1);
    Action act = Action::pair(s, t);
    auto rel = check_relation_commutation(act, std::min(cfg.depth, 3), 2);
    row.witnesses.push_back(std::string("relation-commuting: ") +
                            (rel.commutes ? "true" : "false") +
                            (rel.commutes ? "" : " at " + rel.witness));
    auto star = check_star_commuting(s, t, cfg.depth);
    row.witnesses.push_back(std::string("star-commuting: ") +
                            (star.star_commuting ? "true" : "false") +
                            (star.star_commuting
                                 ? ""
                                 : " at (" + star.witness->first.str() + ", " +
                                       star.witness->second.str() + ")"));
    rep.checks.push_back(std::move(row));
  }

  long long expected = progressive_count(width);
  rep.checks.push_back(
      static_cast<long long>(dicts.size()) == expected
          ? CheckResult::pass("census-count",
                              "progressive dictionaries number 2^(2^(p-1))", expected)
          : CheckResult::fail("census-count",
                              "progressive dictionaries number 2^(2^(p-1))",
                              static_cast<long long>(dicts.size()), {}));

  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

}  // namespace sgdyn
