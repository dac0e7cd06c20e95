#include "sgdyn/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "engine.hpp"

namespace sgdyn {

namespace {

LatticeElement positive_part(const LatticeElement& g) {
  return g.join(g.inverse() * g);  // g v 1
}

}  // namespace

std::string GroupoidElement::str() const {
  return "(" + x.str() + " ; " + g.str() + " ; " + y.str() + ") via (" + wn.str() + "," +
         wm.str() + ")";
}

GroupoidElement make_element(const Action& a, Point x, LatticeElement g, Point y,
                             LatticeElement n, LatticeElement m) {
  if (!n.is_positive() || !m.is_positive())
    throw std::invalid_argument("witness components must lie in P");
  if (n * m.inverse() != g)
    throw std::invalid_argument("witness does not recompose g: " + n.str() + "," + m.str());
  if (a.apply(n, x) != a.apply(m, y))
    throw std::invalid_argument("witness images differ: theta_n(x) != theta_m(y)");
  return GroupoidElement{std::move(x), std::move(g), std::move(y), std::move(n), std::move(m)};
}

bool BasicBisection::contains(const Action& act, const GroupoidElement& e) const {
  if (e.g != n * m.inverse()) return false;
  if (act.apply(n, e.x) != act.apply(m, e.y)) return false;
  return a.contains(e.x) && b.contains(e.y);
}

MembershipResult membership(const Action& a, const Point& x, const LatticeElement& g,
                            const Point& y, long long state_bound) {
  MembershipResult r;
  LatticeElement n0 = positive_part(g);
  LatticeElement m0 = positive_part(g.inverse());
  // n0 * m0^{-1} = g by construction.
  Point xt = a.apply(n0, x);
  Point yt = a.apply(m0, y);

  if (a.group() == LatticeGroup::positive_rationals()) {
    // Need c with c * (xt - yt) integral; the denominator of the difference
    // is the least such c.
    Rational diff = xt.angle_value() - yt.angle_value();
    long long c = diff.den();
    r.status = Membership::yes;
    r.witness = {n0 * a.group().from_integer(c), m0 * a.group().from_integer(c)};
    r.states_explored = 1;
    return r;
  }

  // BFS over the pair orbit under the generator maps; the orbit is finite on
  // eventually periodic points, so exhaustion is a proof of No.
  struct Node {
    Point first, second;
    LatticeElement c;
  };
  std::set<std::pair<Point, Point>> seen;
  std::queue<Node> q;
  q.push({xt, yt, a.group().identity()});
  seen.insert({xt, yt});
  while (!q.empty()) {
    Node cur = q.front();
    q.pop();
    ++r.states_explored;
    if (cur.first == cur.second) {
      r.status = Membership::yes;
      r.witness = {n0 * cur.c, m0 * cur.c};
      return r;
    }
    if (r.states_explored > state_bound) {
      r.status = Membership::unknown;
      return r;
    }
    for (int i = 0; i < a.generator_count(); ++i) {
      std::vector<long long> step(a.group().dim(), 0);
      step[i] = 1;
      LatticeElement gen = a.group().from_vector(step);
      Node nxt{a.apply(gen, cur.first), a.apply(gen, cur.second), cur.c * gen};
      if (seen.insert({nxt.first, nxt.second}).second) q.push(std::move(nxt));
    }
  }
  r.status = Membership::no;
  return r;
}

GroupoidElement compose(const Action& a, const GroupoidElement& e1, const GroupoidElement& e2) {
  if (e1.y != e2.x)
    throw std::invalid_argument("elements are not composable: " + e1.y.str() +
                                " != " + e2.x.str());
  // With witnesses (n,m) and (p,q): write m^{-1} p = u v^{-1}; the product
  // carries witness (n u, q v).
  auto [u, v] = decompose_right(e1.wm.inverse() * e2.wn);
  return make_element(a, e1.x, e1.g * e2.g, e2.y, e1.wn * u, e2.wm * v);
}

GroupoidElement inverse(const GroupoidElement& e) {
  return GroupoidElement{e.y, e.g.inverse(), e.x, e.wm, e.wn};
}

GroupoidElement unit_at(const Action& a, const Point& x) {
  auto one = a.group().identity();
  return make_element(a, x, one, x, one, one);
}

std::vector<GroupoidElement> sample_elements(const Action& a, int depth, int box) {
  auto samples = a.sample_points(depth);
  auto elts = a.group().positive_box(box);
  std::vector<GroupoidElement> out;
  std::set<std::tuple<Point, LatticeElement, Point>> seen;
  for (const auto& x : samples) {
    for (const auto& n : elts) {
      Point img = a.apply(n, x);
      for (const auto& m : elts) {
        LatticeElement g = n * m.inverse();
        for (const auto& y : a.preimages(m, img)) {
          if (seen.insert({x, g, y}).second)
            out.push_back(make_element(a, x, g, y, n, m));
        }
      }
    }
  }
  return out;
}

std::vector<CheckResult> check_groupoid_axioms(const Action& a, int depth, int box) {
  auto elements = sample_elements(a, depth, box);
  std::vector<CheckResult> out;

  {  // units and inverses
    bool ok = true;
    std::string wit;
    long long count = 0;
    for (const auto& e : elements) {
      ++count;
      GroupoidElement inv = inverse(e);
      GroupoidElement left = compose(a, e, inv);
      GroupoidElement right = compose(a, inv, e);
      GroupoidElement ux = unit_at(a, e.x), uy = unit_at(a, e.y);
      if (!(left == ux) || !(right == uy) || !(inverse(inv) == e) ||
          !(compose(a, ux, e) == e) || !(compose(a, e, uy) == e)) {
        ok = false;
        wit = e.str();
        break;
      }
    }
    const char* law = "e e^{-1} and e^{-1} e are units; (e^{-1})^{-1} = e";
    out.push_back(ok ? CheckResult::pass("groupoid-units", law, count)
                     : CheckResult::fail("groupoid-units", law, count, {wit}));
  }

  // composable pairs grouped by the middle point
  std::map<Point, std::vector<size_t>> by_source;
  for (size_t i = 0; i < elements.size(); ++i) by_source[elements[i].x].push_back(i);

  {  // witness recomposition on composable pairs
    bool ok = true;
    std::string wit;
    long long count = 0;
    const long long kPairBudget = 50000;
    for (const auto& e1 : elements) {
      auto it = by_source.find(e1.y);
      if (it == by_source.end()) continue;
      for (size_t j : it->second) {
        const auto& e2 = elements[j];
        ++count;
        GroupoidElement prod = compose(a, e1, e2);
        if (prod.wn * prod.wm.inverse() != e1.g * e2.g ||
            a.apply(prod.wn, prod.x) != a.apply(prod.wm, prod.y)) {
          ok = false;
          wit = e1.str() + " * " + e2.str();
          break;
        }
        if (count >= kPairBudget) break;
      }
      if (!ok || count >= kPairBudget) break;
    }
    const char* law = "product witness satisfies nu (qv)^{-1} = gh and matching images";
    out.push_back(ok ? CheckResult::pass("groupoid-witness", law, count)
                     : CheckResult::fail("groupoid-witness", law, count, {wit}));
  }

  {  // associativity on sampled triples
    bool ok = true;
    std::string wit;
    long long count = 0;
    const long long kTripleBudget = 20000;
    for (const auto& e1 : elements) {
      auto it = by_source.find(e1.y);
      if (it == by_source.end()) continue;
      for (size_t j : it->second) {
        const auto& e2 = elements[j];
        auto it2 = by_source.find(e2.y);
        if (it2 == by_source.end()) continue;
        for (size_t k : it2->second) {
          const auto& e3 = elements[k];
          ++count;
          GroupoidElement lhs = compose(a, compose(a, e1, e2), e3);
          GroupoidElement rhs = compose(a, e1, compose(a, e2, e3));
          if (!(lhs == rhs)) {
            ok = false;
            wit = e1.str() + " * " + e2.str() + " * " + e3.str();
          }
          if (!ok || count >= kTripleBudget) break;
        }
        if (!ok || count >= kTripleBudget) break;
      }
      if (!ok || count >= kTripleBudget) break;
    }
    const char* law = "(e1 e2) e3 = e1 (e2 e3)";
    out.push_back(ok ? CheckResult::pass("groupoid-associativity", law, count)
                     : CheckResult::fail("groupoid-associativity", law, count, {wit}));
  }

  return out;
}

CheckResult check_admissible_action(const Action& a, int depth, int box) {
  const char* law = "each mini-square and compatible pair lifts uniquely";
  auto samples = a.sample_points(depth);
  auto squares = mini_squares_in_box(a.group(), box);
  detail::Engine eng(a);
  long long count = 0;
  for (const auto& q : squares) {
    int sid = eng.elt(q.s), tid = eng.elt(q.t), uid = eng.elt(q.u), vid = eng.elt(q.v);
    for (const auto& x : samples) {
      int xi = eng.intern(x);
      int ux = eng.apply(uid, xi);
      // every y compatible with x, not just sampled ones
      for (int yi : eng.fiber(vid, ux)) {
        ++count;
        long long lifts = 0;
        for (int zi : eng.fiber(sid, xi))
          if (eng.apply(tid, zi) == yi) ++lifts;
        if (lifts != 1)
          return CheckResult::fail("admissible-action", law, count,
                                   {"square=" + q.str() + ", x=" + x.str() + ", y=" +
                                    eng.point(yi).str() + ", lifts=" + std::to_string(lifts)});
      }
    }
  }
  return CheckResult::pass("admissible-action", law, count);
}

std::vector<Point> preimage_intersection(const Action& a, const LatticeElement& m,
                                         const Point& p, const LatticeElement& n,
                                         const Point& q) {
  MiniSquare sq = mini_square_from_pair(m, n);
  if (a.apply(sq.u, p) != a.apply(sq.v, q)) return {};
  std::vector<Point> lifts;
  for (const auto& w : a.preimages(sq.s, p))
    if (a.apply(sq.t, w) == q) lifts.push_back(w);
  if (lifts.size() != 1)
    throw std::logic_error("admissibility violated: " + std::to_string(lifts.size()) +
                           " lifts for p=" + p.str() + ", q=" + q.str());
  return a.preimages(m.meet(n), lifts[0]);
}

CheckResult check_preimage_intersection(const Action& a, int depth, int box) {
  const char* law = "theta_m^{-1}(p) cap theta_n^{-1}(q) = theta_{m^n}^{-1}(w)";
  auto samples = a.sample_points(depth);
  auto elts = a.group().positive_box(box);
  detail::Engine eng(a);
  std::vector<int> sample_ids;
  for (const auto& p : samples) sample_ids.push_back(eng.intern(p));
  long long count = 0;
  for (const auto& m : elts) {
    for (const auto& n : elts) {
      MiniSquare sq = mini_square_from_pair(m, n);
      int mid = eng.elt(m), nid = eng.elt(n), meet_id = eng.elt(m.meet(n));
      int sid = eng.elt(sq.s), tid = eng.elt(sq.t), uid = eng.elt(sq.u), vid = eng.elt(sq.v);
      for (size_t pi = 0; pi < sample_ids.size(); ++pi) {
        for (size_t qi = 0; qi < sample_ids.size(); ++qi) {
          ++count;
          int p = sample_ids[pi], q = sample_ids[qi];
          const auto& fm = eng.fiber(mid, p);
          const auto& fn = eng.fiber(nid, q);
          std::vector<int> brute;
          std::set_intersection(fm.begin(), fm.end(), fn.begin(), fn.end(),
                                std::back_inserter(brute));
          std::vector<int> formula;
          if (eng.apply(uid, p) == eng.apply(vid, q)) {
            std::vector<int> lifts;
            for (int w : eng.fiber(sid, p))
              if (eng.apply(tid, w) == q) lifts.push_back(w);
            if (lifts.size() != 1)
              return CheckResult::fail(
                  "preimage-intersection", law, count,
                  {"lift count " + std::to_string(lifts.size()) + " at m=" + m.str() +
                   ", n=" + n.str() + ", p=" + samples[pi].str() + ", q=" + samples[qi].str()});
            formula = eng.fiber(meet_id, lifts[0]);
          }
          if (formula != brute)
            return CheckResult::fail("preimage-intersection", law, count,
                                     {"m=" + m.str() + ", n=" + n.str() + ", p=" +
                                      samples[pi].str() + ", q=" + samples[qi].str()});
        }
      }
    }
  }
  return CheckResult::pass("preimage-intersection", law, count);
}

CheckResult check_class_product_bijection(const Action& a, int depth, int box) {
  const char* law = "phi(z) = (theta_s(z), theta_t(z)) is a bijection onto C^u x C^v";
  auto samples = a.sample_points(depth);
  auto squares = mini_squares_in_box(a.group(), box);
  long long count = 0;
  for (const auto& q : squares) {
    LatticeElement join = q.s * q.u;
    for (const auto& zbar : samples) {
      ++count;
      Point xbar = a.apply(q.s, zbar), ybar = a.apply(q.t, zbar);
      auto dom = fiber_class(a, join, zbar);
      auto cu = fiber_class(a, q.u, xbar);
      auto cv = fiber_class(a, q.v, ybar);
      std::set<std::pair<Point, Point>> image;
      for (const auto& z : dom) {
        auto pr = std::make_pair(a.apply(q.s, z), a.apply(q.t, z));
        if (!image.insert(pr).second)
          return CheckResult::fail("class-product-bijection", law, count,
                                   {"not injective: square=" + q.str() + ", z=" + zbar.str()});
      }
      if (image.size() != cu.size() * cv.size())
        return CheckResult::fail(
            "class-product-bijection", law, count,
            {"cardinality: square=" + q.str() + ", z=" + zbar.str() + ", |dom|=" +
             std::to_string(dom.size()) + " vs " + std::to_string(cu.size() * cv.size())});
      for (const auto& u_pt : cu)
        for (const auto& v_pt : cv)
          if (!image.count({u_pt, v_pt}))
            return CheckResult::fail("class-product-bijection", law, count,
                                     {"not onto: square=" + q.str() + ", z=" + zbar.str()});
    }
  }
  return CheckResult::pass("class-product-bijection", law, count);
}

std::string PolyElement::str() const {
  return "(" + x.str() + " ; " + std::to_string(k) + " ; " + y.str() + ") via (" +
         std::to_string(wn) + "," + std::to_string(wm) + ")";
}

namespace {

void require_pair_action(const Action& a) {
  if (a.group() != LatticeGroup::int_vector(2))
    throw std::invalid_argument("polymorphism groupoid needs an N^2 action");
}

// theta_{(n,m)}(x) = theta_{(m,n)}(y) is the polymorphism witness relation.
bool poly_witness_ok(const Action& a, const Point& x, const Point& y, long long n,
                     long long m) {
  return a.apply(a.group().from_vector({n, m}), x) == a.apply(a.group().from_vector({m, n}), y);
}

}  // namespace

PolyElement make_poly_element(const Action& a, Point x, long long k, Point y, long long n,
                              long long m) {
  require_pair_action(a);
  if (n < 0 || m < 0 || n - m != k) throw std::invalid_argument("bad polymorphism witness");
  if (!poly_witness_ok(a, x, y, n, m))
    throw std::invalid_argument("witness images differ for polymorphism element");
  return PolyElement{std::move(x), k, std::move(y), n, m};
}

MembershipResult poly_membership(const Action& a, const Point& x, long long k, const Point& y,
                                 long long state_bound) {
  require_pair_action(a);
  MembershipResult r;
  long long n0 = k >= 0 ? k : 0, m0 = k >= 0 ? 0 : -k;
  // (n,m) = (n0+j, m0+j); both sides advance by ST per step, so track the
  // pair orbit under ST and stop at a repeat.
  Point xt = a.apply(a.group().from_vector({n0, m0}), x);
  Point yt = a.apply(a.group().from_vector({m0, n0}), y);
  LatticeElement st = a.group().from_vector({1, 1});
  std::set<std::pair<Point, Point>> seen;
  long long j = 0;
  while (true) {
    ++r.states_explored;
    if (xt == yt) {
      r.status = Membership::yes;
      r.witness = {a.group().from_vector({n0 + j, m0 + j}),
                   a.group().from_vector({m0 + j, n0 + j})};
      return r;
    }
    if (!seen.insert({xt, yt}).second) {
      r.status = Membership::no;
      return r;
    }
    if (r.states_explored > state_bound) {
      r.status = Membership::unknown;
      return r;
    }
    xt = a.apply(st, xt);
    yt = a.apply(st, yt);
    ++j;
  }
}

PolyElement poly_compose(const Action& a, const PolyElement& e1, const PolyElement& e2) {
  if (e1.y != e2.x) throw std::invalid_argument("poly elements are not composable");
  return make_poly_element(a, e1.x, e1.k + e2.k, e2.y, e1.wn + e2.wn, e1.wm + e2.wm);
}

long long degree_map(const GroupoidElement& e) {
  const auto& v = e.g.vec();
  return std::accumulate(v.begin(), v.end(), 0LL);
}

GroupoidElement poly_to_groupoid(const Action& a, const PolyElement& e) {
  require_pair_action(a);
  return make_element(a, e.x, a.group().from_vector({e.k, -e.k}), e.y,
                      a.group().from_vector({e.wn, e.wm}),
                      a.group().from_vector({e.wm, e.wn}));
}

PolyElement groupoid_to_poly(const Action& a, const GroupoidElement& e) {
  require_pair_action(a);
  if (degree_map(e) != 0) throw std::invalid_argument("element is outside ker d");
  long long n = e.g.vec()[0];
  // witness (p,q) ~ (r,s); pad so that k+p = l+s with k,l >= 0
  long long p = e.wn.vec()[0], q = e.wn.vec()[1];
  long long s = e.wm.vec()[1];
  long long l = std::max(0LL, p - s);
  long long k = l + s - p;
  return make_poly_element(a, e.x, n, e.y, k + p, l + q);
}

std::vector<CheckResult> check_poly_groupoid(const Action& a, int depth, int box) {
  require_pair_action(a);
  auto samples = a.sample_points(depth);
  std::vector<CheckResult> out;

  // Build sampled poly elements: for x sampled and witness (n,m) in the box,
  // y runs over the fiber making theta_(n,m)(x) = theta_(m,n)(y).
  std::vector<PolyElement> elements;
  std::set<std::tuple<Point, long long, Point>> seen;
  for (const auto& x : samples) {
    for (long long n = 0; n <= box; ++n) {
      for (long long m = 0; m <= box; ++m) {
        Point img = a.apply(a.group().from_vector({n, m}), x);
        for (const auto& y : a.preimages(a.group().from_vector({m, n}), img)) {
          if (seen.insert({x, n - m, y}).second)
            elements.push_back(make_poly_element(a, x, n - m, y, n, m));
        }
      }
    }
  }

  {  // d is additive on composable pairs
    bool ok = true;
    std::string wit;
    long long count = 0;
    std::map<Point, std::vector<size_t>> by_source;
    for (size_t i = 0; i < elements.size(); ++i) by_source[elements[i].x].push_back(i);
    for (const auto& e1 : elements) {
      auto it = by_source.find(e1.y);
      if (it == by_source.end()) continue;
      for (size_t j : it->second) {
        const auto& e2 = elements[j];
        ++count;
        GroupoidElement g1 = poly_to_groupoid(a, e1);
        GroupoidElement g2 = poly_to_groupoid(a, e2);
        GroupoidElement prod = compose(a, g1, g2);
        if (degree_map(prod) != degree_map(g1) + degree_map(g2)) {
          ok = false;
          wit = e1.str() + " * " + e2.str();
          break;
        }
        if (count > 5000) break;
      }
      if (!ok || count > 5000) break;
    }
    const char* law = "d(e1 e2) = d(e1) + d(e2)";
    out.push_back(ok ? CheckResult::pass("poly-degree-additive", law, count)
                     : CheckResult::fail("poly-degree-additive", law, count, {wit}));
  }

  {  // phi lands in ker d and the section inverts it
    bool ok = true;
    std::string wit;
    long long count = 0;
    for (const auto& e : elements) {
      ++count;
      GroupoidElement img = poly_to_groupoid(a, e);
      if (degree_map(img) != 0) {
        ok = false;
        wit = e.str();
        break;
      }
      PolyElement back = groupoid_to_poly(a, img);
      if (back.x != e.x || back.y != e.y || back.k != e.k) {
        ok = false;
        wit = e.str();
        break;
      }
    }
    const char* law = "phi maps into ker d and is inverted by the witness section";
    out.push_back(ok ? CheckResult::pass("poly-phi-kernel", law, count)
                     : CheckResult::fail("poly-phi-kernel", law, count, {wit}));
  }

  return out;
}

}  // namespace sgdyn
