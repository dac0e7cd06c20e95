#include "sgdyn/operators.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "engine.hpp"

namespace sgdyn {

namespace detail {

struct ObsNode {
  enum class Kind {
    cylinder,
    circle_poly,
    constant,
    alpha,
    transfer,
    expectation,
    interaction,  // L_n alpha_m
    poly_w,
    sum,
    product,
    scale
  };
  Kind kind;
  CylinderFunction cyl;
  std::vector<Rational> poly;
  Scalar c;
  LatticeElement n, m;
  long long k = 0;
  std::vector<std::shared_ptr<const ObsNode>> children;
};

}  // namespace detail

using detail::ObsNode;

namespace {

std::shared_ptr<ObsNode> make_node(ObsNode::Kind k) {
  auto n = std::make_shared<ObsNode>();
  n->kind = k;
  return n;
}

std::shared_ptr<const ObsNode> child_of(const Observable& o) { return o.share(); }

}  // namespace

Observable Observable::cylinder(CylinderFunction f) {
  auto n = make_node(ObsNode::Kind::cylinder);
  n->cyl = std::move(f);
  return Observable(n);
}

Observable Observable::circle_poly(std::vector<Rational> coeffs) {
  auto n = make_node(ObsNode::Kind::circle_poly);
  n->poly = std::move(coeffs);
  return Observable(n);
}

Observable Observable::constant(Scalar c) {
  auto n = make_node(ObsNode::Kind::constant);
  n->c = std::move(c);
  return Observable(n);
}

Observable Observable::alpha(const LatticeElement& n_, Observable e) {
  if (!n_.is_positive()) throw std::invalid_argument("alpha index must lie in P");
  auto n = make_node(ObsNode::Kind::alpha);
  n->n = n_;
  n->children = {child_of(e)};
  return Observable(n);
}

Observable Observable::transfer(const LatticeElement& n_, Observable e) {
  if (!n_.is_positive()) throw std::invalid_argument("transfer index must lie in P");
  auto n = make_node(ObsNode::Kind::transfer);
  n->n = n_;
  n->children = {child_of(e)};
  return Observable(n);
}

Observable Observable::expectation(const LatticeElement& n_, Observable e) {
  if (!n_.is_positive()) throw std::invalid_argument("expectation index must lie in P");
  auto n = make_node(ObsNode::Kind::expectation);
  n->n = n_;
  n->children = {child_of(e)};
  return Observable(n);
}

Observable Observable::interaction(const LatticeElement& g, Observable e) {
  auto [a, b] = decompose_left(g);
  return interaction_via(a, b, std::move(e));
}

Observable Observable::interaction_via(const LatticeElement& n_, const LatticeElement& m_,
                                       Observable e) {
  if (!n_.is_positive() || !m_.is_positive())
    throw std::invalid_argument("interaction factors must lie in P");
  auto n = make_node(ObsNode::Kind::interaction);
  n->n = n_;
  n->m = m_;
  n->children = {child_of(e)};
  return Observable(n);
}

Observable Observable::poly_w(long long k, Observable e) {
  auto n = make_node(ObsNode::Kind::poly_w);
  n->k = k;
  n->children = {child_of(e)};
  return Observable(n);
}

Observable Observable::add(Observable a, Observable b) {
  auto n = make_node(ObsNode::Kind::sum);
  n->children = {child_of(a), child_of(b)};
  return Observable(n);
}

Observable Observable::mul(Observable a, Observable b) {
  auto n = make_node(ObsNode::Kind::product);
  n->children = {child_of(a), child_of(b)};
  return Observable(n);
}

Observable Observable::scale(Scalar c, Observable e) {
  auto n = make_node(ObsNode::Kind::scale);
  n->c = std::move(c);
  n->children = {child_of(e)};
  return Observable(n);
}

struct Evaluator::Impl {
  detail::Engine eng;
  std::unordered_map<const ObsNode*, int> node_ids;
  std::unordered_map<uint64_t, Scalar> memo;
  // keep evaluated roots alive so node pointers stay valid as memo keys
  std::vector<std::shared_ptr<const ObsNode>> roots;

  Impl(const Action& a, const Cocycle& w) : eng(a, &w) {}

  int node_id(const ObsNode* n) {
    auto [it, fresh] = node_ids.try_emplace(n, static_cast<int>(node_ids.size()));
    return it->second;
  }

  Scalar eval(const ObsNode* node, int pid) {
    uint64_t key = detail::pack(node_id(node), pid);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Scalar out;
    switch (node->kind) {
      case ObsNode::Kind::cylinder:
        out = node->cyl.eval(eng.point(pid));
        break;
      case ObsNode::Kind::circle_poly: {
        const Rational& x = eng.point(pid).angle_value();
        Rational acc(0), pw(1);
        for (const auto& c : node->poly) {
          acc += c * pw;
          pw *= x;
        }
        out = Scalar(acc);
        break;
      }
      case ObsNode::Kind::constant:
        out = node->c;
        break;
      case ObsNode::Kind::alpha:
        out = eval(node->children[0].get(), eng.apply(eng.elt(node->n), pid));
        break;
      case ObsNode::Kind::transfer: {
        int eid = eng.elt(node->n);
        for (int q : eng.fiber(eid, pid))
          out += Scalar(eng.weight(eid, q)) * eval(node->children[0].get(), q);
        break;
      }
      case ObsNode::Kind::expectation: {
        int eid = eng.elt(node->n);
        for (int q : eng.cls(eid, pid))
          out += Scalar(eng.weight(eid, q)) * eval(node->children[0].get(), q);
        break;
      }
      case ObsNode::Kind::interaction: {
        int nid = eng.elt(node->n), mid = eng.elt(node->m);
        for (int q : eng.fiber(nid, pid))
          out += Scalar(eng.weight(nid, q)) *
                 eval(node->children[0].get(), eng.apply(mid, q));
        break;
      }
      case ObsNode::Kind::poly_w: {
        const auto& grp = eng.action().group();
        if (grp != LatticeGroup::int_vector(2))
          throw std::invalid_argument("W_k needs an N^2 action");
        long long k = node->k;
        LatticeElement dn = grp.from_vector({0, k >= 0 ? k : 0}),
                       dm = grp.from_vector({k >= 0 ? k : 0, 0});
        if (k < 0) {
          dn = grp.from_vector({-k, 0});
          dm = grp.from_vector({0, -k});
        }
        int nid = eng.elt(dn), mid = eng.elt(dm);
        for (int q : eng.fiber(nid, pid))
          out += Scalar(eng.weight(nid, q)) *
                 eval(node->children[0].get(), eng.apply(mid, q));
        break;
      }
      case ObsNode::Kind::sum:
        for (const auto& ch : node->children) out += eval(ch.get(), pid);
        break;
      case ObsNode::Kind::product: {
        out = Scalar(Rational(1));
        for (const auto& ch : node->children) out = out * eval(ch.get(), pid);
        break;
      }
      case ObsNode::Kind::scale:
        out = node->c * eval(node->children[0].get(), pid);
        break;
    }
    memo.emplace(key, out);
    return out;
  }
};

Evaluator::Evaluator(const Action& a, const Cocycle& w) : impl_(new Impl(a, w)) {}
Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;

Scalar Evaluator::eval(const Observable& e, const Point& x) {
  // Memo keys are raw node pointers, so every root evaluated here must stay
  // alive for the evaluator's lifetime.
  if (!impl_->node_ids.count(e.node())) impl_->roots.push_back(e.share());
  return impl_->eval(e.node(), impl_->eng.intern(x));
}

CylinderFunction Evaluator::materialize(const Observable& e, int depth, int cap) {
  if (depth > cap) throw std::length_error("depth cap exceeded");
  std::vector<Scalar> table;
  table.reserve(size_t(1) << depth);
  for (const auto& w : words_of_length(depth)) {
    Scalar a = eval(e, Point::word(w, "0"));
    Scalar b = eval(e, Point::word(w, "1"));
    if (a != b)
      throw std::domain_error("tail dependence at depth " + std::to_string(depth) +
                              " on cylinder [" + w + "]");
    table.push_back(std::move(a));
  }
  return CylinderFunction::from_table(depth, std::move(table), cap);
}

void Evaluator::clear_cache() { impl_->memo.clear(); }

const Action& Evaluator::action() const { return impl_->eng.action(); }
const Cocycle& Evaluator::cocycle() const { return impl_->eng.cocycle(); }

std::vector<Observable> basis_observables(const Action& a, int basis_depth) {
  std::vector<Observable> out;
  if (a.group() == LatticeGroup::positive_rationals()) {
    out.push_back(Observable::circle_poly({Rational(1)}));
    out.push_back(Observable::circle_poly({Rational(0), Rational(1)}));
    out.push_back(Observable::circle_poly({Rational(0), Rational(0), Rational(1)}));
    return out;
  }
  out.push_back(Observable::constant(Scalar(Rational(1))));
  for (int len = 1; len <= basis_depth; ++len)
    for (const auto& w : words_of_length(len))
      out.push_back(Observable::cylinder(CylinderFunction::indicator(w)));
  return out;
}

namespace {

std::string op_witness(const std::string& detail, const Point& y) {
  return detail + " at y=" + y.str();
}

}  // namespace

CheckResult check_transfer_axiom(Evaluator& ev, int depth, int box, int basis_depth) {
  const char* law = "L_n(f alpha_n(g)) = L_n(f) g";
  auto samples = ev.action().sample_points(depth);
  auto elts = ev.action().group().positive_box(box);
  auto basis = basis_observables(ev.action(), basis_depth);
  long long count = 0;
  for (const auto& n : elts) {
    for (const auto& f : basis) {
      for (const auto& g : basis) {
        Observable lhs = Observable::transfer(n, Observable::mul(f, Observable::alpha(n, g)));
        Observable rhs = Observable::mul(Observable::transfer(n, f), g);
        for (const auto& y : samples) {
          ++count;
          if (ev.eval(lhs, y) != ev.eval(rhs, y))
            return CheckResult::fail("transfer-axiom", law, count,
                                     {op_witness("n=" + n.str(), y)});
        }
      }
    }
  }
  return CheckResult::pass("transfer-axiom", law, count);
}

CheckResult check_transfer_antimult(Evaluator& ev, int depth, int box, int basis_depth) {
  const char* law = "L_{nm} = L_m L_n";
  auto samples = ev.action().sample_points(depth);
  auto elts = ev.action().group().positive_box(box);
  auto basis = basis_observables(ev.action(), basis_depth);
  long long count = 0;
  for (const auto& n : elts) {
    for (const auto& m : elts) {
      for (const auto& f : basis) {
        Observable lhs = Observable::transfer(n * m, f);
        Observable rhs = Observable::transfer(m, Observable::transfer(n, f));
        for (const auto& y : samples) {
          ++count;
          if (ev.eval(lhs, y) != ev.eval(rhs, y))
            return CheckResult::fail("transfer-antimult", law, count,
                                     {op_witness("n=" + n.str() + ", m=" + m.str(), y)});
        }
      }
    }
  }
  return CheckResult::pass("transfer-antimult", law, count);
}

std::vector<CheckResult> check_e_commutation(Evaluator& ev, const LatticeElement& n,
                                             const LatticeElement& m, int depth,
                                             int basis_depth) {
  const Action& act = ev.action();
  const Cocycle& w = ev.cocycle();
  auto samples = act.sample_points(depth);
  auto basis = basis_observables(act, basis_depth);

  bool op_ok = true;
  std::string op_witness_str;
  long long op_count = 0;
  for (const auto& f : basis) {
    Observable ab = Observable::expectation(n, Observable::expectation(m, f));
    Observable ba = Observable::expectation(m, Observable::expectation(n, f));
    for (const auto& y : samples) {
      ++op_count;
      if (ev.eval(ab, y) != ev.eval(ba, y)) {
        op_ok = false;
        op_witness_str = op_witness("n=" + n.str() + ", m=" + m.str(), y);
        break;
      }
    }
    if (!op_ok) break;
  }

  bool sum_ok = true;
  std::string sum_witness;
  long long sum_count = 0;
  for (const auto& x : samples) {
    for (const auto& z : samples) {
      ++sum_count;
      Rational lhs(0), rhs(0);
      for (const auto& y : class_intersection(act, m, n, x, z)) lhs += w.eval(n, y) * w.eval(m, x);
      for (const auto& y : class_intersection(act, n, m, x, z)) rhs += w.eval(m, y) * w.eval(n, x);
      if (lhs != rhs) {
        sum_ok = false;
        sum_witness = "n=" + n.str() + ", m=" + m.str() + ", x=" + x.str() + ", z=" + z.str();
        break;
      }
    }
    if (!sum_ok) break;
  }

  std::vector<CheckResult> out;
  const char* law_op = "E_n E_m = E_m E_n";
  const char* law_sum =
      "sum over C^m_x cap C^n_z of w(n,y)w(m,x) = sum over C^n_x cap C^m_z of w(m,y)w(n,x)";
  out.push_back(op_ok ? CheckResult::pass("e-commutation-operators", law_op, op_count)
                      : CheckResult::fail("e-commutation-operators", law_op, op_count,
                                          {op_witness_str}));
  out.push_back(sum_ok ? CheckResult::pass("e-commutation-weights", law_sum, sum_count)
                       : CheckResult::fail("e-commutation-weights", law_sum, sum_count,
                                           {sum_witness}));
  bool agree = op_ok == sum_ok;
  out.push_back(agree ? CheckResult::pass("e-commutation-agreement",
                                          "operator and weight criteria agree", 1)
                      : CheckResult::fail("e-commutation-agreement",
                                          "operator and weight criteria agree", 1,
                                          {op_ok ? "operators commute but weights differ"
                                                 : "weights agree but operators differ"}));
  return out;
}

std::vector<CheckResult> check_interaction_axioms(Evaluator& ev, int depth, int group_box,
                                                  int basis_depth, int jobs) {
  (void)jobs;
  const Action& act = ev.action();
  auto samples = act.sample_points(depth);
  auto basis = basis_observables(act, basis_depth);
  auto gbox = act.group().group_box(group_box);

  // A fixed strictly positive p gives the second factorization (pa, pb).
  std::vector<long long> ones(act.group().dim(), 1);
  LatticeElement p = act.group().from_vector(ones);

  std::vector<CheckResult> out;

  {  // axiom 1 and factorization independence
    const char* law1 = "V_1 = id";
    bool ok = true;
    std::string wit;
    long long count = 0;
    for (const auto& f : basis) {
      Observable vf = Observable::interaction(act.group().identity(), f);
      for (const auto& y : samples) {
        ++count;
        if (ev.eval(vf, y) != ev.eval(f, y)) {
          ok = false;
          wit = op_witness("V_1", y);
          break;
        }
      }
      if (!ok) break;
    }
    out.push_back(ok ? CheckResult::pass("interaction-identity", law1, count)
                     : CheckResult::fail("interaction-identity", law1, count, {wit}));
  }

  {
    const char* law = "V_g is independent of the factorization g = n^{-1} m";
    bool ok = true;
    std::string wit;
    long long count = 0;
    for (const auto& g : gbox) {
      auto [a, b] = decompose_left(g);
      for (const auto& f : basis) {
        Observable canonical = Observable::interaction_via(a, b, f);
        Observable shifted = Observable::interaction_via(p * a, p * b, f);
        for (const auto& y : samples) {
          ++count;
          if (ev.eval(canonical, y) != ev.eval(shifted, y)) {
            ok = false;
            wit = op_witness("g=" + g.str(), y);
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) break;
    }
    out.push_back(ok ? CheckResult::pass("interaction-well-defined", law, count)
                     : CheckResult::fail("interaction-well-defined", law, count, {wit}));
  }

  const char* law2 = "V_g V_h V_{h^-1} = V_{gh} V_{h^-1}";
  const char* law3 = "V_{g^-1} V_g V_h = V_{g^-1} V_{gh}";
  const char* law4 = "V_g(a b) = V_g(a) V_g(b) for b in range V_{g^-1}";
  bool ok2 = true, ok3 = true, ok4 = true;
  std::string wit2, wit3, wit4;
  long long c2 = 0, c3 = 0, c4 = 0;
  for (const auto& g : gbox) {
    for (const auto& h : gbox) {
      ev.clear_cache();
      for (const auto& f : basis) {
        if (ok2) {
          Observable inner = Observable::interaction(h.inverse(), f);
          Observable lhs =
              Observable::interaction(g, Observable::interaction(h, inner));
          Observable rhs = Observable::interaction(g * h, inner);
          for (const auto& y : samples) {
            ++c2;
            if (ev.eval(lhs, y) != ev.eval(rhs, y)) {
              ok2 = false;
              wit2 = op_witness("g=" + g.str() + ", h=" + h.str(), y);
              break;
            }
          }
        }
        if (ok3) {
          Observable lhs = Observable::interaction(
              g.inverse(), Observable::interaction(g, Observable::interaction(h, f)));
          Observable rhs =
              Observable::interaction(g.inverse(), Observable::interaction(g * h, f));
          for (const auto& y : samples) {
            ++c3;
            if (ev.eval(lhs, y) != ev.eval(rhs, y)) {
              ok3 = false;
              wit3 = op_witness("g=" + g.str() + ", h=" + h.str(), y);
              break;
            }
          }
        }
        if (!ok2 && !ok3) break;
      }
    }
    ev.clear_cache();
    if (ok4) {
      for (const auto& a : basis) {
        for (const auto& c : basis) {
          Observable b = Observable::interaction(g.inverse(), c);
          Observable lhs = Observable::interaction(g, Observable::mul(a, b));
          Observable rhs = Observable::mul(Observable::interaction(g, a),
                                           Observable::interaction(g, b));
          for (const auto& y : samples) {
            ++c4;
            if (ev.eval(lhs, y) != ev.eval(rhs, y)) {
              ok4 = false;
              wit4 = op_witness("g=" + g.str(), y);
              break;
            }
          }
          if (!ok4) break;
        }
        if (!ok4) break;
      }
    }
  }
  out.push_back(ok2 ? CheckResult::pass("interaction-partial-law", law2, c2)
                    : CheckResult::fail("interaction-partial-law", law2, c2, {wit2}));
  out.push_back(ok3 ? CheckResult::pass("interaction-partial-law-left", law3, c3)
                    : CheckResult::fail("interaction-partial-law-left", law3, c3, {wit3}));
  out.push_back(ok4 ? CheckResult::pass("interaction-range-mult", law4, c4)
                    : CheckResult::fail("interaction-range-mult", law4, c4, {wit4}));
  return out;
}

CheckResult check_poly_w(Evaluator& ev, int depth, int box, int basis_depth) {
  const char* law = "W_k = V_(k,-k) and W_0 = id";
  const auto& grp = ev.action().group();
  if (grp != LatticeGroup::int_vector(2))
    throw std::invalid_argument("W_k needs an N^2 action");
  auto samples = ev.action().sample_points(depth);
  auto basis = basis_observables(ev.action(), basis_depth);
  long long count = 0;
  for (long long k = -box; k <= box; ++k) {
    LatticeElement mu = grp.from_vector({k, -k});
    for (const auto& f : basis) {
      Observable direct = Observable::poly_w(k, f);
      Observable via_v = Observable::interaction(mu, f);
      for (const auto& y : samples) {
        ++count;
        if (ev.eval(direct, y) != ev.eval(via_v, y))
          return CheckResult::fail("poly-w", law, count,
                                   {op_witness("k=" + std::to_string(k), y)});
        if (k == 0 && ev.eval(direct, y) != ev.eval(f, y))
          return CheckResult::fail("poly-w", law, count, {op_witness("W_0 != id", y)});
      }
    }
  }
  return CheckResult::pass("poly-w", law, count);
}

}  // namespace sgdyn
