#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sgdyn/lattice.hpp"

using namespace sgdyn;

namespace {
const LatticeGroup z1 = LatticeGroup::int_vector(1);
const LatticeGroup z2 = LatticeGroup::int_vector(2);
const LatticeGroup posq = LatticeGroup::positive_rationals();
}  // namespace

TEST_CASE("meets and joins") {
  CHECK(z2.from_vector({2, 0}).meet(z2.from_vector({0, 3})) == z2.from_vector({0, 0}));
  CHECK(z2.from_vector({2, 0}).join(z2.from_vector({0, 3})) == z2.from_vector({2, 3}));
  // divisibility order: meet of positive integers is the gcd, join the lcm
  CHECK(posq.from_integer(4).meet(posq.from_integer(6)) == posq.from_integer(2));
  CHECK(posq.from_integer(4).join(posq.from_integer(6)) == posq.from_integer(12));
  CHECK(z1.from_vector({-3}).join(z1.from_vector({0})) == z1.from_vector({0}));
  CHECK_THROWS_AS(z1.from_vector({1}).meet(z2.from_vector({1, 1})), std::invalid_argument);
}

TEST_CASE("group structure on prime-exponent maps") {
  LatticeElement a = posq.from_integer(12);  // 2^2 * 3
  LatticeElement b = posq.from_integer(18);  // 2 * 3^2
  CHECK(a * b == posq.from_integer(216));
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.inverse().meet(posq.identity()).inverse().is_positive());
  CHECK(a.to_integer() == 12);
  CHECK(a.str() == "2^2*3");
  CHECK(posq.identity().str() == "1");
  CHECK_THROWS_AS(a.inverse().to_integer(), std::domain_error);
}

TEST_CASE("mini-square from a pair") {
  // Z^2
  MiniSquare q = mini_square_from_pair(z2.from_vector({2, 0}), z2.from_vector({0, 3}));
  CHECK(q.s == z2.from_vector({2, 0}));
  CHECK(q.t == z2.from_vector({0, 3}));
  CHECK(q.u == z2.from_vector({0, 3}));
  CHECK(q.v == z2.from_vector({2, 0}));
  // positive rationals, 4 and 6: gcd 2, lcm 12
  MiniSquare p = mini_square_from_pair(posq.from_integer(4), posq.from_integer(6));
  CHECK(p.s == posq.from_integer(2));
  CHECK(p.t == posq.from_integer(3));
  CHECK(p.u == posq.from_integer(3));
  CHECK(p.v == posq.from_integer(2));
  // m = n collapses to the identity square
  MiniSquare e = mini_square_from_pair(z2.from_vector({1, 2}), z2.from_vector({1, 2}));
  CHECK(e.s.is_identity());
  CHECK(e.t.is_identity());
  CHECK(e.u.is_identity());
  CHECK(e.v.is_identity());
}

TEST_CASE("completion of a coprime pair") {
  auto [u1, v1] = complete_mini_square(posq.from_integer(3), posq.from_integer(5));
  CHECK(u1 == posq.from_integer(5));
  CHECK(v1 == posq.from_integer(3));
  auto [u2, v2] = complete_mini_square(z2.from_vector({1, 0}), z2.from_vector({0, 1}));
  CHECK(u2 == z2.from_vector({0, 1}));
  CHECK(v2 == z2.from_vector({1, 0}));
  auto [u3, v3] = complete_mini_square(z1.from_vector({0}), z1.from_vector({4}));
  CHECK(u3 == z1.from_vector({4}));
  CHECK(v3 == z1.from_vector({0}));
  CHECK_THROWS_AS(complete_mini_square(posq.from_integer(4), posq.from_integer(6)),
                  std::invalid_argument);
}

TEST_CASE("mini-square invariants across the test grid") {
  for (long long a = -3; a <= 3; ++a) {
    for (long long b = -3; b <= 3; ++b) {
      for (long long c = -3; c <= 3; ++c) {
        for (long long d = -3; d <= 3; ++d) {
          LatticeElement m = z2.from_vector({a, b}), n = z2.from_vector({c, d});
          MiniSquare q = mini_square_from_pair(m, n);
          CHECK(is_mini_square(q));
          CHECK(q.s.join(q.t) == q.s * q.u);
          CHECK(q.s.join(q.t) == q.t * q.v);
        }
      }
    }
  }
}

TEST_CASE("completion is unique: brute force over bounded candidates") {
  auto box = z2.positive_box(6);
  for (long long a = 0; a <= 3; ++a) {
    for (long long b = 0; b <= 3; ++b) {
      for (long long c = 0; c <= 3; ++c) {
        for (long long d = 0; d <= 3; ++d) {
          LatticeElement s = z2.from_vector({a, b}), t = z2.from_vector({c, d});
          if (!s.meet(t).is_identity()) continue;
          int found = 0;
          for (const auto& u : box)
            for (const auto& v : box)
              if (is_mini_square(MiniSquare{s, t, u, v})) ++found;
          CHECK(found == 1);
        }
      }
    }
  }
}

TEST_CASE("commutative completion is the swap") {
  for (long long m = 1; m <= 30; ++m) {
    for (long long n = 1; n <= 30; ++n) {
      LatticeElement s = posq.from_integer(m), t = posq.from_integer(n);
      if (!s.meet(t).is_identity()) continue;
      auto [u, v] = complete_mini_square(s, t);
      CHECK(u == t);
      CHECK(v == s);
    }
  }
}

TEST_CASE("decompositions recompose") {
  // x = -3 in Z: left part (3, 0), right part (0, 3)
  LatticeElement x = z1.from_vector({-3});
  auto [a, b] = decompose_left(x);
  CHECK(a == z1.from_vector({3}));
  CHECK(b == z1.from_vector({0}));
  CHECK(a.inverse() * b == x);
  auto [n, m] = decompose_right(x);
  CHECK(n == z1.from_vector({0}));
  CHECK(m == z1.from_vector({3}));
  CHECK(n * m.inverse() == x);

  auto [n2, m2] = decompose_right(z2.from_vector({2, -1}));
  CHECK(n2 == z2.from_vector({2, 0}));
  CHECK(m2 == z2.from_vector({0, 1}));

  auto [i1, i2] = decompose_left(z2.identity());
  CHECK(i1.is_identity());
  CHECK(i2.is_identity());

  for (long long p = -3; p <= 3; ++p) {
    for (long long q = -3; q <= 3; ++q) {
      LatticeElement g = z2.from_vector({p, q});
      auto [l1, l2] = decompose_left(g);
      auto [r1, r2] = decompose_right(g);
      CHECK(l1.is_positive());
      CHECK(l2.is_positive());
      CHECK(l1.inverse() * l2 == g);
      CHECK(r1.is_positive());
      CHECK(r2.is_positive());
      CHECK(r1 * r2.inverse() == g);
    }
  }
}

TEST_CASE("rendering of elements") {
  CHECK(z1.from_vector({7}).str() == "7");
  CHECK(z2.from_vector({1, -2}).str() == "(1,-2)");
  CHECK(posq.from_integer(12).str() == "2^2*3");
}

TEST_CASE("box enumerations") {
  CHECK(z2.positive_box(3).size() == 16);
  CHECK(z2.group_box(2).size() == 25);
  CHECK(posq.positive_box(6).size() == 6);
  CHECK_THROWS_AS(posq.group_box(2), std::invalid_argument);
}
