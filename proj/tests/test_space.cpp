#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>

#include "doctest.h"
#include "sgdyn/space.hpp"

using namespace sgdyn;

TEST_CASE("coordinates of eventually periodic words") {
  Point p = Point::word("0", "1");
  CHECK(p.bit(0) == 0);
  CHECK(p.bit(5) == 1);
  CHECK(Point::word("", "01").bit(3) == 1);
  CHECK_THROWS_AS(Point::angle(Rational(1, 3)).bit(0), std::domain_error);
}

TEST_CASE("canonicalization collapses equal sequences") {
  CHECK(Point::word("01", "11") == Point::word("0", "1"));
  CHECK(Point::word("", "0101") == Point::word("", "01"));
  CHECK(Point::word("1", "1") == Point::word("", "1"));
  CHECK(Point::word("0", "1").str() == "0|1");
  CHECK(Point::word("", "0").str() == "|0");
  CHECK_THROWS_AS(Point::word("0", ""), std::invalid_argument);
}

TEST_CASE("canonical form is a complete invariant for sequence equality") {
  // enumerate raw (prefix, cycle) pairs and compare as sequences by reading
  // enough coordinates; canonical equality must match exactly
  std::vector<Point> raw;
  std::vector<std::pair<std::string, std::string>> reps;
  for (const auto& pre : {"", "0", "1", "01", "10", "11", "011"}) {
    for (const auto& cyc : {"0", "1", "01", "10", "0101", "110", "11"}) {
      reps.emplace_back(pre, cyc);
    }
  }
  auto coords_equal = [](const std::pair<std::string, std::string>& a,
                         const std::pair<std::string, std::string>& b) {
    auto bit = [](const std::pair<std::string, std::string>& w, size_t i) {
      if (i < w.first.size()) return w.first[i] - '0';
      return w.second[(i - w.first.size()) % w.second.size()] - '0';
    };
    size_t bound = 2 * (a.first.size() + b.first.size() +
                        std::lcm(a.second.size(), b.second.size()));
    for (size_t i = 0; i < bound; ++i)
      if (bit(a, i) != bit(b, i)) return false;
    return true;
  };
  for (const auto& a : reps) {
    for (const auto& b : reps) {
      bool canon_eq = Point::word(a.first, a.second) == Point::word(b.first, b.second);
      CHECK(canon_eq == coords_equal(a, b));
    }
  }
}

TEST_CASE("canonicalization is idempotent") {
  for (const auto& p : canonical_points(4)) {
    CHECK(Point::word(p.prefix(), p.cycle()) == p);
  }
}

TEST_CASE("point literals parse and round trip") {
  CHECK(Point::parse("0|1") == Point::word("0", "1"));
  CHECK(Point::parse("|0") == Point::word("", "0"));
  CHECK(Point::parse("1/3") == Point::angle(Rational(1, 3)));
  CHECK(Point::parse("0|1").str() == "0|1");
  CHECK_THROWS_AS(Point::angle(Rational(5, 3)), std::invalid_argument);
}

TEST_CASE("deterministic sample enumerations") {
  auto pts3 = canonical_points(3);
  auto pts4 = canonical_points(4);
  CHECK(pts3.size() == 80);
  CHECK(pts4.size() == 352);
  CHECK(std::is_sorted(pts3.begin(), pts3.end()));
  // no duplicates
  CHECK(std::adjacent_find(pts4.begin(), pts4.end()) == pts4.end());

  auto circ = circle_points(50);
  CHECK(circ.size() == 50);
  CHECK(circ[0] == Point::angle(Rational(0)));
  CHECK(circ[1] == Point::angle(Rational(1, 2)));
  CHECK(circ[2] == Point::angle(Rational(1, 3)));
}

TEST_CASE("cylinder function evaluation") {
  CylinderFunction f = CylinderFunction::from_table(
      1, {Scalar(Rational(0)), Scalar(Rational(1))});
  CHECK(f.eval(Point::word("0", "1")) == Scalar(Rational(0)));
  CHECK(f.eval(Point::word("", "1")) == Scalar(Rational(1)));
  CylinderFunction c = CylinderFunction::constant(Scalar(Rational(7)));
  CHECK(c.eval(Point::word("", "0")) == Scalar(Rational(7)));
  CHECK(CylinderFunction::indicator("11").eval(Point::word("", "1")) == Scalar(Rational(1)));
  CHECK(CylinderFunction::indicator("11").eval(Point::word("0", "1")) == Scalar(Rational(0)));
  CHECK_THROWS_AS(CylinderFunction::indicator("11").eval(Point::angle(Rational(0))),
                  std::domain_error);
}

TEST_CASE("cylinder algebra") {
  CylinderFunction zero = CylinderFunction::indicator("0");
  CylinderFunction one_ind = CylinderFunction::indicator("1");
  CylinderFunction unit = CylinderFunction::constant(Scalar(Rational(1)));
  CHECK(zero + one_ind == unit);
  CylinderFunction f = CylinderFunction::indicator("01");
  CHECK(f * unit == f);
  // refinement does not change values
  CylinderFunction fr = f.refined(4);
  for (const auto& p : canonical_points(3)) CHECK(fr.eval(p) == f.eval(p));
  // the depth-k indicators resolve the identity, k <= 8
  for (int k = 1; k <= 8; ++k) {
    CylinderFunction sum = CylinderFunction::constant(Scalar());
    for (const auto& w : words_of_length(k)) sum = sum + CylinderFunction::indicator(w);
    CHECK(sum == unit);
  }
}

TEST_CASE("depth cap is enforced") {
  CHECK_THROWS_AS(CylinderFunction::indicator("0000000000000"), std::length_error);
  CHECK_THROWS_AS(CylinderFunction::indicator("01").refined(13), std::length_error);
  CHECK_NOTHROW(CylinderFunction::indicator("0000000000000", 16));
}

TEST_CASE("cylinder sets") {
  CylinderSet c{"01"};
  CHECK(c.contains(Point::word("01", "0")));
  CHECK(c.contains(Point::word("0", "10")));
  CHECK(!c.contains(Point::word("", "0")));
}
