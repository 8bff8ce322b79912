#include "doctest.h"
#include "mqg/errors.hpp"
#include "mqg/group.hpp"
#include "mqg/linalg.hpp"
#include "mqg/scalar.hpp"

using namespace mqg;

TEST_CASE("rational arithmetic is exact and reduced") {
  const Rational a(6, 4);
  CHECK(a.str() == "3/2");
  CHECK(Rational::parse("-2/4") == Rational(-1, 2));
  CHECK(Rational::parse("7").str() == "7/1");
  for (int x = -3; x <= 3; ++x) {
    for (int y = 1; y <= 4; ++y) {
      const Rational p(x, y), q(y, 5), r(x + 1, 3);
      CHECK(p * (q + r) == p * q + p * r);
      if (!p.is_zero()) CHECK(p * (Rational(1) / p) == Rational(1));
    }
  }
}

TEST_CASE("group axioms on every builtin") {
  for (const char* name : {"C1", "C2", "C3", "C4", "S3", "D4", "S4", "Z", "Dinf"}) {
    const auto be = make_builtin(name);
    const auto sample = sweep_elements(*be, 3);
    const auto rep = check_group_axioms(*be, sample);
    CHECK_MESSAGE(rep.ok, name, " ", rep.failed_law);
  }
}

TEST_CASE("backend multiplication examples") {
  const auto z = make_integers();
  CHECK(z->format(z->mul(z->parse("2"), z->parse("3"))) == "5");
  const auto d = make_infinite_dihedral();
  CHECK(d->mul(d->parse("(1,0)"), d->parse("(0,1)")) == d->parse("(1,1)"));
  const auto s3 = make_symmetric(3);
  for (const auto& x : *s3->elements()) CHECK(s3->mul(s3->identity(), x) == x);
}

TEST_CASE("conjugation") {
  const auto c3 = make_cyclic(3);
  for (const auto& g : *c3->elements())
    for (const auto& h : *c3->elements()) CHECK(conjugate(*c3, g, h) == h);
  const auto s3 = make_symmetric(3);
  const auto t = s3->parse("(1 2)");
  const auto c = s3->parse("(1 2 3)");
  const auto other = conjugate(*s3, t, c);
  CHECK(other != c);
  CHECK(group_pow(*s3, other, 3) == s3->identity());
  CHECK(other != s3->identity());
}

TEST_CASE("subgroup closure and normalizers") {
  const auto s3 = make_symmetric(3);
  CHECK(subgroup_closure(*s3, {}, 10) == ElementSet{s3->identity()});
  const auto c3 = subgroup_closure(*s3, {s3->parse("(1 2 3)")}, 10);
  CHECK(c3.size() == 3);
  CHECK(is_subgroup(*s3, c3));
  const auto all = subgroup_closure(*s3, {s3->parse("(1 2)"), s3->parse("(1 2 3)")}, 10);
  CHECK(normalizes(*s3, all, c3));
  const ElementSet k{s3->identity(), s3->parse("(1 2)")};
  CHECK_FALSE(normalizes(*s3, c3, k));
  CHECK(normalizes(*s3, {s3->identity()}, k));
  const auto z = make_integers();
  CHECK_THROWS_AS(subgroup_closure(*z, {z->parse("1")}, 100), ClosureExceedsCap);
  CHECK_THROWS_AS(normalizes(*s3, {s3->parse("(1 2 3)")}, k), std::invalid_argument);
}

TEST_CASE("group files") {
  const auto t = parse_group_definition("group table C2\n  e a\ne: e a\na: a e\n");
  CHECK(t->order() == 2);
  const auto p = parse_group_definition("# S3 by generators\ngroup perm S3\n(1 2)\n(1 2 3)\n");
  CHECK(p->order() == 6);
  CHECK(resolve_group({"builtin", "D4"})->order() == 8);
  const auto bad = parse_group_definition("group table bad\ne a\ne: e a\na: e a\n");
  const auto rep = check_group_axioms(*bad, *bad->elements());
  CHECK_FALSE(rep.ok);
}

TEST_CASE("exact linear algebra") {
  Matrix m(2, 3);
  m << 1, 2, 3, 2, 4, 6;
  CHECK(rank<Scalar>(m) == 1);
  const auto n = nullspace<Scalar>(m);
  CHECK(n.cols() == 2);
  CHECK((m * n).isZero());
  Matrix s(3, 3);
  s << 0, 1, 0, 1, 0, 0, 0, 0, -2;
  const auto in = inertia(s);
  CHECK(in.positive == 1);
  CHECK(in.negative == 2);
  LinearSystem sys(2);
  Vector r(2);
  r << 1, 1;
  sys.add(r, Scalar(3));
  r << 1, -1;
  sys.add(r, Scalar(1));
  const auto sol = sys.solve();
  REQUIRE(sol);
  CHECK(sol->first(0) == Scalar(2));
  CHECK(sol->second.cols() == 0);
}
