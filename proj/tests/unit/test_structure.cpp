#include "doctest.h"
#include "mqg/double.hpp"

using namespace mqg;

namespace {
bool all_pass(const std::vector<CheckResult>& rs) {
  bool ok = true;
  for (const auto& r : rs) {
    if (!r.passed) MESSAGE(r.name, " failed at ", r.witness, " ", r.note);
    ok = ok && r.passed;
  }
  return ok;
}
}  // namespace

TEST_CASE("D(G) examples") {
  const auto c3 = make_cyclic(3);
  const auto s = double_structure(*c3);
  const auto lhs = cancel(s.t1, parse_element(*c3, "[1;2]"), parse_element(*c3, "[0;1]"));
  const TensorElement expect(c3.get(), {BasisIndex{c3->parse("1"), c3->parse("1")}, BasisIndex{c3->parse("1"), c3->parse("1")}});
  // Δ(1δ₂)(1⊗0δ₁): p = 1, second leg (1·0)δ₁.
  CHECK(lhs == expect);
  const auto s3 = make_symmetric(3);
  const auto ss = double_structure(*s3);
  for (const auto& x : full_basis(*s3)) {
    const auto sx = ss.antipode(x);
    CHECK(sx == basis_element(s3.get(), s3->inv(x.g), s3->mul(s3->mul(x.g, s3->inv(x.h)), s3->inv(x.g))));
    CHECK(ss.counit(x) == Scalar(x.h == s3->identity() ? 1 : 0));
  }
}

TEST_CASE("cancellation maps invert") {
  for (const char* name : {"C3", "S3"}) {
    const auto be = make_builtin(name);
    const auto s = double_structure(*be);
    const auto basis = full_basis(*be);
    for (const auto& a : basis)
      for (const auto& b : basis) {
        const TensorElement t(be.get(), {a, b});
        CHECK(cancel(s.t1, cancel(s.t1_inverse, t)) == t);
        CHECK(cancel(s.t1_inverse, cancel(s.t1, t)) == t);
        CHECK(cancel(s.t2, cancel(s.t2_inverse, t)) == t);
      }
  }
}

TEST_CASE("structure suite passes on finite groups") {
  for (const char* name : {"C1", "C2", "C3", "S3"}) {
    const auto d = make_double(make_builtin(name));
    CHECK_MESSAGE(all_pass(structure_suite(d.s, full_basis(*d.be), false)), name);
    CHECK_MESSAGE(all_pass(double_suite(d, full_basis(*d.be), false)), name);
  }
}

TEST_CASE("structure suite on balls of infinite groups") {
  for (const char* name : {"Z", "Dinf"}) {
    const auto d = make_double(make_builtin(name));
    const auto basis = ball_basis(*d.be, 1);
    CHECK_MESSAGE(all_pass(structure_suite(d.s, basis, true)), name);
    CHECK_MESSAGE(all_pass(double_suite(d, basis, true)), name);
  }
}

TEST_CASE("mutation: each check fails on a corrupted map") {
  const auto be = make_builtin("S3");
  const auto basis = full_basis(*be);
  const auto good = double_structure(*be);
  const auto* p = be.get();
  auto first = [&](const std::vector<CheckResult>& rs, const std::string& n) {
    for (const auto& r : rs)
      if (r.name == n) return r.passed;
    FAIL("missing check ", n);
    return false;
  };
  {
    auto s = good;
    s.t2 = [t2 = good.t2, p](const BasisIndex& a, const BasisIndex& b) {
      auto r = t2(a, b);
      if (b.h == p->identity()) r = r * Scalar(2);
      return r;
    };
    CHECK_FALSE(first(structure_suite(s, basis, false), "coassociativity"));
  }
  {
    auto s = good;
    s.antipode = [p](const BasisIndex& x) { return basis_element(p, p->inv(x.g), x.h); };
    CHECK_FALSE(first(structure_suite(s, basis, false), "regular"));
    CHECK_FALSE(first(structure_suite(s, basis, false), "counit_antipode"));
  }
  {
    auto s = good;
    s.left_integral = s.counit;
    CHECK_FALSE(first(structure_suite(s, basis, false), "integrals"));
  }
  {
    auto s = good;
    s.modular = mult_group(*be, be->parse("(1 2)"));
    CHECK_FALSE(first(structure_suite(s, basis, false), "modular"));
  }
  {
    auto s = good;
    // S² = id on D(G), so only a corrupted S can break ψ(S²(b)a) = ψ(ab).
    s.antipode = [S = good.antipode](const BasisIndex& x) { return S(x) * Scalar(2); };
    CHECK_FALSE(first(structure_suite(s, basis, false), "counimodular"));
  }
}

TEST_CASE("grouplikes of D(G)") {
  CHECK(grouplike_enumerate(make_double(make_builtin("C1"))).size() == 1);
  CHECK(grouplike_enumerate(make_double(make_builtin("C2"))).size() == 4);
  CHECK(grouplike_enumerate(make_double(make_builtin("C3"))).size() == 3);
  const auto d = make_double(make_builtin("S3"));
  const auto gl = grouplike_enumerate(d);
  CHECK(gl.size() == 12);
  CHECK(std::find(gl.begin(), gl.end(), unit_element(*d.be)) != gl.end());
}

TEST_CASE("word multipliers agree with brute force") {
  const auto be = make_builtin("S3");
  const auto prop = make_double(be);
  const auto brute = make_double(be, EvalMode::BruteForce);
  const auto basis = full_basis(*be);
  for (auto pick : {&DoubleAlgebra::u, &DoubleAlgebra::u_inverse, &DoubleAlgebra::S_u, &DoubleAlgebra::v, &DoubleAlgebra::g}) {
    CHECK_FALSE(mult_difference(prop.*pick, brute.*pick, basis));
  }
  for (std::size_t i = 0; i < basis.size(); i += 3)
    for (std::size_t j = 0; j < basis.size(); j += 5) {
      const TensorElement t(be.get(), {basis[i], basis[j]});
      CHECK(prop.R.left(t) == brute.R.left(t));
      CHECK(prop.R.right(t) == brute.R.right(t));
    }
}
