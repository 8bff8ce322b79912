#include "doctest.h"
#include "mqg/ribbon.hpp"

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

const CheckResult& find(const std::vector<CheckResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  throw std::out_of_range(name);
}
}  // namespace

TEST_CASE("ribbon suite on finite doubles") {
  for (const char* name : {"C1", "C2", "C3", "S3"}) {
    const auto d = make_double(make_builtin(name));
    CHECK_MESSAGE(all_pass(ribbon_suite(d, full_basis(*d.be), false)), name);
  }
}

TEST_CASE("ribbon suite on a ball of Z") {
  const auto d = make_double(make_builtin("Z"));
  CHECK(all_pass(ribbon_suite(d, ball_basis(*d.be, 1), true)));
}

TEST_CASE("corollary branches") {
  const auto c3 = make_double(make_builtin("C3"));
  const auto g = g_from_odd_grouplikes(c3);
  CHECK_FALSE(mult_difference(g, c3.g, full_basis(*c3.be)).has_value());
  CHECK_THROWS_AS(g_from_odd_grouplikes(make_double(make_builtin("C2"))), CorollaryInapplicable);
  CHECK_THROWS_AS(g_from_odd_grouplikes(make_double(make_builtin("S3"))), CorollaryInapplicable);
}

TEST_CASE("E elements") {
  CHECK(enumerate_E(make_double(make_builtin("C1"))).size() == 1);
  CHECK(enumerate_E(make_double(make_builtin("C2"))).size() == 4);
  CHECK(enumerate_E(make_double(make_builtin("C3"))).size() == 1);
}

TEST_CASE("mutation: identity R breaks quasitriangularity") {
  const auto d = make_double_with_r(make_builtin("S3"), TensorWord{{}, {{{}, {}}}}, TensorWord{{}, {{{}, {}}}});
  const auto rs = ribbon_suite(d, full_basis(*d.be), false);
  CHECK_FALSE(find(rs, "qt_intertwines").passed);
}

TEST_CASE("v_from_g rejects a non-grouplike") {
  const auto d = make_double(make_builtin("S3"));
  CHECK_THROWS_AS(v_from_g(d, d.u, full_basis(*d.be)), PreconditionFailed);
}

TEST_CASE("three-leg words agree with brute force") {
  const auto be = make_builtin("S3");
  const auto basis = full_basis(*be);
  const auto w = r13_r23_word(r_matrix_word());
  const Tensor3 t(be.get(), {basis[3], basis[7], basis[20]});
  CHECK(apply_tensor3_word(*be, w, t) == apply_tensor3_word(*be, w, t, EvalMode::BruteForce));
}
