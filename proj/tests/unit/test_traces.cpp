#include "doctest.h"
#include "mqg/traces.hpp"

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

SigmaSet c3_square(const GroupBackend* s3) {
  return SigmaSet::product(s3, {s3->parse("(1 2 3)")}, {s3->parse("(1 2 3)")});
}
}  // namespace

TEST_CASE("sigma sets") {
  const auto s3 = make_builtin("S3");
  CHECK(z_from_sigma(SigmaSet(s3.get(), {})).is_zero());
  const SigmaSet unit(s3.get(), {{s3->identity(), s3->identity()}});
  CHECK(z_from_sigma(unit) == basis_element(s3.get(), s3->identity(), s3->identity()));
  CHECK(sigma_involution_closed(unit));
  const auto sq = c3_square(s3.get());
  CHECK(z_from_sigma(sq).size() == 9);
  CHECK(sigma_involution_closed(sq));
  CHECK(sigma_action_closed(sq));
  const auto a = s3->parse("(1 2 3)");
  const SigmaSet single(s3.get(), {{a, s3->identity()}});
  CHECK_FALSE(sigma_involution_closed(single));
  CHECK_FALSE(sigma_action_closed(single));
  const auto z = make_builtin("Z");
  CHECK_THROWS_AS(sigma_action_closed(SigmaSet(z.get(), {{z->parse("1"), z->identity()}}), 100), ClosureExceedsCap);
}

TEST_CASE("H x K passes both closure checks in S3 and D4") {
  for (const char* name : {"S3", "D4"}) {
    const auto be = make_builtin(name);
    const auto& els = *be->elements();
    std::set<ElementSet> subgroups;
    for (const auto& x : els)
      for (const auto& y : els) subgroups.insert(subgroup_closure(*be, {x, y}, 64));
    for (const auto& K : subgroups)
      for (const auto& H : subgroups) {
        if (!normalizes(*be, H, K)) continue;
        const auto sig = SigmaSet::product(be.get(), H, K);
        CHECK(sigma_involution_closed(sig));
        CHECK(sigma_action_closed(sig));
      }
  }
}

TEST_CASE("K x K in Dinf") {
  const auto be = make_builtin("Dinf");
  const auto sig = SigmaSet::product(be.get(), {be->parse("(0,1)")}, {be->parse("(0,1)")});
  CHECK(sig.size() == 4);
  CHECK(sigma_involution_closed(sig));
  CHECK(sigma_action_closed(sig));
}

TEST_CASE("cointegral") {
  const auto c1 = make_double(make_builtin("C1"));
  CHECK(cointegral_z(c1) == unit_element(*c1.be));
  for (const char* name : {"C2", "S3"}) {
    const auto d = make_double(make_builtin(name));
    const auto t = cointegral_z(d);
    CHECK(apply_form(d.s.right_integral, t) == Scalar(1));
    CHECK(z_conditions_check(d, t, full_basis(*d.be)).all());
    CHECK(psi_faithful(d));
  }
}

TEST_CASE("z conditions and trace property") {
  const auto d = make_double(make_builtin("S3"));
  const auto basis = full_basis(*d.be);
  CHECK(z_conditions_check(d, Element(d.be), basis).all());
  const auto z = z_from_sigma(c3_square(d.be));
  CHECK(z_conditions_check(d, z, basis).all());
  const auto mu = mu_build(d, z, basis);
  CHECK_FALSE(trace_witness(d, z, basis).has_value());
  CHECK_FALSE(s_symmetry_witness(mu, basis).has_value());
  const auto bad = z_from_sigma(SigmaSet(d.be, {{d.be->parse("(1 2)"), d.be->identity()}}));
  CHECK_FALSE(z_conditions_check(d, bad, basis).all());
  CHECK(trace_witness(d, bad, basis).has_value());
  CHECK_THROWS_AS(mu_build(d, bad, basis), PreconditionFailed);
}

TEST_CASE("S-symmetry holds exactly when S(z) = z") {
  const auto d = make_double(make_builtin("C3"));
  const auto basis = full_basis(*d.be);
  const auto& els = *d.be->elements();
  // central z that is not S-invariant: e δ_h for h ≠ h^{-1}
  const auto z = basis_element(d.be, d.be->identity(), els[1]);
  CHECK(is_central(mult_from_element(z), basis));
  CHECK_FALSE(apply_map(d.s.antipode, z) == z);
  CHECK(s_symmetry_witness(mu_build(d, z, basis), basis).has_value());
  const auto zs = z + apply_map(d.s.antipode, z);
  CHECK_FALSE(s_symmetry_witness(mu_build(d, zs, basis), basis).has_value());
}

TEST_CASE("the right module action") {
  const auto d = make_double(make_builtin("C3"));
  const auto basis = full_basis(*d.be);
  auto el = [&](const BasisIndex& x) { return basis_element(d.be, x); };
  CHECK(mod_action(d, el(basis[1]), Element(d.be)).is_zero());
  for (const auto& a : basis)
    for (const auto& b : basis)
      for (const auto& c : basis) {
        CHECK(mod_action(d, mod_action(d, el(a), el(b)), el(c)) == mod_action_product(d, el(a), el(b), el(c)));
      }
}

TEST_CASE("trace suites on finite doubles") {
  for (const char* name : {"C2", "C3"}) {
    const auto d = make_double(make_builtin(name));
    CHECK_MESSAGE(all_pass(traces_suite(d, cointegral_z(d), full_basis(*d.be), false)), name);
  }
  const auto d = make_double(make_builtin("S3"));
  CHECK(all_pass(traces_suite(d, z_from_sigma(c3_square(d.be)), full_basis(*d.be), false)));
}

TEST_CASE("K x K in Dinf is not central but satisfies the X/Y identities") {
  const auto d = make_double(make_builtin("Dinf"));
  const auto sig = SigmaSet::product(d.be, {d.be->parse("(0,1)")}, {d.be->parse("(0,1)")});
  const auto z = z_from_sigma(sig);
  const auto zc = z_conditions_check(d, z, ball_basis(*d.be, 1));
  CHECK(zc.s_invariant);
  CHECK(zc.coproduct);
  CHECK_FALSE(zc.central);
  CHECK_FALSE(trace_witness(d, z, ball_basis(*d.be, 1)).has_value());
  CHECK(trace_witness(d, z, ball_basis(*d.be, 2)).has_value());
  for (int n : {2, 3}) CHECK(all_pass(prop32_check(d, z, n, ball_basis(*d.be, 1), true)));
}

TEST_CASE("X and Y kernels agree with brute force") {
  const auto be = make_builtin("S3");
  const auto dp = make_double(be);
  const auto db = make_double(be, EvalMode::BruteForce);
  const auto basis = full_basis(*be);
  const auto z = z_from_sigma(c3_square(be.get()));
  const auto xp = build_XY(dp, z);
  const auto xb = build_XY(db, z);
  CHECK(xp.psi_zv == xb.psi_zv);
  CHECK_FALSE(mult_difference(xp.su_action, xb.su_action, basis).has_value());
  CHECK_FALSE(mult_difference(xp.uinv_action, xb.uinv_action, basis).has_value());
}

TEST_CASE("z outside A on an infinite group") {
  const auto d = make_double(make_builtin("Z"));
  CHECK_THROWS_AS(build_XY(d, d.one), UnlocalizedSum);
}

TEST_CASE("defective z fails the X/Y identities") {
  const auto d = make_double(make_builtin("C4"));
  const auto basis = full_basis(*d.be);
  const auto& els = *d.be->elements();
  // Σ_{h∈X} e δ_h with X = {0, 1, 3}: central and S-invariant but not a subgroup
  const auto z = basis_element(d.be, els[0], els[0]) + basis_element(d.be, els[0], els[1]) +
                 basis_element(d.be, els[0], els[3]);
  const auto zc = z_conditions_check(d, z, basis);
  CHECK(zc.s_invariant);
  CHECK(zc.central);
  CHECK_FALSE(zc.coproduct);
  bool any_fail = false;
  for (const auto& r : prop32_check(d, z, 2, basis, false)) any_fail = any_fail || !r.passed;
  CHECK(any_fail);
}
