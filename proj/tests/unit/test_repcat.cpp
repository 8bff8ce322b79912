#include "doctest.h"
#include "mqg/repcat.hpp"

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

TEST_CASE("regular and trivial modules") {
  const auto d = make_double(make_builtin("C2"));
  const auto reg = regular_module(d);
  CHECK(reg.dim == 4);
  CHECK_FALSE(module_law_witness(reg).has_value());
  CHECK(is_unital(reg));
  const auto triv = trivial_module(d);
  CHECK(braiding(d, triv, triv) == Matrix::Identity(1, 1));
  CHECK(twist(d, triv) == Matrix::Identity(1, 1));
  CHECK(dual_left(d, triv).action == triv.action);
  CHECK(extend_to_multiplier(reg, d.one) == Matrix::Identity(4, 4));
  CHECK(extend_to_multiplier(reg, d.v, 0) == extend_to_multiplier(reg, d.v, 1));
}

TEST_CASE("tensor with the trivial module is M") {
  const auto d = make_double(make_builtin("C3"));
  const auto reg = regular_module(d);
  const auto t = tensor_module(d, reg, trivial_module(d));
  for (const auto& [x, rx] : reg.action) CHECK(t.rho(x) == rx);
}

TEST_CASE("regular tensor square matches a brute-force coproduct") {
  const auto d = make_double(make_builtin("C2"));
  const auto reg = regular_module(d);
  const auto sq = tensor_module(d, reg, reg);
  const auto& be = *d.be;
  // Δ(gδ_h) = Σ_p gδ_p ⊗ gδ_{hp⁻¹}
  for (const auto& [x, rx] : reg.action) {
    Matrix expect = Matrix::Zero(16, 16);
    for (const auto& p : *be.elements()) {
      expect += kron(reg.rho(BasisIndex{x.g, p}), reg.rho(BasisIndex{x.g, be.mul(x.h, be.inv(p))}));
    }
    CHECK(sq.rho(x) == expect);
  }
}

TEST_CASE("rigidity and ribbon identities") {
  for (const char* name : {"C2", "C3"}) {
    const auto d = make_double(make_builtin(name));
    CHECK_MESSAGE(all_pass(repcat_suite(d, std::string(name) == "C2")), name);
  }
}

TEST_CASE("conjugation module on S3") {
  const auto d = make_double(make_builtin("S3"));
  const auto adj = adjoint_module(d);
  CHECK(adj.dim == 6);
  CHECK_FALSE(module_law_witness(adj));
  CHECK(is_unital(adj));
  CHECK(all_pass(repcat_suite(d, adj, false)));
}

TEST_CASE("a rescaled twist breaks the ribbon identities") {
  const auto d = make_double(make_builtin("C2"));
  const auto reg = regular_module(d);
  const auto bad = mult_scale(d.v_inverse, Scalar(2));
  bool tensor_ok = true;
  for (const auto& r : ribbon_category_check(d, reg, reg, &bad)) {
    if (r.name.ends_with("twist_tensor")) tensor_ok = r.passed;
  }
  CHECK_FALSE(tensor_ok);
}

TEST_CASE("module files") {
  const auto d = make_double(make_builtin("C2"));
  std::string text = R"({"dimension": 1, "action": [)";
  bool first = true;
  for (const auto& x : full_basis(*d.be)) {
    text += std::string(first ? "" : ",") + R"({"basis": ")" + format_basis(*d.be, x) + R"(", "matrix": [[")" +
            d.s.counit(x).str() + R"("]]})";
    first = false;
  }
  text += "]}";
  const auto m = module_from_json(d, text);
  CHECK(m.action == trivial_module(d).action);
  CHECK_THROWS_AS(module_from_json(d, R"({"dimension": 1, "action": []})"), ValidationError);
  CHECK_THROWS_AS(module_from_json(d, "{"), ParseError);
}

TEST_CASE("infinite backends are rejected") {
  CHECK_THROWS_AS(regular_module(make_double(make_builtin("Z"))), Unsupported);
}
