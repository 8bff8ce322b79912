#include <set>

#include "doctest.h"
#include "mqg/hennings.hpp"

using namespace mqg;

namespace {

const CatalogueEntry& entry(const std::vector<CatalogueEntry>& cat, const std::string& name) {
  for (const auto& e : cat)
    if (e.name == name) return e;
  throw std::runtime_error("no catalogue entry " + name);
}

// z_{H×K} over all subgroup pairs that pass the z-conditions, plus the cointegral.
std::vector<Element> admissible_zs(const DoubleAlgebra& d) {
  const auto& be = *d.be;
  const auto basis = full_basis(be);
  std::set<ElementSet> subs;
  for (const auto& a : *be.elements())
    for (const auto& b : *be.elements()) subs.insert(subgroup_closure(be, ElementSet{a, b}, 64));
  std::vector<Element> out{cointegral_z(d)};
  for (const auto& H : subs)
    for (const auto& K : subs) {
      auto z = z_from_sigma(SigmaSet::product(d.be, H, K));
      if (z_conditions_check(d, z, basis).all()) out.push_back(std::move(z));
    }
  return out;
}

Element c4_defective(const DoubleAlgebra& d) {
  const auto& els = *d.be->elements();
  return basis_element(d.be, els[0], els[0]) + basis_element(d.be, els[0], els[1]) +
         basis_element(d.be, els[0], els[3]);
}

}  // namespace

TEST_CASE("diagram parsing and validation") {
  const auto u = MorseDiagram::parse("cup+ 0\ncap+ 0\n");
  CHECK(u.components() == 1);
  CHECK(u.rotation_number(0) == 1);
  CHECK(u.crossings() == 0);

  const auto cat = builtin_diagrams();
  const auto tre = MorseDiagram::parse(entry(cat, "trefoil+").surgery.diagram.to_text());
  CHECK(tre.components() == 1);
  CHECK(tre.writhe(0) == 3);
  CHECK(MorseDiagram::parse(entry(cat, "trefoil-").surgery.diagram.to_text()).writhe(0) == -3);

  CHECK_THROWS_WITH_AS(MorseDiagram::parse("cup+ 0\nx+ 5\ncap+ 0\n"), doctest::Contains("out of range"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(MorseDiagram::parse("cup+ 0\ncap- 0\n"), doctest::Contains("orientation"), ValidationError);
  CHECK_THROWS_WITH_AS(MorseDiagram::parse("cup+ 0\n"), doctest::Contains("does not close"), ValidationError);
  try {
    (void)MorseDiagram::parse("# comment\ncup+ 0\nswirl 1\ncap+ 0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(MorseDiagram::parse("cup+ zero\n"), ParseError);
  CHECK_THROWS_AS(MorseDiagram::parse("cup+ 0 1\n"), ParseError);
  CHECK(MorseDiagram::parse("").components() == 0);
}

TEST_CASE("rotation, writhe and linking") {
  const auto cat = builtin_diagrams();
  for (const auto& e : cat) {
    const auto& d = e.surgery.diagram;
    const auto m = d.mirror();
    const auto lm = d.linking_matrix();
    for (int c = 0; c < d.components(); ++c) {
      CHECK(m.rotation_number(c) == -d.rotation_number(c));
      CHECK(m.writhe(c) == -d.writhe(c));
      CHECK(lm(c, c) == Scalar(d.writhe(c)));
      for (int c2 = 0; c2 < d.components(); ++c2) CHECK(lm(c, c2) == lm(c2, c));
    }
  }
  CHECK(entry(cat, "hopf").surgery.diagram.linking_number(0, 1) == 1);
  CHECK(entry(cat, "figure-eight").surgery.diagram.writhe(0) == 0);
  CHECK(entry(cat, "poincare").surgery.diagram.writhe(0) == 1);

  // A kink pair leaves the framing alone; rotation moves by 0 (opposite sides)
  // or ±2 (same side).
  const auto plain = braid_closure(1, {}, "u");
  DiagramBuilder a;
  a.cup(0, true).curl(0, 1).curl(0, -1, true).cap(0);
  DiagramBuilder b;
  b.cup(0, true).curl(0, 1).curl(0, -1).cap(0);
  CHECK(a.build("a").writhe(0) == 0);
  CHECK(b.build("b").writhe(0) == 0);
  CHECK(a.build("a").rotation_number(0) == plain.rotation_number(0));
  CHECK(std::abs(b.build("b").rotation_number(0) - plain.rotation_number(0)) == 2);
}

TEST_CASE("surgery files") {
  const auto sp = parse_surgery("cup- 0\ncap- 0\nframing 0 3\n");
  CHECK(sp.framing(0) == 3);
  CHECK(sp.signature_counts() == std::pair{1, 0});
  CHECK_THROWS_AS(parse_surgery("cup- 0\ncap- 0\nframing 1 3\n"), ValidationError);
  CHECK_THROWS_AS(parse_surgery("cup- 0\ncap- 0\nframing 0\n"), ParseError);
  CHECK_THROWS_AS(MorseDiagram::parse("cup- 0\ncap- 0\nframing 0 1\n"), ParseError);
  const auto hopf = builtin_diagrams()[5].surgery;
  CHECK(hopf.signature_counts() == std::pair{1, 1});  // [[0,1],[1,0]]
}

TEST_CASE("bead words") {
  const auto cat = builtin_diagrams();
  CHECK(decorate_and_slide(entry(cat, "unknot[0]").surgery.diagram)[0].empty());
  const auto w = decorate_and_slide(entry(cat, "unknot[+1]").surgery.diagram)[0];
  REQUIRE(w.size() == 2);
  CHECK(w[0].var == w[1].var);
  CHECK(w[0].kind != w[1].kind);
  const auto hw = decorate_and_slide(entry(cat, "hopf").surgery.diagram);
  REQUIRE(hw.size() == 2);
  for (const auto& word : hw) {
    REQUIRE(word.size() == 2);
    CHECK(word[0].var != word[1].var);
  }
  // Antiparallel strands: one of the two beads on a crossing is met going down.
  const auto ap = MorseDiagram::parse("cup- 0\ncup- 2\nx+ 1\nx- 1\ncap- 2\ncap- 0\n");
  bool saw_down = false;
  for (int c = 0; c < ap.components(); ++c)
    for (const auto& bead : ap.beads(c)) saw_down = saw_down || bead.down;
  CHECK(saw_down);
}

TEST_CASE("evaluation: empty diagram, oracle, basepoints, mirror") {
  for (const char* g : {"C2", "C3", "S3"}) {
    const auto d = make_double(make_builtin(g));
    const auto basis = full_basis(*d.be);
    for (const auto& z : admissible_zs(d)) {
      const auto mu = mu_build(d, z, basis);
      CHECK(evaluate_link(MorseDiagram{}, d, mu) == Scalar(1));
      for (const auto& e : builtin_diagrams()) {
        const auto& dg = e.surgery.diagram;
        const auto v = evaluate_link(dg, d, mu);
        CHECK_MESSAGE(v == evaluate_link(dg, d, mu, {}, {EvalMode::BruteForce}), g, " ", e.name);
        for (std::size_t s = 1; s < 4; ++s) CHECK(v == evaluate_link(dg, d, mu, {}, {EvalMode::Propagate, s}));
        CHECK(evaluate_link(dg.mirror(), d, mu) == evaluate_link(dg, d, mu, {}, {EvalMode::Propagate, 0, true}));
      }
    }
  }
}

TEST_CASE("positive kink evaluates to mu(v^-1); overrides agree with kinks") {
  const auto d = make_double(make_builtin("C3"));
  const auto& els = *d.be->elements();
  // central, with ψ(zv) = 2 and ψ(zv⁻¹) = 0
  const auto z = basis_element(d.be, els[1], els[1]) + basis_element(d.be, els[2], els[2]);
  const auto mu = mu_build(d, z, full_basis(*d.be));
  const auto cat = builtin_diagrams();
  const auto& u0 = entry(cat, "unknot[0]").surgery.diagram;
  for (int f = -2; f <= 2; ++f) {
    const auto& uf = entry(cat, std::string("unknot[") + (f > 0 ? "+" : "") + std::to_string(f) + "]").surgery.diagram;
    CHECK(evaluate_link(uf, d, mu) == evaluate_link(u0, d, mu, {{0, f}}));
  }
  CHECK(evaluate_link(entry(cat, "unknot[+1]").surgery.diagram, d, mu) == mu(to_element(d.v_inverse)));
  CHECK(evaluate_link(entry(cat, "unknot[-1]").surgery.diagram, d, mu) == mu(to_element(d.v)));
  CHECK(mu(to_element(d.v)) == Scalar(2));
}

TEST_CASE("normalization") {
  const auto d = make_double(make_builtin("S3"));
  const auto basis = full_basis(*d.be);
  const auto cat = builtin_diagrams();
  for (const auto& z : admissible_zs(d)) {
    const auto mu = mu_build(d, z, basis);
    CHECK(normalize_manifold({MorseDiagram{}, {}}, d, mu).normalized == Scalar(1));
    CHECK(normalize_manifold(entry(cat, "unknot[+1]").surgery, d, mu).normalized == Scalar(1));
    CHECK(normalize_manifold(entry(cat, "unknot[-1]").surgery, d, mu).normalized == Scalar(1));
  }
  // Σ eδ_h over the 3-cycles: ψ(zv) = 0.
  const auto z = basis_element(d.be, d.be->identity(), d.be->parse("(1 2 3)")) +
                 basis_element(d.be, d.be->identity(), d.be->parse("(1 3 2)"));
  const auto mu = mu_build(d, z, basis);
  CHECK_THROWS_AS(normalize_manifold(entry(cat, "unknot[+1]").surgery, d, mu), NotNormalizable);
  CHECK(normalize_manifold(entry(cat, "unknot[0]").surgery, d, mu).normalized == Scalar(2));
}

TEST_CASE("z = sum over K of e delta_k counts homomorphisms on lens spaces") {
  const auto d = make_double(make_builtin("S3"));
  const auto& els = *d.be->elements();
  const auto z = z_from_sigma(SigmaSet::product(d.be, {}, ElementSet(els.begin(), els.end())));
  const auto mu = mu_build(d, z, full_basis(*d.be));
  for (const auto& e : builtin_diagrams()) {
    if (!e.lens_p) continue;
    CHECK_MESSAGE(normalize_manifold(e.surgery, d, mu).normalized == Scalar(static_cast<long>(lens_hom_count(*d.be, *e.lens_p))),
                  e.name);
  }
}

TEST_CASE("catalogue shape") {
  const auto cat = builtin_diagrams();
  CHECK(cat.size() >= 12);
  std::set<MoveKind> kinds;
  for (const auto& p : builtin_move_pairs()) {
    kinds.insert(p.kind);
    if (p.kind == MoveKind::R2 || p.kind == MoveKind::R3 || p.kind == MoveKind::FramedR1) {
      const auto [a, b] = differing_window(p.left.diagram, p.right.diagram);
      CHECK_MESSAGE(a + b <= 6, p.name);
      CHECK(p.left.diagram.components() == p.right.diagram.components());
    }
  }
  CHECK(kinds.size() == 5);
}

TEST_CASE("move invariance for admissible z") {
  for (const char* g : {"C2", "C3", "C4", "S3"}) {
    const auto d = make_double(make_builtin(g));
    const auto basis = full_basis(*d.be);
    for (const auto& z : admissible_zs(d)) {
      const auto mu = mu_build(d, z, basis);
      for (const auto& p : builtin_move_pairs()) CHECK_MESSAGE(move_check(p, d, mu), g, " ", p.name);
    }
  }
}

TEST_CASE("defective z breaks a Fenn-Rourke pair but no isotopy pair") {
  const auto d = make_double(make_builtin("C4"));
  const auto z = c4_defective(d);
  const auto mu = mu_build(d, z, full_basis(*d.be));
  bool fr_unequal = false;
  for (const auto& p : builtin_move_pairs()) {
    const bool eq = move_check(p, d, mu);
    if (p.kind == MoveKind::FennRourke) fr_unequal = fr_unequal || !eq;
    else CHECK_MESSAGE(eq, p.name);
  }
  CHECK(fr_unequal);
}

TEST_CASE("infinite backends") {
  const auto d = make_double(make_builtin("Z"));
  const auto z = basis_element(d.be, d.be->identity(), d.be->identity());
  const TraceFunctional mu{&d, z, d.g.left(z)};
  for (const auto& e : builtin_diagrams()) CHECK(evaluate_link(e.surgery.diagram, d, mu) == Scalar(1));

  const auto dd = make_double(make_builtin("Dinf"));
  const auto s = dd.be->parse("(0,1)");
  const auto zk = z_from_sigma(SigmaSet::product(dd.be, {s}, {s}));
  const TraceFunctional muk{&dd, zk, dd.g.left(zk)};
  const auto cat = builtin_diagrams();
  CHECK(evaluate_link(entry(cat, "hopf").surgery.diagram, dd, muk) == Scalar(4));
  CHECK_THROWS_WITH_AS(evaluate_link(entry(cat, "trefoil+").surgery.diagram, dd, muk),
                       doctest::Contains("crossing"), UnlocalizedSum);
}

TEST_CASE("lens homomorphism counts") {
  const auto s3 = make_builtin("S3");
  CHECK(lens_hom_count(*s3, 0) == 6);
  CHECK(lens_hom_count(*s3, 2) == 4);
  CHECK(lens_hom_count(*s3, 3) == 3);
  CHECK(lens_hom_count(*s3, 5) == 1);
}
