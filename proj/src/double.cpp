#include "mqg/double.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace mqg {

// ---- words ----------------------------------------------------------------------------

Word antipode_word(const Word& w) {
  Word out{w.vars, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(antipode_letter(*it));
  return out;
}

namespace {

std::vector<Letter> shifted(const std::vector<Letter>& letters, int offset) {
  std::vector<Letter> out = letters;
  for (auto& l : out) {
    if (l.kind != Letter::Kind::Fixed) l.var += offset;
  }
  return out;
}

std::vector<std::string> merged_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b) {
    std::string name = v;
    while (std::find(out.begin(), out.end(), name) != out.end()) name += "'";
    out.push_back(name);
  }
  return out;
}

std::vector<Letter> concat(std::vector<Letter> a, const std::vector<Letter>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

Word word_product(const Word& a, const Word& b) {
  const int off = static_cast<int>(a.vars.size());
  return {merged_vars(a.vars, b.vars), concat(a.letters, shifted(b.letters, off))};
}

TensorWord tensor_word_product(const TensorWord& a, const TensorWord& b) {
  const int off = static_cast<int>(a.vars.size());
  TensorWord out;
  out.vars = merged_vars(a.vars, b.vars);
  for (std::size_t i = 0; i < 2; ++i) out.legs[i] = concat(a.legs[i], shifted(b.legs[i], off));
  return out;
}

TensorWord flip_word(const TensorWord& w) { return {w.vars, {w.legs[1], w.legs[0]}}; }

TensorWord r_matrix_word() { return {{"k"}, {{{Letter::group(0)}, {Letter::delta(0)}}}}; }
TensorWord r_inverse_word() { return {{"k"}, {{{Letter::group(0, -1)}, {Letter::delta(0)}}}}; }
Word ribbon_word() { return {{"k"}, {Letter::group(0, -1), Letter::delta(0)}}; }
Word ribbon_inverse_word() { return {{"k"}, {Letter::group(0), Letter::delta(0)}}; }

TensorWord r21_r12_word(const TensorWord& r) { return tensor_word_product(flip_word(r), r); }
TensorWord r21_r12_inverse_word(const TensorWord& r_inv) { return tensor_word_product(r_inv, flip_word(r_inv)); }

// ---- word multipliers --------------------------------------------------------------------

Multiplier word_multiplier(const GroupBackend& be, std::string name, const Word& w, EvalMode mode) {
  const GroupBackend* p = &be;
  auto act = [p, w, mode](Leg::Direction dir) {
    return [p, w, mode, dir](const Element& x) {
      StateSum problem{p, w.vars, {Leg{w.letters, x, dir}}};
      return sum_states1(problem, mode);
    };
  };
  Multiplier m(std::move(name), p, act(Leg::Direction::OnLeftOf), act(Leg::Direction::OnRightOf));
  if (be.is_finite()) {
    const auto form = m.left(unit_element(be));
    return Multiplier(m.name(), p, act(Leg::Direction::OnLeftOf), act(Leg::Direction::OnRightOf), form);
  }
  return m;
}

TensorMultiplier tensor_word_multiplier(const GroupBackend& be, std::string name, const TensorWord& w,
                                        EvalMode mode) {
  const GroupBackend* p = &be;
  auto act = [p, w, mode](Leg::Direction dir) {
    return [p, w, mode, dir](const TensorElement& t) {
      std::vector<TensorElement::Term> buf;
      for (const auto& [k, c] : t.terms()) {
        StateSum problem{p, w.vars, {Leg{w.legs[0], basis_element(p, k[0]), dir}, Leg{w.legs[1], basis_element(p, k[1]), dir}}};
        for (const auto& [k2, c2] : sum_states2(problem, mode).terms()) buf.emplace_back(k2, c2 * c);
      }
      return TensorElement::from_terms(p, std::move(buf));
    };
  };
  return {std::move(name), act(Leg::Direction::OnLeftOf), act(Leg::Direction::OnRightOf)};
}

TensorMultiplier tensor_of(const Multiplier& m1, const Multiplier& m2) {
  auto act = [m1, m2](bool left) {
    return [m1, m2, left](const TensorElement& t) {
      std::vector<TensorElement::Term> buf;
      for (const auto& [k, c] : t.terms()) {
        const auto x = basis_element(t.backend(), k[0]);
        const auto y = basis_element(t.backend(), k[1]);
        const auto img = left ? outer(m1.left(x), m2.left(y)) : outer(m1.right(x), m2.right(y));
        for (const auto& [k2, c2] : img.terms()) buf.emplace_back(k2, c2 * c);
      }
      return TensorElement::from_terms(t.backend(), std::move(buf));
    };
  };
  return {m1.name() + "⊗" + m2.name(), act(true), act(false)};
}

TensorMultiplier tensor_compose(const TensorMultiplier& a, const TensorMultiplier& b) {
  return {a.name + "·" + b.name, [a, b](const TensorElement& t) { return a.left(b.left(t)); },
          [a, b](const TensorElement& t) { return b.right(a.right(t)); }};
}

TensorElement tensor_to_element(const GroupBackend& be, const TensorMultiplier& m) {
  const auto one = unit_element(be);
  return m.left(outer(one, one));
}

// ---- D(G) structure maps ----------------------------------------------------------------------

MhaStructure double_structure(const GroupBackend& be) {
  const GroupBackend* p = &be;
  auto mul = [p](const GroupElement& a, const GroupElement& b) { return p->mul(a, b); };
  auto inv = [p](const GroupElement& a) { return p->inv(a); };
  auto pair = [p](BasisIndex x, BasisIndex y) { return TensorElement(p, {x, y}); };
  MhaStructure s;
  s.backend = p;
  // Δ(gδ_h)(1⊗g'δ_h'): only p = g' h'⁻¹ g'⁻¹ h survives.
  s.t1 = [=](const BasisIndex& a, const BasisIndex& b) {
    const auto q = mul(mul(mul(b.g, inv(b.h)), inv(b.g)), a.h);
    return pair({a.g, q}, {mul(a.g, b.g), b.h});
  };
  // (g'δ_h'⊗1)Δ(gδ_h): p = g⁻¹h'g.
  s.t2 = [=](const BasisIndex& a, const BasisIndex& b) {
    const auto q = mul(mul(inv(b.g), a.h), b.g);
    return pair({mul(a.g, b.g), q}, {b.g, mul(b.h, inv(q))});
  };
  // Δ(gδ_h)(g'δ_h'⊗1): p = g'h'g'⁻¹.
  s.t3 = [=](const BasisIndex& a, const BasisIndex& b) {
    const auto q = mul(mul(b.g, b.h), inv(b.g));
    return pair({mul(a.g, b.g), b.h}, {a.g, mul(a.h, inv(q))});
  };
  // (1⊗g'δ_h')Δ(gδ_h): p = g⁻¹h'⁻¹g h.
  s.t4 = [=](const BasisIndex& a, const BasisIndex& b) {
    const auto q = mul(mul(mul(inv(b.g), inv(a.h)), b.g), b.h);
    return pair({b.g, q}, {mul(a.g, b.g), mul(b.h, inv(q))});
  };
  s.t1_inverse = [=](const BasisIndex& a, const BasisIndex& b) {
    const auto q = mul(mul(mul(mul(inv(a.g), b.g), b.h), inv(b.g)), mul(a.g, a.h));
    return pair({a.g, q}, {mul(inv(a.g), b.g), b.h});
  };
  s.t2_inverse = [=](const BasisIndex& a, const BasisIndex& b) {
    return pair({mul(a.g, inv(b.g)), mul(mul(b.g, a.h), inv(b.g))}, {b.g, mul(b.h, a.h)});
  };
  const auto e = be.identity();
  s.counit = [e](const BasisIndex& x) { return Scalar(x.h == e ? 1 : 0); };
  s.left_integral = [e](const BasisIndex& x) { return Scalar(x.g == e ? 1 : 0); };
  s.right_integral = [e](const BasisIndex& x) { return Scalar(x.g == e ? 1 : 0); };
  s.antipode = [=](const BasisIndex& x) {
    return basis_element(p, inv(x.g), mul(mul(x.g, inv(x.h)), inv(x.g)));
  };
  // S⁻¹(gδ_h) = g⁻¹δ_{gh⁻¹g⁻¹}: S is an involution on D(G).
  s.antipode_inverse = [=](const BasisIndex& x) {
    const auto gi = inv(x.g);
    return basis_element(p, gi, inv(mul(mul(x.g, x.h), gi)));
  };
  s.modular = mult_identity(be);
  s.counit_probe = basis_element(p, e, e);
  return s;
}

DoubleAlgebra make_double(Backend backend, EvalMode mode) {
  return make_double_with_r(std::move(backend), r_matrix_word(), r_inverse_word(), mode);
}

DoubleAlgebra make_double_with_r(Backend backend, TensorWord r, TensorWord r_inv, EvalMode mode) {
  if (!backend) throw std::invalid_argument("make_double: no backend");
  if (mode == EvalMode::BruteForce && !backend->is_finite()) throw Unsupported("brute-force mode needs a finite group");
  const GroupBackend& be = *backend;
  DoubleAlgebra d{.backend = backend,
                  .be = backend.get(),
                  .s = double_structure(be),
                  .mode = mode,
                  .r_word = std::move(r),
                  .r_inv_word = std::move(r_inv),
                  .R = {},
                  .R_inverse = {},
                  .u_word = {},
                  .u_inverse_words = {},
                  .u = mult_identity(be),
                  .u_inverse = mult_identity(be),
                  .S_u = mult_identity(be),
                  .S_u_inverse = mult_identity(be),
                  .v = mult_identity(be),
                  .v_inverse = mult_identity(be),
                  .g = mult_identity(be),
                  .g_inverse = mult_identity(be),
                  .one = mult_identity(be),
                  .modular_solved = std::nullopt,
                  .modular_note = {}};
  d.R = tensor_word_multiplier(be, "R", d.r_word, mode);
  d.R_inverse = tensor_word_multiplier(be, "R^-1", d.r_inv_word, mode);

  const auto& rw = d.r_word;
  auto leg = [&](std::size_t i) { return Word{rw.vars, rw.legs[i]}; };
  auto S = [](const Word& w) { return antipode_word(w); };
  // On letters S⁻¹ and S agree for D(G); kept as separate steps to mirror
  // the printed expressions.
  auto Sinv = [](const Word& w) { return antipode_word(w); };
  auto cat = [&](const Word& a, const Word& b) { return Word{rw.vars, concat(a.letters, b.letters)}; };
  d.u_word = cat(S(leg(1)), leg(0));
  d.u_inverse_words = {cat(Sinv(Sinv(leg(1))), leg(0)), cat(Sinv(leg(1)), S(leg(0))), cat(leg(1), S(S(leg(0))))};

  d.u = word_multiplier(be, "u", d.u_word, mode);
  d.u_inverse = word_multiplier(be, "u^-1", d.u_inverse_words[0], mode);
  d.S_u = word_multiplier(be, "S(u)", S(d.u_word), mode);
  d.S_u_inverse = word_multiplier(be, "S(u)^-1", S(d.u_inverse_words[0]), mode);
  d.v = word_multiplier(be, "v", ribbon_word(), mode);
  d.v_inverse = word_multiplier(be, "v^-1", ribbon_inverse_word(), mode);
  d.g = mult_compose(d.u, d.v_inverse).named("g");
  d.g_inverse = mult_compose(d.v, d.u_inverse).named("g^-1");

  if (be.is_finite()) {
    d.modular_solved = solve_modular_element(d.s);
    if (d.modular_solved) {
      d.s.modular = mult_from_element(*d.modular_solved, "δ");
      d.modular_note = *d.modular_solved == unit_element(be) ? "solved: δ = 1" : "solved: δ ≠ 1";
    } else {
      d.modular_note = "modular element equation has no unique solution";
    }
  } else {
    d.modular_note = "δ = 1 taken on an infinite group (not solvable by finite linear algebra)";
  }
  return d;
}

// ---- grouplikes -----------------------------------------------------------------------

namespace {

bool element_less(const Element& a, const Element& b) { return a.terms() < b.terms(); }

// Homomorphisms G → {±1}, found from sign choices on the generators.
std::vector<std::map<GroupElement, int>> sign_characters(const GroupBackend& be) {
  const auto gens = be.generators();
  const auto& els = *be.elements();
  std::vector<std::map<GroupElement, int>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
    std::map<GroupElement, int> chi{{be.identity(), 1}};
    std::deque<GroupElement> queue{be.identity()};
    bool ok = true;
    while (!queue.empty() && ok) {
      const auto x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto y = be.mul(x, gens[i]);
        const int val = chi[x] * ((mask >> i) & 1 ? -1 : 1);
        const auto [it, fresh] = chi.try_emplace(y, val);
        if (fresh) {
          queue.push_back(y);
        } else if (it->second != val) {
          ok = false;
        }
      }
    }
    if (!ok || chi.size() != els.size()) continue;
    for (const auto& a : els) {
      for (const auto& b : els) ok = ok && chi[be.mul(a, b)] == chi[a] * chi[b];
    }
    if (ok) out.push_back(std::move(chi));
  }
  return out;
}

}  // namespace

std::vector<Element> grouplike_enumerate(const DoubleAlgebra& d) {
  const auto& be = *d.be;
  if (!be.is_finite()) throw Unsupported("grouplike enumeration needs a finite group");
  if (be.order() == 0) throw PreconditionFailed("empty group");
  // Matching coefficients of Δ(x) = x⊗x on basis tensors forces x to live on
  // one group part g with h ↦ c_{g,h} multiplicative and c_{g,e} = 1, i.e. a
  // rational character of G, hence ±1-valued.
  const auto basis = full_basis(be);
  std::vector<Element> out;
  for (const auto& chi : sign_characters(be)) {
    for (const auto& g : *be.elements()) {
      std::vector<Element::Term> terms;
      for (const auto& [h, c] : chi) terms.push_back({{BasisIndex{g, h}}, Scalar(c)});
      auto x = Element::from_terms(d.be, std::move(terms));
      if (!grouplike_witness(d.s, mult_from_element(x), basis)) out.push_back(std::move(x));
    }
  }
  std::sort(out.begin(), out.end(), element_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Multiplier> named_multipliers(const DoubleAlgebra& d) {
  std::vector<Multiplier> out{d.one, d.u, d.u_inverse, d.S_u, d.S_u_inverse, d.v, d.v_inverse, d.g, d.g_inverse};
  for (const auto& k : d.be->generators()) out.push_back(mult_group(*d.be, k));
  out.push_back(mult_from_element(basis_element(d.be, d.be->identity(), d.be->identity()), "δ_e"));
  return out;
}

// ---- suite ----------------------------------------------------------------------------

std::vector<CheckResult> double_suite(const DoubleAlgebra& d, const std::vector<BasisIndex>& basis, bool sampled) {
  const auto& be = *d.be;
  const auto* p = d.be;
  auto el = [p](const BasisIndex& x) { return basis_element(p, x); };
  std::vector<CheckResult> out;

  CheckResult modular{"modular_element_is_one", true, 1, "", sampled, d.modular_note};
  if (be.is_finite()) modular.passed = d.modular_solved && *d.modular_solved == unit_element(be);
  out.push_back(modular);

  out.push_back(sweep_check("psi_antipode_invariant", be, basis, 1, [&](auto t) {
    return apply_form(d.s.right_integral, apply_map(d.s.antipode, el(t[0]))) == d.s.right_integral(t[0]);
  }));

  // R(x ⊗ g'δ_h'): δ_k meets g'δ_h' only for k = g'h'g'⁻¹.
  out.push_back(sweep_check("R_kernel_matches_literal", be, basis, 2, [&](auto t) {
    const auto k = be.mul(be.mul(t[1].g, t[1].h), be.inv(t[1].g));
    const TensorElement expect(p, {BasisIndex{be.mul(k, t[0].g), t[0].h}, t[1]});
    const TensorElement x(p, {t[0], t[1]});
    return d.R.left(x) == expect;
  }));
  if (be.is_finite()) {
    CheckResult r{"R_expansion_matches_literal_sum", true, 1, "", false, ""};
    std::vector<TensorElement::Term> lit;
    for (const auto& g : *be.elements()) {
      for (const auto& h : *be.elements()) lit.emplace_back(TensorElement::Key{BasisIndex{g, h}, BasisIndex{be.identity(), g}}, Scalar(1));
    }
    r.passed = tensor_to_element(be, d.R) == TensorElement::from_terms(p, std::move(lit));
    out.push_back(r);
  }
  out.push_back(sweep_check("R_inverse", be, basis, 2, [&](auto t) {
    const TensorElement x(p, {t[0], t[1]});
    return d.R_inverse.left(d.R.left(x)) == x && d.R.left(d.R_inverse.left(x)) == x && d.R.right(d.R_inverse.right(x)) == x;
  }));
  {
    CheckResult r{"v_central", true, basis.size(), "", sampled, ""};
    if (const auto w = central_witness(d.v, basis)) {
      r.passed = false;
      r.witness = "(" + format_basis(be, *w) + ")";
    }
    out.push_back(r);
  }
  out.push_back(sweep_check("v_closed_form", be, basis, 1, [&](auto t) {
    const auto h = t[0].h;
    const auto x = basis_element(p, be.identity(), h);
    return d.v.left(x) == basis_element(p, be.inv(h), h);
  }));
  out.push_back({"counit_v", counit_multiplier(d.s, d.v) == Scalar(1), 1, "", false, ""});
  {
    CheckResult r{"u_equals_v", true, basis.size(), "", sampled, "observed on the sweep, u is built from R"};
    if (const auto w = mult_difference(d.u, d.v, basis)) {
      r.passed = false;
      r.witness = "(" + format_basis(be, *w) + ")";
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace mqg
