#include "mqg/mha.hpp"

#include <algorithm>
#include <map>

#include "mqg/parallel.hpp"

namespace mqg {

TensorElement cancel(const MhaStructure::PairMap& map, const Element& a, const Element& b) {
  const auto* be = Element::merged_backend(a, b);
  std::vector<TensorElement::Term> buf;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const auto img = map(ka[0], kb[0]);
      const Scalar c = ca * cb;
      for (const auto& [k, ck] : img.terms()) buf.emplace_back(k, ck * c);
    }
  }
  return TensorElement::from_terms(be, std::move(buf));
}

TensorElement cancel(const MhaStructure::PairMap& map, const TensorElement& t) {
  std::vector<TensorElement::Term> buf;
  for (const auto& [kt, ct] : t.terms()) {
    for (const auto& [k, ck] : map(kt[0], kt[1]).terms()) buf.emplace_back(k, ck * ct);
  }
  return TensorElement::from_terms(t.backend(), std::move(buf));
}

Element apply_map(const MhaStructure::Map& map, const Element& x) {
  return linear_map<1, 1>(x, x.backend(), [&](const Element::Key& k) { return map(k[0]); });
}

Scalar apply_form(const MhaStructure::Form& form, const Element& x) {
  return linear_form(x, [&](const Element::Key& k) { return form(k[0]); });
}

Element contract_leg(const MhaStructure::Form& form, const TensorElement& t, std::size_t leg) {
  std::vector<Element::Term> buf;
  for (const auto& [k, c] : t.terms()) {
    const Scalar f = form(k[leg]);
    if (!f.is_zero()) buf.push_back({{k[1 - leg]}, c * f});
  }
  return Element::from_terms(t.backend(), std::move(buf));
}

Element multiply_out(const TensorElement& t) {
  std::vector<Element::Term> buf;
  for (const auto& [k, c] : t.terms()) {
    if (const auto p = basis_mul(*t.backend(), k[0], k[1])) buf.push_back({{*p}, c});
  }
  return Element::from_terms(t.backend(), std::move(buf));
}

TensorElement mul_leg_left(const Element& x, std::size_t leg, const TensorElement& t) {
  std::vector<TensorElement::Term> buf;
  const auto* be = TensorElement::merged_backend(TensorElement(x.backend()), t);
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [k, c] : t.terms()) {
      if (const auto p = basis_mul(*be, kx[0], k[leg])) {
        auto key = k;
        key[leg] = *p;
        buf.emplace_back(key, cx * c);
      }
    }
  }
  return TensorElement::from_terms(be, std::move(buf));
}

TensorElement mul_leg_right(const TensorElement& t, std::size_t leg, const Element& x) {
  std::vector<TensorElement::Term> buf;
  const auto* be = TensorElement::merged_backend(TensorElement(x.backend()), t);
  for (const auto& [k, c] : t.terms()) {
    for (const auto& [kx, cx] : x.terms()) {
      if (const auto p = basis_mul(*be, k[leg], kx[0])) {
        auto key = k;
        key[leg] = *p;
        buf.emplace_back(key, c * cx);
      }
    }
  }
  return TensorElement::from_terms(be, std::move(buf));
}

// ---- multipliers ----------------------------------------------------------------------

TensorElement coproduct_left(const MhaStructure& s, const Multiplier& m, const TensorElement& t) {
  std::vector<TensorElement::Term> buf;
  for (const auto& [k, c] : cancel(s.t1_inverse, t).terms()) {
    const Element ma = m.left(basis_element(s.backend, k[0]));
    for (const auto& [k2, c2] : cancel(s.t1, ma, basis_element(s.backend, k[1])).terms()) buf.emplace_back(k2, c2 * c);
  }
  return TensorElement::from_terms(s.backend, std::move(buf));
}

TensorElement coproduct_right(const MhaStructure& s, const TensorElement& t, const Multiplier& m) {
  std::vector<TensorElement::Term> buf;
  for (const auto& [k, c] : cancel(s.t2_inverse, t).terms()) {
    const Element bm = m.right(basis_element(s.backend, k[1]));
    for (const auto& [k2, c2] : cancel(s.t2, basis_element(s.backend, k[0]), bm).terms()) buf.emplace_back(k2, c2 * c);
  }
  return TensorElement::from_terms(s.backend, std::move(buf));
}

Tensor3 coproduct3_left(const MhaStructure& s, const Multiplier& m, const Tensor3& t) {
  std::vector<Tensor3::Term> buf;
  for (const auto& [k, c] : t.terms()) {
    const auto pq = s.t1_inverse(k[1], k[2]);
    for (const auto& [kpq, cpq] : pq.terms()) {
      const TensorElement ap(s.backend, {k[0], kpq[0]});
      for (const auto& [kab, cab] : coproduct_left(s, m, ap).terms()) {
        for (const auto& [kx, cx] : s.t1(kab[1], kpq[1]).terms()) {
          buf.emplace_back(Tensor3::Key{kab[0], kx[0], kx[1]}, c * cpq * cab * cx);
        }
      }
    }
  }
  return Tensor3::from_terms(s.backend, std::move(buf));
}

Multiplier antipode_multiplier(const MhaStructure& s, const Multiplier& m) {
  std::optional<Element> form;
  if (m.element_form()) form = apply_map(s.antipode, *m.element_form());
  const auto S = s.antipode;
  const auto Sinv = s.antipode_inverse;
  return Multiplier(
      "S(" + m.name() + ")", m.backend(), [S, Sinv, m](const Element& a) { return apply_map(S, m.right(apply_map(Sinv, a))); },
      [S, Sinv, m](const Element& a) { return apply_map(S, m.left(apply_map(Sinv, a))); }, std::move(form));
}

Multiplier antipode_inverse_multiplier(const MhaStructure& s, const Multiplier& m) {
  std::optional<Element> form;
  if (m.element_form()) form = apply_map(s.antipode_inverse, *m.element_form());
  const auto S = s.antipode;
  const auto Sinv = s.antipode_inverse;
  return Multiplier(
      "Sinv(" + m.name() + ")", m.backend(),
      [S, Sinv, m](const Element& a) { return apply_map(Sinv, m.right(apply_map(S, a))); },
      [S, Sinv, m](const Element& a) { return apply_map(Sinv, m.left(apply_map(S, a))); }, std::move(form));
}

Scalar counit_multiplier(const MhaStructure& s, const Multiplier& m) {
  return apply_form(s.counit, m.left(s.counit_probe));
}

std::optional<std::pair<BasisIndex, BasisIndex>> grouplike_witness(const MhaStructure& s, const Multiplier& m,
                                                                   const std::vector<BasisIndex>& basis) {
  for (const auto& a : basis) {
    const Element ea = basis_element(s.backend, a);
    const Element ma = m.left(ea);
    if (!(apply_form(s.counit, ma) == s.counit(a))) return std::make_pair(a, a);
    for (const auto& b : basis) {
      const auto lhs = cancel(s.t1, ma, basis_element(s.backend, b));
      std::vector<TensorElement::Term> buf;
      for (const auto& [k, c] : s.t1(a, b).terms()) {
        const auto l0 = m.left(basis_element(s.backend, k[0]));
        const auto l1 = m.left(basis_element(s.backend, k[1]));
        for (const auto& t : outer(l0, l1).terms()) buf.emplace_back(t.first, t.second * c);
      }
      if (!(lhs == TensorElement::from_terms(s.backend, std::move(buf)))) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

// ---- checks ---------------------------------------------------------------------------

CheckResult sweep_check(std::string name, const GroupBackend& be, const std::vector<BasisIndex>& basis, int arity,
                        const std::function<bool(std::span<const BasisIndex>)>& holds) {
  CheckResult r;
  r.name = std::move(name);
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= basis.size();
  r.cases = n;
  auto decode = [&](std::size_t idx) {
    std::vector<BasisIndex> tuple(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
      tuple[static_cast<std::size_t>(i)] = basis[idx % basis.size()];
      idx /= basis.size();
    }
    return tuple;
  };
  const auto bad = parallel_first_failure(n, [&](std::size_t idx) {
    const auto t = decode(idx);
    return !holds(t);
  });
  if (bad) {
    r.passed = false;
    const auto t = decode(*bad);
    r.witness = "(";
    for (std::size_t i = 0; i < t.size(); ++i) r.witness += (i ? ", " : "") + format_basis(be, t[i]);
    r.witness += ")";
  }
  return r;
}

bool check_coassociativity(const MhaStructure& s, const Element& a, const Element& b, const Element& c) {
  std::vector<Tensor3::Term> lhs;
  for (const auto& [k, ck] : cancel(s.t1, b, c).terms()) {
    for (const auto& [k2, c2] : cancel(s.t2, a, basis_element(s.backend, k[0])).terms()) {
      lhs.emplace_back(Tensor3::Key{k2[0], k2[1], k[1]}, ck * c2);
    }
  }
  std::vector<Tensor3::Term> rhs;
  for (const auto& [k, ck] : cancel(s.t2, a, b).terms()) {
    for (const auto& [k2, c2] : cancel(s.t1, basis_element(s.backend, k[1]), c).terms()) {
      rhs.emplace_back(Tensor3::Key{k[0], k2[0], k2[1]}, ck * c2);
    }
  }
  return Tensor3::from_terms(s.backend, std::move(lhs)) == Tensor3::from_terms(s.backend, std::move(rhs));
}

bool check_counit_antipode(const MhaStructure& s, const Element& a, const Element& b) {
  const auto ab = a * b;
  const auto t1 = cancel(s.t1, a, b);
  const auto t2 = cancel(s.t2, a, b);
  if (!(contract_leg(s.counit, t1, 0) == ab)) return false;
  if (!(multiply_out(map_leg(t1, 0, [&](const Element& x) { return apply_map(s.antipode, x); })) ==
        b * apply_form(s.counit, a))) {
    return false;
  }
  if (!(contract_leg(s.counit, t2, 1) == ab)) return false;
  return multiply_out(map_leg(t2, 1, [&](const Element& x) { return apply_map(s.antipode, x); })) ==
         a * apply_form(s.counit, b);
}

bool check_regular(const MhaStructure& s, const Element& a, const Element& b, const Element& c) {
  if (!(apply_map(s.antipode_inverse, apply_map(s.antipode, a)) == a)) return false;
  if (!(apply_map(s.antipode, apply_map(s.antipode_inverse, a)) == a)) return false;
  // Δ(a)(b⊗c) two ways, and (b⊗c)Δ(a) two ways.
  if (!(mul_leg_right(cancel(s.t3, a, b), 1, c) == mul_leg_right(cancel(s.t1, a, c), 0, b))) return false;
  if (!(mul_leg_left(b, 0, cancel(s.t4, c, a)) == mul_leg_left(c, 1, cancel(s.t2, b, a)))) return false;
  // S⁻¹ is the antipode of the co-opposite coproduct.
  const auto cop = flip(cancel(s.t3, a, b));
  return multiply_out(map_leg(cop, 0, [&](const Element& x) { return apply_map(s.antipode_inverse, x); })) ==
         b * apply_form(s.counit, a);
}

bool check_integrals(const MhaStructure& s, const Element& a, const Element& b) {
  if (!(contract_leg(s.left_integral, cancel(s.t3, a, b), 1) == b * apply_form(s.left_integral, a))) return false;
  return contract_leg(s.right_integral, cancel(s.t4, a, b), 0) == a * apply_form(s.right_integral, b);
}

bool check_modular(const MhaStructure& s, const Element& a) {
  if (!s.modular) throw PreconditionFailed("structure has no modular element");
  return apply_form(s.left_integral, apply_map(s.antipode, a)) == apply_form(s.left_integral, s.modular->right(a));
}

bool check_counimodular(const MhaStructure& s, const Element& a, const Element& b) {
  const auto s2b = apply_map(s.antipode, apply_map(s.antipode, b));
  return apply_form(s.right_integral, s2b * a) == apply_form(s.right_integral, a * b);
}

// ---- bases and linear algebra -----------------------------------------------------------

std::vector<BasisIndex> full_basis(const GroupBackend& be) {
  if (!be.is_finite()) throw Unsupported("full basis of an infinite group");
  return sweep_basis(*be.elements());
}

std::vector<BasisIndex> ball_basis(const GroupBackend& be, int radius) {
  auto sample = sweep_elements(be, radius);
  std::sort(sample.begin(), sample.end());
  return sweep_basis(sample);
}

Vector coordinates(const Element& x, const std::vector<BasisIndex>& basis) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [k, c] : x.terms()) {
    const auto it = std::lower_bound(basis.begin(), basis.end(), k[0]);
    if (it == basis.end() || !(*it == k[0])) throw std::invalid_argument("coordinates: element leaves the basis");
    v(it - basis.begin()) = c;
  }
  return v;
}

Element from_coordinates(const GroupBackend* be, const Vector& c, const std::vector<BasisIndex>& basis) {
  std::vector<Element::Term> buf;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (!c(i).is_zero()) buf.push_back({{basis[static_cast<std::size_t>(i)]}, c(i)});
  }
  return Element::from_terms(be, std::move(buf));
}

namespace {

// Adds the equations Σ_x c_x image(x) = 0 (coefficientwise) to `sys`.
void add_element_equations(LinearSystem& sys, const std::vector<BasisIndex>& basis,
                           const std::function<Element(const BasisIndex&)>& image) {
  std::map<BasisIndex, Vector> rows;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& [k, c] : image(basis[i]).terms()) {
      auto [it, fresh] = rows.try_emplace(k[0]);
      if (fresh) it->second = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
      it->second(static_cast<Eigen::Index>(i)) += c;
    }
  }
  for (const auto& [k, row] : rows) sys.add(row);
}

}  // namespace

Element dual_right_integral_point(const MhaStructure& s) {
  const auto basis = full_basis(*s.backend);
  LinearSystem sys(static_cast<Eigen::Index>(basis.size()));
  for (const auto& y : basis) {
    const Element ey = basis_element(s.backend, y);
    const Scalar eps = s.counit(y);
    add_element_equations(sys, basis, [&](const BasisIndex& x) {
      const Element ex = basis_element(s.backend, x);
      return ex * ey - ex * eps;
    });
  }
  Vector norm(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) norm(static_cast<Eigen::Index>(i)) = s.left_integral(basis[i]);
  sys.add(norm, Scalar(1));
  const auto sol = sys.solve();
  if (!sol) throw PreconditionFailed("no right cointegral with φ(t) = 1");
  if (sol->second.cols() != 0) throw PreconditionFailed("right cointegral is not unique");
  return from_coordinates(s.backend, sol->first, basis);
}

bool dual_integral_eval(const MhaStructure& s, const Element& t, const Element& a) {
  if (!s.backend->is_finite()) throw Unsupported("dual integral evaluation needs a finite group");
  return apply_form(s.left_integral, t * a) == apply_form(s.counit, a);
}

std::optional<Element> solve_modular_element(const MhaStructure& s) {
  const auto basis = full_basis(*s.backend);
  LinearSystem sys(static_cast<Eigen::Index>(basis.size()));
  for (const auto& a : basis) {
    const Element ea = basis_element(s.backend, a);
    Vector row(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      row(static_cast<Eigen::Index>(i)) = apply_form(s.left_integral, ea * basis_element(s.backend, basis[i]));
    }
    sys.add(row, apply_form(s.left_integral, apply_map(s.antipode, ea)));
  }
  const auto sol = sys.solve();
  if (!sol || sol->second.cols() != 0) return std::nullopt;
  return from_coordinates(s.backend, sol->first, basis);
}

std::vector<CheckResult> structure_suite(const MhaStructure& s, const std::vector<BasisIndex>& basis, bool sampled) {
  const auto& be = *s.backend;
  const auto* p = s.backend;
  auto el = [p](const BasisIndex& x) { return basis_element(p, x); };
  std::vector<CheckResult> out;
  out.push_back(sweep_check("coassociativity", be, basis, 3, [&](auto t) {
    return check_coassociativity(s, el(t[0]), el(t[1]), el(t[2]));
  }));
  out.push_back(sweep_check("counit_antipode", be, basis, 2, [&](auto t) {
    return check_counit_antipode(s, el(t[0]), el(t[1]));
  }));
  out.push_back(sweep_check("antipode_antimultiplicative", be, basis, 2, [&](auto t) {
    const auto x = el(t[0]);
    const auto y = el(t[1]);
    return apply_map(s.antipode, x * y) == apply_map(s.antipode, y) * apply_map(s.antipode, x) &&
           apply_form(s.counit, x * y) == s.counit(t[0]) * s.counit(t[1]);
  }));
  out.push_back(sweep_check("regular", be, basis, 3, [&](auto t) {
    return check_regular(s, el(t[0]), el(t[1]), el(t[2]));
  }));
  out.push_back(sweep_check("integrals", be, basis, 2, [&](auto t) {
    return check_integrals(s, el(t[0]), el(t[1]));
  }));
  if (s.modular) {
    out.push_back(sweep_check("modular", be, basis, 1, [&](auto t) { return check_modular(s, el(t[0])); }));
  } else {
    out.push_back({"modular", false, 0, "", sampled, "no modular element available"});
  }
  out.push_back(sweep_check("counimodular", be, basis, 2, [&](auto t) {
    return check_counimodular(s, el(t[0]), el(t[1]));
  }));
  if (be.is_finite()) {
    CheckResult r{"dual_integral_eval", true, basis.size(), "", false, ""};
    try {
      const auto t = dual_right_integral_point(s);
      for (const auto& a : basis) {
        if (!dual_integral_eval(s, t, el(a))) {
          r.passed = false;
          r.witness = "(" + format_basis(be, a) + ")";
          break;
        }
      }
    } catch (const Error& e) {
      r.passed = false;
      r.note = e.what();
    }
    out.push_back(r);
  }
  for (auto& r : out) r.sampled = r.sampled || sampled;
  for (auto& r : out) {
    if (r.name == "integrals" && r.note.empty()) r.note = "uniqueness of integrals assumed, not verified";
  }
  return out;
}

}  // namespace mqg
