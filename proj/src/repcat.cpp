#include "mqg/repcat.hpp"

#include <algorithm>
#include <bit>
#include <json.hpp>

namespace mqg {

namespace {

void require_finite(const DoubleAlgebra& d) {
  if (!d.be->is_finite()) throw Unsupported("module categories need a finite group");
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

// Product skipping zero entries of a; module matrices are mostly sparse.
Matrix mul(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const Scalar& c = a(i, k);
      if (c.is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += c * b(k, j);
      }
    }
  return out;
}

std::map<BasisIndex, Eigen::Index> positions(const std::vector<BasisIndex>& basis) {
  std::map<BasisIndex, Eigen::Index> pos;
  for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<Eigen::Index>(i);
  return pos;
}

ModuleRep transformed(const DoubleAlgebra& d, const ModuleRep& m, const MhaStructure::Map& map, std::string name) {
  ModuleRep out{m.be, m.dim, {}, std::move(name)};
  for (const auto& [x, mat] : m.action) out.action[x] = m.rho(apply_map(map, basis_element(d.be, x))).transpose();
  return out;
}

// Σ e_i ⊗ e^i, read as a column (b) or as a row (d).
Matrix pairing_vector(Eigen::Index n) {
  Matrix v = Matrix::Zero(n * n, 1);
  for (Eigen::Index i = 0; i < n; ++i) v(i * n + i, 0) = Scalar(1);
  return v;
}

CheckResult result(std::string name, std::size_t cases) { return {std::move(name), true, cases, "", false, ""}; }

void fail(CheckResult& r, const std::string& witness) {
  if (!r.passed) return;
  r.passed = false;
  r.witness = witness;
}

}  // namespace

const Matrix& ModuleRep::rho(const BasisIndex& x) const {
  const auto it = action.find(x);
  if (it == action.end()) throw std::out_of_range("module has no action for " + format_basis(*be, x));
  return it->second;
}

Matrix ModuleRep::rho(const Element& x) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& [k, c] : x.terms()) out += rho(k[0]) * c;
  return out;
}

ModuleRep regular_module(const DoubleAlgebra& d) {
  require_finite(d);
  const auto basis = full_basis(*d.be);
  const auto pos = positions(basis);
  const auto n = static_cast<Eigen::Index>(basis.size());
  ModuleRep m{d.be, n, {}, "regular"};
  for (const auto& x : basis) {
    Matrix mat = Matrix::Zero(n, n);
    const auto ex = basis_element(d.be, x);
    for (const auto& y : basis) {
      for (const auto& [k, c] : (ex * basis_element(d.be, y)).terms()) mat(pos.at(k[0]), pos.at(y)) = c;
    }
    m.action[x] = std::move(mat);
  }
  return m;
}

ModuleRep trivial_module(const DoubleAlgebra& d) {
  require_finite(d);
  ModuleRep m{d.be, 1, {}, "trivial"};
  for (const auto& x : full_basis(*d.be)) m.action[x] = Matrix::Constant(1, 1, d.s.counit(x));
  return m;
}

ModuleRep adjoint_module(const DoubleAlgebra& d) {
  require_finite(d);
  const auto& els = *d.be->elements();
  std::map<GroupElement, Eigen::Index> pos;
  for (std::size_t i = 0; i < els.size(); ++i) pos[els[i]] = static_cast<Eigen::Index>(i);
  const auto n = static_cast<Eigen::Index>(els.size());
  ModuleRep m{d.be, n, {}, "adjoint"};
  for (const auto& x : full_basis(*d.be)) {
    Matrix mat = Matrix::Zero(n, n);
    const auto gx = d.be->mul(d.be->mul(x.g, x.h), d.be->inv(x.g));
    mat(pos.at(gx), pos.at(x.h)) = Scalar(1);
    m.action[x] = std::move(mat);
  }
  return m;
}

ModuleRep module_from_json(const DoubleAlgebra& d, const std::string& text) {
  require_finite(d);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, e.what());
  }
  if (!j.contains("dimension") || !j.contains("action")) throw ValidationError("module needs dimension and action");
  const auto n = j["dimension"].get<Eigen::Index>();
  if (n <= 0) throw ValidationError("module dimension must be positive");
  ModuleRep m{d.be, n, {}, j.value("name", std::string("file"))};
  for (const auto& entry : j["action"]) {
    const auto x = parse_element(*d.be, entry.at("basis").get<std::string>());
    if (x.size() != 1 || !(x.terms().front().second == Scalar(1))) {
      throw ValidationError("action key is not a basis element: " + entry.at("basis").get<std::string>());
    }
    const auto& rows = entry.at("matrix");
    if (static_cast<Eigen::Index>(rows.size()) != n) throw ValidationError("matrix has the wrong number of rows");
    Matrix mat(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (static_cast<Eigen::Index>(row.size()) != n) throw ValidationError("matrix row has the wrong length");
      for (Eigen::Index c = 0; c < n; ++c) mat(r, c) = Scalar::parse(row[static_cast<std::size_t>(c)].get<std::string>());
    }
    m.action[x.terms().front().first[0]] = std::move(mat);
  }
  for (const auto& x : full_basis(*d.be)) {
    if (!m.action.contains(x)) throw ValidationError("missing action for " + format_basis(*d.be, x));
  }
  if (const auto w = module_law_witness(m)) {
    throw ValidationError("ρ(x)ρ(y) ≠ ρ(xy) at (" + format_basis(*d.be, w->first) + ", " +
                          format_basis(*d.be, w->second) + ")");
  }
  if (!is_unital(m)) throw ValidationError("module is not unital");
  return m;
}

std::optional<std::pair<BasisIndex, BasisIndex>> module_law_witness(const ModuleRep& m) {
  for (const auto& [x, rx] : m.action)
    for (const auto& [y, ry] : m.action) {
      if (!(mul(rx, ry) == m.rho(basis_element(m.be, x) * basis_element(m.be, y)))) return std::make_pair(x, y);
    }
  return std::nullopt;
}

namespace {
Matrix spanning_family(const ModuleRep& m) {
  Matrix f(m.dim, m.dim * static_cast<Eigen::Index>(m.action.size()));
  Eigen::Index col = 0;
  for (const auto& [x, rx] : m.action) {
    f.block(0, col, m.dim, m.dim) = rx;
    col += m.dim;
  }
  return f;
}
}  // namespace

bool is_unital(const ModuleRep& m) { return rank(spanning_family(m)) == m.dim; }

Matrix extend_to_multiplier(const ModuleRep& m, const Multiplier& f, int route) {
  if (route == 0) {
    // m = Σ_h (e δ_h)·m
    Matrix out = Matrix::Zero(m.dim, m.dim);
    std::vector<GroupElement> labels;
    for (const auto& [x, rx] : m.action) labels.push_back(x.h);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    Matrix unit = Matrix::Zero(m.dim, m.dim);
    for (const auto& h : labels) {
      const auto p = basis_element(m.be, m.be->identity(), h);
      const Matrix rp = m.rho(p);
      unit += rp;
      out += mul(m.rho(f.left(p)), rp);
    }
    if (!(unit == identity(m.dim))) throw PreconditionFailed("module is not unital: ρ(1) ≠ id");
    return out;
  }
  // e_j = Σ c_{x,k} ρ(x) e_k, so f·e_j = Σ c_{x,k} ρ(f x) e_k
  const Matrix fam = spanning_family(m);
  Matrix fam_f(m.dim, fam.cols());
  Eigen::Index col = 0;
  for (const auto& [x, rx] : m.action) {
    fam_f.block(0, col, m.dim, m.dim) = m.rho(f.left(basis_element(m.be, x)));
    col += m.dim;
  }
  Matrix out(m.dim, m.dim);
  for (Eigen::Index j = 0; j < m.dim; ++j) {
    const auto c = solve_particular<Scalar>(fam, identity(m.dim).col(j));
    if (!c) throw PreconditionFailed("module is not unital");
    out.col(j) = mul(fam_f, *c);
  }
  return out;
}

ModuleRep tensor_module(const DoubleAlgebra& d, const ModuleRep& m, const ModuleRep& n) {
  require_finite(d);
  if (m.be != n.be || m.be != d.be) throw BackendMismatch();
  const auto one = unit_element(*d.be);
  ModuleRep out{d.be, m.dim * n.dim, {}, "(" + m.name + "⊗" + n.name + ")"};
  for (const auto& [x, rx] : m.action) {
    Matrix mat = Matrix::Zero(out.dim, out.dim);
    for (const auto& [k, c] : cancel(d.s.t1, basis_element(d.be, x), one).terms()) {
      mat += kron(m.rho(k[0]), n.rho(k[1])) * c;
    }
    out.action[x] = std::move(mat);
  }
  return out;
}

ModuleRep dual_left(const DoubleAlgebra& d, const ModuleRep& m) {
  return transformed(d, m, d.s.antipode, m.name + "*");
}

ModuleRep dual_right(const DoubleAlgebra& d, const ModuleRep& m) {
  return transformed(d, m, d.s.antipode_inverse, "*" + m.name);
}

Matrix coevaluation(const ModuleRep& m) { return pairing_vector(m.dim); }
Matrix evaluation(const ModuleRep& m) { return pairing_vector(m.dim).transpose(); }
Matrix coevaluation_right(const ModuleRep& m) { return pairing_vector(m.dim); }
Matrix evaluation_right(const ModuleRep& m) { return pairing_vector(m.dim).transpose(); }

Matrix flip_matrix(Eigen::Index dm, Eigen::Index dn) {
  Matrix p = Matrix::Zero(dm * dn, dm * dn);
  for (Eigen::Index i = 0; i < dm; ++i)
    for (Eigen::Index j = 0; j < dn; ++j) p(j * dm + i, i * dn + j) = Scalar(1);
  return p;
}

Matrix braiding(const DoubleAlgebra& d, const ModuleRep& m, const ModuleRep& n) {
  require_finite(d);
  Matrix r = Matrix::Zero(m.dim * n.dim, m.dim * n.dim);
  for (const auto& [k, c] : tensor_to_element(*d.be, d.R).terms()) r += kron(m.rho(k[0]), n.rho(k[1])) * c;
  return mul(flip_matrix(m.dim, n.dim), r);
}

Matrix twist(const DoubleAlgebra& d, const ModuleRep& m, const Multiplier* twist_override) {
  return extend_to_multiplier(m, twist_override ? *twist_override : d.v_inverse);
}

std::vector<Element> central_idempotents(const DoubleAlgebra& d, std::size_t max_count) {
  require_finite(d);
  const auto& be = *d.be;
  std::vector<ElementSet> classes;
  ElementSet seen;
  for (const auto& x : *be.elements()) {
    if (seen.contains(x)) continue;
    ElementSet cls;
    for (const auto& g : *be.elements()) cls.insert(conjugate(be, g, x));
    seen.insert(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  const std::size_t c = classes.size();
  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << std::min<std::size_t>(c, 20)); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
  if (masks.size() > max_count) masks.resize(max_count);
  std::vector<Element> out;
  for (const auto mask : masks) {
    std::vector<Element::Term> terms;
    for (std::size_t i = 0; i < c; ++i) {
      if (!(mask >> i & 1U)) continue;
      for (const auto& h : classes[i]) terms.push_back({{BasisIndex{be.identity(), h}}, Scalar(1)});
    }
    out.push_back(Element::from_terms(d.be, std::move(terms)));
  }
  return out;
}

std::vector<CheckResult> rigidity_check(const DoubleAlgebra& d, const ModuleRep& m) {
  const auto n = m.dim;
  const auto I = identity(n);
  const auto ml = dual_left(d, m);
  const auto mr = dual_right(d, m);
  const Matrix b = coevaluation(m);
  const Matrix e = evaluation(m);
  const Matrix br = coevaluation_right(m);
  const Matrix er = evaluation_right(m);
  std::vector<CheckResult> out;
  {
    auto r = result("zigzag_left", 2);
    if (!(mul(kron(I, e), kron(b, I)) == I)) fail(r, "(id⊗d)(b⊗id)");
    if (!(mul(kron(e, I), kron(I, b)) == I)) fail(r, "(d⊗id)(id⊗b)");
    out.push_back(r);
  }
  {
    auto r = result("zigzag_right", 2);
    if (!(mul(kron(er, I), kron(I, br)) == I)) fail(r, "(d′⊗id)(id⊗b′)");
    if (!(mul(kron(I, er), kron(br, I)) == I)) fail(r, "(id⊗d′)(b′⊗id)");
    out.push_back(r);
  }
  {
    auto r = result("duality_maps_are_module_maps", m.action.size());
    const auto m_ml = tensor_module(d, m, ml);
    const auto ml_m = tensor_module(d, ml, m);
    const auto mr_m = tensor_module(d, mr, m);
    const auto m_mr = tensor_module(d, m, mr);
    for (const auto& [x, rx] : m.action) {
      const Scalar eps = d.s.counit(x);
      const auto w = format_basis(*d.be, x);
      if (!(mul(m_ml.rho(x), b) == b * eps)) fail(r, "b at " + w);
      if (!(mul(e, ml_m.rho(x)) == e * eps)) fail(r, "d at " + w);
      if (!(mul(mr_m.rho(x), br) == br * eps)) fail(r, "b′ at " + w);
      if (!(mul(er, m_mr.rho(x)) == er * eps)) fail(r, "d′ at " + w);
    }
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> ribbon_category_check(const DoubleAlgebra& d, const ModuleRep& m, const ModuleRep& n,
                                               const Multiplier* twist_override) {
  require_finite(d);
  const auto mn = tensor_module(d, m, n);
  const auto nm = tensor_module(d, n, m);
  const Matrix c_mn = braiding(d, m, n);
  const Matrix c_nm = braiding(d, n, m);
  const Matrix th_m = twist(d, m, twist_override);
  const Matrix th_n = twist(d, n, twist_override);
  const auto idem = central_idempotents(d, 8);
  std::vector<CheckResult> out;
  {
    auto r = result("braiding_module_map", m.action.size());
    for (const auto& [x, rx] : m.action) {
      if (!(mul(c_mn, mn.rho(x)) == mul(nm.rho(x), c_mn))) fail(r, format_basis(*d.be, x));
    }
    out.push_back(r);
  }
  {
    auto r = result("braiding_natural", idem.size() * idem.size());
    for (std::size_t i = 0; i < idem.size(); ++i)
      for (std::size_t j = 0; j < idem.size(); ++j) {
        const Matrix f = m.rho(idem[i]);
        const Matrix g = n.rho(idem[j]);
        if (!(mul(c_mn, kron(f, g)) == mul(kron(g, f), c_mn))) fail(r, format_element(idem[i]) + " ⊗ " + format_element(idem[j]));
      }
    out.push_back(r);
  }
  {
    auto r = result("twist_tensor", 1);
    if (!(twist(d, mn, twist_override) == mul(mul(kron(th_m, th_n), c_nm), c_mn))) fail(r, m.name + "⊗" + n.name);
    out.push_back(r);
  }
  {
    auto r = result("twist_dual", 1);
    if (!(th_m.transpose() == twist(d, dual_left(d, m), twist_override))) fail(r, m.name);
    out.push_back(r);
  }
  {
    auto r = result("twist_natural", idem.size() + m.action.size());
    for (const auto& p : idem) {
      const Matrix f = m.rho(p);
      if (!(mul(f, th_m) == mul(th_m, f))) fail(r, format_element(p));
    }
    for (const auto& [x, rx] : m.action) {
      if (!(mul(rx, th_m) == mul(th_m, rx))) fail(r, format_basis(*d.be, x));
    }
    out.push_back(r);
  }
  for (auto& c : out) c.name = m.name + "," + n.name + ":" + c.name;
  return out;
}

std::vector<CheckResult> extension_check(const DoubleAlgebra& d, const ModuleRep& m) {
  const auto named = named_multipliers(d);
  std::vector<Matrix> mats;
  for (const auto& f : named) mats.push_back(extend_to_multiplier(m, f));
  std::vector<CheckResult> out;
  {
    auto r = result("extension_unit_and_elements", m.action.size() + 1);
    if (!(extend_to_multiplier(m, d.one) == identity(m.dim))) fail(r, "1");
    for (const auto& [x, rx] : m.action) {
      if (!(extend_to_multiplier(m, mult_from_element(basis_element(d.be, x))) == rx)) fail(r, format_basis(*d.be, x));
    }
    out.push_back(r);
  }
  {
    auto r = result("extension_routes_agree", named.size());
    for (std::size_t i = 0; i < named.size(); ++i) {
      if (!(extend_to_multiplier(m, named[i], 1) == mats[i])) fail(r, named[i].name());
    }
    out.push_back(r);
  }
  {
    auto r = result("extension_multiplicative", named.size() * named.size());
    for (std::size_t i = 0; i < named.size(); ++i)
      for (std::size_t j = 0; j < named.size(); ++j) {
        if (!(extend_to_multiplier(m, mult_compose(named[i], named[j])) == mul(mats[i], mats[j]))) {
          fail(r, named[i].name() + " · " + named[j].name());
        }
      }
    out.push_back(r);
  }
  for (auto& c : out) c.name = m.name + ":" + c.name;
  return out;
}

std::vector<CheckResult> repcat_suite(const DoubleAlgebra& d, bool include_tensor_square) {
  require_finite(d);
  return repcat_suite(d, regular_module(d), include_tensor_square);
}

std::vector<CheckResult> repcat_suite(const DoubleAlgebra& d, const ModuleRep& reg, bool include_tensor_square) {
  require_finite(d);
  const auto triv = trivial_module(d);
  std::vector<CheckResult> out;
  auto add = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) out.push_back(std::move(r));
  };
  for (const auto* m : {&reg, &triv}) {
    auto r = result(m->name + ":module_law", m->action.size() * m->action.size());
    if (const auto w = module_law_witness(*m)) fail(r, format_basis(*d.be, w->first) + ", " + format_basis(*d.be, w->second));
    if (!is_unital(*m)) fail(r, "not unital");
    out.push_back(r);
  }
  add(extension_check(d, reg));
  add(rigidity_check(d, reg));
  add(rigidity_check(d, triv));
  add(ribbon_category_check(d, reg, reg));
  add(ribbon_category_check(d, reg, triv));
  add(ribbon_category_check(d, triv, triv));
  if (include_tensor_square) {
    const auto sq = tensor_module(d, reg, reg);
    auto r = result(sq.name + ":module_law", sq.action.size() * sq.action.size());
    if (const auto w = module_law_witness(sq)) fail(r, format_basis(*d.be, w->first) + ", " + format_basis(*d.be, w->second));
    out.push_back(r);
    add(rigidity_check(d, sq));
    add(ribbon_category_check(d, sq, reg));
  }
  return out;
}

}  // namespace mqg
