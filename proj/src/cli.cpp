#include "mqg/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mqg/hennings.hpp"
#include "mqg/parallel.hpp"
#include "mqg/repcat.hpp"

namespace mqg {

namespace {

using Json = nlohmann::ordered_json;

/// Bad flags, unreadable files, rejected z; maps to kExitConfig.
class ConfigError : public Error {
 public:
  using Error::Error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Splits at `sep` outside parentheses and brackets.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

constexpr std::string_view kBuiltinPrefix = "builtin:";

SurgeryPresentation load_surgery(const std::string& spec) {
  if (spec.starts_with(kBuiltinPrefix)) {
    const auto name = spec.substr(kBuiltinPrefix.size());
    for (auto& e : builtin_diagrams()) {
      if (e.name == name) return e.surgery;
    }
    throw ConfigError("no builtin diagram named '" + name + "'");
  }
  return parse_surgery(read_file(spec), spec);
}

MorseDiagram load_diagram(const std::string& spec) {
  if (spec.starts_with(kBuiltinPrefix)) {
    auto sp = load_surgery(spec);
    if (!sp.framing_override.empty()) throw ConfigError("'" + spec + "' carries framing lines; use manifold");
    return sp.diagram;
  }
  return MorseDiagram::parse(read_file(spec), spec);
}

Json check_json(const CheckResult& r) {
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["cases"] = r.cases;
  j["sampled"] = r.sampled;
  j["witness"] = r.witness.empty() ? Json(nullptr) : Json(r.witness);
  j["note"] = r.note;
  return j;
}

bool all_passed(const std::vector<CheckResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.passed; });
}

struct ZSpec {
  Element z;
  std::string source;
  /// Closure checks of Σ, when z came from --sigma.
  std::vector<CheckResult> closure;
};

ElementSet parse_generators(const GroupBackend& be, const std::string& text) {
  ElementSet out;
  for (const auto& tok : split_top(text, ',')) {
    if (tok.empty()) continue;
    out.insert(be.parse(tok));
  }
  return out;
}

ZSpec sigma_z(const DoubleAlgebra& d, const std::string& text) {
  std::optional<ElementSet> h;
  std::optional<ElementSet> k;
  for (const auto& part : split_top(text, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("--sigma expects H=<gens>;K=<gens>, got '" + part + "'");
    const auto key = trim(std::string_view(part).substr(0, eq));
    auto gens = parse_generators(*d.be, part.substr(eq + 1));
    if (key == "H" && !h) {
      h = std::move(gens);
    } else if (key == "K" && !k) {
      k = std::move(gens);
    } else {
      throw ConfigError("--sigma: unexpected or repeated part '" + key + "'");
    }
  }
  if (!h || !k) throw ConfigError("--sigma needs both H= and K=");
  SigmaSet sig = [&] {
    try {
      return SigmaSet::product(d.be, *h, *k);
    } catch (const ClosureExceedsCap& e) {
      throw ConfigError(std::string("--sigma: ") + e.what());
    }
  }();
  ZSpec out{z_from_sigma(sig), "sigma " + text, {}};
  out.closure.push_back({"sigma_involution_closed", sigma_involution_closed(sig), sig.size(), "", false,
                         "(g,h) -> (g^-1, g h^-1 g^-1)"});
  CheckResult action{"sigma_action_closed", false, sig.size(), "", false,
                     "(g,h).c = (g c, c^-1 h c) for c in <pi1(sigma)>, fibers fixed by h -> g^-1 h m^-1 g"};
  try {
    action.passed = sigma_action_closed(sig);
  } catch (const ClosureExceedsCap& e) {
    action.note = e.what();
  }
  out.closure.push_back(action);
  return out;
}

std::optional<ZSpec> resolve_z(const RunConfig& cfg, const DoubleAlgebra& d) {
  if (cfg.z && cfg.sigma) throw ConfigError("give exactly one of --z and --sigma");
  if (cfg.sigma) return sigma_z(d, *cfg.sigma);
  if (!cfg.z) return std::nullopt;
  if (*cfg.z == "cointegral") {
    if (!d.be->is_finite()) throw ConfigError("--z cointegral needs a finite group");
    return ZSpec{cointegral_z(d), "cointegral", {}};
  }
  try {
    return ZSpec{parse_element(*d.be, *cfg.z), "literal", {}};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--z: ") + e.what());
  }
}

std::vector<BasisIndex> sweep_basis(const GroupBackend& be, int radius) {
  return be.is_finite() ? full_basis(be) : ball_basis(be, radius);
}

Json header(const RunConfig& cfg, const GroupBackend& be) {
  Json j;
  j["schema"] = 1;
  j["command"] = cfg.command;
  j["group"] = be.name();
  j["finite"] = be.is_finite();
  if (be.is_finite()) {
    j["order"] = be.order();
  } else {
    j["radius"] = cfg.radius;
  }
  return j;
}

/// Rejects z before any evaluation: Σ closure first, then the z-conditions.
ZSpec require_z(const RunConfig& cfg, const DoubleAlgebra& d, const std::vector<BasisIndex>& basis) {
  auto z = resolve_z(cfg, d);
  if (!z) throw ConfigError("exactly one of --z and --sigma is required");
  for (const auto& c : z->closure) {
    if (!c.passed) throw ConfigError("sigma rejected: " + c.name + " fails, " + c.note);
  }
  const auto zc = z_conditions_check(d, z->z, basis);
  if (!zc.all()) {
    std::string which = !zc.s_invariant ? "S-invariance" : !zc.central ? "centrality" : "coproduct condition";
    throw ConfigError("z rejected: " + which + " fails" + (zc.witness.empty() ? "" : " at " + zc.witness));
  }
  return *z;
}

Json z_json(const ZSpec& z) {
  Json j;
  j["source"] = z.source;
  j["element"] = format_element(z.z);
  return j;
}

// ---- verify ---------------------------------------------------------------------------

const std::vector<std::string> kSuites = {"structure", "double", "ribbon", "traces", "repcat"};

std::vector<std::string> selected_suites(const std::string& text) {
  if (text == "all") return kSuites;
  std::vector<std::string> out;
  for (const auto& s : split_top(text, ',')) {
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end())
      throw ConfigError("unknown suite '" + s + "' (structure, double, ribbon, traces, repcat, all)");
    out.push_back(s);
  }
  return out;
}

int cmd_verify(const RunConfig& cfg, const Backend& backend, Json& report) {
  const auto& be = *backend;
  const bool all = cfg.suite == "all";
  const auto suites = selected_suites(cfg.suite);
  const bool sampled = !be.is_finite();
  if (!be.is_finite() && std::find(suites.begin(), suites.end(), "repcat") != suites.end() && !all)
    throw Unsupported("suite repcat needs a finite group; " + be.name() + " is infinite");

  Json out = Json::array();
  bool passed = true;
  auto add = [&](const std::string& name, const std::vector<CheckResult>& rs, Json extra = Json::object()) {
    Json s;
    s["name"] = name;
    for (auto& [k, v] : extra.items()) s[k] = v;
    s["passed"] = all_passed(rs);
    s["checks"] = Json::array();
    for (const auto& r : rs) s["checks"].push_back(check_json(r));
    passed = passed && all_passed(rs);
    out.push_back(std::move(s));
  };
  auto skip = [&](const std::string& name, const std::string& why) {
    Json s;
    s["name"] = name;
    s["skipped"] = why;
    out.push_back(std::move(s));
  };

  const auto sample = sweep_elements(be, cfg.radius);
  const auto axioms = check_group_axioms(be, sample);
  {
    CheckResult r{"group_axioms", axioms.ok, sample.size(), "", sampled, axioms.failed_law};
    if (!axioms.ok) {
      r.witness = "(";
      for (std::size_t i = 0; i < axioms.witness.size(); ++i)
        r.witness += (i ? ", " : "") + be.format(axioms.witness[i]);
      r.witness += ")";
    }
    add("group", {r});
  }
  if (!axioms.ok) {
    for (const auto& s : suites) skip(s, "group axioms fail");
    report["suites"] = std::move(out);
    report["passed"] = false;
    return kExitCheckFailed;
  }

  const auto d = make_double(backend);
  const auto basis = sweep_basis(be, cfg.radius);
  report["basis_size"] = basis.size();
  for (const auto& s : suites) {
    if (s == "structure") {
      add(s, structure_suite(d.s, basis, sampled));
    } else if (s == "double") {
      add(s, double_suite(d, basis, sampled));
    } else if (s == "ribbon") {
      add(s, ribbon_suite(d, basis, sampled));
    } else if (s == "traces") {
      auto z = resolve_z(cfg, d);
      if (!z) {
        if (!be.is_finite()) {
          if (!all) throw ConfigError("suite traces on an infinite group needs --z or --sigma");
          skip(s, "needs --z or --sigma on an infinite group");
          continue;
        }
        z = ZSpec{cointegral_z(d), "cointegral", {}};
      }
      auto rs = z->closure;
      const auto ts = traces_suite(d, z->z, basis, sampled);
      rs.insert(rs.end(), ts.begin(), ts.end());
      add(s, rs, {{"z", z_json(*z)}});
    } else if (s == "repcat") {
      if (!be.is_finite()) {
        skip(s, "unsupported on infinite groups");
        continue;
      }
      // Tensor products of the regular module are dense |G|⁴-sized matrices;
      // past order 3 the conjugation module stands in for it.
      const bool regular = be.order() <= 3;
      const auto m = regular ? regular_module(d) : adjoint_module(d);
      const bool square = be.order() <= 2;
      add(s, repcat_suite(d, m, square), {{"module", m.name}, {"tensor_square", square}});
    }
  }
  report["suites"] = std::move(out);
  report["passed"] = passed;
  return passed ? kExitOk : kExitCheckFailed;
}

// ---- invariant and manifold ---------------------------------------------------------------

Json diagram_json(const MorseDiagram& dg) {
  Json j;
  j["name"] = dg.name();
  j["components"] = dg.components();
  j["crossings"] = dg.crossings();
  return j;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_invariant(const RunConfig& cfg, const Backend& backend, Json& report) {
  if (cfg.diagram.empty()) throw ConfigError("invariant needs --diagram");
  const auto dg = load_diagram(cfg.diagram);
  const auto d = make_double(backend);
  const auto basis = sweep_basis(*backend, cfg.radius);
  const auto z = require_z(cfg, d, basis);
  const auto mu = mu_build(d, z.z, basis);
  report["z"] = z_json(z);
  report["diagram"] = diagram_json(dg);
  report["value"] = evaluate_link(dg, d, mu).str();
  report["psi_zv"] = apply_form(d.s.right_integral, d.v.right(z.z)).str();
  report["psi_zv_inverse"] = apply_form(d.s.right_integral, d.v_inverse.right(z.z)).str();
  return kExitOk;
}

Json manifold_json(const SurgeryPresentation& sp, const ManifoldValue& v) {
  Json j = diagram_json(sp.diagram);
  Json framings = Json::array();
  for (int c = 0; c < sp.diagram.components(); ++c) framings.push_back(sp.framing(c));
  j["framings"] = std::move(framings);
  j["linking_matrix"] = matrix_json(sp.linking_matrix());
  j["n_plus"] = v.n_plus;
  j["n_minus"] = v.n_minus;
  j["raw"] = v.raw.str();
  j["normalized"] = v.normalized.str();
  return j;
}

int cmd_manifold(const RunConfig& cfg, const Backend& backend, Json& report) {
  if (cfg.surgery.empty()) throw ConfigError("manifold needs --surgery");
  const auto left = load_surgery(cfg.surgery);
  std::optional<SurgeryPresentation> right;
  if (!cfg.pair.empty()) right = load_surgery(cfg.pair);
  const auto d = make_double(backend);
  const auto basis = sweep_basis(*backend, cfg.radius);
  const auto z = require_z(cfg, d, basis);
  const auto mu = mu_build(d, z.z, basis);
  report["z"] = z_json(z);
  const auto lv = normalize_manifold(left, d, mu);
  report["psi_zv"] = lv.psi_zv.str();
  report["psi_zv_inverse"] = lv.psi_zv_inverse.str();
  report["manifold"] = manifold_json(left, lv);
  if (!right) return kExitOk;
  const auto rv = normalize_manifold(*right, d, mu);
  report["pair"] = manifold_json(*right, rv);
  const bool equal = lv.normalized == rv.normalized;
  report["equal"] = equal;
  return equal ? kExitOk : kExitCheckFailed;
}

void emit(const RunConfig& cfg, const Json& report, std::ostream& out) {
  const auto text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
  f << text;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.radius < 0) throw ConfigError("--radius must be non-negative");
    set_default_jobs(cfg.jobs);
    Backend backend;
    try {
      backend = resolve_group(cfg.group);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--group: ") + e.what());
    }
    Json report = header(cfg, *backend);
    int code = kExitOk;
    try {
      if (cfg.command == "verify") {
        code = cmd_verify(cfg, backend, report);
      } else if (cfg.command == "invariant") {
        code = cmd_invariant(cfg, backend, report);
      } else if (cfg.command == "manifold") {
        code = cmd_manifold(cfg, backend, report);
      } else {
        throw ConfigError("unknown command '" + cfg.command + "'");
      }
    } catch (const NotNormalizable& e) {
      report["error"] = {{"kind", "NotNormalizable"}, {"message", e.what()}};
      emit(cfg, report, out);
      err << "error: not normalizable: " << e.what() << "\n";
      return kExitEvaluation;
    } catch (const UnlocalizedSum& e) {
      report["error"] = {{"kind", "UnlocalizedSum"}, {"message", e.what()}};
      emit(cfg, report, out);
      err << "error: state sum has no finite support: " << e.what()
          << "\n  (choose z with finite conjugacy classes or a finite group)\n";
      return kExitEvaluation;
    }
    emit(cfg, report, out);
    return code;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitConfig;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact quantum-double invariants of framed links and 3-manifolds", "mqg"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "builtin <Z|Dinf|C<n>|S<n>|D<n>> or a group file")
        ->required()
        ->expected(1, 2);
    sub->add_option("--radius", cfg.radius, "word-length radius of sweeps on infinite groups")->capture_default_str();
    sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
    sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
    sub->add_option("--z", cfg.z, "cointegral or an element literal such as 1*[e;e]");
    sub->add_option("--sigma", cfg.sigma, "z from H x K: H=<gens>;K=<gens>");
  };
  auto* verify = app.add_subcommand("verify", "run verification suites");
  common(verify);
  verify->add_option("--suite", cfg.suite, "structure, double, ribbon, traces, repcat or all (comma list)")
      ->capture_default_str();
  auto* invariant = app.add_subcommand("invariant", "evaluate a framed link diagram");
  common(invariant);
  invariant->add_option("--diagram", cfg.diagram, "Morse diagram file or builtin:<name>")->required();
  auto* manifold = app.add_subcommand("manifold", "evaluate a surgery presentation");
  common(manifold);
  manifold->add_option("--surgery", cfg.surgery, "surgery file or builtin:<name>")->required();
  manifold->add_option("--pair", cfg.pair, "second presentation; reports whether the normalized values agree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run_command(cfg, out, err);
}

}  // namespace mqg
