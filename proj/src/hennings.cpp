#include "mqg/hennings.hpp"

#include <algorithm>
#include <sstream>

namespace mqg {

namespace {

std::string where(std::size_t k, const MorseEvent& ev) {
  std::string s = "event " + std::to_string(k);
  if (ev.line != 0) s += " (line " + std::to_string(ev.line) + ")";
  return s;
}

std::string keyword(const MorseEvent& ev) {
  const char* base = ev.kind == MorseEvent::Kind::Cup ? "cup" : ev.kind == MorseEvent::Kind::Cap ? "cap" : "x";
  return std::string(base) + (ev.sign > 0 ? "+" : "-");
}

struct Arc {
  int bottom = -1;  // event index
  int top = -1;
  bool up = true;
};

// Per event: for cups/caps {left, right}; for crossings {in_i, in_i1, out_i, out_i1}.
using EventArcs = std::vector<int>;

}  // namespace

// ---- Morse diagrams -----------------------------------------------------------------------

MorseDiagram::MorseDiagram(std::vector<MorseEvent> events, std::string name)
    : events_(std::move(events)), name_(std::move(name)) {
  trace();
}

void MorseDiagram::trace() {
  std::vector<Arc> arcs;
  std::vector<EventArcs> ev_arcs(events_.size());
  std::vector<int> strands;
  auto new_arc = [&](int bottom, bool up) {
    arcs.push_back({bottom, -1, up});
    return static_cast<int>(arcs.size()) - 1;
  };
  for (std::size_t k = 0; k < events_.size(); ++k) {
    const auto& ev = events_[k];
    const int n = static_cast<int>(strands.size());
    const int e = static_cast<int>(k);
    if (ev.sign != 1 && ev.sign != -1) throw ValidationError(where(k, ev) + ": tag must be + or -");
    if (ev.pos < 0) throw ValidationError(where(k, ev) + ": negative position");
    switch (ev.kind) {
      case MorseEvent::Kind::Cup: {
        if (ev.pos > n)
          throw ValidationError(where(k, ev) + ": position " + std::to_string(ev.pos) + " out of range for " +
                                std::to_string(n) + " strands");
        const bool left_up = ev.sign < 0;
        const int l = new_arc(e, left_up);
        const int r = new_arc(e, !left_up);
        strands.insert(strands.begin() + ev.pos, {l, r});
        ev_arcs[k] = {l, r};
        break;
      }
      case MorseEvent::Kind::Cap:
      case MorseEvent::Kind::Cross: {
        if (ev.pos + 1 >= n)
          throw ValidationError(where(k, ev) + ": position " + std::to_string(ev.pos) + " out of range for " +
                                std::to_string(n) + " strands");
        const int a = strands[static_cast<std::size_t>(ev.pos)];
        const int b = strands[static_cast<std::size_t>(ev.pos) + 1];
        arcs[static_cast<std::size_t>(a)].top = e;
        arcs[static_cast<std::size_t>(b)].top = e;
        if (ev.kind == MorseEvent::Kind::Cap) {
          const bool left_up = arcs[static_cast<std::size_t>(a)].up;
          const bool right_up = arcs[static_cast<std::size_t>(b)].up;
          if (left_up == right_up || left_up != (ev.sign < 0))
            throw ValidationError(where(k, ev) + ": orientation consistency violated at " + keyword(ev) +
                                  " (strands point " + (left_up ? "up" : "down") + "/" + (right_up ? "up" : "down") +
                                  ")");
          strands.erase(strands.begin() + ev.pos, strands.begin() + ev.pos + 2);
          ev_arcs[k] = {a, b};
        } else {
          const int a2 = new_arc(e, arcs[static_cast<std::size_t>(a)].up);
          const int b2 = new_arc(e, arcs[static_cast<std::size_t>(b)].up);
          strands[static_cast<std::size_t>(ev.pos)] = b2;
          strands[static_cast<std::size_t>(ev.pos) + 1] = a2;
          ev_arcs[k] = {a, b, b2, a2};
        }
        break;
      }
    }
  }
  if (!strands.empty())
    throw ValidationError("diagram does not close: " + std::to_string(strands.size()) + " strands remain at the top");

  // Crossing numbering in event order.
  std::vector<int> crossing_of(events_.size(), -1);
  crossings_.clear();
  for (std::size_t k = 0; k < events_.size(); ++k) {
    if (events_[k].kind != MorseEvent::Kind::Cross) continue;
    crossing_of[k] = static_cast<int>(crossings_.size());
    crossings_.push_back({k, events_[k].sign, -1, -1, 0});
  }

  // Continuation through an event: the arc we leave on, given the arc we
  // arrive on.
  auto continue_from = [&](int arc, int event) {
    const auto& ea = ev_arcs[static_cast<std::size_t>(event)];
    if (events_[static_cast<std::size_t>(event)].kind != MorseEvent::Kind::Cross) return ea[0] == arc ? ea[1] : ea[0];
    // in_i ↔ out_i1 (strand from bottom-left), in_i1 ↔ out_i.
    if (arc == ea[0]) return ea[3];
    if (arc == ea[3]) return ea[0];
    if (arc == ea[1]) return ea[2];
    return ea[1];
  };

  walks_.clear();
  rotation2_.clear();
  std::vector<int> comp_of_arc(arcs.size(), -1);
  for (std::size_t k = 0; k < events_.size(); ++k) {
    if (events_[k].kind != MorseEvent::Kind::Cup) continue;
    const auto& ea = ev_arcs[k];
    if (comp_of_arc[static_cast<std::size_t>(ea[0])] >= 0) continue;
    const int comp = static_cast<int>(walks_.size());
    walks_.emplace_back();
    rotation2_.push_back(0);
    const int start = arcs[static_cast<std::size_t>(ea[0])].up ? ea[0] : ea[1];
    int cur = start;
    while (true) {
      comp_of_arc[static_cast<std::size_t>(cur)] = comp;
      const auto& arc = arcs[static_cast<std::size_t>(cur)];
      const int event = arc.up ? arc.top : arc.bottom;
      const auto& ev = events_[static_cast<std::size_t>(event)];
      if (ev.kind == MorseEvent::Kind::Cross) {
        const auto& xa = ev_arcs[static_cast<std::size_t>(event)];
        // Strand from bottom-left: in_i / out_i1.
        const bool from_bottom_left = cur == xa[0] || cur == xa[3];
        const bool over = (ev.sign > 0) == from_bottom_left;
        walks_.back().push_back({crossing_of[static_cast<std::size_t>(event)], over, !arc.up});
      } else {
        rotation2_.back() += ev.sign;
      }
      cur = continue_from(cur, event);
      if (cur == start) break;
    }
  }

  // Crossing components and oriented signs.
  for (auto& ci : crossings_) {
    const auto& xa = ev_arcs[ci.event];
    const int bl = xa[0];  // bottom-left → top-right
    const int br = xa[1];  // bottom-right → top-left
    const bool bl_up = arcs[static_cast<std::size_t>(bl)].up;
    const bool br_up = arcs[static_cast<std::size_t>(br)].up;
    const int over = ci.tag > 0 ? bl : br;
    const int under = ci.tag > 0 ? br : bl;
    ci.over_component = comp_of_arc[static_cast<std::size_t>(over)];
    ci.under_component = comp_of_arc[static_cast<std::size_t>(under)];
    // Direction vectors: bl runs (1,1), br runs (−1,1), reversed when walked down.
    const int blx = bl_up ? 1 : -1;
    const int bly = bl_up ? 1 : -1;
    const int brx = br_up ? -1 : 1;
    const int bry = br_up ? 1 : -1;
    const int cross_z = ci.tag > 0 ? blx * bry - bly * brx : brx * bly - bry * blx;
    ci.writhe_sign = cross_z > 0 ? 1 : -1;
  }
}

int MorseDiagram::rotation_number(int c) const { return rotation2_.at(static_cast<std::size_t>(c)) / 2; }

int MorseDiagram::writhe(int c) const {
  int w = 0;
  for (const auto& ci : crossings_)
    if (ci.over_component == c && ci.under_component == c) w += ci.writhe_sign;
  return w;
}

int MorseDiagram::linking_number(int a, int b) const {
  if (a == b) return writhe(a);
  int twice = 0;
  for (const auto& ci : crossings_)
    if ((ci.over_component == a && ci.under_component == b) || (ci.over_component == b && ci.under_component == a))
      twice += ci.writhe_sign;
  return twice / 2;
}

Matrix MorseDiagram::linking_matrix() const {
  const int n = components();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Scalar(linking_number(i, j));
  return m;
}

MorseDiagram MorseDiagram::mirror() const {
  auto ev = events_;
  for (auto& e : ev) e.sign = -e.sign;
  return MorseDiagram(std::move(ev), name_.empty() ? std::string{} : "mirror(" + name_ + ")");
}

std::string MorseDiagram::to_text() const {
  std::ostringstream os;
  if (!name_.empty()) os << "# " << name_ << "\n";
  for (const auto& e : events_) os << keyword(e) << " " << e.pos << "\n";
  return os.str();
}

namespace {

struct ParsedLines {
  std::vector<MorseEvent> events;
  std::vector<std::pair<std::size_t, std::pair<long, long>>> framings;  // line, (component, value)
};

long parse_int(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

ParsedLines parse_lines(std::string_view text, bool allow_framing) {
  ParsedLines out;
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(is, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    const auto& kw = toks[0];
    if (kw == "framing") {
      if (!allow_framing) throw ParseError(line, "framing lines belong in surgery files");
      if (toks.size() != 3) throw ParseError(line, "expected 'framing <component> <integer>'");
      out.framings.push_back({line, {parse_int(toks[1], line), parse_int(toks[2], line)}});
      continue;
    }
    MorseEvent ev;
    ev.line = line;
    std::string base = kw;
    if (base.size() < 2 || (base.back() != '+' && base.back() != '-'))
      throw ParseError(line, "unknown event '" + kw + "'");
    ev.sign = base.back() == '+' ? 1 : -1;
    base.pop_back();
    if (base == "cup") ev.kind = MorseEvent::Kind::Cup;
    else if (base == "cap") ev.kind = MorseEvent::Kind::Cap;
    else if (base == "x") ev.kind = MorseEvent::Kind::Cross;
    else throw ParseError(line, "unknown event '" + kw + "'");
    if (toks.size() != 2) throw ParseError(line, "expected '" + kw + " <position>'");
    const long pos = parse_int(toks[1], line);
    if (pos < 0) throw ParseError(line, "negative position");
    ev.pos = static_cast<int>(pos);
    out.events.push_back(ev);
  }
  return out;
}

}  // namespace

MorseDiagram MorseDiagram::parse(std::string_view text, std::string name) {
  return MorseDiagram(parse_lines(text, false).events, std::move(name));
}

// ---- builder --------------------------------------------------------------------------------

DiagramBuilder& DiagramBuilder::cup(int i, bool left_up) {
  if (i < 0 || i > static_cast<int>(up_.size())) throw ValidationError("builder: cup position out of range");
  events_.push_back({MorseEvent::Kind::Cup, i, left_up ? -1 : 1, 0});
  up_.insert(up_.begin() + i, {left_up, !left_up});
  return *this;
}

DiagramBuilder& DiagramBuilder::cap(int i) {
  if (i < 0 || i + 1 >= static_cast<int>(up_.size())) throw ValidationError("builder: cap position out of range");
  const bool l = up_[static_cast<std::size_t>(i)];
  if (l == up_[static_cast<std::size_t>(i) + 1]) throw ValidationError("builder: cap joins equally oriented strands");
  events_.push_back({MorseEvent::Kind::Cap, i, l ? -1 : 1, 0});
  up_.erase(up_.begin() + i, up_.begin() + i + 2);
  return *this;
}

DiagramBuilder& DiagramBuilder::cross(int i, int sign) {
  if (i < 0 || i + 1 >= static_cast<int>(up_.size())) throw ValidationError("builder: crossing position out of range");
  events_.push_back({MorseEvent::Kind::Cross, i, sign > 0 ? 1 : -1, 0});
  const bool t = up_[static_cast<std::size_t>(i)];
  up_[static_cast<std::size_t>(i)] = up_[static_cast<std::size_t>(i) + 1];
  up_[static_cast<std::size_t>(i) + 1] = t;
  return *this;
}

DiagramBuilder& DiagramBuilder::curl(int i, int sign, bool left_side) {
  if (i < 0 || i >= static_cast<int>(up_.size())) throw ValidationError("builder: curl position out of range");
  const bool o = up_[static_cast<std::size_t>(i)];
  if (left_side) return cup(i, !o).cross(i + 1, sign).cap(i);
  return cup(i + 1, o).cross(i, sign).cap(i + 1);
}

DiagramBuilder& DiagramBuilder::place_right(const MorseDiagram& other) {
  const int off = static_cast<int>(up_.size());
  for (const auto& e : other.events()) {
    switch (e.kind) {
      case MorseEvent::Kind::Cup: cup(e.pos + off, e.sign < 0); break;
      case MorseEvent::Kind::Cap: cap(e.pos + off); break;
      case MorseEvent::Kind::Cross: cross(e.pos + off, e.sign); break;
    }
  }
  return *this;
}

MorseDiagram DiagramBuilder::build(std::string name) const { return MorseDiagram(events_, std::move(name)); }

MorseDiagram braid_closure(int strands, const std::vector<int>& word, std::string name) {
  DiagramBuilder b;
  for (int k = 0; k < strands; ++k) b.cup(k, true);
  for (const int l : word) {
    if (l == 0 || std::abs(l) >= strands) throw ValidationError("braid letter out of range");
    b.cross(std::abs(l) - 1, l > 0 ? 1 : -1);
  }
  for (int k = strands - 1; k >= 0; --k) b.cap(k);
  return b.build(std::move(name));
}

// ---- surgery --------------------------------------------------------------------------------

int SurgeryPresentation::framing(int c) const {
  const auto it = framing_override.find(c);
  return it != framing_override.end() ? it->second : diagram.writhe(c);
}

Matrix SurgeryPresentation::linking_matrix() const {
  Matrix m = diagram.linking_matrix();
  for (int c = 0; c < diagram.components(); ++c) m(c, c) = Scalar(framing(c));
  return m;
}

std::pair<int, int> SurgeryPresentation::signature_counts() const {
  if (diagram.components() == 0) return {0, 0};
  const auto in = inertia(linking_matrix());
  return {in.positive, in.negative};
}

SurgeryPresentation parse_surgery(std::string_view text, std::string name) {
  auto parsed = parse_lines(text, true);
  SurgeryPresentation sp{MorseDiagram(std::move(parsed.events), std::move(name)), {}};
  for (const auto& [line, cf] : parsed.framings) {
    const auto [c, f] = cf;
    if (c < 0 || c >= sp.diagram.components())
      throw ValidationError("line " + std::to_string(line) + ": framing names component " + std::to_string(c) +
                            " but the diagram has " + std::to_string(sp.diagram.components()));
    if (sp.framing_override.count(static_cast<int>(c)))
      throw ValidationError("line " + std::to_string(line) + ": duplicate framing for component " + std::to_string(c));
    sp.framing_override[static_cast<int>(c)] = static_cast<int>(f);
  }
  return sp;
}

// ---- bead conventions and evaluation ------------------------------------------------------------

namespace {

// Convention table.
//  * x+ deposits R = Σ R¹⊗R² with R¹ on its over strand and R² on its under
//    strand; x− deposits R⁻¹ the same way (over strand gets the first leg).
//  * Walking a component from its basepoint, each bead multiplies the word
//    from the left; a bead met while walking down enters as S(bead). Beads
//    passing a counterclockwise turn would take S, a clockwise one S⁻¹; for
//    D(G) these agree, so the table does not distinguish them.
//  * The closed word is preceded by g^{kGPerRotation · rotation}.
//  * A positive kink then evaluates to μ(v⁻¹), so a framing change of ±1
//    appends v^{∓1}.
// Pinned by the move-invariance and S³-calibration tests.
constexpr int kOverLeg = 0;
constexpr int kUnderLeg = 1;
constexpr int kGPerRotation = -1;

std::vector<Letter> reindex(const std::vector<Letter>& ls, int offset) {
  auto out = ls;
  for (auto& l : out)
    if (l.var >= 0) l.var += offset;
  return out;
}

std::vector<Letter> antipode_letters(const std::vector<Letter>& ls) {
  std::vector<Letter> out;
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) out.push_back(antipode_letter(*it));
  return out;
}

struct BeadPlan {
  std::vector<std::string> vars;
  std::vector<std::vector<Letter>> words;
};

BeadPlan plan(const MorseDiagram& d, const TensorWord& r, const TensorWord& r_inv, const std::map<int, int>& twists,
              const EvalOptions& opt) {
  BeadPlan p;
  std::vector<int> base;
  for (int c = 0; c < d.crossings(); ++c) {
    base.push_back(static_cast<int>(p.vars.size()));
    const auto& line = d.events()[d.crossing_info()[static_cast<std::size_t>(c)].event].line;
    const auto& w = d.crossing_info()[static_cast<std::size_t>(c)].tag > 0 ? r : r_inv;
    for (std::size_t j = 0; j < w.vars.size(); ++j) {
      std::string name = "crossing " + std::to_string(c);
      if (line != 0) name += " (line " + std::to_string(line) + ")";
      if (w.vars.size() > 1) name += "." + std::to_string(j);
      p.vars.push_back(std::move(name));
    }
  }
  for (int comp = 0; comp < d.components(); ++comp) {
    std::vector<Letter> word;
    for (const auto& bead : d.beads(comp)) {
      const auto& ci = d.crossing_info()[static_cast<std::size_t>(bead.crossing)];
      int tag = ci.tag;
      bool over = bead.over;
      if (opt.mirror_conventions) {
        tag = -tag;
        over = !over;
      }
      const auto& w = tag > 0 ? r : r_inv;
      auto seg = reindex(w.legs[static_cast<std::size_t>(over ? kOverLeg : kUnderLeg)], base[static_cast<std::size_t>(bead.crossing)]);
      if (bead.down) seg = antipode_letters(seg);
      seg.insert(seg.end(), word.begin(), word.end());
      word = std::move(seg);
    }
    if (!word.empty() && opt.basepoint_shift != 0) {
      const auto k = opt.basepoint_shift % word.size();
      std::rotate(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k), word.end());
    }
    const auto it = twists.find(comp);
    const int t = it == twists.end() ? 0 : it->second;
    const auto tw = t > 0 ? ribbon_inverse_word() : ribbon_word();
    for (int i = 0; i < std::abs(t); ++i) {
      const int off = static_cast<int>(p.vars.size());
      for (const auto& v : tw.vars) p.vars.push_back("twist " + std::to_string(comp) + "." + std::to_string(i) + v);
      const auto seg = reindex(tw.letters, off);
      word.insert(word.end(), seg.begin(), seg.end());
    }
    p.words.push_back(std::move(word));
  }
  return p;
}

}  // namespace

std::vector<std::vector<Letter>> decorate_and_slide(const MorseDiagram& d, const std::map<int, int>& twists,
                                                    const EvalOptions& opt) {
  return plan(d, r_matrix_word(), r_inverse_word(), twists, opt).words;
}

Scalar evaluate_link(const MorseDiagram& d, const DoubleAlgebra& alg, const TraceFunctional& mu,
                     const std::map<int, int>& twists, const EvalOptions& opt) {
  const auto p = plan(d, alg.r_word, alg.r_inv_word, twists, opt);
  StateSum problem{alg.be, p.vars, {}};
  for (int comp = 0; comp < d.components(); ++comp) {
    Element anchor = mu.gz;
    const int r = kGPerRotation * d.rotation_number(comp);
    for (int i = 0; i < std::abs(r); ++i) anchor = (r > 0 ? alg.g : alg.g_inverse).left(anchor);
    problem.legs.push_back(
        Leg{p.words[static_cast<std::size_t>(comp)], std::move(anchor), Leg::Direction::OnRightOf, true});
  }
  if (problem.legs.empty()) return Scalar(1);
  const auto psi_form = alg.s.right_integral;
  Scalar total(0);
  enumerate_states(problem, opt.mode, [&](std::span<const GroupElement>, std::span<const Element> legs) {
    Scalar prod(1);
    for (const auto& l : legs) {
      prod *= apply_form(psi_form, l);
      if (prod.is_zero()) return;
    }
    total += prod;
  });
  return total;
}

ManifoldValue normalize_manifold(const SurgeryPresentation& sp, const DoubleAlgebra& alg, const TraceFunctional& mu,
                                 const EvalOptions& opt) {
  ManifoldValue out;
  std::map<int, int> twists;
  for (int c = 0; c < sp.diagram.components(); ++c) {
    const int t = sp.framing(c) - sp.diagram.writhe(c);
    if (t != 0) twists[c] = t;
  }
  out.raw = evaluate_link(sp.diagram, alg, mu, twists, opt);
  std::tie(out.n_plus, out.n_minus) = sp.signature_counts();
  out.psi_zv = apply_form(alg.s.right_integral, alg.v.right(mu.z));
  out.psi_zv_inverse = apply_form(alg.s.right_integral, alg.v_inverse.right(mu.z));
  if ((out.n_plus > 0 && out.psi_zv.is_zero()) || (out.n_minus > 0 && out.psi_zv_inverse.is_zero()))
    throw NotNormalizable("psi(zv) = " + out.psi_zv.str() + ", psi(zv^-1) = " + out.psi_zv_inverse.str() +
                          " with n+ = " + std::to_string(out.n_plus) + ", n- = " + std::to_string(out.n_minus));
  Scalar n = out.raw;
  for (int i = 0; i < out.n_plus; ++i) n /= out.psi_zv;
  for (int i = 0; i < out.n_minus; ++i) n /= out.psi_zv_inverse;
  out.normalized = n;
  return out;
}

std::size_t lens_hom_count(const GroupBackend& be, int p) {
  const auto* els = be.elements();
  if (!els) throw Unsupported("homomorphism count needs a finite group");
  if (p == 0) return els->size();
  std::size_t n = 0;
  for (const auto& g : *els) {
    GroupElement x = be.identity();
    for (int i = 0; i < std::abs(p); ++i) x = be.mul(x, g);
    if (x == be.identity()) ++n;
  }
  return n;
}

}  // namespace mqg
