#include <cstdlib>

#include "mqg/hennings.hpp"

namespace mqg {

namespace {

SurgeryPresentation sp(MorseDiagram d) { return {std::move(d), {}}; }

/// Unknot with |f| kinks of sign f.
MorseDiagram framed_unknot(int f, std::string name) {
  DiagramBuilder b;
  b.cup(0, true);
  for (int i = 0; i < std::abs(f); ++i) b.curl(0, f > 0 ? 1 : -1);
  b.cap(0);
  return b.build(std::move(name));
}

/// Hopf link (linking number +1) with kinks on each component.
MorseDiagram framed_hopf(int fk, int fc, std::string name) {
  DiagramBuilder b;
  b.cup(0, true).cup(1, true).cross(0, 1).cross(0, 1);
  for (int i = 0; i < std::abs(fk); ++i) b.curl(0, fk > 0 ? 1 : -1);
  for (int i = 0; i < std::abs(fc); ++i) b.curl(1, fc > 0 ? 1 : -1);
  b.cap(1).cap(0);
  return b.build(std::move(name));
}

/// Three nested circles [U,D,U,D,U,D]; `mid` crossings act on the
/// antiparallel strands 1..3.
MorseDiagram antiparallel(const std::vector<std::pair<int, int>>& mid, std::string name) {
  DiagramBuilder b;
  b.cup(0, true).cup(2, true).cup(4, true);
  for (const auto& [pos, sign] : mid) b.cross(pos, sign);
  b.cap(0).cap(0).cap(0);
  return b.build(std::move(name));
}

}  // namespace

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::R2: return "R2";
    case MoveKind::R3: return "R3";
    case MoveKind::FramedR1: return "framedR1";
    case MoveKind::DistantSwap: return "distant-swap";
    case MoveKind::FennRourke: return "FennRourke";
  }
  return "?";
}

std::vector<CatalogueEntry> builtin_diagrams() {
  std::vector<CatalogueEntry> out;
  for (int f = -2; f <= 2; ++f) {
    const std::string name = "unknot[" + std::string(f > 0 ? "+" : "") + std::to_string(f) + "]";
    out.push_back({name, sp(framed_unknot(f, name)), f == 0 ? std::optional<int>(0) : std::nullopt});
  }
  out.push_back({"hopf", sp(braid_closure(2, {1, 1}, "hopf")), std::nullopt});
  out.push_back({"trefoil+", sp(braid_closure(2, {1, 1, 1}, "trefoil+")), std::nullopt});
  out.push_back({"trefoil-", sp(braid_closure(2, {-1, -1, -1}, "trefoil-")), std::nullopt});
  out.push_back({"figure-eight", sp(braid_closure(3, {1, -2, 1, -2}, "figure-eight")), std::nullopt});
  for (int p = 2; p <= 5; ++p) {
    const std::string name = "L(" + std::to_string(p) + ",1)";
    out.push_back({name, sp(framed_unknot(p, name)), p});
  }
  // Right-handed trefoil (writhe 3) with two negative stabilizations: framing +1.
  out.push_back({"poincare", sp(braid_closure(4, {1, 1, 1, -2, -3}, "poincare")), std::nullopt});
  return out;
}

std::vector<MovePair> builtin_move_pairs() {
  std::vector<MovePair> out;
  auto add = [&](std::string name, MoveKind k, MorseDiagram a, MorseDiagram b) {
    out.push_back({std::move(name), k, sp(std::move(a)), sp(std::move(b))});
  };

  add("R2 on one unknot", MoveKind::R2, braid_closure(2, {1}, "kink"), braid_closure(2, {1, -1, 1}, "kink+R2"));
  add("R2 parallel unlink", MoveKind::R2, braid_closure(2, {}, "unlink"), braid_closure(2, {1, -1}, "unlink+R2"));
  add("R2 antiparallel", MoveKind::R2, antiparallel({}, "circles"), antiparallel({{1, 1}, {1, -1}}, "circles+R2"));
  add("R2 antiparallel mirrored", MoveKind::R2, antiparallel({}, "circles"),
      antiparallel({{2, -1}, {2, 1}}, "circles+R2'"));

  add("R3 positive", MoveKind::R3, braid_closure(3, {1, 2, 1}, "s1s2s1"), braid_closure(3, {2, 1, 2}, "s2s1s2"));
  add("R3 mixed", MoveKind::R3, braid_closure(3, {1, 2, -1}, "s1s2s1^-1"),
      braid_closure(3, {-2, 1, 2}, "s2^-1s1s2"));
  add("R3 antiparallel", MoveKind::R3, antiparallel({{1, 1}, {2, 1}, {1, 1}}, "ap s1s2s1"),
      antiparallel({{2, 1}, {1, 1}, {2, 1}}, "ap s2s1s2"));
  add("R3 antiparallel mixed", MoveKind::R3, antiparallel({{1, 1}, {2, 1}, {1, -1}}, "ap s1s2s1^-1"),
      antiparallel({{2, -1}, {1, 1}, {2, 1}}, "ap s2^-1s1s2"));

  {
    DiagramBuilder b;
    b.cup(0, true).curl(0, 1).curl(0, -1, true).cap(0);
    add("curl pair cancels", MoveKind::FramedR1, framed_unknot(0, "unknot[0]"), b.build("unknot+curl pair"));
    DiagramBuilder c;
    c.cup(0, true).curl(0, -1, true).curl(0, 1).curl(0, 1).cap(0);
    add("curl pair cancels beside a kink", MoveKind::FramedR1, framed_unknot(1, "unknot[+1]"),
        c.build("unknot[+1]+curl pair"));
  }

  {
    const auto hopf = braid_closure(2, {1, 1}, "hopf");
    DiagramBuilder a;
    a.cup(0, true).cup(1, true).cross(0, 1).cross(0, 1).cross(0, 1).place_right(hopf).cap(1).cap(0);
    DiagramBuilder b;
    b.cup(0, true).cup(1, true).place_right(hopf).cross(0, 1).cross(0, 1).cross(0, 1).cap(1).cap(0);
    out.push_back({"trefoil and hopf commute", MoveKind::DistantSwap, sp(a.build("trefoil|hopf")),
                   sp(b.build("hopf|trefoil"))});
    DiagramBuilder c;
    c.cup(0, false).curl(0, 1).place_right(hopf).cap(0);
    DiagramBuilder d;
    d.cup(0, false).place_right(hopf).curl(0, 1).cap(0);
    out.push_back({"kink and hopf commute", MoveKind::DistantSwap, sp(c.build("kink|hopf")),
                   sp(d.build("hopf|kink"))});
  }

  // p-framed unknot against (p+c)-framed unknot linked once with a c-framed unknot.
  for (const auto& [p, c] : std::vector<std::pair<int, int>>{{0, 1}, {0, -1}, {1, -1}, {-1, 1}, {2, 1}, {1, 1}}) {
    const std::string tag = "p=" + std::to_string(p) + ",c=" + std::to_string(c);
    add("FR " + tag, MoveKind::FennRourke, framed_unknot(p, "unknot[" + std::to_string(p) + "]"),
        framed_hopf(p + c, c, "hopf[" + std::to_string(p + c) + "," + std::to_string(c) + "]"));
  }
  {
    DiagramBuilder b;
    b.cup(0, true).cap(0).place_right(framed_unknot(1, "u"));
    add("FR distant blow-up", MoveKind::FennRourke, framed_unknot(0, "unknot[0]"), b.build("unknot[0]|unknot[+1]"));
    add("S3 calibration +1", MoveKind::FennRourke, MorseDiagram({}, "empty"), framed_unknot(1, "unknot[+1]"));
    add("S3 calibration -1", MoveKind::FennRourke, MorseDiagram({}, "empty"), framed_unknot(-1, "unknot[-1]"));
  }
  // Chain K1–C–K2 with C framed +1; blowing C down links K1 and K2 once
  // (negatively) and lowers both framings by one.
  out.push_back({"FR chain blow-down", MoveKind::FennRourke,
                 {braid_closure(3, {1, 1, 2, 2}, "chain[2,1,2]"), {{0, 2}, {1, 1}, {2, 2}}},
                 {braid_closure(2, {-1, -1}, "hopf-[1,1]"), {{0, 1}, {1, 1}}}});
  return out;
}

bool move_check(const MovePair& pair, const DoubleAlgebra& alg, const TraceFunctional& mu, const EvalOptions& opt) {
  if (pair.kind == MoveKind::FennRourke)
    return normalize_manifold(pair.left, alg, mu, opt).normalized ==
           normalize_manifold(pair.right, alg, mu, opt).normalized;
  return evaluate_link(pair.left.diagram, alg, mu, {}, opt) == evaluate_link(pair.right.diagram, alg, mu, {}, opt);
}

std::pair<std::size_t, std::size_t> differing_window(const MorseDiagram& a, const MorseDiagram& b) {
  const auto& ea = a.events();
  const auto& eb = b.events();
  std::size_t pre = 0;
  while (pre < ea.size() && pre < eb.size() && ea[pre] == eb[pre]) ++pre;
  std::size_t suf = 0;
  while (suf < ea.size() - pre && suf < eb.size() - pre && ea[ea.size() - 1 - suf] == eb[eb.size() - 1 - suf]) ++suf;
  return {ea.size() - pre - suf, eb.size() - pre - suf};
}

}  // namespace mqg
