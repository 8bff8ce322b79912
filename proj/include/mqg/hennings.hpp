#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqg/linalg.hpp"
#include "mqg/traces.hpp"

namespace mqg {

// ---- Morse diagrams -------------------------------------------------------------------

/// One event of a Morse presentation, read bottom to top.
///
/// cup i:  a minimum creating strands i, i+1.  cap i: a maximum joining them.
/// Tag +1 is a counterclockwise turn (cup: left strand down, right up;
/// cap: left down, right up); tag −1 is clockwise. x± i crosses strands i
/// and i+1; for x+ the strand running bottom-left to top-right is over,
/// for x− the one running bottom-right to top-left.
struct MorseEvent {
  enum class Kind { Cup, Cap, Cross };
  Kind kind = Kind::Cup;
  int pos = 0;
  int sign = 1;
  std::size_t line = 0;  ///< source line, 0 if built in code

  friend bool operator==(const MorseEvent& a, const MorseEvent& b) {
    return a.kind == b.kind && a.pos == b.pos && a.sign == b.sign;
  }
};

/// A crossing met while walking a component.
struct Bead {
  int crossing = 0;
  bool over = false;
  bool down = false;  ///< walked downward at the crossing
};

struct CrossingInfo {
  std::size_t event = 0;
  int tag = 1;          ///< x+ or x−
  int over_component = 0;
  int under_component = 0;
  int writhe_sign = 1;  ///< oriented crossing sign
};

class MorseDiagram {
 public:
  MorseDiagram() = default;
  /// Validates; throws ValidationError naming the violated invariant.
  explicit MorseDiagram(std::vector<MorseEvent> events, std::string name = {});
  /// Line format `cup+ i | cup- i | cap+ i | cap- i | x+ i | x- i`, `#`
  /// comments. Throws ParseError (with line) or ValidationError.
  static MorseDiagram parse(std::string_view text, std::string name = {});

  [[nodiscard]] const std::vector<MorseEvent>& events() const { return events_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int components() const { return static_cast<int>(walks_.size()); }
  [[nodiscard]] int crossings() const { return static_cast<int>(crossings_.size()); }
  [[nodiscard]] const std::vector<CrossingInfo>& crossing_info() const { return crossings_; }
  /// Beads of component c in walking order from its basepoint (just after its
  /// first cup).
  [[nodiscard]] const std::vector<Bead>& beads(int c) const { return walks_.at(static_cast<std::size_t>(c)); }
  /// Signed count of counterclockwise half turns, halved.
  [[nodiscard]] int rotation_number(int c) const;
  [[nodiscard]] int writhe(int c) const;
  [[nodiscard]] int linking_number(int a, int b) const;
  /// Diagonal: blackboard writhe; off-diagonal: linking numbers.
  [[nodiscard]] Matrix linking_matrix() const;

  /// Every crossing sign and cup/cap tag swapped.
  [[nodiscard]] MorseDiagram mirror() const;
  [[nodiscard]] std::string to_text() const;

 private:
  void trace();

  std::vector<MorseEvent> events_;
  std::string name_;
  std::vector<std::vector<Bead>> walks_;
  std::vector<int> rotation2_;
  std::vector<CrossingInfo> crossings_;
};

/// Builds diagrams while tracking strand orientations, so tags are implied.
class DiagramBuilder {
 public:
  /// Strand orientations bottom-up: true = up.
  [[nodiscard]] const std::vector<bool>& strands() const { return up_; }
  /// New cup at i whose left strand points up (clockwise) or down.
  DiagramBuilder& cup(int i, bool left_up);
  DiagramBuilder& cap(int i);
  DiagramBuilder& cross(int i, int sign);
  /// A kink of writhe `sign` on strand i (cup, crossing, cap). The loop sits
  /// right of the strand by default, left of it with `left_side`; the two
  /// sides turn in opposite senses.
  DiagramBuilder& curl(int i, int sign, bool left_side = false);
  /// Events of `other` on strands to the right of the current ones. Only
  /// valid while `other` is self-contained (starts and ends empty).
  DiagramBuilder& place_right(const MorseDiagram& other);
  [[nodiscard]] MorseDiagram build(std::string name) const;

 private:
  std::vector<MorseEvent> events_;
  std::vector<bool> up_;
};

/// Closure of a braid on n strands: letters ±(i+1) mean σᵢ^{±1}.
MorseDiagram braid_closure(int strands, const std::vector<int>& word, std::string name);

// ---- surgery presentations -------------------------------------------------------------

struct SurgeryPresentation {
  MorseDiagram diagram;
  /// framing per component; defaults to blackboard writhe
  std::map<int, int> framing_override;

  [[nodiscard]] int framing(int c) const;
  [[nodiscard]] Matrix linking_matrix() const;
  /// Positive and negative eigenvalue counts of the linking matrix.
  [[nodiscard]] std::pair<int, int> signature_counts() const;
};

/// Diagram lines plus `framing <component> <integer>` lines.
SurgeryPresentation parse_surgery(std::string_view text, std::string name = {});

// ---- evaluation --------------------------------------------------------------------------

struct EvalOptions {
  EvalMode mode = EvalMode::Propagate;
  /// Rotates every component word by this many letters (basepoint change).
  std::size_t basepoint_shift = 0;
  /// Evaluates with the crossing table mirrored (x+ read with the x− rule and
  /// vice versa); equals the plain evaluation of the mirrored diagram.
  bool mirror_conventions = false;
};

/// Per-component letter words over crossing indices "crossing i", with the
/// `twists[c]` extra letters v^{∓1} appended (framing change ±1 each).
std::vector<std::vector<Letter>> decorate_and_slide(const MorseDiagram& d, const std::map<int, int>& twists = {},
                                                    const EvalOptions& opt = {});

/// Σ over crossing indices of Π_components μ_z(word).
Scalar evaluate_link(const MorseDiagram& d, const DoubleAlgebra& alg, const TraceFunctional& mu,
                     const std::map<int, int>& twists = {}, const EvalOptions& opt = {});

struct ManifoldValue {
  Scalar raw;
  Scalar normalized;
  int n_plus = 0;
  int n_minus = 0;
  Scalar psi_zv;
  Scalar psi_zv_inverse;
};

/// raw · ψ(zv)^{−n₊} · ψ(zv⁻¹)^{−n₋}; throws NotNormalizable when a needed
/// constant vanishes.
ManifoldValue normalize_manifold(const SurgeryPresentation& sp, const DoubleAlgebra& alg, const TraceFunctional& mu,
                                 const EvalOptions& opt = {});

// ---- catalogue and moves -------------------------------------------------------------------

enum class MoveKind { R2, R3, FramedR1, DistantSwap, FennRourke };
std::string to_string(MoveKind k);

struct CatalogueEntry {
  std::string name;
  SurgeryPresentation surgery;
  /// For lens spaces L(p,1) and S¹×S²: p (0 for S¹×S²); otherwise nullopt.
  std::optional<int> lens_p;
};

struct MovePair {
  std::string name;
  MoveKind kind;
  SurgeryPresentation left;
  SurgeryPresentation right;
};

std::vector<CatalogueEntry> builtin_diagrams();
std::vector<MovePair> builtin_move_pairs();

/// Equal link values (regular-isotopy kinds) or equal normalized values
/// (Fenn–Rourke).
bool move_check(const MovePair& pair, const DoubleAlgebra& alg, const TraceFunctional& mu, const EvalOptions& opt = {});

/// Lengths of the differing middle windows after stripping the common event
/// prefix and suffix.
std::pair<std::size_t, std::size_t> differing_window(const MorseDiagram& a, const MorseDiagram& b);

/// |{g ∈ G : gᵖ = e}| (p = 0 gives |G|). Finite only.
std::size_t lens_hom_count(const GroupBackend& be, int p);

}  // namespace mqg
