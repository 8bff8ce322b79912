#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mqg/double.hpp"

namespace mqg {

/// Σ over indices of leg₁ ⊗ leg₂ ⊗ leg₃ words.
struct Tensor3Word {
  std::vector<std::string> vars;
  std::array<std::vector<Letter>, 3> legs;
};

/// M·t for a three-leg word, evaluated per basis triple.
Tensor3 apply_tensor3_word(const GroupBackend& be, const Tensor3Word& w, const Tensor3& t,
                           EvalMode mode = EvalMode::Propagate);

/// R¹³R²³ and R¹³R¹² built from the two-leg R word.
Tensor3Word r13_r23_word(const TensorWord& r);
Tensor3Word r13_r12_word(const TensorWord& r);

// ---- per-tuple identities ----------------------------------------------------------------

/// The three printed u⁻¹ forms agree, u u⁻¹ = 1 on a, and
/// S²(a) = u a u⁻¹ = S(u)⁻¹ a S(u).
bool check_u_identities(const DoubleAlgebra& d, const Element& a);
/// Δ(u)·t = (R₂₁R₁₂)⁻¹(u⊗u)·t = (u⊗u)(R₂₁R₁₂)⁻¹·t.
bool check_delta_u(const DoubleAlgebra& d, const TensorElement& t);
/// Δ(m)·t = (R₂₁R₁₂)⁻¹(m⊗m)·t.
bool check_delta_ribbon(const DoubleAlgebra& d, const Multiplier& m, const TensorElement& t);

/// R Δ(a)·(x⊗y) = Δᶜᵒᵖ(a) R·(x⊗y).
bool check_qt_intertwines(const DoubleAlgebra& d, const Element& a, const Element& x, const Element& y);
/// (Δ⊗ι)(R)·(Δ(a)(1⊗b) ⊗ c) = R¹³R²³·(Δ(a)(1⊗b) ⊗ c).
bool check_qt_delta_left(const DoubleAlgebra& d, const Element& a, const Element& b, const Element& c);
/// (ι⊗Δ)(R)·(a ⊗ Δ(b)(1⊗c)) = R¹³R¹²·(a ⊗ Δ(b)(1⊗c)).
bool check_qt_delta_right(const DoubleAlgebra& d, const Element& a, const Element& b, const Element& c);

// ---- ribbon elements -----------------------------------------------------------------

/// Def 2.2 conditions for a candidate ribbon multiplier, swept over `basis`.
std::vector<CheckResult> ribbon_axioms(const DoubleAlgebra& d, const Multiplier& v, const std::vector<BasisIndex>& basis,
                                       bool sampled);

/// g = u v⁻¹; asserts g grouplike and g² = S(u)⁻¹u (PreconditionFailed otherwise).
Multiplier g_from_v(const DoubleAlgebra& d, const std::vector<BasisIndex>& basis);
/// v = u g⁻¹ after checking every hypothesis on g; asserts the ribbon axioms.
Multiplier v_from_g(const DoubleAlgebra& d, const Multiplier& g, const std::vector<BasisIndex>& basis);

/// g = (uS(u)⁻¹)^{n+1} when |G(M(A))| = 2n+1. Throws CorollaryInapplicable
/// for an even count.
Multiplier g_from_odd_grouplikes(const DoubleAlgebra& d);

/// Central grouplikes E with E² = 1, S(E) = E, ε(E) = 1 (finite only).
std::vector<Element> enumerate_E(const DoubleAlgebra& d);

/// Everything in the ribbon section, as named checks. Finite-only parts are
/// skipped on infinite groups with a note.
std::vector<CheckResult> ribbon_suite(const DoubleAlgebra& d, const std::vector<BasisIndex>& basis, bool sampled);

}  // namespace mqg
