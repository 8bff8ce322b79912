#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mqg/algebra.hpp"
#include "mqg/linalg.hpp"

namespace mqg {

/// Structure maps of a multiplier Hopf algebra on the basis of D(G)-type
/// algebras. Δ is only reachable through the cancellation maps, so every
/// value is finitely supported. Members are plain function objects so tests
/// can corrupt one of them and watch a check fail.
struct MhaStructure {
  using PairMap = std::function<TensorElement(const BasisIndex&, const BasisIndex&)>;
  using Map = std::function<Element(const BasisIndex&)>;
  using Form = std::function<Scalar(const BasisIndex&)>;

  const GroupBackend* backend = nullptr;
  PairMap t1;  ///< Δ(a)(1⊗b)
  PairMap t2;  ///< (a⊗1)Δ(b)
  PairMap t3;  ///< Δ(a)(b⊗1)
  PairMap t4;  ///< (1⊗a)Δ(b)
  PairMap t1_inverse;  ///< a⊗b ↦ a₁ ⊗ S(a₂)b
  PairMap t2_inverse;  ///< a⊗b ↦ aS(b₁) ⊗ b₂
  Form counit;
  Form left_integral;   ///< φ
  Form right_integral;  ///< ψ
  Map antipode;
  Map antipode_inverse;
  std::optional<Multiplier> modular;  ///< δ
  /// Any element with ε = 1; ε(m) is read off as ε(m·probe).
  Element counit_probe;
};

// ---- bilinear extensions ------------------------------------------------------------

TensorElement cancel(const MhaStructure::PairMap& map, const Element& a, const Element& b);
TensorElement cancel(const MhaStructure::PairMap& map, const TensorElement& t);
Element apply_map(const MhaStructure::Map& map, const Element& x);
Scalar apply_form(const MhaStructure::Form& form, const Element& x);

/// Contracts one leg of a two-leg tensor with a functional.
Element contract_leg(const MhaStructure::Form& form, const TensorElement& t, std::size_t leg);
/// m(x⊗y) = xy, extended linearly.
Element multiply_out(const TensorElement& t);
/// x acting on one leg of t from the left, resp. right.
TensorElement mul_leg_left(const Element& x, std::size_t leg, const TensorElement& t);
TensorElement mul_leg_right(const TensorElement& t, std::size_t leg, const Element& x);

// ---- structure maps on multipliers ------------------------------------------------

/// Δ(m)·t, evaluated through T₁⁻¹ so only finite sums occur.
TensorElement coproduct_left(const MhaStructure& s, const Multiplier& m, const TensorElement& t);
/// t·Δ(m), through T₂⁻¹.
TensorElement coproduct_right(const MhaStructure& s, const TensorElement& t, const Multiplier& m);
/// Δ⁽³⁾(m)·(a⊗b⊗c) = (ι⊗Δ)Δ(m)·(a⊗b⊗c).
Tensor3 coproduct3_left(const MhaStructure& s, const Multiplier& m, const Tensor3& t);
/// S(m) defined by S(m)a = S(S⁻¹(a)m), aS(m) = S(mS⁻¹(a)).
Multiplier antipode_multiplier(const MhaStructure& s, const Multiplier& m);
Multiplier antipode_inverse_multiplier(const MhaStructure& s, const Multiplier& m);
/// ε(m) = ε(m·probe).
Scalar counit_multiplier(const MhaStructure& s, const Multiplier& m);

/// Grouplike in the operational sense: Δ(m)(a⊗b) = (m⊗m)(a⊗b)-compatible on
/// cancellations, i.e. T₁(ma, b) = (m⊗m)T₁(a, b), and ε(ma) = ε(a).
std::optional<std::pair<BasisIndex, BasisIndex>> grouplike_witness(const MhaStructure& s, const Multiplier& m,
                                                                   const std::vector<BasisIndex>& basis);

// ---- verification ---------------------------------------------------------------

/// Outcome of one named identity swept over basis tuples.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  /// Failing tuple, formatted; empty when passed.
  std::string witness;
  /// True when the sweep covered a finite ball of an infinite group.
  bool sampled = false;
  std::string note;
};

/// Sweeps `fails` over all k-tuples of `basis`, recording the first failing
/// tuple in deterministic order.
CheckResult sweep_check(std::string name, const GroupBackend& be, const std::vector<BasisIndex>& basis, int arity,
                        const std::function<bool(std::span<const BasisIndex>)>& holds);

bool check_coassociativity(const MhaStructure& s, const Element& a, const Element& b, const Element& c);
bool check_counit_antipode(const MhaStructure& s, const Element& a, const Element& b);
/// S bijective on the sample and T₃, T₄ consistent with T₁, T₂ on the triple.
bool check_regular(const MhaStructure& s, const Element& a, const Element& b, const Element& c);
bool check_integrals(const MhaStructure& s, const Element& a, const Element& b);
bool check_modular(const MhaStructure& s, const Element& a);
bool check_counimodular(const MhaStructure& s, const Element& a, const Element& b);

/// Finite basis in canonical order.
std::vector<BasisIndex> full_basis(const GroupBackend& be);
/// Basis with group parts drawn from `sweep_elements(be, radius)`.
std::vector<BasisIndex> ball_basis(const GroupBackend& be, int radius);

/// Coordinates of an element in a finite basis; throws if the support leaves it.
Vector coordinates(const Element& x, const std::vector<BasisIndex>& basis);
Element from_coordinates(const GroupBackend* be, const Vector& c, const std::vector<BasisIndex>& basis);

/// Right cointegral t of A (t y = ε(y) t for all y) normalized by φ(t) = 1.
/// It realizes the dual right integral: ψ̂(φ(·a)) = φ(t a). Finite only.
Element dual_right_integral_point(const MhaStructure& s);
/// ψ̂(φ(·a)) == ε(a), with ψ̂ realized by `t` from dual_right_integral_point.
bool dual_integral_eval(const MhaStructure& s, const Element& t, const Element& a);

/// Solves φ(S(a)) = φ(aδ) for δ ∈ A over the basis. Finite only; nullopt
/// when the solution is missing or not unique.
std::optional<Element> solve_modular_element(const MhaStructure& s);

/// Runs the structure suite on `basis` (all basis elements for finite
/// backends, a ball for infinite ones).
std::vector<CheckResult> structure_suite(const MhaStructure& s, const std::vector<BasisIndex>& basis, bool sampled);

}  // namespace mqg
