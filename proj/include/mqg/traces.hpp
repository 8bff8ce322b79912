#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mqg/ribbon.hpp"

namespace mqg {

/// A finite, duplicate-free set of pairs (g, h) ∈ G×G.
class SigmaSet {
 public:
  using Pair = std::pair<GroupElement, GroupElement>;

  SigmaSet(const GroupBackend* be, std::vector<Pair> pairs);
  /// H×K from generators of H and K (each closed into a subgroup, capped).
  static SigmaSet product(const GroupBackend* be, const ElementSet& h_gens, const ElementSet& k_gens,
                          std::size_t cap = 4096);

  [[nodiscard]] const GroupBackend* backend() const { return be_; }
  [[nodiscard]] const std::vector<Pair>& pairs() const { return pairs_; }
  [[nodiscard]] bool contains(const Pair& p) const;
  [[nodiscard]] std::size_t size() const { return pairs_.size(); }

 private:
  const GroupBackend* be_;
  std::vector<Pair> pairs_;  // sorted
};

/// z_Σ = Σ_{(g,h)∈Σ} g δ_h.
Element z_from_sigma(const SigmaSet& sig);
/// Σ fixed by (g,h) ↦ (g⁻¹, g h⁻¹ g⁻¹).
bool sigma_involution_closed(const SigmaSet& sig);
/// Σ closed under ⟨π₁(Σ)⟩ acting by (g,h)·γ = (gγ, γ⁻¹hγ), and every fiber
/// π₁⁻¹(g) fixed by h ↦ g⁻¹hμ⁻¹g for all μ ∈ π₂(Σ). Throws ClosureExceedsCap.
bool sigma_action_closed(const SigmaSet& sig, std::size_t cap = 4096);

struct ZConditions {
  bool s_invariant = false;
  bool central = false;
  bool coproduct = false;  ///< (1⊗z)Δ(z) = z⊗z on basis pairs
  std::string witness;     ///< first failure, if any
  [[nodiscard]] bool all() const { return s_invariant && central && coproduct; }
};

ZConditions z_conditions_check(const DoubleAlgebra& d, const Element& z, const std::vector<BasisIndex>& basis);

/// μ_z = ψ(g z ·).
struct TraceFunctional {
  const DoubleAlgebra* d = nullptr;
  Element z;
  Element gz;
  [[nodiscard]] Scalar operator()(const Element& x) const;
};

/// Throws PreconditionFailed when z is not central on `basis`.
TraceFunctional mu_build(const DoubleAlgebra& d, const Element& z, const std::vector<BasisIndex>& basis);
bool trace_check(const TraceFunctional& mu, const Element& a, const Element& b);
/// First basis element with μ(S(a)) ≠ μ(a).
std::optional<BasisIndex> s_symmetry_witness(const TraceFunctional& mu, const std::vector<BasisIndex>& basis);
/// First basis pair with μ(ab) ≠ μ(ba), for any functional z (central or not).
std::optional<std::pair<BasisIndex, BasisIndex>> trace_witness(const DoubleAlgebra& d, const Element& z,
                                                               const std::vector<BasisIndex>& basis);
/// The Gram matrix (a,b) ↦ ψ(ab) over the full basis is nonsingular (finite only).
bool psi_faithful(const DoubleAlgebra& d);

/// a ◀ ψ(b·) = (ψ⊗ι)((b⊗1)Δ(a)).
Element mod_action(const DoubleAlgebra& d, const Element& a, const Element& b);
/// a ◀ (ψ(b·)ψ(c·)) with the dual product expanded through Δ(a) = Δ(a)(1⊗1)
/// (finite only).
Element mod_action_product(const DoubleAlgebra& d, const Element& a, const Element& b, const Element& c);

/// X_z, Y_z and the kernels S(u) ◀ μ_z, u⁻¹ ◀ μ_z they are built from.
struct XY {
  Multiplier su_action;
  Multiplier uinv_action;
  Multiplier X;
  Multiplier Y;
  Scalar psi_zv;
  Scalar psi_zv_inverse;
};

XY build_XY(const DoubleAlgebra& d, const Element& z);
/// For z ∈ M(A): finite backends reduce to z·1 ∈ A; otherwise the ψ-leg has
/// no finite anchor and UnlocalizedSum is thrown.
XY build_XY(const DoubleAlgebra& d, const Multiplier& z);

/// zX_z = zY_z = 0 and the two n-fold coproduct identities on every basis
/// n-tuple, n ∈ {2, 3}. The Y-side identity is checked with z ⊗ Δ⁽ⁿ⁻¹⁾(v⁻¹Y_z)
/// on the right; the note records whether the v⁻¹X_z right-hand side holds too.
std::vector<CheckResult> prop32_check(const DoubleAlgebra& d, const Element& z, int n,
                                      const std::vector<BasisIndex>& basis, bool sampled);

/// Left cointegral t (a t = ε(a) t), normalized by ψ(t) = 1, also checked to
/// be a right cointegral. Finite only.
Element cointegral_z(const DoubleAlgebra& d);

/// Everything for one z: conditions, trace and S-symmetry sweeps, g² = 1,
/// X/Y, and the n = 2, 3 identities.
std::vector<CheckResult> traces_suite(const DoubleAlgebra& d, const Element& z, const std::vector<BasisIndex>& basis,
                                      bool sampled);

}  // namespace mqg
