#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mqg/double.hpp"
#include "mqg/linalg.hpp"

namespace mqg {

/// A finite-dimensional left module over D(G), G finite: ρ(x) for every
/// basis x of D(G).
struct ModuleRep {
  const GroupBackend* be = nullptr;
  Eigen::Index dim = 0;
  std::map<BasisIndex, Matrix> action;
  std::string name;

  [[nodiscard]] const Matrix& rho(const BasisIndex& x) const;
  [[nodiscard]] Matrix rho(const Element& x) const;
};

/// Left regular representation on the basis order of full_basis.
ModuleRep regular_module(const DoubleAlgebra& d);
/// The one-dimensional module a ↦ ε(a).
ModuleRep trivial_module(const DoubleAlgebra& d);

/// C[G] with g·x = gxg⁻¹ and δ_h·x = [x = h] x; dimension |G|.
ModuleRep adjoint_module(const DoubleAlgebra& d);

/// JSON: {"dimension": n, "action": [{"basis": "[g;h]", "matrix": [["p/q", ...], ...]}, ...]}.
/// Every basis index must be present. Throws ParseError / ValidationError.
ModuleRep module_from_json(const DoubleAlgebra& d, const std::string& text);

/// First basis pair with ρ(x)ρ(y) ≠ ρ(xy).
std::optional<std::pair<BasisIndex, BasisIndex>> module_law_witness(const ModuleRep& m);
/// A·M = M: the vectors ρ(x)e_k span the whole space.
bool is_unital(const ModuleRep& m);

/// f acting on M through m = Σ aᵢ·mᵢ. `route` 0 decomposes through the unit
/// of D(G); route 1 solves each basis vector against the spanning family
/// {ρ(x)e_k}. Throws PreconditionFailed for a non-unital module.
Matrix extend_to_multiplier(const ModuleRep& m, const Multiplier& f, int route = 0);

/// a·(m⊗n) = a₍₁₎m ⊗ a₍₂₎n with Δ(a) read off Δ(a)(1⊗1).
ModuleRep tensor_module(const DoubleAlgebra& d, const ModuleRep& m, const ModuleRep& n);
/// ρ(S a)ᵀ and ρ(S⁻¹ a)ᵀ.
ModuleRep dual_left(const DoubleAlgebra& d, const ModuleRep& m);
ModuleRep dual_right(const DoubleAlgebra& d, const ModuleRep& m);

/// b_M: k → M⊗M* (column vector) and d_M: M*⊗M → k (row vector); the
/// right-dual pair b′: k → *M⊗M and d′: M⊗*M → k.
Matrix coevaluation(const ModuleRep& m);
Matrix evaluation(const ModuleRep& m);
Matrix coevaluation_right(const ModuleRep& m);
Matrix evaluation_right(const ModuleRep& m);

/// Permutation M⊗N → N⊗M.
Matrix flip_matrix(Eigen::Index dm, Eigen::Index dn);
/// c_{M,N}(m⊗n) = R²n ⊗ R¹m.
Matrix braiding(const DoubleAlgebra& d, const ModuleRep& m, const ModuleRep& n);
/// θ_M = ρ(v⁻¹), or ρ(twist) when a substitute is given.
Matrix twist(const DoubleAlgebra& d, const ModuleRep& m, const Multiplier* twist_override = nullptr);

/// Central idempotents Σ_{h∈C} eδ_h for every nonempty union C of conjugacy
/// classes (capped at `max_count`, smallest unions first).
std::vector<Element> central_idempotents(const DoubleAlgebra& d, std::size_t max_count = 64);

/// Rigidity: both zig-zags for the left and right duals, and b, d, b′, d′
/// are module maps.
std::vector<CheckResult> rigidity_check(const DoubleAlgebra& d, const ModuleRep& m);
/// Braiding is a module map (RΔ = ΔᶜᵒᵖR), natural for the idempotent
/// family; θ_{M⊗N} = (θ_M⊗θ_N)c_{N,M}c_{M,N}; (θ_M)* = θ_{M*}; θ natural.
std::vector<CheckResult> ribbon_category_check(const DoubleAlgebra& d, const ModuleRep& m, const ModuleRep& n,
                                               const Multiplier* twist_override = nullptr);
/// Multiplier matrices compose: ρ(fg) = ρ(f)ρ(g) on the named catalogue, and
/// both extension routes agree.
std::vector<CheckResult> extension_check(const DoubleAlgebra& d, const ModuleRep& m);

/// The shipped family: regular modules and the regular tensor square.
std::vector<CheckResult> repcat_suite(const DoubleAlgebra& d, bool include_tensor_square);
/// The same checks with `m` in place of the regular module.
std::vector<CheckResult> repcat_suite(const DoubleAlgebra& d, const ModuleRep& m, bool include_tensor_square);

}  // namespace mqg
