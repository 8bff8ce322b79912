#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mqg/mha.hpp"
#include "mqg/statesum.hpp"

namespace mqg {

/// Formal element of M(A⊗A) given by its actions on A⊗A.
struct TensorMultiplier {
  using Kernel = std::function<TensorElement(const TensorElement&)>;
  std::string name;
  Kernel left;   ///< T ↦ M T
  Kernel right;  ///< T ↦ T M
};

/// Σ over the indices of (product of letters), a formal element of M(A).
struct Word {
  std::vector<std::string> vars;
  std::vector<Letter> letters;
};

/// Σ over the indices of (leg 1 word) ⊗ (leg 2 word).
struct TensorWord {
  std::vector<std::string> vars;
  std::array<std::vector<Letter>, 2> legs;
};

/// S on words: S(L₁⋯Lₙ) = S(Lₙ)⋯S(L₁).
Word antipode_word(const Word& w);
/// Concatenation with the indices of `b` renamed apart.
Word word_product(const Word& a, const Word& b);
TensorWord tensor_word_product(const TensorWord& a, const TensorWord& b);
/// Leg swap τ.
TensorWord flip_word(const TensorWord& w);

Multiplier word_multiplier(const GroupBackend& be, std::string name, const Word& w,
                           EvalMode mode = EvalMode::Propagate);
TensorMultiplier tensor_word_multiplier(const GroupBackend& be, std::string name, const TensorWord& w,
                                        EvalMode mode = EvalMode::Propagate);

/// m₁ ⊗ m₂ acting leg-wise.
TensorMultiplier tensor_of(const Multiplier& m1, const Multiplier& m2);
/// a b as multipliers of A⊗A.
TensorMultiplier tensor_compose(const TensorMultiplier& a, const TensorMultiplier& b);
/// Expands a tensor multiplier into A⊗A for finite groups: M·(1⊗1).
TensorElement tensor_to_element(const GroupBackend& be, const TensorMultiplier& m);

/// R = Σ_k k ⊗ δ_k and R⁻¹ = Σ_k k⁻¹ ⊗ δ_k as letter words.
TensorWord r_matrix_word();
TensorWord r_inverse_word();
/// The printed closed form v = Σ_k k⁻¹ δ_k and its inverse Σ_k k δ_k.
Word ribbon_word();
Word ribbon_inverse_word();

/// D(G) with its structure maps and named multipliers.
struct DoubleAlgebra {
  Backend backend;
  const GroupBackend* be = nullptr;
  MhaStructure s;
  EvalMode mode = EvalMode::Propagate;

  TensorWord r_word;
  TensorWord r_inv_word;
  TensorMultiplier R;
  TensorMultiplier R_inverse;

  /// ua = S(R²)R¹a
  Word u_word;
  /// Three printed forms: S⁻²(R²)R¹, S⁻¹(R²)S(R¹), R²S²(R¹).
  std::array<Word, 3> u_inverse_words;
  Multiplier u;
  Multiplier u_inverse;
  Multiplier S_u;
  Multiplier S_u_inverse;
  Multiplier v;
  Multiplier v_inverse;
  Multiplier g;  ///< u v⁻¹
  Multiplier g_inverse;
  Multiplier one;

  /// Solved modular element (finite backends only).
  std::optional<Element> modular_solved;
  std::string modular_note;
};

/// Builds D(G). `mode` selects how word multipliers are evaluated; BruteForce
/// is only valid for finite groups and serves as an oracle.
DoubleAlgebra make_double(Backend backend, EvalMode mode = EvalMode::Propagate);

/// D(G) with a substitute R (test fixtures); u and its relatives are
/// rebuilt from it, v stays the printed closed form.
DoubleAlgebra make_double_with_r(Backend backend, TensorWord r, TensorWord r_inv, EvalMode mode = EvalMode::Propagate);

/// The bare D(G) structure maps (no named multipliers, δ = 1).
MhaStructure double_structure(const GroupBackend& be);

/// R_{21}R_{12} from R, and (R_{21}R_{12})⁻¹ = R_{12}⁻¹R_{21}⁻¹ from R⁻¹.
TensorWord r21_r12_word(const TensorWord& r);
TensorWord r21_r12_inverse_word(const TensorWord& r_inv);

/// All grouplike elements of D(G) (finite only), in canonical order.
std::vector<Element> grouplike_enumerate(const DoubleAlgebra& d);

/// Named multiplier catalogue used by sweeps that quantify over "all
/// multipliers" of interest.
std::vector<Multiplier> named_multipliers(const DoubleAlgebra& d);

/// Report suite for the double: δ = 1, ψ∘S = ψ, counimodularity, kernel vs
/// literal R, v central, ε(v) = 1, u = v on abelian groups.
std::vector<CheckResult> double_suite(const DoubleAlgebra& d, const std::vector<BasisIndex>& basis, bool sampled);

}  // namespace mqg
