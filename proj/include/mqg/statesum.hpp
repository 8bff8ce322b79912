#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mqg/algebra.hpp"

namespace mqg {

/// One factor of a word whose value may depend on a group-valued index.
///
/// For the double, every leg of R = Σ_k k ⊗ δ_k and of its inverse and
/// antipode images is either a group-like `k^{±1}` or a projection
/// `e δ_{k^{±1}}`, so words over these two letter kinds plus fixed
/// multipliers cover every formal sum the library evaluates.
struct Letter {
  enum class Kind { Group, Delta, Fixed };

  Kind kind = Kind::Fixed;
  int var = -1;
  int exponent = 1;
  std::shared_ptr<const Multiplier> fixed;

  static Letter group(int var, int exponent = 1) { return {Kind::Group, var, exponent, nullptr}; }
  static Letter delta(int var, int exponent = 1) { return {Kind::Delta, var, exponent, nullptr}; }
  static Letter constant(const Multiplier& m) {
    return {Kind::Fixed, -1, 1, std::make_shared<const Multiplier>(m)};
  }
};

/// The antipode on letters: S(k) = k^{-1}, S(δ_k) = δ_{k^{-1}}. Fixed
/// letters are not supported here.
Letter antipode_letter(const Letter& l);

/// A word applied to a finitely supported anchor.
///
/// `Direction::OnLeftOf` evaluates L1 L2 ... Ln · anchor (letters act from
/// the left, processed right to left); `Direction::OnRightOf` evaluates
/// anchor · L1 L2 ... Ln (processed left to right).
struct Leg {
  enum class Direction { OnLeftOf, OnRightOf };

  std::vector<Letter> letters;
  Element anchor;
  Direction direction = Direction::OnLeftOf;
  /// The visitor consumes this leg only through ψ(g δ_h) = [g = e]. Propagation
  /// may then bound an index from the requirement that the leg's group part
  /// ends at e. Brute force ignores the flag.
  bool integral_closed = false;
};

enum class EvalMode {
  /// Bound each index by the δ-letters that meet the current partial
  /// product, branching on the smallest candidate set first.
  Propagate,
  /// Every assignment over the whole (finite) group. Used as an oracle.
  BruteForce,
};

struct StateSum {
  const GroupBackend* backend = nullptr;
  std::vector<std::string> var_names;
  std::vector<Leg> legs;
};

/// Visitor receives a full index assignment and the finished leg values.
/// Branches where some leg became zero are not visited in Propagate mode.
using StateVisitor = std::function<void(std::span<const GroupElement>, std::span<const Element>)>;

/// Enumerates every index assignment that may contribute. Throws
/// UnlocalizedSum (naming the index) if an index on an infinite backend
/// cannot be bounded.
void enumerate_states(const StateSum& problem, EvalMode mode, const StateVisitor& visit);

/// Σ over states of the tensor product of the leg values (legs in order).
Element sum_states1(const StateSum& problem, EvalMode mode = EvalMode::Propagate);
TensorElement sum_states2(const StateSum& problem, EvalMode mode = EvalMode::Propagate);
Tensor3 sum_states3(const StateSum& problem, EvalMode mode = EvalMode::Propagate);

/// Applies a single letter with a known index value.
Element apply_letter(const GroupBackend& be, const Letter& letter, const GroupElement* value, const Element& partial,
                     Leg::Direction direction);

}  // namespace mqg
