#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mqg {

/// Opaque group element. Finite backends store a table index in `a`;
/// the integers store the value in `a`; the infinite dihedral group stores
/// r^a s^b with b in {0, 1}.
struct GroupElement {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    return std::hash<std::int64_t>{}(g.a * 1000003 + g.b);
  }
};

/// Permutations multiply right-to-left throughout the repo:
/// (p * q)(x) = p(q(x)).
enum class Composition { RightToLeft, LeftToRight };
inline constexpr Composition kPermutationComposition = Composition::RightToLeft;

class GroupBackend {
 public:
  virtual ~GroupBackend() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual GroupElement identity() const = 0;
  [[nodiscard]] virtual GroupElement mul(const GroupElement& x, const GroupElement& y) const = 0;
  [[nodiscard]] virtual GroupElement inv(const GroupElement& x) const = 0;
  [[nodiscard]] virtual bool valid(const GroupElement& x) const = 0;
  /// Sorted, duplicate-free enumeration; present iff the group is finite.
  [[nodiscard]] virtual const std::vector<GroupElement>* elements() const = 0;
  [[nodiscard]] virtual std::vector<GroupElement> generators() const = 0;
  [[nodiscard]] virtual std::string format(const GroupElement& x) const = 0;
  [[nodiscard]] virtual GroupElement parse(std::string_view text) const = 0;

  [[nodiscard]] bool is_finite() const { return elements() != nullptr; }
  [[nodiscard]] std::size_t order() const;
};

using Backend = std::shared_ptr<const GroupBackend>;

/// Multiplication-table group. Loading does not check the group axioms;
/// `check_group_axioms` reports violations with a witness.
class TableGroup final : public GroupBackend {
 public:
  TableGroup(std::string name, std::vector<std::string> names, std::vector<std::vector<int>> table);

  [[nodiscard]] std::string name() const override { return name_; }
  [[nodiscard]] GroupElement identity() const override { return {identity_, 0}; }
  [[nodiscard]] GroupElement mul(const GroupElement& x, const GroupElement& y) const override;
  [[nodiscard]] GroupElement inv(const GroupElement& x) const override;
  [[nodiscard]] bool valid(const GroupElement& x) const override;
  [[nodiscard]] const std::vector<GroupElement>* elements() const override { return &elements_; }
  [[nodiscard]] std::vector<GroupElement> generators() const override { return generators_; }
  [[nodiscard]] std::string format(const GroupElement& x) const override;
  [[nodiscard]] GroupElement parse(std::string_view text) const override;

  [[nodiscard]] const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<GroupElement> elements_;
  std::vector<GroupElement> generators_;
  std::int64_t identity_ = 0;
  // Set for permutation groups so parse accepts any cycle spelling.
  int degree_ = 0;
  std::vector<std::vector<int>> perms_;

  friend Backend make_permutation_group(const std::string&, const std::vector<std::vector<int>>&);
};

class IntegerGroup final : public GroupBackend {
 public:
  [[nodiscard]] std::string name() const override { return "Z"; }
  [[nodiscard]] GroupElement identity() const override { return {0, 0}; }
  [[nodiscard]] GroupElement mul(const GroupElement& x, const GroupElement& y) const override;
  [[nodiscard]] GroupElement inv(const GroupElement& x) const override;
  [[nodiscard]] bool valid(const GroupElement& x) const override { return x.b == 0; }
  [[nodiscard]] const std::vector<GroupElement>* elements() const override { return nullptr; }
  [[nodiscard]] std::vector<GroupElement> generators() const override { return {{1, 0}}; }
  [[nodiscard]] std::string format(const GroupElement& x) const override;
  [[nodiscard]] GroupElement parse(std::string_view text) const override;
};

/// D-infinity as Z semidirect C2: (n, s) * (m, t) = (n + (-1)^s m, s xor t).
/// (n, 1) is a reflection.
class InfiniteDihedralGroup final : public GroupBackend {
 public:
  [[nodiscard]] std::string name() const override { return "Dinf"; }
  [[nodiscard]] GroupElement identity() const override { return {0, 0}; }
  [[nodiscard]] GroupElement mul(const GroupElement& x, const GroupElement& y) const override;
  [[nodiscard]] GroupElement inv(const GroupElement& x) const override;
  [[nodiscard]] bool valid(const GroupElement& x) const override { return x.b == 0 || x.b == 1; }
  [[nodiscard]] const std::vector<GroupElement>* elements() const override { return nullptr; }
  [[nodiscard]] std::vector<GroupElement> generators() const override { return {{1, 0}, {0, 1}}; }
  [[nodiscard]] std::string format(const GroupElement& x) const override;
  [[nodiscard]] GroupElement parse(std::string_view text) const override;
};

Backend make_table_group(std::string name, std::vector<std::string> names, std::vector<std::vector<int>> table);
/// Generators are permutations of {1..n} in one-line form (image of 1, 2, ...).
Backend make_permutation_group(const std::string& name, const std::vector<std::vector<int>>& generators);
Backend make_cyclic(int n);
Backend make_symmetric(int n);
Backend make_dihedral(int n);
Backend make_integers();
Backend make_infinite_dihedral();
/// `Z`, `Dinf`, `C<n>`, `S<n>`, `D<n>`.
Backend make_builtin(std::string_view spec);

/// Parses a group definition file (see docs/formats.md).
Backend parse_group_definition(std::string_view text);
Backend load_group_file(const std::string& path);
/// `builtin <name>` or a path to a group definition file.
Backend resolve_group(const std::vector<std::string>& words);

/// Cycle notation "(1 2 3)(4 5)" on {1..degree} to one-line form.
std::vector<int> parse_cycles(std::string_view text, int degree);
std::string format_cycles(const std::vector<int>& perm);
/// Product of one-line permutations following `kPermutationComposition`.
std::vector<int> compose_permutations(const std::vector<int>& p, const std::vector<int>& q);

// ---- free functions over any backend -------------------------------------

void require_valid(const GroupBackend& backend, const GroupElement& x);
GroupElement group_mul(const GroupBackend& backend, const GroupElement& a, const GroupElement& b);
/// g^{-1} h g.
GroupElement conjugate(const GroupBackend& backend, const GroupElement& g, const GroupElement& h);
GroupElement group_pow(const GroupBackend& backend, const GroupElement& g, long exponent);

using ElementSet = std::set<GroupElement>;

/// Subgroup generated by `generators`, by breadth-first closure. Throws
/// ClosureExceedsCap once more than `cap` elements have been found.
ElementSet subgroup_closure(const GroupBackend& backend, const ElementSet& generators, std::size_t cap);
bool is_subgroup(const GroupBackend& backend, const ElementSet& set);
/// True iff h^{-1} K h = K for every h in H. Both must be subgroups.
bool normalizes(const GroupBackend& backend, const ElementSet& H, const ElementSet& K);

/// All elements of word length <= radius in the generators and their
/// inverses (the whole group for finite backends).
std::vector<GroupElement> sweep_elements(const GroupBackend& backend, int radius);

struct AxiomReport {
  bool ok = true;
  std::string failed_law;
  std::vector<GroupElement> witness;
};

/// Associativity, identity and inverse laws on `sample` (all triples).
AxiomReport check_group_axioms(const GroupBackend& backend, const std::vector<GroupElement>& sample);

}  // namespace mqg
