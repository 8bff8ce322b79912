#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mqg/tensor.hpp"

namespace mqg {

/// (g1 δ_h1)(g2 δ_h2) = g1 g2 δ_h2 when g2^{-1} h1 g2 = h2, else zero.
std::optional<BasisIndex> basis_mul(const GroupBackend& be, const BasisIndex& x, const BasisIndex& y);

/// Bilinear extension of `basis_mul`.
Element elem_mul(const Element& x, const Element& y);
inline Element operator*(const Element& x, const Element& y) { return elem_mul(x, y); }

/// Leg-wise product in the N-fold tensor algebra.
template <std::size_t N>
Tensor<N> mul_legs(const Tensor<N>& x, const Tensor<N>& y) {
  const auto* be = Tensor<N>::merged_backend(x, y);
  std::vector<typename Tensor<N>::Term> buf;
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      typename Tensor<N>::Key k;
      bool zero = false;
      for (std::size_t i = 0; i < N && !zero; ++i) {
        const auto p = basis_mul(*be, kx[i], ky[i]);
        if (!p) {
          zero = true;
        } else {
          k[i] = *p;
        }
      }
      if (!zero) buf.emplace_back(k, cx * cy);
    }
  }
  return Tensor<N>::from_terms(be, std::move(buf));
}

/// All basis vectors g δ_h with g, h drawn from `sample`.
std::vector<BasisIndex> sweep_basis(const std::vector<GroupElement>& sample);

/// The unit Σ_h e δ_h; only an element of A for finite groups.
Element unit_element(const GroupBackend& be);

// ---- multipliers -----------------------------------------------------------------

/// A formal element of M(A), given by its left and right actions on A.
///
/// Kernels must be linear and pure; they may be called concurrently.
/// `element_form` is set when the multiplier is known to lie in A.
class Multiplier {
 public:
  using Kernel = std::function<Element(const Element&)>;

  Multiplier(std::string name, const GroupBackend* backend, Kernel left, Kernel right,
             std::optional<Element> element_form = std::nullopt)
      : name_(std::move(name)),
        backend_(backend),
        left_(std::move(left)),
        right_(std::move(right)),
        element_(std::move(element_form)) {}

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const GroupBackend* backend() const { return backend_; }
  /// m x
  [[nodiscard]] Element left(const Element& x) const { return left_(x); }
  /// x m
  [[nodiscard]] Element right(const Element& x) const { return right_(x); }
  [[nodiscard]] const std::optional<Element>& element_form() const { return element_; }

  /// Renamed copy.
  [[nodiscard]] Multiplier named(std::string name) const {
    Multiplier m = *this;
    m.name_ = std::move(name);
    return m;
  }

 private:
  std::string name_;
  const GroupBackend* backend_;
  Kernel left_;
  Kernel right_;
  std::optional<Element> element_;
};

enum class Side { Left, Right };

/// m x or x m.
Element mult_apply(const Multiplier& m, const Element& x, Side side);

Multiplier mult_identity(const GroupBackend& be);
Multiplier mult_from_element(const Element& x, std::string name = {});
/// m with m·b and b·m memoized per basis element b; shareable across threads.
Multiplier mult_cached(const Multiplier& m);
/// The group-like multiplier k = Σ_h k δ_h.
Multiplier mult_group(const GroupBackend& be, const GroupElement& k);
/// m1 m2.
Multiplier mult_compose(const Multiplier& m1, const Multiplier& m2);
Multiplier mult_power(const Multiplier& m, const Multiplier& inverse, long exponent);
Multiplier mult_add(const Multiplier& m1, const Multiplier& m2);
Multiplier mult_scale(const Multiplier& m, const Scalar& c);
Multiplier mult_sub(const Multiplier& m1, const Multiplier& m2);

/// Basis element on which the two actions disagree, if any.
std::optional<BasisIndex> central_witness(const Multiplier& m, const std::vector<BasisIndex>& basis);
inline bool is_central(const Multiplier& m, const std::vector<BasisIndex>& basis) {
  return !central_witness(m, basis).has_value();
}

/// Basis element on which the left (or right) actions differ.
std::optional<BasisIndex> mult_difference(const Multiplier& a, const Multiplier& b,
                                          const std::vector<BasisIndex>& basis);

/// a (m_left b) = (a m_right) b on all sampled pairs.
std::optional<std::pair<BasisIndex, BasisIndex>> compatibility_witness(const Multiplier& m,
                                                                       const std::vector<BasisIndex>& basis);

/// For finite groups every multiplier lies in A: m = m · 1.
Element to_element(const Multiplier& m);

}  // namespace mqg
