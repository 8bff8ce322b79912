#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mqg/errors.hpp"
#include "mqg/group.hpp"
#include "mqg/scalar.hpp"

namespace mqg {

/// The basis vector g δ_h of D(G).
struct BasisIndex {
  GroupElement g;
  GroupElement h;

  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// Finitely supported combination over the N-fold tensor basis of D(G).
///
/// Terms are kept sorted by key with no zero coefficients, so equality is
/// structural. The backend pointer is non-owning; whoever built the algebra
/// keeps the backend alive. A default-constructed tensor is the zero
/// element of every backend.
template <std::size_t N>
class Tensor {
 public:
  using Key = std::array<BasisIndex, N>;
  using Term = std::pair<Key, Scalar>;

  Tensor() = default;
  explicit Tensor(const GroupBackend* backend) : backend_(backend) {}
  Tensor(const GroupBackend* backend, const Key& key, Scalar coeff = Scalar(1)) : backend_(backend) {
    if (!coeff.is_zero()) terms_.emplace_back(key, std::move(coeff));
  }

  /// Sorts, merges equal keys and prunes zeros.
  static Tensor from_terms(const GroupBackend* backend, std::vector<Term> terms) {
    Tensor t(backend);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& term : terms) {
      if (!t.terms_.empty() && t.terms_.back().first == term.first) {
        t.terms_.back().second += term.second;
      } else {
        if (!t.terms_.empty() && t.terms_.back().second.is_zero()) t.terms_.pop_back();
        t.terms_.push_back(std::move(term));
      }
    }
    if (!t.terms_.empty() && t.terms_.back().second.is_zero()) t.terms_.pop_back();
    return t;
  }

  [[nodiscard]] const GroupBackend* backend() const { return backend_; }
  [[nodiscard]] const std::vector<Term>& terms() const& { return terms_; }
  // Rvalue overload so `for (auto& t : f().terms())` does not dangle.
  [[nodiscard]] std::vector<Term> terms() && { return std::move(terms_); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] Scalar coefficient(const Key& key) const {
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                     [](const Term& t, const Key& k) { return t.first < k; });
    return (it != terms_.end() && it->first == key) ? it->second : Scalar(0);
  }

  Tensor& operator+=(const Tensor& o) { return *this = *this + o; }
  Tensor& operator-=(const Tensor& o) { return *this = *this - o; }

  friend Tensor operator+(const Tensor& a, const Tensor& b) {
    const auto* be = merged_backend(a, b);
    std::vector<Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
        out.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
        out.push_back(b.terms_[j++]);
      } else {
        Scalar c = a.terms_[i].second + b.terms_[j].second;
        if (!c.is_zero()) out.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    Tensor t(be);
    t.terms_ = std::move(out);
    return t;
  }
  friend Tensor operator-(const Tensor& a) { return a * Scalar(-1); }
  friend Tensor operator-(const Tensor& a, const Tensor& b) { return a + (-b); }
  friend Tensor operator*(const Tensor& a, const Scalar& c) {
    Tensor t(a.backend_);
    if (c.is_zero()) return t;
    t.terms_ = a.terms_;
    for (auto& term : t.terms_) term.second *= c;
    return t;
  }
  friend Tensor operator*(const Scalar& c, const Tensor& a) { return a * c; }

  /// Structural equality; the zero tensor equals zero on any backend.
  friend bool operator==(const Tensor& a, const Tensor& b) { return a.terms_ == b.terms_; }

  static const GroupBackend* merged_backend(const Tensor& a, const Tensor& b) {
    if (a.backend_ == nullptr) return b.backend_;
    if (b.backend_ == nullptr || a.backend_ == b.backend_) return a.backend_;
    throw BackendMismatch();
  }

 private:
  const GroupBackend* backend_ = nullptr;
  std::vector<Term> terms_;
};

using Element = Tensor<1>;
using TensorElement = Tensor<2>;
using Tensor3 = Tensor<3>;

inline Element basis_element(const GroupBackend* be, const GroupElement& g, const GroupElement& h,
                             Scalar c = Scalar(1)) {
  return Element(be, {BasisIndex{g, h}}, std::move(c));
}

inline Element basis_element(const GroupBackend* be, const BasisIndex& x, Scalar c = Scalar(1)) {
  return Element(be, {x}, std::move(c));
}

/// Linear extension of a map on basis tensors.
template <std::size_t N, std::size_t M, typename F>
Tensor<M> linear_map(const Tensor<N>& t, const GroupBackend* out_backend, F&& on_basis) {
  std::vector<typename Tensor<M>::Term> buf;
  for (const auto& [key, coeff] : t.terms()) {
    const Tensor<M> img = on_basis(key);
    for (const auto& [k2, c2] : img.terms()) buf.emplace_back(k2, c2 * coeff);
  }
  return Tensor<M>::from_terms(out_backend ? out_backend : t.backend(), std::move(buf));
}

/// Scalar-valued linear extension.
template <std::size_t N, typename F>
Scalar linear_form(const Tensor<N>& t, F&& on_basis) {
  Scalar acc(0);
  for (const auto& [key, coeff] : t.terms()) {
    const Scalar v = on_basis(key);
    if (!v.is_zero()) acc += v * coeff;
  }
  return acc;
}

/// a ⊗ b.
template <std::size_t N, std::size_t M>
Tensor<N + M> outer(const Tensor<N>& a, const Tensor<M>& b) {
  const auto* be = a.backend() ? a.backend() : b.backend();
  std::vector<typename Tensor<N + M>::Term> buf;
  buf.reserve(a.size() * b.size());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      typename Tensor<N + M>::Key k;
      std::copy(ka.begin(), ka.end(), k.begin());
      std::copy(kb.begin(), kb.end(), k.begin() + N);
      buf.emplace_back(k, ca * cb);
    }
  }
  return Tensor<N + M>::from_terms(be, std::move(buf));
}

/// Swap of the two legs.
inline TensorElement flip(const TensorElement& t) {
  std::vector<TensorElement::Term> buf;
  for (const auto& [k, c] : t.terms()) buf.push_back({{k[1], k[0]}, c});
  return TensorElement::from_terms(t.backend(), std::move(buf));
}

/// Applies a linear Element map to leg `leg` of every term.
template <std::size_t N, typename F>
Tensor<N> map_leg(const Tensor<N>& t, std::size_t leg, F&& f) {
  std::vector<typename Tensor<N>::Term> buf;
  for (const auto& [k, c] : t.terms()) {
    const Element img = f(basis_element(t.backend(), k[leg]));
    for (const auto& [k2, c2] : img.terms()) {
      auto key = k;
      key[leg] = k2[0];
      buf.emplace_back(key, c * c2);
    }
  }
  return Tensor<N>::from_terms(t.backend(), std::move(buf));
}

/// Leg `leg` of a pure tensor basis key as an Element.
template <std::size_t N>
Element leg_element(const GroupBackend* be, const typename Tensor<N>::Key& key, std::size_t leg) {
  return basis_element(be, key[leg]);
}

// ---- text form --------------------------------------------------------------

/// `3/2*[g;h] + -1*[g';h']`; `0` for the zero element.
std::string format_element(const Element& x);
std::string format_tensor(const TensorElement& t);
std::string format_tensor(const Tensor3& t);
std::string format_basis(const GroupBackend& be, const BasisIndex& x);

/// Parses the element literal grammar:
///   element := '0' | term (('+' | '-') term)*
///   term    := [rational '*'] '[' group-literal ';' group-literal ']'
Element parse_element(const GroupBackend& backend, std::string_view text);

}  // namespace mqg
