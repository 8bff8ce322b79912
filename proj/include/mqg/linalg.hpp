#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mqg/scalar.hpp"

namespace mqg {

template <typename S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Scalar>;
using Vector = VectorX<Scalar>;

/// Reduced row echelon form and its pivot columns.
template <typename S>
struct Echelon {
  MatrixX<S> reduced;
  std::vector<Eigen::Index> pivots;
};

/// Gauss-Jordan elimination over an exact field.
template <typename S>
Echelon<S> rref(MatrixX<S> m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && m(p, col) == S(0)) ++p;
    if (p == m.rows()) continue;
    m.row(p).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    m.row(row) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == S(0)) continue;
      const S f = m(r, col);
      m.row(r) -= f * m.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename S>
Eigen::Index rank(const MatrixX<S>& m) {
  return static_cast<Eigen::Index>(rref(m).pivots.size());
}

/// Columns form a basis of {x : m x = 0}.
template <typename S>
MatrixX<S> nullspace(const MatrixX<S>& m) {
  const auto e = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  }
  MatrixX<S> basis = MatrixX<S>::Zero(m.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const auto f = free[k];
    basis(f, static_cast<Eigen::Index>(k)) = S(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      basis(e.pivots[r], static_cast<Eigen::Index>(k)) = -e.reduced(static_cast<Eigen::Index>(r), f);
    }
  }
  return basis;
}

/// One solution of m x = b (free variables set to zero), if consistent.
template <typename S>
std::optional<VectorX<S>> solve_particular(const MatrixX<S>& m, const VectorX<S>& b) {
  MatrixX<S> aug(m.rows(), m.cols() + 1);
  aug << m, b;
  const auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  VectorX<S> x = VectorX<S>::Zero(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    x(e.pivots[r]) = e.reduced(static_cast<Eigen::Index>(r), m.cols());
  }
  return x;
}

/// Homogeneous or affine linear system fed one equation at a time; rows are
/// kept reduced so memory stays at most (unknowns + 1) rows.
class LinearSystem {
 public:
  explicit LinearSystem(Eigen::Index unknowns, Eigen::Index batch = 256)
      : n_(unknowns), batch_(batch), rows_(0, unknowns + 1) {}

  /// coeffs · x = rhs
  void add(const Vector& coeffs, const Scalar& rhs = Scalar(0));
  [[nodiscard]] Eigen::Index unknowns() const { return n_; }
  /// Solution set as (particular, nullspace basis); nullopt if inconsistent.
  [[nodiscard]] std::optional<std::pair<Vector, Matrix>> solve();

 private:
  void compress();

  Eigen::Index n_;
  Eigen::Index batch_;
  Matrix rows_;
  std::vector<Vector> pending_;
};

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Sylvester inertia of a symmetric matrix by exact congruence
/// diagonalization.
Inertia inertia(Matrix m);

/// Kronecker product.
template <typename S>
MatrixX<S> kron(const MatrixX<S>& a, const MatrixX<S>& b) {
  MatrixX<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace mqg
