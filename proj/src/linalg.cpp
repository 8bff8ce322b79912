#include "mqg/linalg.hpp"

#include <stdexcept>

namespace mqg {

Inertia inertia(Matrix m) {
  if (m.rows() != m.cols() || !(m == m.transpose())) throw std::invalid_argument("inertia: matrix is not symmetric");
  const Eigen::Index n = m.rows();
  Inertia out;
  Eigen::Index k = 0;
  while (k < n) {
    // Bring a nonzero diagonal entry to position k, creating one from an
    // off-diagonal pair if needed.
    Eigen::Index p = k;
    while (p < n && m(p, p).is_zero()) ++p;
    if (p == n) {
      Eigen::Index i = -1;
      Eigen::Index j = -1;
      for (Eigen::Index a = k; a < n && i < 0; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
          if (!m(a, b).is_zero()) {
            i = a;
            j = b;
            break;
          }
        }
      }
      if (i < 0) {
        out.zero += static_cast<int>(n - k);
        break;
      }
      // row_i += row_j, col_i += col_j  gives  m(i,i) = 2 m(i,j) != 0
      m.row(i) += m.row(j);
      m.col(i) += m.col(j);
      p = i;
    }
    m.row(p).swap(m.row(k));
    m.col(p).swap(m.col(k));
    const Scalar d = m(k, k);
    for (Eigen::Index r = k + 1; r < n; ++r) {
      if (m(r, k).is_zero()) continue;
      const Scalar f = m(r, k) / d;
      m.row(r) -= f * m.row(k);
      m.col(r) -= f * m.col(k);
    }
    (d.sign() > 0 ? out.positive : out.negative) += 1;
    ++k;
  }
  return out;
}

}  // namespace mqg

namespace mqg {

void LinearSystem::add(const Vector& coeffs, const Scalar& rhs) {
  if (coeffs.size() != n_) throw std::invalid_argument("LinearSystem::add: wrong number of coefficients");
  bool any = !rhs.is_zero();
  for (Eigen::Index i = 0; i < n_ && !any; ++i) any = !coeffs(i).is_zero();
  if (!any) return;
  Vector row(n_ + 1);
  row << coeffs, rhs;
  pending_.push_back(std::move(row));
  if (static_cast<Eigen::Index>(pending_.size()) >= batch_) compress();
}

void LinearSystem::compress() {
  if (pending_.empty()) return;
  Matrix all(rows_.rows() + static_cast<Eigen::Index>(pending_.size()), n_ + 1);
  all.topRows(rows_.rows()) = rows_;
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    all.row(rows_.rows() + static_cast<Eigen::Index>(i)) = pending_[i].transpose();
  }
  pending_.clear();
  auto e = rref(std::move(all));
  rows_ = e.reduced.topRows(static_cast<Eigen::Index>(e.pivots.size()));
}

std::optional<std::pair<Vector, Matrix>> LinearSystem::solve() {
  compress();
  const Matrix a = rows_.leftCols(n_);
  const Vector b = rows_.col(n_);
  auto x = solve_particular<Scalar>(a, b);
  if (!x) return std::nullopt;
  return std::make_pair(*x, nullspace<Scalar>(a));
}

}  // namespace mqg
