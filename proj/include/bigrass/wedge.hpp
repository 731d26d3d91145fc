#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bigrass/linalg.hpp"

namespace bigrass {

/// Basis bookkeeping for the m-th exterior power of S^n: the strictly
/// increasing m-subsets of {0..n-1} in lexicographic order. This subset
/// order is the wire order shared by every consumer, including serialized
/// coefficient lists.
class WedgeIndex {
 public:
  WedgeIndex(int n, int m) : n_(n), m_(m) {
    if (n < 0 || m < 0) throw std::invalid_argument("WedgeIndex: negative dimension");
    if (m > n) return;  // the zero exterior power: no subsets at all
    std::vector<int> cur(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) cur[static_cast<std::size_t>(i)] = i;
    for (;;) {
      subsets_.push_back(cur);
      int i = m - 1;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - m + i) --i;
      if (i < 0) break;
      ++cur[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int count() const { return static_cast<int>(subsets_.size()); }
  const std::vector<int>& subset(int i) const { return subsets_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::vector<int>>& subsets() const { return subsets_; }

  std::string subset_name(int i) const {
    std::string out = "e";
    for (int c : subset(i)) out += std::to_string(c + 1);
    return out;
  }

  bool operator==(const WedgeIndex& o) const { return n_ == o.n_ && m_ == o.m_; }
  bool operator!=(const WedgeIndex& o) const { return !(*this == o); }

 private:
  int n_;
  int m_;
  std::vector<std::vector<int>> subsets_;
};

template <class S>
struct WedgeVector {
  WedgeIndex index;
  Vec<S> coeffs;

  WedgeVector(WedgeIndex idx, Vec<S> c) : index(std::move(idx)), coeffs(std::move(c)) {
    if (coeffs.size() != index.count()) throw std::invalid_argument("WedgeVector: wrong coefficient count");
  }
  static WedgeVector zero(int n, int m) {
    WedgeIndex idx(n, m);
    Vec<S> c(idx.count());
    c.setZero();
    return WedgeVector(std::move(idx), std::move(c));
  }
  bool is_zero() const {
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
      if (!bigrass::is_zero(coeffs(i))) return false;
    return true;
  }
  WedgeVector operator+(const WedgeVector& o) const {
    if (index != o.index) throw std::invalid_argument("WedgeVector: index mismatch");
    return WedgeVector(index, Vec<S>(coeffs + o.coeffs));
  }
  WedgeVector operator-() const { return WedgeVector(index, Vec<S>(-coeffs)); }
  WedgeVector scaled(const S& c) const { return WedgeVector(index, Vec<S>(c * coeffs)); }
  bool operator==(const WedgeVector& o) const {
    if (index != o.index || coeffs.size() != o.coeffs.size()) return false;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
      if (coeffs(i) != o.coeffs(i)) return false;
    return true;
  }
};

/// Wedge of the rows of a basis matrix: the coefficient at subset I is the
/// m x m minor on columns I, rows in the given order. No rank requirement;
/// dependent rows simply produce zero coefficients.
template <class S>
WedgeVector<S> wedge_rows(const Mat<S>& rows) {
  const int m = static_cast<int>(rows.rows());
  const int n = static_cast<int>(rows.cols());
  WedgeIndex idx(n, m);
  Vec<S> c(idx.count());
  for (int i = 0; i < idx.count(); ++i) {
    const auto& sub = idx.subset(i);
    Mat<S> minor(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) minor(a, b) = rows(a, sub[static_cast<std::size_t>(b)]);
    c(i) = determinant<S>(minor);
  }
  return WedgeVector<S>(std::move(idx), std::move(c));
}

/// Pluecker coordinates of the point spanned by the rows. The empty basis
/// (m = 0) gives the single coefficient 1; m > n gives the zero vector of
/// the vanishing exterior power; a rank-deficient basis of positive rank is
/// rejected.
template <class S>
WedgeVector<S> plucker(const Mat<S>& basis) {
  const int m = static_cast<int>(basis.rows());
  const int n = static_cast<int>(basis.cols());
  if (m > n) return WedgeVector<S>::zero(n, m);
  if (m > 0 && rank_of<S>(basis) < m) throw std::invalid_argument("plucker: rank-deficient basis");
  return wedge_rows<S>(basis);
}

/// The derivation d(psi) applied to the top wedge of the rows of E:
/// sum over i of e_1 ^ ... ^ psi(e_i) ^ ... ^ e_m, with psi given by its
/// image rows.
template <class S>
WedgeVector<S> wedge_derivation(const Mat<S>& e_rows, const Mat<S>& psi_rows) {
  if (e_rows.rows() != psi_rows.rows() || e_rows.cols() != psi_rows.cols())
    throw std::invalid_argument("wedge_derivation: dimension mismatch");
  WedgeVector<S> acc = WedgeVector<S>::zero(static_cast<int>(e_rows.cols()), static_cast<int>(e_rows.rows()));
  for (Eigen::Index i = 0; i < e_rows.rows(); ++i) {
    Mat<S> term = e_rows;
    term.row(i) = psi_rows.row(i);
    acc = acc + wedge_rows<S>(term);
  }
  return acc;
}

/// The single quadratic Pluecker relation for (m, n) = (2, 4):
/// p12 p34 - p13 p24 + p14 p23. Zero exactly on decomposable vectors.
template <class S>
S plucker_relation_residual(const WedgeVector<S>& w) {
  if (w.index.m() != 2 || w.index.n() != 4)
    throw std::invalid_argument("plucker_relation_residual: only (m, n) = (2, 4) is supported");
  const Vec<S>& c = w.coeffs;
  return c(0) * c(5) - c(1) * c(4) + c(2) * c(3);
}

}  // namespace bigrass
