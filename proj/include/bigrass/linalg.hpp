#pragma once

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bigrass {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

template <class S>
bool is_zero(const S& x) {
  return x == S(0);
}

template <class S>
bool mats_equal(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <class S>
struct Echelon {
  Mat<S> mat;
  std::vector<int> pivots;
  int rank = 0;
};

/// Reduced row echelon form by plain fraction arithmetic. Deterministic:
/// columns are processed left to right, the pivot is the first row at or
/// below the current one with a nonzero entry, pivots are scaled to 1 and
/// eliminated from every other row.
template <class S>
Echelon<S> rref(Mat<S> m) {
  Echelon<S> out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    S inv_pivot = S(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) = m(r, j) * inv_pivot;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      S f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.mat = std::move(m);
  out.rank = static_cast<int>(out.pivots.size());
  return out;
}

template <class S>
int rank_of(const Mat<S>& m) {
  return rref<S>(m).rank;
}

template <class S>
S determinant(Mat<S> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const Eigen::Index n = m.rows();
  S det = S(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = c; i < n; ++i) {
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    }
    if (p < 0) return S(0);
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det = det * m(c, c);
    S inv_pivot = S(1) / m(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      S f = m(i, c) * inv_pivot;
      for (Eigen::Index j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

/// Residual of x against an echelon basis: subtracts the pivot-coordinate
/// multiples of the basis rows. Zero residual means membership in the row
/// span.
template <class S>
RowVec<S> span_residual(const Echelon<S>& basis, RowVec<S> x) {
  for (int i = 0; i < basis.rank; ++i) {
    const S& coord = x(basis.pivots[static_cast<std::size_t>(i)]);
    if (is_zero(coord)) continue;
    x -= coord * basis.mat.row(i);
  }
  return x;
}

template <class S>
bool in_row_span(const Echelon<S>& basis, const RowVec<S>& x) {
  RowVec<S> r = span_residual(basis, x);
  for (Eigen::Index j = 0; j < r.cols(); ++j)
    if (!is_zero(r(j))) return false;
  return true;
}

/// Columns spanning {c : m c = 0}.
template <class S>
Mat<S> right_kernel(const Mat<S>& m) {
  Echelon<S> e = rref<S>(m);
  const Eigen::Index n = m.cols();
  std::vector<int> free_cols;
  {
    std::size_t pi = 0;
    for (Eigen::Index c = 0; c < n; ++c) {
      if (pi < e.pivots.size() && e.pivots[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(static_cast<int>(c));
      }
    }
  }
  Mat<S> k(n, static_cast<Eigen::Index>(free_cols.size()));
  k.setZero();
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    int fc = free_cols[f];
    k(fc, static_cast<Eigen::Index>(f)) = S(1);
    for (int i = 0; i < e.rank; ++i) k(e.pivots[static_cast<std::size_t>(i)], static_cast<Eigen::Index>(f)) = -e.mat(i, fc);
  }
  return k;
}

/// Rows spanning {x : x m = 0} (vectors act on the right throughout), in
/// canonical reduced echelon form.
template <class S>
Mat<S> kernel_rows(const Mat<S>& m) {
  Mat<S> k = right_kernel<S>(Mat<S>(m.transpose()));
  Mat<S> rows = k.transpose();
  Echelon<S> e = rref<S>(rows);
  return e.mat.topRows(e.rank);
}

/// Solves X m = b row-wise; nullopt when some row of b lies outside the row
/// span of m. When the rows of m are dependent the free coordinates are set
/// to zero.
template <class S>
std::optional<Mat<S>> solve_left(const Mat<S>& m, const Mat<S>& b) {
  if (m.cols() != b.cols()) throw std::invalid_argument("solve_left: column mismatch");
  const Eigen::Index k = m.rows(), j = b.rows(), n = m.cols();
  Mat<S> aug(n, k + j);
  aug.leftCols(k) = m.transpose();
  aug.rightCols(j) = b.transpose();
  Echelon<S> e = rref<S>(aug);
  for (int p : e.pivots)
    if (p >= k) return std::nullopt;  // inconsistent system
  Mat<S> x(j, k);
  x.setZero();
  for (int i = 0; i < e.rank; ++i) {
    int col = e.pivots[static_cast<std::size_t>(i)];
    for (Eigen::Index t = 0; t < j; ++t) x(t, col) = e.mat(i, k + t);
  }
  return x;
}

/// An m-dimensional subspace of S^n held by its unique reduced row-echelon
/// basis; the canonical form makes equality of subspaces plain matrix
/// equality.
template <class S>
class Subspace {
 public:
  Subspace() = default;

  static Subspace from_rows(const Mat<S>& rows) {
    Echelon<S> e = rref<S>(rows);
    Subspace s;
    s.ambient_ = static_cast<int>(rows.cols());
    s.basis_ = e.mat.topRows(e.rank);
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  static Subspace zero(int ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat<S>(0, ambient);
    return s;
  }

  static Subspace full(int ambient) {
    Mat<S> id(ambient, ambient);
    id.setZero();
    for (int i = 0; i < ambient; ++i) id(i, i) = S(1);
    return from_rows(id);
  }

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.rows()); }
  const Mat<S>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  Echelon<S> echelon() const {
    Echelon<S> e;
    e.mat = basis_;
    e.pivots = pivots_;
    e.rank = dim();
    return e;
  }

  bool contains_row(const RowVec<S>& x) const {
    Echelon<S> e = echelon();
    return in_row_span(e, x);
  }

  bool contains(const Subspace& other) const {
    Echelon<S> e = echelon();
    for (Eigen::Index i = 0; i < other.basis_.rows(); ++i)
      if (!in_row_span<S>(e, other.basis_.row(i))) return false;
    return true;
  }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && mats_equal(basis_, o.basis_);
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  int ambient_ = 0;
  Mat<S> basis_;
  std::vector<int> pivots_;
};

template <class S>
Subspace<S> sum_spaces(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("sum_spaces: ambient mismatch");
  Mat<S> stacked(a.dim() + b.dim(), a.ambient());
  stacked.topRows(a.dim()) = a.basis();
  stacked.bottomRows(b.dim()) = b.basis();
  return Subspace<S>::from_rows(stacked);
}

/// Intersection via annihilators: x lies in the row span of B exactly when
/// x annihilates a right-kernel matrix of B, so the intersection is the left
/// kernel of the two kernels side by side.
template <class S>
Subspace<S> intersect(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
  Mat<S> ka = right_kernel<S>(a.basis());
  Mat<S> kb = right_kernel<S>(b.basis());
  Mat<S> joined(a.ambient(), ka.cols() + kb.cols());
  joined.leftCols(ka.cols()) = ka;
  joined.rightCols(kb.cols()) = kb;
  return Subspace<S>::from_rows(kernel_rows<S>(joined));
}

/// Canonical complement: the span of the standard unit vectors at the
/// non-pivot columns.
template <class S>
Subspace<S> complement(const Subspace<S>& a) {
  const int n = a.ambient();
  std::vector<int> free_cols;
  std::size_t pi = 0;
  for (int c = 0; c < n; ++c) {
    if (pi < a.pivots().size() && a.pivots()[pi] == c) {
      ++pi;
    } else {
      free_cols.push_back(c);
    }
  }
  Mat<S> rows(static_cast<Eigen::Index>(free_cols.size()), n);
  rows.setZero();
  for (std::size_t i = 0; i < free_cols.size(); ++i) rows(static_cast<Eigen::Index>(i), free_cols[i]) = S(1);
  return Subspace<S>::from_rows(rows);
}

}  // namespace bigrass
