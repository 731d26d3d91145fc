#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bigrass/fp.hpp"
#include "bigrass/linalg.hpp"
#include "bigrass/poly.hpp"
#include "bigrass/rng.hpp"
#include "bigrass/tower.hpp"

namespace bigrass {

/// A matrix algebra acting on row vectors from the right, presented by its
/// generator matrices. Closure under products is implicit: a subspace is
/// invariant under the algebra iff it is invariant under the generators.
template <class S>
struct MatrixAlgebra {
  int n = 0;
  std::vector<Mat<S>> generators;
};

template <class S>
MatrixAlgebra<S> make_algebra(int n, std::vector<Mat<S>> generators) {
  if (n < 0) throw std::invalid_argument("make_algebra: negative dimension");
  if (generators.empty()) throw std::invalid_argument("make_algebra: at least one generator required");
  for (const auto& g : generators)
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("make_algebra: generator is not n x n");
  return MatrixAlgebra<S>{n, std::move(generators)};
}

/// Field constants used by grid/sampling code. Prime fields report their
/// modulus (recovered from the algebra's entries) so callers can clamp value
/// ranges; characteristic-zero scalars report nothing.
template <class S>
std::optional<long long> field_cardinality(const MatrixAlgebra<S>& /*algebra*/) {
  return std::nullopt;
}

inline std::optional<long long> field_cardinality(const MatrixAlgebra<Fp>& algebra) {
  for (const auto& g : algebra.generators)
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j)
        if (g(i, j).modulus() != 0) return g(i, j).modulus();
  throw std::invalid_argument("field_cardinality: no entry of the algebra carries a modulus");
}

/// Smallest A-invariant subspace containing the given row vectors, computed
/// by span saturation: multiply the current basis by every generator, adjoin,
/// re-echelon, repeat until the dimension is stable. The result is canonical
/// regardless of generator order.
template <class S>
Subspace<S> generate_submodule(const Mat<S>& rows, const MatrixAlgebra<S>& algebra) {
  if (rows.cols() != algebra.n) throw std::invalid_argument("generate_submodule: ambient mismatch");
  Subspace<S> cur = Subspace<S>::from_rows(rows);
  for (;;) {
    const int before = cur.dim();
    Mat<S> stacked(before * (1 + static_cast<int>(algebra.generators.size())), algebra.n);
    stacked.topRows(before) = cur.basis();
    int at = before;
    for (const auto& g : algebra.generators) {
      stacked.middleRows(at, before) = cur.basis() * g;
      at += before;
    }
    cur = Subspace<S>::from_rows(stacked);
    if (cur.dim() == before) return cur;
  }
}

struct InvarianceWitness {
  bool invariant = true;
  int row = -1;        // offending basis row
  int generator = -1;  // offending generator
};

template <class S>
InvarianceWitness invariance_witness(const Subspace<S>& m, const MatrixAlgebra<S>& algebra) {
  if (m.ambient() != algebra.n) throw std::invalid_argument("is_invariant: ambient mismatch");
  Echelon<S> e = m.echelon();
  for (std::size_t g = 0; g < algebra.generators.size(); ++g) {
    Mat<S> moved = m.basis() * algebra.generators[g];
    for (Eigen::Index i = 0; i < moved.rows(); ++i) {
      if (!in_row_span<S>(e, moved.row(i))) {
        return {false, static_cast<int>(i), static_cast<int>(g)};
      }
    }
  }
  return {};
}

template <class S>
bool is_invariant(const Subspace<S>& m, const MatrixAlgebra<S>& algebra) {
  return invariance_witness(m, algebra).invariant;
}

/// Monic minimal polynomial of a square matrix over its own entry field,
/// found as the first linear dependency among the vectorized powers.
template <class S>
Poly<S> matrix_minpoly(const Mat<S>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_minpoly: matrix not square");
  const int n = static_cast<int>(a.rows());
  const int nn = n * n;
  Mat<S> id(n, n);
  id.setZero();
  for (int i = 0; i < n; ++i) id(i, i) = S(1);

  Mat<S> rows(0, nn);
  Mat<S> cur = id;
  for (int j = 0;; ++j) {
    RowVec<S> flat(nn);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) flat(r * n + c) = cur(r, c);
    Mat<S> stacked(rows.rows() + 1, nn);
    stacked.topRows(rows.rows()) = rows;
    stacked.row(rows.rows()) = flat;
    if (rank_of<S>(stacked) < j + 1) {
      auto sol = solve_left<S>(rows, Mat<S>(flat));
      Poly<S> mp;
      mp.reserve(static_cast<std::size_t>(j) + 1);
      for (int i = 0; i < j; ++i) mp.push_back(-(*sol)(0, i));
      mp.push_back(S(1));
      return mp;
    }
    rows = std::move(stacked);
    cur = cur * a;
    if (j > nn) throw std::logic_error("matrix_minpoly: no dependency found");
  }
}

/// Minimal polynomial of a FieldElem matrix over the prefix field with
/// `sub_levels` levels: powers are vectorized over the prefix before the
/// dependency search, so the returned coefficients live in the prefix.
Poly<FieldElem> matrix_minpoly_over_prefix(const Mat<FieldElem>& a, int sub_levels);

/// Dual-number invariance probe at a subspace E with displacement psi: true
/// iff the span of {e_i + eps psi(e_i)} over K[eps]/(eps^2) is A-invariant.
/// The check splits into two exact K-linear stages: the real parts determine
/// the combination coefficients (E itself must be invariant), and the eps
/// parts must then be consistent.
template <class S>
bool invariant_dual_check(const Subspace<S>& e, const Mat<S>& psi_rows, const MatrixAlgebra<S>& algebra) {
  if (psi_rows.rows() != e.dim() || psi_rows.cols() != e.ambient())
    throw std::invalid_argument("invariant_dual_check: psi shape mismatch");
  const Mat<S>& w = e.basis();
  for (const auto& g : algebra.generators) {
    auto x0 = solve_left<S>(w, Mat<S>(w * g));
    if (!x0) return false;  // E itself moves off its span
    Mat<S> eps_rhs = psi_rows * g - (*x0) * psi_rows;
    if (!solve_left<S>(w, eps_rhs)) return false;
  }
  return true;
}

}  // namespace bigrass
