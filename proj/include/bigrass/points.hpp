#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bigrass/invariant_wedge.hpp"

namespace bigrass {

/// Verdict of the three membership oracles at a field point. is_H is the
/// conjunction by definition; when the wedge space is only a sampled lower
/// bound a negative is_G is flagged as possibly spurious rather than
/// asserted.
struct PointVerdict {
  bool is_F = false;
  bool is_G = false;
  bool is_H = false;
  Provenance g_provenance = Provenance::sampled_lower_bound;
  bool honesty_flag = false;  // sampled provenance and is_G == false
  std::string witness;
};

template <class S>
PointVerdict classify_point(const Subspace<S>& m, const MatrixAlgebra<S>& algebra,
                            const InvariantWedgeSpace<S>& wedge) {
  if (m.ambient() != algebra.n) throw std::invalid_argument("classify_point: ambient mismatch");
  if (m.dim() != wedge.index.m()) throw std::invalid_argument("classify_point: subspace dimension != wedge degree");
  PointVerdict v;
  v.g_provenance = wedge.provenance;
  InvarianceWitness iw = invariance_witness(m, algebra);
  v.is_F = iw.invariant;
  if (!iw.invariant)
    v.witness = "basis row " + std::to_string(iw.row + 1) + " leaves the span under generator " +
                std::to_string(iw.generator + 1);
  WedgeVector<S> p = plucker<S>(m.basis());
  v.is_G = wedge_member<S>(p, wedge);
  if (!v.is_G) {
    if (!v.witness.empty()) v.witness += "; ";
    v.witness += "plucker vector lies outside the computed invariant wedge span (dim " +
                 std::to_string(wedge.dim()) + ")";
    if (!provenance_exact(wedge.provenance)) {
      v.honesty_flag = true;
      v.witness += " [sampled lower bound: not in computed lower bound]";
    }
  }
  v.is_H = v.is_F && v.is_G;
  return v;
}

/// Extension-field variant: the point lives over the embedding's target; the
/// algebra and wedge space live over its source and are lifted through it.
PointVerdict classify_point_lifted(const Subspace<FieldElem>& m, const MatrixAlgebra<FieldElem>& algebra,
                                   const InvariantWedgeSpace<FieldElem>& wedge, const Embedding& emb);

/// Tangent data at a base point E: dim_G is the dimension of
/// {psi in Hom(E, L) : d(psi) stays in the invariant wedge span}, dim_F the
/// dimension of the dual-number invariance tangent space. dim_F is absent
/// when E itself is not invariant.
template <class S>
struct TangentReport {
  Subspace<S> base;
  Subspace<S> complement_space;
  int dim_G = 0;
  std::optional<int> dim_F;
  std::vector<Mat<S>> basis_G;  // each psi as an m x (n-m) coefficient matrix over the complement basis
};

namespace detail {

/// Kernel dimension (and basis) of the linear map c -> rows, where the map is
/// only available as an evaluation on unit vectors; `columns` holds the image
/// of each unit.
template <class S>
std::pair<int, Mat<S>> kernel_from_columns(const std::vector<RowVec<S>>& columns) {
  if (columns.empty()) return {0, Mat<S>(0, 0)};
  Mat<S> m(static_cast<Eigen::Index>(columns.size()), columns.front().cols());
  for (std::size_t i = 0; i < columns.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = columns[i];
  Mat<S> k = kernel_rows<S>(m);  // rows x with x m = 0
  return {static_cast<int>(k.rows()), k};
}

}  // namespace detail

template <class S>
TangentReport<S> tangent_space(const Subspace<S>& e, const MatrixAlgebra<S>& algebra,
                               const InvariantWedgeSpace<S>& wedge) {
  const int n = algebra.n;
  const int m = e.dim();
  if (m != wedge.index.m()) throw std::invalid_argument("tangent_space: dimension mismatch with wedge degree");
  {
    WedgeVector<S> p = plucker<S>(e.basis());
    if (!wedge_member<S>(p, wedge))
      throw std::invalid_argument("tangent_space: base point is not in the computed wedge span (not a G-point)");
  }
  TangentReport<S> rep;
  rep.base = e;
  rep.complement_space = complement(e);
  const Mat<S>& lbasis = rep.complement_space.basis();
  const int ldim = rep.complement_space.dim();
  const int unknowns = m * ldim;

  // dim_G: psi -> d(psi) must land in span(wedge). Stack the wedge images of
  // the unit psi's against the span basis; kernel rows restricted to the
  // psi coordinates are the tangent vectors.
  {
    const int wc = wedge.index.count();
    const int wdim = wedge.dim();
    std::vector<RowVec<S>> cols;
    cols.reserve(static_cast<std::size_t>(unknowns + wdim));
    for (int u = 0; u < unknowns; ++u) {
      Mat<S> psi(m, n);
      psi.setZero();
      psi.row(u / ldim) = lbasis.row(u % ldim);
      WedgeVector<S> d = wedge_derivation<S>(e.basis(), psi);
      cols.push_back(RowVec<S>(d.coeffs.transpose()));
    }
    for (int b = 0; b < wdim; ++b) {
      cols.push_back(RowVec<S>(-wedge.basis.basis().row(b)));
    }
    (void)wc;
    auto [kdim, krows] = detail::kernel_from_columns<S>(cols);
    (void)kdim;
    // Solutions with zero psi-part correspond to vanishing span combinations
    // and cannot occur (the span basis rows are independent), so projecting
    // to the psi coordinates is injective.
    rep.dim_G = static_cast<int>(krows.rows());
    for (Eigen::Index r = 0; r < krows.rows(); ++r) {
      Mat<S> psi(m, ldim);
      for (int u = 0; u < unknowns; ++u) psi(u / ldim, u % ldim) = krows(r, u);
      rep.basis_G.push_back(std::move(psi));
    }
  }

  // dim_F: dual-number invariance, solved symbolically in the psi
  // coefficients. For each generator the real parts fix the combination
  // matrix X0; the eps parts demand psi*g - X0*psi stays in the row span of
  // E, a linear condition evaluated on unit psi's.
  {
    const Mat<S>& w = e.basis();
    Echelon<S> ech = e.echelon();
    bool base_invariant = true;
    std::vector<Mat<S>> x0s;
    for (const auto& g : algebra.generators) {
      auto x0 = solve_left<S>(w, Mat<S>(w * g));
      if (!x0) {
        base_invariant = false;
        break;
      }
      x0s.push_back(std::move(*x0));
    }
    if (base_invariant) {
      std::vector<RowVec<S>> cols;
      cols.reserve(static_cast<std::size_t>(unknowns));
      const int rescols = static_cast<int>(algebra.generators.size()) * m * n;
      for (int u = 0; u < unknowns; ++u) {
        Mat<S> psi_amb(m, n);
        psi_amb.setZero();
        psi_amb.row(u / ldim) = lbasis.row(u % ldim);
        RowVec<S> all(rescols);
        int at = 0;
        for (std::size_t gi = 0; gi < algebra.generators.size(); ++gi) {
          Mat<S> raw = psi_amb * algebra.generators[gi] - x0s[gi] * psi_amb;
          for (int r = 0; r < m; ++r) {
            RowVec<S> residual = span_residual<S>(ech, RowVec<S>(raw.row(r)));
            all.segment(at, n) = residual;
            at += n;
          }
        }
        cols.push_back(std::move(all));
      }
      auto [kdim, krows] = detail::kernel_from_columns<S>(cols);
      (void)krows;
      rep.dim_F = kdim;
    }
  }
  return rep;
}

/// Location of a point in the affine chart atlas: the chart index whose m x m
/// coordinate block of the echelon basis is invertible, the lm-m parameter
/// values, and the principal generator row. Reconstruction via submodule
/// closure is verified before a location is returned.
template <class S>
struct ChartLocation {
  int chart = 0;  // 1-based
  std::vector<S> coords;
  RowVec<S> generator;
};

template <class S>
std::optional<ChartLocation<S>> chart_locate(const Subspace<S>& m_sub, const MatrixAlgebra<S>& algebra, int m,
                                             int l) {
  if (l * m != algebra.n) throw std::invalid_argument("chart_locate: n != l*m");
  if (m_sub.dim() != m) throw std::invalid_argument("chart_locate: subspace dimension != m");
  const Mat<S>& basis = m_sub.basis();
  for (int chart = 0; chart < l; ++chart) {
    Mat<S> block(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) block(r, c) = basis(r, chart * m + c);
    if (rank_of<S>(block) < m) continue;
    // Invertible block: renormalize so that block = identity; the first row
    // is then the principal generator in chart form.
    Mat<S> id(m, m);
    id.setZero();
    for (int i = 0; i < m; ++i) id(i, i) = S(1);
    auto x = solve_left<S>(block, id);
    if (!x) continue;
    Mat<S> renormalized = (*x) * basis;
    RowVec<S> gen = renormalized.row(0);
    Subspace<S> rebuilt = generate_submodule<S>(Mat<S>(gen), algebra);
    if (rebuilt != m_sub) continue;
    ChartLocation<S> loc;
    loc.chart = chart + 1;
    loc.generator = gen;
    for (int c = 0; c < algebra.n; ++c) {
      if (c >= chart * m && c < (chart + 1) * m) continue;
      loc.coords.push_back(gen(c));
    }
    return loc;
  }
  return std::nullopt;
}

/// Exhaustive finite-field census: every m-dimensional subspace of F_q^n by
/// echelon shape, the invariant ones, the exactly enumerated invariant wedge
/// span, the points whose Pluecker vector lies in it, and (when a block
/// structure is declared) a chart location per invariant point.
template <class S>
struct FFReport {
  long long total_subspaces = 0;
  std::vector<Subspace<S>> f_points;
  std::vector<Subspace<S>> g_points;
  InvariantWedgeSpace<S> wedge;
  std::vector<std::optional<ChartLocation<S>>> chart_locations;  // parallel to f_points
  bool charts_checked = false;
};

template <class S>
FFReport<S> ff_enumerate(const MatrixAlgebra<S>& algebra, int m, std::optional<int> l_blocks = std::nullopt,
                         long long guard = 100000) {
  auto q_opt = field_cardinality(algebra);
  if (!q_opt) throw std::invalid_argument("ff_enumerate: algebra is not over a finite prime field");
  const long long q = *q_opt;
  const int n = algebra.n;
  if (m < 0 || m > n) throw std::invalid_argument("ff_enumerate: bad m");

  // Count per echelon shape (pivot-column subset); the cell counts sum to
  // the Gaussian binomial [n, m]_q.
  WedgeIndex shapes(n, m);
  long long total = 0;
  std::vector<std::pair<std::vector<int>, long long>> shape_list;
  for (int s = 0; s < shapes.count(); ++s) {
    const auto& piv = shapes.subset(s);
    int free_slots = 0;
    for (int r = 0; r < m; ++r) {
      for (int c = piv[static_cast<std::size_t>(r)] + 1; c < n; ++c) {
        bool is_pivot_col = false;
        for (int rr = 0; rr < m; ++rr)
          if (piv[static_cast<std::size_t>(rr)] == c) is_pivot_col = true;
        if (!is_pivot_col) ++free_slots;
      }
    }
    long long cells = 1;
    for (int i = 0; i < free_slots; ++i) {
      cells *= q;
      if (cells > guard) throw std::invalid_argument("ff_enumerate: instance too large");
    }
    total += cells;
    if (total > guard) throw std::invalid_argument("ff_enumerate: instance too large");
    shape_list.emplace_back(piv, cells);
  }

  FFReport<S> out{total,
                  {},
                  {},
                  InvariantWedgeSpace<S>{WedgeIndex(n, m), Subspace<S>::zero(WedgeIndex(n, m).count()),
                                         Provenance::exact_enumeration, algebra, 0, 0, 0, {}},
                  {},
                  false};

  Mat<S> span(0, out.wedge.index.count());
  std::vector<Subspace<S>> all;
  all.reserve(static_cast<std::size_t>(total));
  for (const auto& [piv, cells] : shape_list) {
    std::vector<std::pair<int, int>> free_pos;
    for (int r = 0; r < m; ++r)
      for (int c = piv[static_cast<std::size_t>(r)] + 1; c < n; ++c) {
        bool is_pivot_col = false;
        for (int rr = 0; rr < m; ++rr)
          if (piv[static_cast<std::size_t>(rr)] == c) is_pivot_col = true;
        if (!is_pivot_col) free_pos.emplace_back(r, c);
      }
    std::vector<int> digits(free_pos.size(), 0);
    for (long long it = 0; it < cells; ++it) {
      Mat<S> basis(m, n);
      basis.setZero();
      for (int r = 0; r < m; ++r) basis(r, piv[static_cast<std::size_t>(r)]) = S(1);
      for (std::size_t f = 0; f < free_pos.size(); ++f)
        basis(free_pos[f].first, free_pos[f].second) = S(digits[f]);
      all.push_back(Subspace<S>::from_rows(basis));
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
    }
  }

  for (const auto& sub : all) {
    if (is_invariant(sub, algebra)) {
      out.f_points.push_back(sub);
      WedgeVector<S> w = plucker<S>(sub.basis());
      Mat<S> stacked(span.rows() + 1, out.wedge.index.count());
      stacked.topRows(span.rows()) = span;
      stacked.row(span.rows()) = w.coeffs.transpose();
      span = std::move(stacked);
      out.wedge.certificates.push_back({sub, w.coeffs});
    }
  }
  out.wedge.basis = Subspace<S>::from_rows(span);

  Echelon<S> ech = out.wedge.basis.echelon();
  for (const auto& sub : all) {
    WedgeVector<S> w = plucker<S>(sub.basis());
    if (in_row_span<S>(ech, RowVec<S>(w.coeffs.transpose()))) out.g_points.push_back(sub);
  }

  if (l_blocks) {
    out.charts_checked = true;
    for (const auto& f : out.f_points) out.chart_locations.push_back(chart_locate<S>(f, algebra, m, *l_blocks));
  }
  return out;
}

/// Constructive separating element for distinct embeddings and a repeated
/// multiset of indices: scan candidate b over the generator monomials until
/// the two eigenvalue multisets differ, then scan integer c until
/// f(c) = prod(c - lambda_j(b)) - prod(c - lambda_{i_j}(b)) is nonzero, and
/// return a = c - b together with both audit products.
struct SeparationResult {
  bool ok = false;
  FieldElem a;
  FieldElem product_all;      // prod over all embeddings of lambda_j(a)
  FieldElem product_multiset; // prod over the requested multiset
  std::string note;
};

SeparationResult find_separating_element(const std::vector<Embedding>& embeddings,
                                         const std::vector<int>& multiset_indices);

}  // namespace bigrass
