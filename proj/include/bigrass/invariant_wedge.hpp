#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bigrass/algebra.hpp"
#include "bigrass/wedge.hpp"

namespace bigrass {

enum class Provenance { exact_chart_grid, sampled_lower_bound, exact_enumeration };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::exact_chart_grid: return "exact_chart_grid";
    case Provenance::sampled_lower_bound: return "sampled_lower_bound";
    case Provenance::exact_enumeration: return "exact_enumeration";
  }
  return "?";
}

inline bool provenance_exact(Provenance p) { return p != Provenance::sampled_lower_bound; }

/// A verified invariant subspace together with its Pluecker vector; the
/// retained evidence that a wedge-space basis vector is what it claims to be.
template <class S>
struct WedgeCertificate {
  Subspace<S> point;
  Vec<S> plucker_coords;
};

/// A computed subspace of the m-th exterior power spanned by Pluecker
/// vectors of A-invariant m-dimensional subspaces. Exact provenances carry a
/// completeness argument; sampling only ever produces a lower bound.
template <class S>
struct InvariantWedgeSpace {
  WedgeIndex index;
  Subspace<S> basis;
  Provenance provenance = Provenance::sampled_lower_bound;
  MatrixAlgebra<S> algebra;
  std::uint64_t seed = 0;
  int rounds = 0;
  int skipped_grid_points = 0;
  std::vector<WedgeCertificate<S>> certificates;

  int dim() const { return basis.dim(); }
};

namespace detail {

/// Chart generator row for chart `i` (0-based): 1 at the first slot of block
/// i, 0 on the rest of the block, the parameter values at the remaining
/// columns in increasing column order.
template <class S>
RowVec<S> chart_generator(int m, int l, int chart, const std::vector<S>& params) {
  const int n = l * m;
  RowVec<S> f(n);
  std::size_t at = 0;
  for (int c = 0; c < n; ++c) {
    if (c >= chart * m && c < (chart + 1) * m) {
      f(c) = c == chart * m ? S(1) : S(0);
    } else {
      f(c) = params.at(at++);
    }
  }
  return f;
}

}  // namespace detail

/// Exact computation of the invariant wedge space when the ambient module is
/// homogeneous semisimple with simple summands of dimension m (n = l*m,
/// asserted by the caller). Every invariant point lies in some affine chart,
/// and each Pluecker coordinate of the chart module has degree at most m in
/// each of the lm-m chart parameters, so spanning the image of a grid with
/// m+1 values per parameter spans the image of the whole chart. Over a field
/// with fewer than m+1 elements the grid is the whole field, and the span is
/// exact because the charts themselves cover every rational point.
template <class S>
InvariantWedgeSpace<S> invariant_wedge_chart_grid(const MatrixAlgebra<S>& algebra, int m, int l) {
  const int n = algebra.n;
  WedgeIndex idx(n, m);
  InvariantWedgeSpace<S> out{idx, Subspace<S>::zero(idx.count()), Provenance::exact_chart_grid, algebra, 0, 0, 0, {}};
  if (m == 0) {
    out.basis = Subspace<S>::full(1);
    Vec<S> one(1);
    one(0) = S(1);
    out.certificates.push_back({Subspace<S>::zero(n), one});
    return out;
  }
  if (m > n) return out;
  if (l * m != n) throw std::invalid_argument("invariant_wedge_chart_grid: n != l*m");

  long long values = m + 1;
  if (auto q = field_cardinality(algebra); q && *q < values) values = *q;
  const int params = l * m - m;

  Mat<S> span(0, idx.count());
  for (int chart = 0; chart < l; ++chart) {
    int produced = 0;
    std::vector<int> digits(static_cast<std::size_t>(params), 0);
    for (;;) {
      std::vector<S> vals;
      vals.reserve(digits.size());
      for (int d : digits) vals.push_back(S(d));
      RowVec<S> f = detail::chart_generator<S>(m, l, chart, vals);
      Subspace<S> mod = generate_submodule<S>(Mat<S>(f), algebra);
      if (mod.dim() == m) {
        ++produced;
        WedgeVector<S> w = plucker<S>(mod.basis());
        Mat<S> stacked(span.rows() + 1, idx.count());
        stacked.topRows(span.rows()) = span;
        stacked.row(span.rows()) = w.coeffs.transpose();
        span = std::move(stacked);
        out.certificates.push_back({mod, w.coeffs});
      } else {
        ++out.skipped_grid_points;
      }
      // mixed-radix increment
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == values) digits[pos++] = 0;
      if (pos == digits.size() && !digits.empty()) break;
      if (digits.empty()) break;
    }
    if (produced == 0)
      throw std::runtime_error(
          "invariant_wedge_chart_grid: chart " + std::to_string(chart + 1) +
          " produced no rank-m module; the homogeneity hypothesis does not hold");
  }
  out.basis = Subspace<S>::from_rows(span);
  return out;
}

/// Randomized lower bound for the invariant wedge space: close structured and
/// seeded-random vectors (and m-tuples) under the algebra, keep the closures
/// of dimension exactly m, and accumulate their Pluecker vectors until
/// `rounds` consecutive candidates stop growing the span.
template <class S>
InvariantWedgeSpace<S> invariant_wedge_sampled(const MatrixAlgebra<S>& algebra, int m, std::uint64_t seed,
                                               int rounds = 8) {
  const int n = algebra.n;
  WedgeIndex idx(n, m);
  InvariantWedgeSpace<S> out{idx, Subspace<S>::zero(idx.count()), Provenance::sampled_lower_bound, algebra, 0, 0, 0, {}};
  out.seed = seed;
  out.rounds = rounds;
  if (m == 0) {
    out.basis = Subspace<S>::full(1);
    Vec<S> one(1);
    one(0) = S(1);
    out.certificates.push_back({Subspace<S>::zero(n), one});
    return out;
  }
  if (m > n) return out;

  long long lo = -3, hi = 3;
  if (auto q = field_cardinality(algebra)) {
    lo = 0;
    hi = *q - 1;
  }
  Rng rng(seed);
  auto random_rows = [&](int count) {
    Mat<S> rows(count, n);
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < n; ++j) rows(i, j) = S(static_cast<int>(rng.range(lo, hi)));
    return rows;
  };

  std::vector<Mat<S>> structured;
  for (int i = 0; i < n; ++i) {
    Mat<S> r(1, n);
    r.setZero();
    r(0, i) = S(1);
    structured.push_back(r);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat<S> r(1, n);
      r.setZero();
      r(0, i) = S(1);
      r(0, j) = S(1);
      structured.push_back(r);
    }

  Mat<S> span(0, idx.count());
  Echelon<S> ech = rref<S>(span);
  int stale = 0;
  const int max_random = 512;

  auto feed = [&](const Mat<S>& candidate) {
    Subspace<S> mod = generate_submodule<S>(candidate, algebra);
    if (mod.dim() != m) {
      ++stale;
      return;
    }
    WedgeVector<S> w = plucker<S>(mod.basis());
    if (in_row_span<S>(ech, RowVec<S>(w.coeffs.transpose()))) {
      ++stale;
      return;
    }
    Mat<S> stacked(span.rows() + 1, idx.count());
    stacked.topRows(span.rows()) = span;
    stacked.row(span.rows()) = w.coeffs.transpose();
    span = std::move(stacked);
    ech = rref<S>(span);
    out.certificates.push_back({mod, w.coeffs});
    stale = 0;
  };

  for (const auto& c : structured) feed(c);
  for (int t = 0; t < max_random && stale < rounds; ++t) {
    feed(random_rows(t % 2 == 0 ? 1 : m));
  }
  out.basis = Subspace<S>::from_rows(span);
  return out;
}

/// The symmetrized generator of the invariant wedge space built from block
/// vectors w_1..w_r and algebra elements a_1..a_m: the sum over all index
/// sequences (s_1..s_m) whose multiset matches `counts` of
/// w_{s_1} a_1 ^ ... ^ w_{s_m} a_m.
template <class S>
WedgeVector<S> prop43_generator(const Mat<S>& ws, const std::vector<Mat<S>>& as, const std::vector<int>& counts,
                                int block_size) {
  const int n = static_cast<int>(ws.cols());
  const int m = static_cast<int>(as.size());
  if (block_size <= 0 || n % block_size != 0)
    throw std::invalid_argument("prop43_generator: ambient is not a union of equal blocks");
  if (static_cast<int>(counts.size()) != ws.rows())
    throw std::invalid_argument("prop43_generator: one count per block vector required");
  long long total = 0;
  for (int c : counts) {
    if (c < 0) throw std::invalid_argument("prop43_generator: malformed multiset (negative count)");
    total += c;
  }
  if (total != m)
    throw std::invalid_argument("prop43_generator: malformed multiset (counts must sum to the number of algebra elements)");
  for (const auto& a : as)
    if (a.rows() != n || a.cols() != n) throw std::invalid_argument("prop43_generator: algebra element is not n x n");
  for (Eigen::Index i = 0; i < ws.rows(); ++i) {
    int support_blocks = 0;
    for (int b = 0; b * block_size < n; ++b) {
      bool nonzero = false;
      for (int c = 0; c < block_size; ++c)
        if (!is_zero(ws(i, b * block_size + c))) nonzero = true;
      if (nonzero) ++support_blocks;
    }
    if (support_blocks != 1)
      throw std::invalid_argument("prop43_generator: vector " + std::to_string(i + 1) +
                                  " is not supported in exactly one block");
  }

  std::vector<int> seq;
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (int c = 0; c < counts[i]; ++c) seq.push_back(static_cast<int>(i));

  WedgeVector<S> acc = WedgeVector<S>::zero(n, m);
  do {
    Mat<S> rows(m, n);
    for (int i = 0; i < m; ++i) rows.row(i) = ws.row(seq[static_cast<std::size_t>(i)]) * as[static_cast<std::size_t>(i)];
    acc = acc + wedge_rows<S>(rows);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return acc;
}

/// Exact membership of a wedge vector in the computed span (same field).
template <class S>
bool wedge_member(const WedgeVector<S>& w, const InvariantWedgeSpace<S>& space) {
  if (w.index != space.index) throw std::invalid_argument("wedge_member: index mismatch");
  Echelon<S> e = space.basis.echelon();
  return in_row_span<S>(e, RowVec<S>(w.coeffs.transpose()));
}

// --- lifting through a validated embedding (tower scalars only) ------------

Mat<FieldElem> lift_matrix(const Mat<FieldElem>& m, const Embedding& emb);
Subspace<FieldElem> lift_subspace(const Subspace<FieldElem>& s, const Embedding& emb);
MatrixAlgebra<FieldElem> lift_algebra(const MatrixAlgebra<FieldElem>& a, const Embedding& emb);
InvariantWedgeSpace<FieldElem> lift_wedge_space(const InvariantWedgeSpace<FieldElem>& space, const Embedding& emb);

/// Membership of a wedge vector over an extension field in the span of a
/// base-field wedge space, the span extended through the given embedding.
bool wedge_member_lifted(const WedgeVector<FieldElem>& w, const InvariantWedgeSpace<FieldElem>& space,
                         const Embedding& emb);

}  // namespace bigrass
