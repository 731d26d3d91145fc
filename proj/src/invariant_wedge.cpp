#include "bigrass/invariant_wedge.hpp"

namespace bigrass {

Mat<FieldElem> lift_matrix(const Mat<FieldElem>& m, const Embedding& emb) {
  Mat<FieldElem> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = emb.apply(m(i, j));
  return out;
}

Subspace<FieldElem> lift_subspace(const Subspace<FieldElem>& s, const Embedding& emb) {
  Mat<FieldElem> rows = lift_matrix(s.basis(), emb);
  if (rows.rows() == 0) return Subspace<FieldElem>::zero(s.ambient());
  return Subspace<FieldElem>::from_rows(rows);
}

MatrixAlgebra<FieldElem> lift_algebra(const MatrixAlgebra<FieldElem>& a, const Embedding& emb) {
  std::vector<Mat<FieldElem>> gens;
  gens.reserve(a.generators.size());
  for (const auto& g : a.generators) gens.push_back(lift_matrix(g, emb));
  return MatrixAlgebra<FieldElem>{a.n, std::move(gens)};
}

InvariantWedgeSpace<FieldElem> lift_wedge_space(const InvariantWedgeSpace<FieldElem>& space, const Embedding& emb) {
  InvariantWedgeSpace<FieldElem> out{space.index, lift_subspace(space.basis, emb), space.provenance,
                                     lift_algebra(space.algebra, emb)};
  out.seed = space.seed;
  out.rounds = space.rounds;
  out.skipped_grid_points = space.skipped_grid_points;
  out.certificates.reserve(space.certificates.size());
  for (const auto& c : space.certificates) {
    Vec<FieldElem> p(c.plucker_coords.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = emb.apply(c.plucker_coords(i));
    out.certificates.push_back({lift_subspace(c.point, emb), std::move(p)});
  }
  return out;
}

bool wedge_member_lifted(const WedgeVector<FieldElem>& w, const InvariantWedgeSpace<FieldElem>& space,
                         const Embedding& emb) {
  if (w.index != space.index) throw std::invalid_argument("wedge_member_lifted: index mismatch");
  Subspace<FieldElem> lifted = lift_subspace(space.basis, emb);
  Echelon<FieldElem> e = lifted.echelon();
  return in_row_span<FieldElem>(e, RowVec<FieldElem>(w.coeffs.transpose()));
}

}  // namespace bigrass
