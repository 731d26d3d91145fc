#include "bigrass/algebra.hpp"

namespace bigrass {

Poly<FieldElem> matrix_minpoly_over_prefix(const Mat<FieldElem>& a, int sub_levels) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_minpoly_over_prefix: matrix not square");
  const int n = static_cast<int>(a.rows());

  TowerPtr tower;
  for (Eigen::Index i = 0; i < a.rows() && !tower; ++i)
    for (Eigen::Index j = 0; j < a.cols() && !tower; ++j)
      if (a(i, j).tower()) tower = a(i, j).tower();
  if (!tower) {
    // Entirely rational matrix: the prefix makes no difference.
    return matrix_minpoly<FieldElem>(a);
  }
  TowerPtr sub = tower->prefix(sub_levels);
  const int rel = tower->degree() / sub->degree();
  const int width = n * n * rel;

  Mat<FieldElem> id(n, n);
  id.setZero();
  for (int i = 0; i < n; ++i) id(i, i) = FieldElem::one(tower);

  Mat<FieldElem> rows(0, width);
  Mat<FieldElem> cur = id;
  for (int j = 0;; ++j) {
    RowVec<FieldElem> flat(width);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        FieldElem entry = lift_to(cur(r, c), tower);
        std::vector<FieldElem> blocks = blocks_over_prefix(entry, sub_levels);
        for (int q = 0; q < rel; ++q) flat((r * n + c) * rel + q) = blocks[static_cast<std::size_t>(q)];
      }
    Mat<FieldElem> stacked(rows.rows() + 1, width);
    stacked.topRows(rows.rows()) = rows;
    stacked.row(rows.rows()) = flat;
    if (rank_of<FieldElem>(stacked) < j + 1) {
      auto sol = solve_left<FieldElem>(rows, Mat<FieldElem>(flat));
      Poly<FieldElem> mp;
      for (int i = 0; i < j; ++i) mp.push_back(-(*sol)(0, i));
      mp.push_back(FieldElem(1));
      return mp;
    }
    rows = std::move(stacked);
    cur = cur * a;
    if (j > width) throw std::logic_error("matrix_minpoly_over_prefix: no dependency found");
  }
}

}  // namespace bigrass
