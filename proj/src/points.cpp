#include "bigrass/points.hpp"

namespace bigrass {

PointVerdict classify_point_lifted(const Subspace<FieldElem>& m, const MatrixAlgebra<FieldElem>& algebra,
                                   const InvariantWedgeSpace<FieldElem>& wedge, const Embedding& emb) {
  return classify_point<FieldElem>(m, lift_algebra(algebra, emb), lift_wedge_space(wedge, emb));
}

SeparationResult find_separating_element(const std::vector<Embedding>& embeddings,
                                         const std::vector<int>& multiset_indices) {
  SeparationResult res;
  const int m = static_cast<int>(embeddings.size());
  if (m == 0) throw std::invalid_argument("find_separating_element: no embeddings");
  const TowerPtr& src = embeddings.front().source();
  const TowerPtr& dst = embeddings.front().target();
  for (const auto& e : embeddings) {
    if (!e.source()->same_structure(*src) || !e.target()->same_structure(*dst))
      throw std::invalid_argument("find_separating_element: embeddings must share source and target");
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (embeddings[static_cast<std::size_t>(i)].same_images(embeddings[static_cast<std::size_t>(j)]))
        throw std::invalid_argument("find_separating_element: embeddings must be distinct");
  if (static_cast<int>(multiset_indices.size()) != m)
    throw std::invalid_argument("find_separating_element: multiset must have one index per embedding slot");
  std::vector<int> freq(static_cast<std::size_t>(m), 0);
  bool repeated = false;
  for (int ix : multiset_indices) {
    if (ix < 0 || ix >= m) throw std::invalid_argument("find_separating_element: multiset index out of range");
    if (++freq[static_cast<std::size_t>(ix)] > 1) repeated = true;
  }
  if (!repeated)
    throw std::invalid_argument("find_separating_element: multiset has no repetition (nothing to separate)");

  auto multiset_equal = [](std::vector<FieldElem> a, std::vector<FieldElem> b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
      bool found = false;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] == x) {
          b.erase(b.begin() + static_cast<long>(j));
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };

  // b-scan over the nontrivial basis monomials of the source field.
  std::optional<FieldElem> b_found;
  for (int idx = 1; idx < src->degree() && !b_found; ++idx) {
    FieldElem b = FieldElem::monomial(src, idx, Rat(1));
    std::vector<FieldElem> all, chosen;
    for (int j = 0; j < m; ++j) all.push_back(embeddings[static_cast<std::size_t>(j)].apply(b));
    for (int ix : multiset_indices) chosen.push_back(embeddings[static_cast<std::size_t>(ix)].apply(b));
    if (!multiset_equal(all, chosen)) b_found = b;
  }
  if (!b_found) {
    res.note = "no separating monomial found; the embeddings do not look distinct";
    return res;
  }
  const FieldElem& b = *b_found;

  // c-scan over small integers; the underlying polynomial identity has at
  // most m roots, so this terminates within m+1 candidates. Budget 10*m.
  for (int c = 0; c <= 10 * m; ++c) {
    FieldElem a = FieldElem(c) - b;
    FieldElem lhs = FieldElem::one(dst);
    FieldElem rhs = FieldElem::one(dst);
    for (int j = 0; j < m; ++j) lhs = lhs * embeddings[static_cast<std::size_t>(j)].apply(a);
    for (int ix : multiset_indices) rhs = rhs * embeddings[static_cast<std::size_t>(ix)].apply(a);
    if (lhs != rhs) {
      res.ok = true;
      res.a = a;
      res.product_all = lhs;
      res.product_multiset = rhs;
      return res;
    }
  }
  res.note = "scan budget exhausted";
  return res;
}

}  // namespace bigrass
