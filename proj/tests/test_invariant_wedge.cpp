#include "doctest.h"
#include "instances.hpp"

using namespace bigrass;
using fixtures::matrix_from_literals;
using fixtures::subspace_from_literals;
using fixtures::tower_F;
using fixtures::tower_K;
using fixtures::vlambda2_algebra;

namespace {

Subspace<FieldElem> expected_wedge_basis() {
  // Canonical echelon basis of span{e12, e34, e14 - e23, e13 - e23 + e24}.
  return subspace_from_literals(tower_K(), {{"1", "0", "0", "0", "0", "0"},
                                            {"0", "1", "0", "-1", "1", "0"},
                                            {"0", "0", "1", "-1", "0", "0"},
                                            {"0", "0", "0", "0", "0", "1"}});
}

}  // namespace

TEST_CASE("chart grid computes the invariant wedge space exactly") {
  MatrixAlgebra<FieldElem> a = vlambda2_algebra();
  InvariantWedgeSpace<FieldElem> w = invariant_wedge_chart_grid<FieldElem>(a, 2, 2);
  CHECK(w.provenance == Provenance::exact_chart_grid);
  CHECK(w.dim() == 4);
  CHECK(w.basis == expected_wedge_basis());
  CHECK(w.skipped_grid_points == 0);
}

TEST_CASE("full wedge space for the scalar Galois action") {
  MatrixAlgebra<FieldElem> a = image_algebra(fixtures::galois_phi());
  InvariantWedgeSpace<FieldElem> w = invariant_wedge_chart_grid<FieldElem>(a, 1, 2);
  CHECK(w.dim() == 2);
  CHECK(w.basis == Subspace<FieldElem>::full(2));
}

TEST_CASE("degree zero wedge space") {
  MatrixAlgebra<FieldElem> a = vlambda2_algebra();
  InvariantWedgeSpace<FieldElem> w = invariant_wedge_chart_grid<FieldElem>(a, 0, 0);
  CHECK(w.dim() == 1);
}

TEST_CASE("sampling agrees with the chart grid") {
  MatrixAlgebra<FieldElem> a = vlambda2_algebra();
  InvariantWedgeSpace<FieldElem> exact = invariant_wedge_chart_grid<FieldElem>(a, 2, 2);
  for (std::uint64_t seed : {42ULL, 1ULL, 2ULL}) {
    InvariantWedgeSpace<FieldElem> s = invariant_wedge_sampled<FieldElem>(a, 2, seed, 8);
    CHECK(s.provenance == Provenance::sampled_lower_bound);
    CHECK(s.basis == exact.basis);
  }
}

TEST_CASE("sampling over small finite fields") {
  // Companion of x^2 + x + 1 over F_2: no invariant line exists.
  MatrixAlgebra<Fp> irr = make_algebra<Fp>(2, {fixtures::matrix_mod(2, {{0, 1}, {1, 1}})});
  InvariantWedgeSpace<Fp> zero = invariant_wedge_sampled<Fp>(irr, 1, 9, 8);
  CHECK(zero.dim() == 0);

  MatrixAlgebra<Fp> identity = make_algebra<Fp>(2, {fixtures::matrix_mod(2, {{1, 0}, {0, 1}})});
  InvariantWedgeSpace<Fp> full = invariant_wedge_sampled<Fp>(identity, 1, 9, 8);
  CHECK(full.dim() == 2);
}

TEST_CASE("prop 4.3 symmetrized generators reproduce the worked wedges") {
  TowerPtr k = tower_K();
  MatrixAlgebra<FieldElem> a = vlambda2_algebra();
  Mat<FieldElem> id(4, 4);
  id.setZero();
  for (int i = 0; i < 4; ++i) id(i, i) = FieldElem(1);
  const Mat<FieldElem>& phi_rho = a.generators[0];

  {
    // w1 = e1, w2 = e3, a = (1, phi(rho)): -rho (e14 - e23)
    Mat<FieldElem> ws = matrix_from_literals(k, {{"1", "0", "0", "0"}, {"0", "0", "1", "0"}});
    WedgeVector<FieldElem> w = prop43_generator<FieldElem>(ws, {id, phi_rho}, {1, 1}, 2);
    Vec<FieldElem> expect(6);
    expect.setZero();
    expect(2) = parse_element("-r", k);
    expect(3) = parse_element("r", k);
    CHECK(w.coeffs == expect);
  }
  {
    // w1 = e1, w2 = e4: rho (e13 - e14 + e24)
    Mat<FieldElem> ws = matrix_from_literals(k, {{"1", "0", "0", "0"}, {"0", "0", "0", "1"}});
    WedgeVector<FieldElem> w = prop43_generator<FieldElem>(ws, {id, phi_rho}, {1, 1}, 2);
    Vec<FieldElem> expect(6);
    expect.setZero();
    expect(1) = parse_element("r", k);
    expect(2) = parse_element("-r", k);
    expect(4) = parse_element("r", k);
    CHECK(w.coeffs == expect);
  }
  {
    // Single block vector used twice: e1 ^ (e1 phi(rho)) = -rho e12.
    Mat<FieldElem> ws = matrix_from_literals(k, {{"1", "0", "0", "0"}});
    WedgeVector<FieldElem> w = prop43_generator<FieldElem>(ws, {id, phi_rho}, {2}, 2);
    Vec<FieldElem> expect(6);
    expect.setZero();
    expect(0) = parse_element("-r", k);
    CHECK(w.coeffs == expect);
  }

  // Both worked generators lie in the computed invariant wedge space.
  InvariantWedgeSpace<FieldElem> wspace = invariant_wedge_chart_grid<FieldElem>(a, 2, 2);
  Mat<FieldElem> ws1 = matrix_from_literals(k, {{"1", "0", "0", "0"}, {"0", "0", "1", "0"}});
  Mat<FieldElem> ws2 = matrix_from_literals(k, {{"1", "0", "0", "0"}, {"0", "0", "0", "1"}});
  CHECK(wedge_member<FieldElem>(prop43_generator<FieldElem>(ws1, {id, phi_rho}, {1, 1}, 2), wspace));
  CHECK(wedge_member<FieldElem>(prop43_generator<FieldElem>(ws2, {id, phi_rho}, {1, 1}, 2), wspace));

  // Guards.
  CHECK_THROWS(prop43_generator<FieldElem>(ws1, {id, phi_rho}, {1, 2}, 2));  // counts sum != m
  Mat<FieldElem> spread = matrix_from_literals(k, {{"1", "0", "1", "0"}, {"0", "0", "1", "0"}});
  CHECK_THROWS(prop43_generator<FieldElem>(spread, {id, phi_rho}, {1, 1}, 2));  // two-block support
}

TEST_CASE("membership across a field extension") {
  MatrixAlgebra<FieldElem> a = vlambda2_algebra();
  InvariantWedgeSpace<FieldElem> w = invariant_wedge_chart_grid<FieldElem>(a, 2, 2);
  Embedding incl = Embedding::inclusion(tower_K(), tower_F());
  TowerPtr f = tower_F();

  auto vec = [&](const std::vector<std::string>& lits) {
    Vec<FieldElem> v(6);
    for (int i = 0; i < 6; ++i) v(i) = parse_element(lits[static_cast<std::size_t>(i)], f);
    return WedgeVector<FieldElem>(WedgeIndex(4, 2), v);
  };
  CHECK(wedge_member_lifted(vec({"0", "1", "z^2", "z", "1", "0"}), w, incl));
  CHECK_FALSE(wedge_member_lifted(vec({"0", "1", "z", "z", "z^2", "0"}), w, incl));
  CHECK(wedge_member_lifted(vec({"0", "0", "0", "0", "0", "0"}), w, incl));
}

TEST_CASE("certificates reconstruct the basis and are invariant") {
  MatrixAlgebra<FieldElem> a = vlambda2_algebra();
  for (const auto& w : {invariant_wedge_chart_grid<FieldElem>(a, 2, 2),
                        invariant_wedge_sampled<FieldElem>(a, 2, 42, 8)}) {
    REQUIRE(!w.certificates.empty());
    Mat<FieldElem> cert_rows(static_cast<Eigen::Index>(w.certificates.size()), w.index.count());
    for (std::size_t i = 0; i < w.certificates.size(); ++i) {
      CHECK(is_invariant(w.certificates[i].point, a));
      CHECK(w.certificates[i].point.dim() == 2);
      cert_rows.row(static_cast<Eigen::Index>(i)) = w.certificates[i].plucker_coords.transpose();
    }
    // Every basis vector is a combination of retained certificates.
    CHECK(Subspace<FieldElem>::from_rows(cert_rows).contains(w.basis));
  }
}

TEST_CASE("sampled span never exceeds the exact span") {
  MatrixAlgebra<FieldElem> a = vlambda2_algebra();
  InvariantWedgeSpace<FieldElem> exact = invariant_wedge_chart_grid<FieldElem>(a, 2, 2);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    InvariantWedgeSpace<FieldElem> s = invariant_wedge_sampled<FieldElem>(a, 2, seed, 3);
    CHECK(exact.basis.contains(s.basis));
  }
}
