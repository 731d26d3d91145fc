#include "doctest.h"
#include "instances.hpp"

using namespace bigrass;
using fixtures::matrix_from_literals;
using fixtures::subspace_from_literals;
using fixtures::tower_F;

namespace {

Mat<Rat> random_rat_matrix(int rows, int cols, Rng& rng) {
  Mat<Rat> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Rat(rng.range(-5, 5), rng.range(1, 3));
  return m;
}

}  // namespace

TEST_CASE("rref worked examples") {
  TowerPtr f = tower_F();
  {
    Mat<FieldElem> m = matrix_from_literals(f, {{"0", "0"}, {"1", "z"}});
    Echelon<FieldElem> e = rref<FieldElem>(m);
    CHECK(e.rank == 1);
    CHECK(e.mat(0, 0) == FieldElem(1));
    CHECK(e.mat(0, 1) == parse_element("z", f));
  }
  {
    Mat<Rat> id(3, 3);
    id.setZero();
    for (int i = 0; i < 3; ++i) id(i, i) = Rat(1);
    Echelon<Rat> e = rref<Rat>(id);
    CHECK(e.rank == 3);
    CHECK(mats_equal<Rat>(e.mat, id));
  }
  {
    // Second row is z^2 times the first because z^3 = 1.
    Mat<FieldElem> m = matrix_from_literals(f, {{"1", "z", "0", "0"}, {"z^2", "z^3", "0", "0"}});
    Echelon<FieldElem> e = rref<FieldElem>(m);
    CHECK(e.rank == 1);
  }
}

TEST_CASE("subspace operations worked examples") {
  using S = Rat;
  auto span = [](const std::vector<std::vector<int>>& rows) {
    Mat<S> m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Rat(rows[i][j]);
    return Subspace<S>::from_rows(m);
  };
  Subspace<S> a = span({{1, 0, 0, 0}, {0, 1, 0, 0}});
  Subspace<S> b = span({{0, 1, 0, 0}, {0, 0, 1, 0}});
  Subspace<S> meet = intersect(a, b);
  CHECK(meet == span({{0, 1, 0, 0}}));

  TowerPtr f = tower_F();
  Subspace<FieldElem> sp = subspace_from_literals(f, {{"1", "z", "0", "0"}, {"0", "0", "1", "z^2"}});
  CHECK(sp.contains_row(matrix_from_literals(f, {{"1", "z", "0", "0"}}).row(0)));
  CHECK_FALSE(sp.contains_row(matrix_from_literals(f, {{"1", "0", "0", "0"}}).row(0)));

  Mat<S> ones(1, 3);
  ones(0, 0) = ones(0, 1) = ones(0, 2) = Rat(1);
  CHECK(kernel_rows<S>(Mat<S>(ones.transpose())).rows() == 2);
}

TEST_CASE("rref is idempotent") {
  Rng rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    Mat<Rat> m = random_rat_matrix(4, 6, rng);
    Echelon<Rat> once = rref<Rat>(m);
    Echelon<Rat> twice = rref<Rat>(once.mat);
    CHECK(mats_equal<Rat>(once.mat, twice.mat));
  }
}

TEST_CASE("dimension formula for intersections and sums") {
  Rng rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    Subspace<Rat> u = Subspace<Rat>::from_rows(random_rat_matrix(static_cast<int>(rng.range(1, 3)), 5, rng));
    Subspace<Rat> w = Subspace<Rat>::from_rows(random_rat_matrix(static_cast<int>(rng.range(1, 3)), 5, rng));
    CHECK(intersect(u, w).dim() + sum_spaces(u, w).dim() == u.dim() + w.dim());
  }
}

TEST_CASE("canonical basis is independent of presentation") {
  Rng rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    Mat<Rat> base = random_rat_matrix(3, 6, rng);
    Subspace<Rat> s1 = Subspace<Rat>::from_rows(base);
    // Random invertible row operations give another basis of the same space.
    Mat<Rat> t(3, 3);
    do {
      t = random_rat_matrix(3, 3, rng);
    } while (determinant<Rat>(t) == Rat(0));
    Subspace<Rat> s2 = Subspace<Rat>::from_rows(Mat<Rat>(t * base));
    CHECK(s1 == s2);
  }
}

TEST_CASE("solve_left and complement") {
  Rng rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    Mat<Rat> a = random_rat_matrix(2, 5, rng);
    Mat<Rat> x = random_rat_matrix(3, 2, rng);
    Mat<Rat> b = x * a;
    auto sol = solve_left<Rat>(a, b);
    REQUIRE(sol.has_value());
    CHECK(mats_equal<Rat>(Mat<Rat>(*sol * a), b));
  }
  Subspace<Rat> s = Subspace<Rat>::from_rows(random_rat_matrix(2, 5, rng));
  Subspace<Rat> c = complement(s);
  CHECK(c.dim() + s.dim() == 5);
  CHECK(intersect(s, c).dim() == 0);
}

TEST_CASE("prime field linear algebra") {
  Mat<Fp> m = fixtures::matrix_mod(3, {{1, 2, 0}, {2, 1, 1}, {0, 0, 2}});
  CHECK(rank_of<Fp>(m) == 3);
  CHECK(determinant<Fp>(m) == Fp::of(2 * (1 - 4), 3));
  Mat<Fp> sing = fixtures::matrix_mod(2, {{1, 1}, {1, 1}});
  CHECK(rank_of<Fp>(sing) == 1);
  CHECK(Fp::of(2, 5).inverse() == Fp::of(3, 5));
  CHECK_THROWS_AS(Fp::of(0, 5).inverse(), std::domain_error);
  CHECK_THROWS_AS(Fp::of(1, 3) + Fp::of(1, 5), std::invalid_argument);
}
