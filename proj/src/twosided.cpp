#include "bigrass/twosided.hpp"

namespace bigrass {

TwoSidedStructure make_two_sided(TowerPtr field, int n, std::vector<Mat<FieldElem>> generator_images) {
  if (!field) throw std::invalid_argument("make_two_sided: null field");
  if (static_cast<int>(generator_images.size()) != field->level_count())
    throw std::invalid_argument("make_two_sided: one matrix image per tower generator required");
  for (const auto& img : generator_images)
    if (img.rows() != n || img.cols() != n) throw std::invalid_argument("make_two_sided: image is not n x n");
  return TwoSidedStructure{std::move(field), n, std::move(generator_images), false};
}

Mat<FieldElem> phi_value(const TwoSidedStructure& phi, const FieldElem& x) {
  const int n = phi.n;
  Mat<FieldElem> acc(n, n);
  acc.setZero();
  VecQ coeffs = x.coeffs_in(phi.field);
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (coeffs(i).is_zero()) continue;
    std::vector<int> exps = phi.field->exponents_of(static_cast<int>(i));
    Mat<FieldElem> mono(n, n);
    mono.setZero();
    for (int d = 0; d < n; ++d) mono(d, d) = FieldElem(1);
    for (std::size_t t = 0; t < exps.size(); ++t)
      for (int e = 0; e < exps[t]; ++e) mono = mono * phi.generator_images[t];
    acc = acc + FieldElem(coeffs(i)) * mono;
  }
  return acc;
}

MatrixAlgebra<FieldElem> image_algebra(const TwoSidedStructure& phi) {
  if (phi.field->level_count() == 0) {
    // K = Q: the image algebra is the scalars.
    Mat<FieldElem> id(phi.n, phi.n);
    id.setZero();
    for (int i = 0; i < phi.n; ++i) id(i, i) = FieldElem(1);
    return make_algebra<FieldElem>(phi.n, {id});
  }
  return make_algebra<FieldElem>(phi.n, phi.generator_images);
}

ValidationReport validate_phi(TwoSidedStructure& phi) {
  ValidationReport rep;
  const TowerPtr& k = phi.field;
  const int n = phi.n;
  auto is_zero_matrix = [](const Mat<FieldElem>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_zero()) return false;
    return true;
  };

  for (int t = 0; t < k->level_count(); ++t) {
    const auto& lv = k->level(t);
    const int d = static_cast<int>(lv.minpoly_low.rows());
    const Mat<FieldElem>& x = phi.generator_images[static_cast<std::size_t>(t)];
    Mat<FieldElem> power(n, n);
    power.setZero();
    for (int i = 0; i < n; ++i) power(i, i) = FieldElem(1);
    Mat<FieldElem> residual(n, n);
    residual.setZero();
    for (int j = 0; j < d; ++j) {
      VecQ cj(k->degree());
      cj.setZero();
      cj.head(lv.minpoly_low.cols()) = lv.minpoly_low.row(j).transpose();
      FieldElem coeff(k, std::move(cj));
      residual = residual + phi_value(phi, coeff) * power;
      power = power * x;
    }
    residual = residual + power;  // monic top term
    if (!is_zero_matrix(residual)) {
      rep.ok = false;
      rep.failures.push_back("generator '" + lv.symbol + "': matrix image does not satisfy its minimal polynomial");
    }
  }

  for (int t = 0; t < k->base_levels(); ++t) {
    Mat<FieldElem> expected(n, n);
    expected.setZero();
    FieldElem g = FieldElem::generator(k, t);
    for (int i = 0; i < n; ++i) expected(i, i) = g;
    if (!mats_equal<FieldElem>(phi.generator_images[static_cast<std::size_t>(t)], expected)) {
      rep.ok = false;
      rep.failures.push_back("base generator '" + k->level(t).symbol + "' does not act centrally");
    }
  }

  phi.validated = rep.ok;
  return rep;
}

namespace {

/// Orbit machinery is defined for primitive presentations: exactly one tower
/// level above the base marker, so an embedding is pinned by one image.
void require_primitive(const TowerPtr& k, const char* who) {
  if (k->level_count() != k->base_levels() + 1)
    throw std::invalid_argument(std::string(who) +
                                ": the field must have exactly one tower level above its base subfield");
}

Poly<FieldElem> poly_onto_tower(const Poly<FieldElem>& p, const TowerPtr& target) {
  Poly<FieldElem> out;
  out.reserve(p.size());
  for (const auto& c : p) {
    if (c.is_constant()) {
      out.push_back(c);
    } else {
      out.push_back(FieldElem(target, c.raw_coeffs()));
    }
  }
  return out;
}

}  // namespace

EmbeddingOrbit make_orbit(std::vector<Embedding> members) {
  if (members.empty()) throw std::invalid_argument("make_orbit: empty orbit");
  const TowerPtr& src = members.front().source();
  const TowerPtr& dst = members.front().target();
  require_primitive(src, "make_orbit");
  if (src->level_count() > dst->level_count() || !src->same_structure(*dst->prefix(src->level_count())))
    throw std::invalid_argument("make_orbit: the source field must be a structural prefix of the target");
  for (const auto& e : members) {
    if (!e.source()->same_structure(*src) || !e.target()->same_structure(*dst))
      throw std::invalid_argument("make_orbit: members must share source and target");
    ValidationReport r = validate_embedding(e);
    if (!r.ok) throw std::invalid_argument("make_orbit: member embedding fails validation: " + r.failures.front());
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (members[i].same_images(members[j])) throw std::invalid_argument("make_orbit: repeated member");

  const int top = src->level_count() - 1;
  Poly<FieldElem> common;
  for (const auto& e : members) {
    Poly<FieldElem> mp = minpoly_over(e.generator_image(top), src->level_count());
    mp = poly_onto_tower(mp, src);
    if (common.empty()) {
      common = mp;
    } else if (!poly_equal(common, mp)) {
      throw std::invalid_argument("make_orbit: members have different minimal polynomials over K");
    }
  }
  if (static_cast<int>(members.size()) != poly_degree(common))
    throw std::invalid_argument("make_orbit: orbit size " + std::to_string(members.size()) +
                                " != degree " + std::to_string(poly_degree(common)) +
                                " of the common minimal polynomial");
  return EmbeddingOrbit{std::move(members), std::move(common)};
}

Mat<FieldElem> companion_matrix(const Poly<FieldElem>& monic, const TowerPtr& tower) {
  const int d = poly_degree(monic);
  if (d < 1 || !(monic.back() == FieldElem(1)))
    throw std::invalid_argument("companion_matrix: monic polynomial of positive degree required");
  Mat<FieldElem> c(d, d);
  c.setZero();
  for (int i = 0; i + 1 < d; ++i) c(i + 1, i) = FieldElem(1);
  for (int i = 0; i < d; ++i) c(i, d - 1) = -lift_to(monic[static_cast<std::size_t>(i)], tower);
  return c;
}

TwoSidedStructure build_V_lambda(const EmbeddingOrbit& orbit) {
  const TowerPtr& k = orbit.members.front().source();
  require_primitive(k, "build_V_lambda");
  const int n = poly_degree(orbit.minpoly_over_K);
  std::vector<Mat<FieldElem>> images;
  for (int t = 0; t < k->base_levels(); ++t) {
    Mat<FieldElem> img(n, n);
    img.setZero();
    FieldElem g = FieldElem::generator(k, t);
    for (int i = 0; i < n; ++i) img(i, i) = g;
    images.push_back(std::move(img));
  }
  images.push_back(companion_matrix(orbit.minpoly_over_K, k));
  TwoSidedStructure phi = make_two_sided(k, n, std::move(images));
  ValidationReport rep = validate_phi(phi);
  if (!rep.ok) throw std::logic_error("build_V_lambda: companion construction failed validation");
  return phi;
}

Classification classify(const TwoSidedStructure& phi, const std::vector<CertifiedFactor>& certificates) {
  if (!phi.validated) throw std::invalid_argument("classify: phi must be validated first");
  require_primitive(phi.field, "classify");
  if (certificates.empty()) throw std::invalid_argument("classify: at least one certified factor required");

  Classification out;
  const int top = phi.field->level_count() - 1;
  out.phi_theta = phi_value(phi, FieldElem::generator(phi.field, top));
  out.minpoly = matrix_minpoly<FieldElem>(out.phi_theta);

  Poly<FieldElem> product{FieldElem(1)};
  for (const auto& cert : certificates) {
    if (cert.power < 1) throw std::invalid_argument("classify: factor power must be >= 1");
    if (!poly_is_monic(poly_trim(cert.base))) throw std::invalid_argument("classify: factors must be monic");
    product = poly_mul(product, poly_pow(cert.base, cert.power));
  }
  if (!poly_equal(product, out.minpoly))
    throw std::invalid_argument("classify: certified factors do not multiply to the minimal polynomial " +
                                polynomial_string(out.minpoly, "x"));
  for (std::size_t i = 0; i < certificates.size(); ++i)
    for (std::size_t j = i + 1; j < certificates.size(); ++j) {
      Poly<FieldElem> g = poly_gcd(certificates[i].base, certificates[j].base);
      if (poly_degree(g) != 0) throw std::invalid_argument("classify: certified factors are not pairwise coprime");
    }

  Mat<FieldElem> socle_rows(0, phi.n);
  int primary_total = 0;
  for (const auto& cert : certificates) {
    ComponentReport comp;
    comp.factor_base = cert.base;
    comp.power = cert.power;
    comp.simple_dim = poly_degree(cert.base);
    Mat<FieldElem> at_base = poly_eval_matrix(poly_onto_tower(cert.base, phi.field), out.phi_theta);
    comp.socle_part = Subspace<FieldElem>::from_rows(kernel_rows<FieldElem>(at_base));
    if (cert.power == 1) {
      comp.primary = comp.socle_part;
    } else {
      Mat<FieldElem> at_power = poly_eval_matrix(poly_onto_tower(poly_pow(cert.base, cert.power), phi.field), out.phi_theta);
      comp.primary = Subspace<FieldElem>::from_rows(kernel_rows<FieldElem>(at_power));
    }
    if (comp.socle_part.dim() % comp.simple_dim != 0)
      throw std::invalid_argument(
          "classify: socle component dimension is not divisible by the factor degree; "
          "the factor is not irreducible over K");
    comp.multiplicity = comp.socle_part.dim() / comp.simple_dim;
    comp.semisimple = cert.power == 1 && comp.primary.dim() == comp.socle_part.dim();
    if (!comp.semisimple) out.semisimple = false;
    primary_total += comp.primary.dim();

    Mat<FieldElem> stacked(socle_rows.rows() + comp.socle_part.dim(), phi.n);
    stacked.topRows(socle_rows.rows()) = socle_rows;
    stacked.bottomRows(comp.socle_part.dim()) = comp.socle_part.basis();
    socle_rows = std::move(stacked);
    out.components.push_back(std::move(comp));
  }
  if (primary_total != phi.n)
    throw std::logic_error("classify: primary components do not fill the space");
  out.socle = Subspace<FieldElem>::from_rows(socle_rows);
  return out;
}

std::vector<std::pair<std::string, int>> rank_vector(const Classification& cls) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& comp : cls.components) {
    if (comp.multiplicity > 0) out.emplace_back(polynomial_string(comp.factor_base, "x"), comp.multiplicity);
  }
  return out;
}

ProductPointReport classify_product_point(const TwoSidedStructure& phi, const Classification& cls,
                                          const Subspace<FieldElem>& m_point, const Embedding& emb,
                                          const std::optional<std::vector<int>>& expected_rank,
                                          std::uint64_t seed) {
  ProductPointReport rep;
  const int n = phi.n;
  const std::size_t r = cls.components.size();
  if (m_point.ambient() != n) throw std::invalid_argument("classify_product_point: ambient mismatch");
  if (expected_rank && expected_rank->size() != r)
    throw std::invalid_argument("classify_product_point: expected rank must list one multiplicity per component");

  // Decomposition basis over F: the lifted component bases (in the
  // non-semisimple case the point must live in the socle span for rank
  // queries to be meaningful; outside it the verdict is a flat no).
  std::vector<Mat<FieldElem>> comp_bases;
  int socle_dim = 0;
  for (const auto& comp : cls.components) {
    comp_bases.push_back(lift_matrix(comp.socle_part.basis(), emb));
    socle_dim += comp.socle_part.dim();
  }
  Mat<FieldElem> decomposition(socle_dim, n);
  {
    int at = 0;
    for (const auto& b : comp_bases) {
      decomposition.middleRows(at, b.rows()) = b;
      at += static_cast<int>(b.rows());
    }
  }

  auto coords = solve_left<FieldElem>(decomposition, m_point.basis());
  if (!coords) {
    rep.reason = cls.semisimple ? "point does not lie in the span of the components"
                                : "point is not contained in the socle span";
    return rep;
  }

  // Per-component projections in component coordinates.
  std::vector<Subspace<FieldElem>> projections;
  int proj_total = 0;
  {
    int col_at = 0;
    for (std::size_t j = 0; j < r; ++j) {
      const int dj = static_cast<int>(comp_bases[j].rows());
      Mat<FieldElem> yj = coords->middleCols(col_at, dj);
      col_at += dj;
      Subspace<FieldElem> pj = Subspace<FieldElem>::from_rows(yj);
      rep.projection_dims.push_back(pj.dim());
      proj_total += pj.dim();
      projections.push_back(std::move(pj));
    }
  }
  rep.splits = proj_total == m_point.dim();
  if (!rep.splits) {
    rep.reason = "projections do not split the point (rank mismatch / empty functor)";
    return rep;
  }
  for (std::size_t j = 0; j < r; ++j) {
    const int mj = cls.components[j].simple_dim;
    rep.q.push_back(rep.projection_dims[j] % mj == 0 ? rep.projection_dims[j] / mj : -1);
  }
  for (int qj : rep.q) {
    if (qj < 0) {
      rep.reason = "component projection dimension is not a multiple of the simple dimension (empty functor)";
      return rep;
    }
  }
  if (expected_rank && rep.q != *expected_rank) {
    rep.reason = "point rank differs from the requested rank (empty functor)";
    return rep;
  }

  // Component-level verdicts. The restriction of phi to a component is the
  // matrix of the right action in the component basis.
  rep.verdict.is_F = rep.verdict.is_G = rep.verdict.is_H = true;
  rep.verdict.g_provenance = Provenance::exact_chart_grid;
  for (std::size_t j = 0; j < r; ++j) {
    const auto& comp = cls.components[j];
    const int dj = comp.socle_part.dim();
    const int mj = comp.simple_dim;
    const int lj = comp.multiplicity;
    const int qj = rep.q[j];

    std::vector<Mat<FieldElem>> restricted;
    for (int t = 0; t < phi.field->level_count(); ++t) {
      Mat<FieldElem> moved = comp.socle_part.basis() * phi.generator_images[static_cast<std::size_t>(t)];
      auto rt = solve_left<FieldElem>(comp.socle_part.basis(), moved);
      if (!rt) throw std::logic_error("classify_product_point: component is not invariant");
      restricted.push_back(std::move(*rt));
    }
    MatrixAlgebra<FieldElem> aj = make_algebra<FieldElem>(dj, std::move(restricted));

    InvariantWedgeSpace<FieldElem> wj =
        qj <= 1 ? invariant_wedge_chart_grid<FieldElem>(aj, qj * mj, qj == 0 ? 0 : lj)
                : invariant_wedge_sampled<FieldElem>(aj, qj * mj, seed);
    PointVerdict vj = classify_point_lifted(projections[j], aj, wj, emb);
    rep.verdict.is_F = rep.verdict.is_F && vj.is_F;
    rep.verdict.is_G = rep.verdict.is_G && vj.is_G;
    if (!provenance_exact(wj.provenance)) rep.verdict.g_provenance = wj.provenance;
    rep.verdict.honesty_flag = rep.verdict.honesty_flag || vj.honesty_flag;
    if (!vj.witness.empty())
      rep.reason += (rep.reason.empty() ? "" : "; ") + ("component " + std::to_string(j + 1) + ": " + vj.witness);
    rep.per_component.push_back(std::move(vj));
  }
  rep.verdict.is_H = rep.verdict.is_F && rep.verdict.is_G;
  return rep;
}

Theorem612Report theorem612_check(const TwoSidedStructure& phi, const Subspace<FieldElem>& m_point,
                                  const EmbeddingOrbit& expected, const Embedding& emb) {
  require_primitive(phi.field, "theorem612_check");
  Theorem612Report rep;
  const int top = phi.field->level_count() - 1;
  Mat<FieldElem> theta_f = lift_matrix(phi_value(phi, FieldElem::generator(phi.field, top)), emb);
  auto restricted = solve_left<FieldElem>(m_point.basis(), Mat<FieldElem>(m_point.basis() * theta_f));
  if (!restricted)
    throw std::invalid_argument("theorem612_check: restriction not well-defined (the point is not invariant)");
  rep.restricted_minpoly = matrix_minpoly<FieldElem>(*restricted);
  rep.expected_minpoly.reserve(expected.minpoly_over_K.size());
  for (const auto& c : expected.minpoly_over_K) rep.expected_minpoly.push_back(emb.apply(c));
  rep.matches = poly_equal(rep.restricted_minpoly, rep.expected_minpoly);
  return rep;
}

}  // namespace bigrass
