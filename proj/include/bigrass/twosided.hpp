#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigrass/points.hpp"

namespace bigrass {

/// A ring homomorphism phi: K -> M_n(K) presented by the matrix images of
/// the tower generators; multiplicativity on all of K follows from the
/// generator relations checked by validate_phi, so pointwise rechecking is
/// never needed. K^n with v . x = v phi(x) is the two-sided vector space the
/// homomorphism defines.
struct TwoSidedStructure {
  TowerPtr field;  // K, whose base marker designates k
  int n = 0;
  std::vector<Mat<FieldElem>> generator_images;  // one per tower level
  bool validated = false;
};

TwoSidedStructure make_two_sided(TowerPtr field, int n, std::vector<Mat<FieldElem>> generator_images);

/// Checks the defining relations: each generator image satisfies that
/// generator's minimal polynomial (lower-level coefficients mapped through
/// phi), and the marked base subfield acts by scalar matrices. Marks the
/// structure validated on success.
ValidationReport validate_phi(TwoSidedStructure& phi);

/// phi evaluated at an arbitrary element of K.
Mat<FieldElem> phi_value(const TwoSidedStructure& phi, const FieldElem& x);

/// The image algebra im(phi) presented by the generator images.
MatrixAlgebra<FieldElem> image_algebra(const TwoSidedStructure& phi);

/// A finite orbit of validated k-linear embeddings of K into a common
/// extension, classified by the shared minimal polynomial of the primitive
/// generator images over K. Requires K to be presented with exactly one
/// level above its base marker (a primitive-element presentation) and to be
/// a structural prefix of the target field.
struct EmbeddingOrbit {
  std::vector<Embedding> members;
  Poly<FieldElem> minpoly_over_K;  // coefficients over the source tower
};

EmbeddingOrbit make_orbit(std::vector<Embedding> members);

/// The simple two-sided vector space attached to an orbit: dimension equals
/// the orbit size and the primitive generator acts by the companion matrix
/// of the orbit's minimal polynomial. The result validates and classifies
/// back to the same orbit.
TwoSidedStructure build_V_lambda(const EmbeddingOrbit& orbit);

Mat<FieldElem> companion_matrix(const Poly<FieldElem>& monic, const TowerPtr& tower);

/// One coprime piece of the user-supplied factorization of the minimal
/// polynomial of phi(theta): base^power, with `base` asserted irreducible
/// over K. Irreducibility is never verified here; a false assertion
/// surfaces as a failed divisibility or coprimality check, not as silent
/// corruption.
struct CertifiedFactor {
  Poly<FieldElem> base;
  int power = 1;
};

struct ComponentReport {
  Poly<FieldElem> factor_base;
  int power = 1;
  Subspace<FieldElem> primary;     // kernel of base^power(phi(theta))
  Subspace<FieldElem> socle_part;  // kernel of base(phi(theta))
  int simple_dim = 0;              // deg(base)
  int multiplicity = 0;            // dim(socle_part) / deg(base)
  bool semisimple = true;
};

struct Classification {
  bool semisimple = true;
  std::vector<ComponentReport> components;
  Subspace<FieldElem> socle;
  Mat<FieldElem> phi_theta;
  Poly<FieldElem> minpoly;
};

/// Isotypic decomposition from certified factors: component j is the kernel
/// of base_j^power_j at phi(theta), its socle part the kernel of base_j, and
/// the rank vector reads off multiplicity = dim/deg per component. Rank is
/// computed for the socle only (with the semisimple flag cleared) when some
/// power exceeds one.
Classification classify(const TwoSidedStructure& phi, const std::vector<CertifiedFactor>& certificates);

/// Rank vector as (factor string, multiplicity) pairs, socle ranks when the
/// structure is not semisimple.
std::vector<std::pair<std::string, int>> rank_vector(const Classification& cls);

struct ProductPointReport {
  PointVerdict verdict;
  bool splits = false;
  std::vector<int> projection_dims;
  std::vector<int> q;  // per-component multiplicity of the point, -1 when not integral
  std::vector<PointVerdict> per_component;
  std::string reason;
};

/// Verdict for a point of the product-level parameter spaces: project M onto
/// the homogeneous components, demand a compatible splitting with integral
/// per-component ranks (otherwise the functor is empty at this rank and the
/// verdict is all-false), then classify each projection against the
/// component-level invariant wedge space and conjoin.
ProductPointReport classify_product_point(const TwoSidedStructure& phi, const Classification& cls,
                                          const Subspace<FieldElem>& m_point, const Embedding& emb,
                                          const std::optional<std::vector<int>>& expected_rank = std::nullopt,
                                          std::uint64_t seed = 0xB16A55);

struct Theorem612Report {
  bool matches = false;
  Poly<FieldElem> restricted_minpoly;  // over the extension field
  Poly<FieldElem> expected_minpoly;    // the orbit minpoly, lifted
};

/// Checks that the right action of the primitive generator restricted to an
/// invariant point has the full-orbit minimal polynomial of the expected
/// simple. Throws when the restriction is not well defined (M not
/// invariant).
Theorem612Report theorem612_check(const TwoSidedStructure& phi, const Subspace<FieldElem>& m_point,
                                  const EmbeddingOrbit& expected, const Embedding& emb);

}  // namespace bigrass
