#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bigrass/rational.hpp"

namespace bigrass {

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

/// A tower of simple algebraic extensions of the rationals,
/// Q(g_1)(g_2)...(g_L), together with a marker designating which prefix of
/// the tower is the distinguished base subfield k (0 = Q itself).
///
/// Elements are dense rational coefficient vectors over the monomial basis
/// {g_1^{e_1} ... g_L^{e_L} : 0 <= e_t < deg_t}, indexed in mixed radix with
/// the level-1 exponent varying fastest. A consequence used throughout: the
/// first dim(prefix) coordinates are exactly the prefix field, so restriction
/// and inclusion between a tower and its prefixes are truncation and
/// zero-extension.
///
/// Construction precomputes, per level, the full basis multiplication tables,
/// making products a short sum of matrix-vector products and inverses a
/// single exact linear solve. Towers are immutable and shared by pointer.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  struct Level {
    std::string symbol;
    MatQ minpoly_low;  // degree x prev_dim: rows are c_0..c_{d-1} of the monic minpoly
  };

  /// Builds and validates a tower. Level minpolys are given by their low
  /// coefficients (the leading coefficient is implicitly 1); each row t is a
  /// vector over the basis of the prefix tower below level t.
  static TowerPtr make(std::vector<Level> levels, int base_marker);

  /// The empty tower: the rationals themselves.
  static TowerPtr rationals();

  int level_count() const { return static_cast<int>(levels_.size()); }
  int degree() const { return dims_.back(); }
  int base_levels() const { return base_levels_; }
  /// Dimension over Q of the prefix with `t` levels.
  int dim_at(int t) const { return dims_.at(static_cast<std::size_t>(t)); }
  const Level& level(int t) const { return levels_.at(static_cast<std::size_t>(t)); }
  int level_degree(int t) const { return static_cast<int>(levels_[static_cast<std::size_t>(t)].minpoly_low.rows()); }

  /// Prefix tower with the first `t` levels (shares structure, cached).
  TowerPtr prefix(int t) const;

  bool same_structure(const FieldTower& other) const;
  std::uint64_t structure_hash() const { return hash_; }

  /// Index of the level whose generator has this symbol, or -1.
  int find_symbol(std::string_view symbol) const;

  std::vector<int> exponents_of(int basis_index) const;
  std::string monomial_string(int basis_index) const;

  // Scalar arithmetic on raw coefficient vectors of full tower degree.
  VecQ mul(const VecQ& a, const VecQ& b) const;
  VecQ inv(const VecQ& a) const;  // throws std::domain_error on non-invertible input

  std::string describe() const;

 private:
  FieldTower() = default;

  std::vector<Level> levels_;
  int base_levels_ = 0;
  std::vector<int> dims_;               // dims_[t] = degree of prefix t; dims_[0] = 1
  std::vector<MatQ> mult_by_basis_;     // [j]: D x D matrix M_j with (a * basis_j) = M_j a
  std::vector<TowerPtr> prefixes_;      // strict prefixes, length = level_count()
  std::uint64_t hash_ = 0;
};

/// An element of a FieldTower, or a bare rational constant when no tower is
/// attached. Constants embed into any tower on contact, which is what allows
/// FieldElem to satisfy Eigen's scalar requirements (Scalar(0), Scalar(1))
/// without a field context. Mixing two distinct towers throws.
class FieldElem {
 public:
  FieldElem() : constant_(0) {}
  FieldElem(int n) : constant_(n) {}  // NOLINT: implicit constant
  FieldElem(const Rat& r) : constant_(r) {}  // NOLINT
  FieldElem(TowerPtr tower, VecQ coeffs);

  static FieldElem zero(const TowerPtr& t) { return monomial(t, 0, Rat(0)); }
  static FieldElem one(const TowerPtr& t) { return monomial(t, 0, Rat(1)); }
  static FieldElem generator(const TowerPtr& t, int level);
  static FieldElem monomial(const TowerPtr& t, int basis_index, Rat coefficient);

  bool is_constant() const { return tower_ == nullptr; }
  bool is_zero() const;
  const TowerPtr& tower() const { return tower_; }

  /// Coefficient vector over the given tower; promotes constants, accepts a
  /// structurally equal tower, and throws otherwise.
  VecQ coeffs_in(const TowerPtr& t) const;
  const VecQ& raw_coeffs() const { return coeffs_; }
  const Rat& constant_value() const { return constant_; }

  /// The rational value when the element lies in Q; nullopt otherwise.
  std::optional<Rat> as_rational() const;

  FieldElem operator-() const;
  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem inverse() const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  std::string str() const;

  friend FieldElem abs(const FieldElem& x) { return x; }

 private:
  TowerPtr tower_;  // null: rational constant
  VecQ coeffs_;     // length = tower degree when towered
  Rat constant_;    // used when tower_ is null
};

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

/// Zero-extends an element of a prefix field into `bigger`. Throws unless the
/// element's tower is structurally a prefix of `bigger` (constants always
/// lift).
FieldElem lift_to(const FieldElem& x, const TowerPtr& bigger);

/// Truncates into `smaller` when the element is supported on the prefix
/// monomials; nullopt when it genuinely lives higher up.
std::optional<FieldElem> restrict_to(const FieldElem& x, const TowerPtr& smaller);

/// Representation of x over the prefix with `sub_levels` levels: the relative
/// coordinate vector, whose entries are elements of the prefix field. Length
/// is degree / prefix-degree.
std::vector<FieldElem> blocks_over_prefix(const FieldElem& x, int sub_levels);

/// A k-linear field embedding given by generator images, validated rather
/// than searched for. Application is evaluation on the monomial basis.
class Embedding {
 public:
  Embedding(TowerPtr source, TowerPtr target, std::vector<FieldElem> generator_images);

  /// Canonical inclusion of a structural prefix.
  static Embedding inclusion(const TowerPtr& source, const TowerPtr& target);

  const TowerPtr& source() const { return source_; }
  const TowerPtr& target() const { return target_; }
  const FieldElem& generator_image(int level) const {
    return images_.at(static_cast<std::size_t>(level));
  }

  FieldElem apply(const FieldElem& x) const;

  bool same_images(const Embedding& other) const;

 private:
  TowerPtr source_;
  TowerPtr target_;
  std::vector<FieldElem> images_;        // one per source level
  std::vector<FieldElem> basis_images_;  // image of every source basis monomial
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Checks that every generator image is a root of its (mapped) minimal
/// polynomial and that the marked base subfield is fixed pointwise. Failure
/// is a report, not an exception.
ValidationReport validate_embedding(const Embedding& e);

/// Minimal monic polynomial of x over the prefix field with `sub_levels`
/// levels, as a low-to-high coefficient list over that prefix (the leading 1
/// is included). Computed from the first linear dependency among the powers
/// of x over the prefix.
std::vector<FieldElem> minpoly_over(const FieldElem& x, int sub_levels);

// ----- literal syntax ------------------------------------------------------
//
// Elements are written as sums of terms, each term a '*'-product of a signed
// rational and generator powers: "1/2*r^2 - z + 3". Polynomials use one
// extra variable symbol. Whitespace is insignificant.

FieldElem parse_element(std::string_view text, const TowerPtr& tower);
std::vector<FieldElem> parse_polynomial(std::string_view text, std::string_view variable,
                                        const TowerPtr& coefficient_tower);

std::string polynomial_string(const std::vector<FieldElem>& poly, std::string_view variable);

/// Builds a tower from (symbol, minimal polynomial) pairs, each polynomial
/// written in the literal syntax with variable "x" and coefficients drawn
/// from the levels below it.
TowerPtr make_tower(const std::vector<std::pair<std::string, std::string>>& levels, int base_marker);

}  // namespace bigrass

namespace Eigen {
template <>
struct NumTraits<bigrass::FieldElem> : GenericNumTraits<bigrass::FieldElem> {
  typedef bigrass::FieldElem Real;
  typedef bigrass::FieldElem NonInteger;
  typedef bigrass::FieldElem Nested;
  typedef bigrass::FieldElem Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 200,
    MulCost = 400,
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
