#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace bigrass {

/// Exact rational scalar. Thin value wrapper around GMP's mpq_class so that
/// arithmetic returns plain values (no expression templates) and division by
/// zero throws instead of trapping.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(int n) : q_(n) {}                 // NOLINT: implicit by design (Eigen literals)
  Rat(long n) : q_(n) {}
  Rat(long long n) : q_(static_cast<long>(n)) {}
  Rat(long long num, long long den) : q_(static_cast<long>(num), static_cast<long>(den)) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) {}

  /// Parses "a", "-a", or "a/b" with arbitrary-precision integers.
  static Rat parse(std::string_view text);

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  const mpq_class& raw() const { return q_; }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(mpq_class(q_ / o.q_));
  }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  bool operator==(const Rat& o) const { return q_ == o.q_; }
  bool operator!=(const Rat& o) const { return q_ != o.q_; }
  bool operator<(const Rat& o) const { return q_ < o.q_; }
  bool operator<=(const Rat& o) const { return q_ <= o.q_; }
  bool operator>(const Rat& o) const { return q_ > o.q_; }
  bool operator>=(const Rat& o) const { return q_ >= o.q_; }

  std::string str() const { return q_.get_str(); }

  friend Rat abs(const Rat& r) { return Rat(mpq_class(::abs(r.q_))); }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace bigrass

namespace Eigen {
template <>
struct NumTraits<bigrass::Rat> : GenericNumTraits<bigrass::Rat> {
  typedef bigrass::Rat Real;
  typedef bigrass::Rat NonInteger;
  typedef bigrass::Rat Nested;
  typedef bigrass::Rat Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
