#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace bigrass {

/// Prime-field scalar with runtime modulus. A default-constructed value (or
/// one built from a bare int) carries modulus 0 and acts as an integer
/// constant that adopts the modulus of the first proper field element it is
/// combined with; this is what lets Fp serve as an Eigen scalar, where the
/// library materializes Scalar(0) and Scalar(1) with no field context.
class Fp {
 public:
  Fp() = default;
  Fp(int n) : v_(n) {}  // NOLINT: implicit constant
  Fp(long n) : v_(n) {}

  static Fp of(long long value, long long p) {
    if (p < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
    Fp r;
    r.p_ = p;
    r.v_ = norm(value, p);
    return r;
  }

  long long value() const { return v_; }
  long long modulus() const { return p_; }
  bool is_constant() const { return p_ == 0; }
  bool is_zero() const { return v_ == 0; }

  Fp operator-() const { return with(p_, -v_); }
  Fp operator+(const Fp& o) const {
    long long p = join(o);
    return with(p, v_ + o.v_);
  }
  Fp operator-(const Fp& o) const {
    long long p = join(o);
    return with(p, v_ - o.v_);
  }
  Fp operator*(const Fp& o) const {
    long long p = join(o);
    return with(p, v_ * o.v_);
  }
  Fp operator/(const Fp& o) const;
  Fp inverse() const;

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  bool operator==(const Fp& o) const {
    long long p = join(o);
    return p == 0 ? v_ == o.v_ : norm(v_, p) == norm(o.v_, p);
  }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  std::string str() const { return std::to_string(v_); }

  friend Fp abs(const Fp& x) { return x; }

 private:
  static long long norm(long long v, long long p) {
    long long r = v % p;
    return r < 0 ? r + p : r;
  }
  static Fp with(long long p, long long v) {
    Fp r;
    r.p_ = p;
    r.v_ = p == 0 ? v : norm(v, p);
    return r;
  }
  long long join(const Fp& o) const {
    if (p_ != 0 && o.p_ != 0 && p_ != o.p_)
      throw std::invalid_argument("Fp: modulus mismatch (" + std::to_string(p_) + " vs " +
                                  std::to_string(o.p_) + ")");
    return p_ != 0 ? p_ : o.p_;
  }

  long long v_ = 0;
  long long p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fp& x);

}  // namespace bigrass

namespace Eigen {
template <>
struct NumTraits<bigrass::Fp> : GenericNumTraits<bigrass::Fp> {
  typedef bigrass::Fp Real;
  typedef bigrass::Fp NonInteger;
  typedef bigrass::Fp Nested;
  typedef bigrass::Fp Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2,
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
