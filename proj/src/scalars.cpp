#include <ostream>
#include <utility>

#include "bigrass/fp.hpp"
#include "bigrass/rational.hpp"

namespace bigrass {

Rat Rat::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("Rat::parse: empty string");
  try {
    mpq_class q(s, 10);
    q.canonicalize();
    return Rat(std::move(q));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rat::parse: malformed rational '" + s + "'");
  }
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Fp Fp::inverse() const {
  if (p_ == 0) {
    if (v_ == 1 || v_ == -1) return *this;
    throw std::domain_error("Fp: inverse of bare constant with unknown modulus");
  }
  long long a = norm(v_, p_);
  if (a == 0) throw std::domain_error("Fp: division by zero");
  long long t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::domain_error("Fp: modulus is not prime");
  return with(p_, t);
}

Fp Fp::operator/(const Fp& o) const {
  long long p = join(o);
  if (p == 0) {
    if (o.v_ == 0) throw std::domain_error("Fp: division by zero");
    if (v_ % o.v_ != 0) throw std::domain_error("Fp: inexact constant division");
    return with(0, v_ / o.v_);
  }
  Fp rhs = with(p, o.v_);
  return with(p, v_) * rhs.inverse();
}

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.str(); }

}  // namespace bigrass
