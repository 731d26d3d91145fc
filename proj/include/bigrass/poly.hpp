#pragma once

#include <stdexcept>
#include <vector>

#include "bigrass/linalg.hpp"

namespace bigrass {

/// Dense univariate polynomials, low to high; the zero polynomial is the
/// empty vector.
template <class S>
using Poly = std::vector<S>;

template <class S>
Poly<S> poly_trim(Poly<S> p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
  return p;
}

template <class S>
int poly_degree(const Poly<S>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class S>
bool poly_is_monic(const Poly<S>& p) {
  return !p.empty() && p.back() == S(1);
}

template <class S>
bool poly_equal(const Poly<S>& a, const Poly<S>& b) {
  Poly<S> x = poly_trim(a), y = poly_trim(b);
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return false;
  return true;
}

template <class S>
Poly<S> poly_add(const Poly<S>& a, const Poly<S>& b) {
  Poly<S> out(std::max(a.size(), b.size()), S(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return poly_trim(std::move(out));
}

template <class S>
Poly<S> poly_neg(Poly<S> a) {
  for (auto& c : a) c = -c;
  return a;
}

template <class S>
Poly<S> poly_mul(const Poly<S>& a, const Poly<S>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<S> out(a.size() + b.size() - 1, S(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_trim(std::move(out));
}

template <class S>
Poly<S> poly_pow(const Poly<S>& a, int e) {
  Poly<S> out{S(1)};
  for (int i = 0; i < e; ++i) out = poly_mul(out, a);
  return out;
}

/// Euclidean division by a nonzero divisor over a field.
template <class S>
std::pair<Poly<S>, Poly<S>> poly_divmod(Poly<S> a, const Poly<S>& b) {
  Poly<S> bb = poly_trim(b);
  if (bb.empty()) throw std::domain_error("poly_divmod: division by zero polynomial");
  a = poly_trim(std::move(a));
  Poly<S> q(a.size() > bb.size() - 1 ? a.size() - bb.size() + 1 : 0, S(0));
  S lead_inv = S(1) / bb.back();
  while (a.size() >= bb.size()) {
    S f = a.back() * lead_inv;
    std::size_t shift = a.size() - bb.size();
    q[shift] = f;
    for (std::size_t i = 0; i < bb.size(); ++i) a[shift + i] -= f * bb[i];
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  return {poly_trim(std::move(q)), std::move(a)};
}

/// Monic gcd over a field.
template <class S>
Poly<S> poly_gcd(Poly<S> a, Poly<S> b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    auto [q, r] = poly_divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    S inv = S(1) / a.back();
    for (auto& c : a) c = c * inv;
  }
  return a;
}

template <class S>
S poly_eval(const Poly<S>& p, const S& x) {
  S acc = S(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

template <class S>
Mat<S> poly_eval_matrix(const Poly<S>& p, const Mat<S>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("poly_eval_matrix: matrix not square");
  const Eigen::Index n = a.rows();
  Mat<S> acc(n, n);
  acc.setZero();
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * a;
    for (Eigen::Index d = 0; d < n; ++d) acc(d, d) += p[i];
  }
  return acc;
}

}  // namespace bigrass
