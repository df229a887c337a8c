#pragma once

// Dense univariate polynomials over Q, coefficients stored low degree first.

#include <torelli/integer.hpp>

#include <utility>

namespace torelli::poly {

using Poly = RatVector;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline Poly scale(const Poly& a, const Rational& s) {
  Poly r(a);
  for (auto& x : r) x *= s;
  trim(r);
  return r;
}

// Returns (quotient, remainder).
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  const int db = degree(b);
  if (db < 0) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const int da = degree(a);
  if (da < db) return {Poly{}, a};
  Poly q(static_cast<std::size_t>(da - db + 1), 0);
  const Rational lead = b[static_cast<std::size_t>(db)];
  for (int k = da; k >= db; --k) {
    const Rational c = a[static_cast<std::size_t>(k)] / lead;
    if (c == 0) continue;
    q[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(k - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly mod(const Poly& a, const Poly& b) { return divmod(a, b).second; }

inline Poly monic(const Poly& a) {
  const int d = degree(a);
  if (d < 0) return {};
  return scale(a, 1 / a[static_cast<std::size_t>(d)]);
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (degree(b) >= 0) {
    Poly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Extended Euclid: returns (g, u) with u*a == g (mod m), g monic.
inline std::pair<Poly, Poly> inverse_mod(const Poly& a, const Poly& m) {
  Poly r0 = m, r1 = a, s0{}, s1{Rational(1)};
  trim(r1);
  while (degree(r1) >= 0) {
    auto [q, r] = divmod(r0, r1);
    Poly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  const int d = degree(r0);
  if (d < 0) return {Poly{}, Poly{}};
  const Rational lead = r0[static_cast<std::size_t>(d)];
  return {scale(r0, 1 / lead), mod(scale(s0, 1 / lead), m)};
}

inline Rational eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

// Sturm sequence p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
inline std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq{p, derivative(p)};
  while (degree(seq.back()) > 0) {
    Poly r = scale(mod(seq[seq.size() - 2], seq.back()), -1);
    if (degree(r) < 0) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

inline int sign_changes(const std::vector<Poly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    const int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Number of distinct real roots in (lo, hi].
inline int count_roots(const Poly& p, const Rational& lo, const Rational& hi) {
  const auto seq = sturm_sequence(p);
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

inline Poly from_integers(const IntVector& c) {
  Poly p;
  for (const auto& x : c) p.emplace_back(x);
  trim(p);
  return p;
}

}  // namespace torelli::poly
