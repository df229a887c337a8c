#pragma once

// Independent re-check of a chain certificate. Everything is recomputed from
// the Gram matrix and the recorded vectors; only scalar arithmetic is shared
// with the constructions.

#include <torelli/chain.hpp>

#include <string>

namespace torelli {

struct CheckResult {
  std::string condition;
  bool passed;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::vector<CheckResult> failures() const {
    std::vector<CheckResult> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c);
    return out;
  }
};

namespace check {

inline Scalar form(const IntMatrix& g, const FVector& u, const FVector& v) {
  Scalar s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (u[i].is_zero()) continue;
    Scalar row;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g[i][j] != 0) row = row + Scalar(Rational(g[i][j])) * v[j];
    s = s + u[i] * row;
  }
  return s;
}

inline Scalar det2(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) { return a * d - b * c; }

inline Scalar det3(const std::array<std::array<Scalar, 3>, 3>& m) {
  return m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) - m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
         m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
}

inline std::array<std::array<Scalar, 3>, 3> gram3(const IntMatrix& g, const std::array<FVector, 3>& w) {
  std::array<std::array<Scalar, 3>, 3> m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = form(g, w[i], w[j]);
  return m;
}

// Coordinates of v in the basis w by Cramer's rule on the Gram system, or
// nullopt if v is not in the span.
inline std::optional<std::array<Scalar, 3>> in_span(const IntMatrix& g, const std::array<FVector, 3>& w,
                                                    const FVector& v) {
  const auto m = gram3(g, w);
  const Scalar det = det3(m);
  if (det.is_zero()) return std::nullopt;
  std::array<Scalar, 3> rhs{form(g, w[0], v), form(g, w[1], v), form(g, w[2], v)};
  std::array<Scalar, 3> x;
  for (std::size_t k = 0; k < 3; ++k) {
    auto mk = m;
    for (std::size_t i = 0; i < 3; ++i) mk[i][k] = rhs[i];
    x[k] = det3(mk) / det;
  }
  FVector r = v;
  for (std::size_t k = 0; k < 3; ++k) r = r - x[k] * w[k];
  if (!r.is_zero()) return std::nullopt;
  return x;
}

inline bool positive_pair(const IntMatrix& g, const SpanningPair& p) {
  const Scalar qa = form(g, p.a, p.a), qb = form(g, p.b, p.b), qab = form(g, p.a, p.b);
  return qa.sign() > 0 && det2(qa, qab, qab, qb).sign() > 0;
}

// +1 if q spans p's plane with the same orientation, -1 if opposite, 0 otherwise.
inline int relative_orientation(const IntMatrix& g, const SpanningPair& p, const SpanningPair& q) {
  const Scalar g11 = form(g, p.a, p.a), g12 = form(g, p.a, p.b), g22 = form(g, p.b, p.b);
  const Scalar det = det2(g11, g12, g12, g22);
  if (det.is_zero()) return 0;
  auto coords = [&](const FVector& v) -> std::optional<std::pair<Scalar, Scalar>> {
    const Scalar r1 = form(g, p.a, v), r2 = form(g, p.b, v);
    const Scalar x = det2(r1, g12, r2, g22) / det, y = det2(g11, r1, g12, r2) / det;
    if (!(v - x * p.a - y * p.b).is_zero()) return std::nullopt;
    return std::make_pair(x, y);
  };
  auto ca = coords(q.a), cb = coords(q.b);
  if (!ca || !cb) return 0;
  return det2(ca->first, ca->second, cb->first, cb->second).sign();
}

inline Scalar distance(const Ball& ball, const SpanningPair& p) {
  Scalar m;
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    const Scalar da = (p.a[i] - ball.center.a[i]).abs(), db = (p.b[i] - ball.center.b[i]).abs();
    if (m < da) m = da;
    if (m < db) m = db;
  }
  return m;
}

// p(s) = c0 + c1 s + c2 s^2 has no zero on [0, 1].
inline bool nonvanishing_on_unit_interval(const Scalar& c0, const Scalar& c1, const Scalar& c2) {
  const int s0 = c0.sign(), s1 = (c0 + c1 + c2).sign();
  if (s0 == 0 || s1 == 0 || s0 != s1) return false;
  if (c2.is_zero()) return true;
  const Scalar vertex = -c1 / (Scalar(2) * c2);
  if (vertex.sign() <= 0 || vertex >= Scalar(1)) return true;
  return (c0 + c1 * vertex + c2 * vertex * vertex).sign() == s0;
}

// The pairs (u0 + s du, v0 + s dv), s in [0, 1], stay independent: the cross
// product x(s) of their W-coordinates has z . x(s) sign-definite for one of a
// few fixed z (the axes, the endpoint crosses, and their sum).
inline bool segment_nondegenerate(const std::array<Scalar, 3>& u0, const std::array<Scalar, 3>& u1,
                                  const std::array<Scalar, 3>& v0, const std::array<Scalar, 3>& v1) {
  std::array<Scalar, 3> du, dv;
  for (std::size_t i = 0; i < 3; ++i) {
    du[i] = u1[i] - u0[i];
    dv[i] = v1[i] - v0[i];
  }
  auto cross = [](const std::array<Scalar, 3>& x, const std::array<Scalar, 3>& y) {
    return std::array<Scalar, 3>{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
  };
  const auto k0 = cross(u0, v0), ka = cross(u0, dv), kb = cross(du, v0), k2 = cross(du, dv), k1 = cross(u1, v1);
  std::vector<std::array<Scalar, 3>> zs{k0, k1, {k0[0] + k1[0], k0[1] + k1[1], k0[2] + k1[2]}};
  for (std::size_t i = 0; i < 3; ++i) {
    std::array<Scalar, 3> axis;
    axis[i] = Scalar(1);
    zs.push_back(axis);
  }
  auto dot = [](const std::array<Scalar, 3>& x, const std::array<Scalar, 3>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  };
  for (const auto& z : zs) {
    const Scalar c0 = dot(z, k0), c1 = dot(z, ka) + dot(z, kb), c2 = dot(z, k2);
    if (nonvanishing_on_unit_interval(c0, c1, c2)) return true;
  }
  return false;
}

// X * A == I where A is rebuilt from the basis: row i*d + k holds the t^k
// coefficients of G w_i.
inline bool generic_witness_holds(const IntMatrix& g, const std::array<FVector, 3>& w, const TrivialKernelWitness& x) {
  const std::size_t n = g.size();
  const FieldPtr f = w[0].field();
  const auto d = static_cast<std::size_t>(f->degree());
  RatMatrix a;
  for (const auto& wi : w) {
    std::vector<Scalar> gw(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (g[j][k] != 0) gw[j] = gw[j] + Scalar(Rational(g[j][k])) * wi[k];
    for (std::size_t p = 0; p < d; ++p) {
      RatVector row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = gw[j].lift(f).coefficient(p);
      a.push_back(std::move(row));
    }
  }
  if (x.left_inverse.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (x.left_inverse[i].size() != a.size()) return false;
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < a.size(); ++k) s += x.left_inverse[i][k] * a[k][j];
      if (s != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

}  // namespace check

inline VerificationReport verify_chain(const ChainCertificate& c) {
  VerificationReport rep;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  if (!c.lattice) {
    add("structure", false, "no lattice");
    return rep;
  }
  const IntMatrix& g = c.lattice->gram();
  const std::size_t n = g.size();

  bool shape = !c.points.empty() && c.points.size() == c.lines.size() + 1 && c.require_generic.size() == c.lines.size() &&
               (c.ball ? c.segments.size() == c.lines.size() : c.segments.empty());
  for (const auto& p : c.points) shape = shape && p.a.size() == n && p.b.size() == n;
  for (const auto& t : c.lines)
    for (const auto& w : t.space().basis()) shape = shape && w.size() == n;
  shape = shape && c.from.a.size() == n && c.from.b.size() == n && c.to.a.size() == n && c.to.b.size() == n;
  add("structure", shape, shape ? "" : "point, line, flag, or segment counts disagree");
  if (!shape) return rep;

  for (std::size_t i = 0; i < c.points.size(); ++i)
    add("point[" + std::to_string(i) + "].positive", check::positive_pair(g, c.points[i]));

  for (std::size_t i = 0; i < c.lines.size(); ++i) {
    const std::string tag = "line[" + std::to_string(i) + "]";
    const auto& t = c.lines[i];
    const auto& w = t.space().basis();
    bool same_gram = t.lattice()->gram() == g;
    add(tag + ".lattice", same_gram);
    const auto m = check::gram3(g, w);
    const std::array<Scalar, 3> minors{m[0][0], check::det2(m[0][0], m[0][1], m[1][0], m[1][1]), check::det3(m)};
    bool pos = true, match = true;
    for (std::size_t k = 0; k < 3; ++k) {
      pos = pos && minors[k].sign() > 0;
      match = match && minors[k] == t.space().minors()[k];
    }
    add(tag + ".positive", pos, pos ? "" : "a leading principal minor is not positive");
    add(tag + ".minors", match, match ? "" : "recorded minors differ from recomputed ones");

    if (const auto* gw = std::get_if<GenericWitness>(&t.genericity())) {
      add(tag + ".generic_witness", check::generic_witness_holds(g, w, gw->kernel), "left inverse times constraints");
    } else if (const auto* ng = std::get_if<NonGenericWitness>(&t.genericity())) {
      bool ok = ng->vector.size() == n && !is_zero(ng->vector);
      for (const auto& wi : w) ok = ok && check::form(g, FVector::from_integers(ng->vector), wi).is_zero();
      add(tag + ".nongeneric_witness", ok);
    }
    if (c.require_generic[i]) add(tag + ".required_generic", t.is_generic());

    for (std::size_t j : {i, i + 1}) {
      const bool on = check::in_span(g, w, c.points[j].a).has_value() && check::in_span(g, w, c.points[j].b).has_value();
      add("step[" + std::to_string(i) + "].contains_point[" + std::to_string(j) + "]", on);
    }
  }

  add("endpoint.from", check::relative_orientation(g, c.points.front(), c.from) > 0,
      "first point and requested start are the same oriented plane");
  add("endpoint.to", check::relative_orientation(g, c.points.back(), c.to) > 0,
      "last point and requested end are the same oriented plane");

  if (c.ball) {
    const Ball& ball = *c.ball;
    const Scalar r(ball.radius);
    bool center_ok = ball.center.a.size() == n && ball.center.b.size() == n && ball.radius > 0;
    add("ball.center", center_ok);
    if (!center_ok) return rep;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const Scalar dist = check::distance(ball, c.points[i]);
      const bool inside = (i == 0 && c.closed_start) ? dist <= r : dist < r;
      add("ball.point[" + std::to_string(i) + "]", inside);
    }
    for (std::size_t i = 0; i < c.segments.size(); ++i) {
      const std::string tag = "segment[" + std::to_string(i) + "]";
      const Segment& s = c.segments[i];
      add(tag + ".endpoints", s.from == c.points[i] && s.to == c.points[i + 1]);
      const SpanningPair mid{Scalar(Rational(1, 2)) * (s.from.a + s.to.a), Scalar(Rational(1, 2)) * (s.from.b + s.to.b)};
      add(tag + ".midpoint_in_ball", check::distance(ball, mid) < r);
      const auto& w = c.lines[i].space().basis();
      auto ua = check::in_span(g, w, s.from.a), ub = check::in_span(g, w, s.from.b);
      auto va = check::in_span(g, w, s.to.a), vb = check::in_span(g, w, s.to.b);
      const bool inside = ua && ub && va && vb;
      add(tag + ".in_line", inside);
      add(tag + ".nondegenerate", inside && check::segment_nondegenerate(*ua, *va, *ub, *vb));
    }
  }
  return rep;
}

// Also checks that the certificate joins the given points.
inline VerificationReport verify_chain(const ChainCertificate& c, const PeriodPoint& x, const PeriodPoint& y) {
  VerificationReport rep = verify_chain(c);
  if (!c.lattice || c.points.empty()) return rep;
  const IntMatrix& g = c.lattice->gram();
  rep.checks.push_back({"endpoint.x", check::relative_orientation(g, x.pair(), c.points.front()) > 0, ""});
  rep.checks.push_back({"endpoint.y", check::relative_orientation(g, y.pair(), c.points.back()) > 0, ""});
  return rep;
}

}  // namespace torelli
