#pragma once

// Chains of twistor lines joining period points, emitted as certificates that
// verify.hpp re-checks from scratch. Chain points are raw spanning pairs: ball
// membership depends on the basis, not only on the oriented plane.

#include <torelli/twistor.hpp>

#include <functional>
#include <string>

namespace torelli {

// Max-norm ball of ordered spanning pairs around a designated center pair.
struct Ball {
  SpanningPair center;
  Rational radius;
};

// The affine path of spanning pairs from `from` to `to`.
struct Segment {
  SpanningPair from;
  SpanningPair to;
};

struct ChainCertificate {
  LatticePtr lattice;
  SpanningPair from, to;
  std::vector<SpanningPair> points;
  std::vector<TwistorLine> lines;
  std::vector<bool> require_generic;
  std::optional<Ball> ball;
  bool closed_start = false;  // the first point may sit on the boundary of the ball
  std::vector<Segment> segments;

  std::size_t length() const { return lines.size(); }
};

struct NotNearEnough {
  std::string reason;
};
using WeakResult = std::variant<ChainCertificate, NotNearEnough>;

enum class ChainMode { Weak, Strong };

inline Scalar ball_distance(const Ball& ball, const SpanningPair& p) {
  const Scalar da = (p.a - ball.center.a).max_norm(), db = (p.b - ball.center.b).max_norm();
  return da < db ? db : da;
}
inline bool in_ball(const Ball& ball, const SpanningPair& p) { return ball_distance(ball, p) < Scalar(ball.radius); }
inline bool in_closed_ball(const Ball& ball, const SpanningPair& p) {
  return ball_distance(ball, p) <= Scalar(ball.radius);
}

namespace detail {

inline void require_same_lattice(const PeriodPoint& x, const PeriodPoint& y) {
  if (x.lattice()->gram() != y.lattice()->gram())
    throw Error(ErrorCode::InvalidArgument, "period points live in different lattices");
}

inline ChainCertificate trivial_chain(const LatticePtr& l, const SpanningPair& x, const SpanningPair& y) {
  ChainCertificate c;
  c.lattice = l;
  c.from = x;
  c.to = y;
  c.points = {x};
  return c;
}

// The span of the positive frame, a rational positive three-space whose
// orthogonal complement is negative definite.
inline std::array<FVector, 3> frame_basis(const QuadLattice& l) {
  if (l.signature().positive != 3)
    throw Error(ErrorCode::NoPositiveThreeSpace, "chain routing needs exactly three positive directions");
  const auto& f = l.positive_frame();
  return {FVector::from_integers(f[0]), FVector::from_integers(f[1]), FVector::from_integers(f[2])};
}

inline FVector frame_projection(const QuadLattice& l, const std::array<FVector, 3>& f, const FVector& v) {
  FVector out(v.field(), v.size());
  for (const auto& fi : f) out = out + (l.form(fi, v) / l.norm(fi)) * fi.lift(v.field());
  return out;
}

// The q-normal of <u, v> inside the frame space, oriented so that
// (n, pi(u), pi(v)) is positive in frame coordinates. It is q-orthogonal to
// u and v themselves, not only to their projections.
inline FVector frame_normal(const QuadLattice& l, const std::array<FVector, 3>& f, const FVector& u, const FVector& v) {
  std::array<Scalar, 3> ru, rv;
  for (std::size_t i = 0; i < 3; ++i) {
    ru[i] = l.form(f[i], u);
    rv[i] = l.form(f[i], v);
  }
  const FieldPtr fld = common_field(u.field(), v.field());
  return (ru[1] * rv[2] - ru[2] * rv[1]) * f[0].lift(fld) + (ru[2] * rv[0] - ru[0] * rv[2]) * f[1].lift(fld) +
         (ru[0] * rv[1] - ru[1] * rv[0]) * f[2].lift(fld);
}

// v minus its q-orthogonal projection onto span(s); nullopt if q is
// degenerate on that span.
inline std::optional<FVector> orthogonal_part(const QuadLattice& l, const std::vector<FVector>& s, const FVector& v) {
  std::vector<FVector> basis;
  for (const auto& x : s) {
    auto trial = basis;
    trial.push_back(x);
    if (linalg::rank(trial) == trial.size()) basis = std::move(trial);
  }
  const std::size_t k = basis.size();
  linalg::Matrix<Scalar> m(k, std::vector<Scalar>(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = l.form(basis[i], basis[j]);
    m[i][k] = l.form(basis[i], v);
  }
  const auto piv = linalg::reduce_rows(m);
  if (piv.size() < k || (!piv.empty() && piv.back() == k)) return std::nullopt;
  FVector out = v;
  for (std::size_t r = 0; r < k; ++r) out = out - m[r][k] * basis[piv[r]];
  return out;
}

// A rational R >= max-norm of v, so that v / R has max-norm at most 1.
inline Rational norm_bound(const FVector& v) {
  double m = 0;
  for (const auto& x : v.coords()) m = std::max(m, std::abs(x.approx()));
  return Rational(static_cast<long>(std::ceil(m)) + 1);
}

inline FVector normalized(const FVector& v) { return Scalar(Rational(1) / norm_bound(v)) * v; }

inline std::optional<ThreeSpace> try_space(const LatticePtr& l, const FVector& u, const FVector& v, const FVector& w) {
  try {
    return ThreeSpace::make(l, u, v, w);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite || e.code() == ErrorCode::DependentSpan) return std::nullopt;
    throw;
  }
}

inline bool is_positive_pair(const QuadLattice& l, const SpanningPair& p) {
  const Scalar qa = l.norm(p.a), qab = l.form(p.a, p.b);
  return qa.sign() > 0 && (qa * l.norm(p.b) - qab * qab).sign() > 0;
}

// Positive directions orthogonal to as much of both planes as possible.
inline std::vector<FVector> third_vector_candidates(const QuadLattice& l, const std::array<FVector, 3>& frame,
                                                    const SpanningPair& x, const SpanningPair& y) {
  std::vector<FVector> out;
  const std::vector<std::vector<FVector>> spans{{x.a, x.b, y.a, y.b}, {x.a, x.b}, {x.a, y.b}, {y.a, y.b}};
  for (const auto& s : spans)
    for (const auto& f : frame) {
      auto c = orthogonal_part(l, s, f.lift(common_field(x.a.field(), y.a.field())));
      if (c && !c->is_zero() && l.norm(*c).sign() > 0) out.push_back(normalized(*c));
    }
  return out;
}

struct StrongContext {
  FieldPtr field;
  Rng* rng;
  int budget;
};

// Moves c by a small field vector until every space in `spaces(c)` is positive
// and every resulting line is generic.
inline std::optional<std::vector<TwistorLine>> generic_lines(
    const LatticePtr& l, const FVector& c0, const StrongContext& ctx,
    const std::function<std::optional<std::vector<ThreeSpace>>(const FVector&)>& spaces) {
  Rational eta(1, 16);
  for (int attempt = 0; attempt < ctx.budget; ++attempt) {
    const FVector g = normalized(ctx.rng->small_vector(ctx.field, l->rank(), 3));
    const FVector c = c0.lift(ctx.field) + Scalar(eta) * g;
    auto sp = spaces(c);
    if (!sp) {
      eta /= 2;
      continue;
    }
    std::vector<TwistorLine> lines;
    bool generic = true;
    for (const auto& s : *sp) {
      lines.push_back(check_generic(TwistorLine(s)));
      if (!lines.back().is_generic()) {
        generic = false;
        break;
      }
    }
    if (generic) return lines;
  }
  return std::nullopt;
}

// The three-line construction: c positive with <a,b,c>, <a,b',c>, <a',b',c>
// positive, chain points <a,b>, <a,c>, <b',c>, <a',b'>.
inline std::optional<ChainCertificate> weak_step(const LatticePtr& l, const SpanningPair& x, const SpanningPair& y,
                                                 const StrongContext* strong) {
  const auto frame = frame_basis(*l);
  auto spaces = [&](const FVector& c) -> std::optional<std::vector<ThreeSpace>> {
    auto t1 = try_space(l, x.a, x.b, c);
    if (!t1) return std::nullopt;
    auto t2 = try_space(l, x.a, y.b, c);
    if (!t2) return std::nullopt;
    auto t3 = try_space(l, y.a, y.b, c);
    if (!t3) return std::nullopt;
    return std::vector<ThreeSpace>{*t1, *t2, *t3};
  };
  for (const auto& c0 : third_vector_candidates(*l, frame, x, y)) {
    std::vector<TwistorLine> lines;
    FVector c = c0;
    if (strong) {
      auto g = generic_lines(l, c0, *strong, spaces);
      if (!g) continue;
      lines = std::move(*g);
      c = lines[0].space()[2];
    } else {
      auto sp = spaces(c0);
      if (!sp) continue;
      for (auto& s : *sp) lines.emplace_back(std::move(s));
    }
    ChainCertificate cert;
    cert.lattice = l;
    cert.from = x;
    cert.to = y;
    cert.points = {x, {x.a, c}, {y.b, c}, y};
    cert.lines = std::move(lines);
    cert.require_generic.assign(3, strong != nullptr);
    return cert;
  }
  return std::nullopt;
}

// One line through two representatives of the same plane.
inline std::optional<ChainCertificate> same_plane_step(const LatticePtr& l, const SpanningPair& x,
                                                       const SpanningPair& y, const StrongContext* strong) {
  const auto frame = frame_basis(*l);
  auto spaces = [&](const FVector& c) -> std::optional<std::vector<ThreeSpace>> {
    auto t = try_space(l, x.a, x.b, c);
    if (!t) return std::nullopt;
    return std::vector<ThreeSpace>{*t};
  };
  const FVector n = normalized(frame_normal(*l, frame, x.a, x.b));
  std::vector<TwistorLine> lines;
  if (strong) {
    auto g = generic_lines(l, n, *strong, spaces);
    if (!g) return std::nullopt;
    lines = std::move(*g);
  } else {
    auto sp = spaces(n);
    if (!sp) return std::nullopt;
    lines.emplace_back(std::move(sp->front()));
  }
  ChainCertificate cert;
  cert.lattice = l;
  cert.from = x;
  cert.to = y;
  cert.points = {x, y};
  cert.lines = std::move(lines);
  cert.require_generic.assign(1, strong != nullptr);
  return cert;
}

inline void append(ChainCertificate& out, const ChainCertificate& c) {
  if (!(out.points.back() == c.points.front()))
    throw Error(ErrorCode::Degenerate, "chain pieces do not share an endpoint");
  out.points.insert(out.points.end(), c.points.begin() + 1, c.points.end());
  out.lines.insert(out.lines.end(), c.lines.begin(), c.lines.end());
  out.require_generic.insert(out.require_generic.end(), c.require_generic.begin(), c.require_generic.end());
}

}  // namespace detail

// Three lines through a positive c, or NotNearEnough when no trial c keeps
// all three spaces positive.
inline WeakResult connect_weak(const PeriodPoint& x, const PeriodPoint& y) {
  detail::require_same_lattice(x, y);
  const auto& l = x.lattice();
  if (same_point(x, y)) return detail::trivial_chain(l, x.pair(), y.pair());
  if (auto c = detail::weak_step(l, x.pair(), y.pair(), nullptr)) return *c;
  return NotNearEnough{"no trial c keeps <a,b,c>, <a,b',c>, <a',b',c> positive"};
}

// Routes x -> pi(x) -> pi(y) -> y, where pi projects onto the frame space W0.
// Along (pi(a) + (1-s) a^-, pi(b) + (1-s) b^-) the Gram matrix only grows, so
// every waypoint is a positive plane. Inside W0 the weak mode uses the single
// line T_W0; the strong mode walks the normal sphere of W0 with generic lines.
// Pieces that fail to connect are bisected.
inline ChainCertificate connect_global(const PeriodPoint& x, const PeriodPoint& y, const FieldPtr& field,
                                       std::uint64_t seed, int max_subdivisions, ChainMode mode = ChainMode::Weak) {
  detail::require_same_lattice(x, y);
  const auto& l = x.lattice();
  const QuadLattice& q = *l;
  const auto frame = detail::frame_basis(q);
  FieldPtr f = common_field(x.field(), y.field());
  if (field) f = common_field(f, field);
  if (mode == ChainMode::Strong && static_cast<std::size_t>(f->degree()) < q.rank())
    throw Error(ErrorCode::FieldDegreeTooSmall, "strong chains need deg(field) >= rank for a generic c");
  const SpanningPair xp{x.a().lift(f), x.b().lift(f)}, yp{y.a().lift(f), y.b().lift(f)};
  if (same_point(x, y)) return detail::trivial_chain(l, xp, yp);

  Rng rng(seed);
  detail::StrongContext ctx{f, &rng, 50};
  const detail::StrongContext* strong = mode == ChainMode::Strong ? &ctx : nullptr;
  int budget = max_subdivisions;

  auto link = [&](const SpanningPair& p, const SpanningPair& r) -> std::optional<ChainCertificate> {
    const PeriodPoint pp = PeriodPoint::make(l, p), rr = PeriodPoint::make(l, r);
    if (same_plane(pp, rr)) return detail::same_plane_step(l, p, r, strong);
    if (!strong) {
      auto cl = common_line(pp, rr);
      if (auto* t = std::get_if<TwistorLine>(&cl)) {
        ChainCertificate c = detail::trivial_chain(l, p, r);
        c.points.push_back(r);
        c.lines.push_back(*t);
        c.require_generic.push_back(false);
        return c;
      }
    }
    return detail::weak_step(l, p, r, strong);
  };

  ChainCertificate out = detail::trivial_chain(l, xp, yp);
  std::function<void(const std::function<SpanningPair(const Rational&)>&, Rational, Rational)> walk =
      [&](const std::function<SpanningPair(const Rational&)>& path, Rational s0, Rational s1) {
        const SpanningPair p = path(s0), r = path(s1);
        if (p == r) return;
        if (auto c = link(p, r)) {
          detail::append(out, *c);
          return;
        }
        if (budget-- <= 0)
          throw Error(ErrorCode::SubdivisionBudgetExhausted,
                      "no chain after " + std::to_string(max_subdivisions) + " subdivisions");
        const Rational mid = (s0 + s1) / 2;
        walk(path, s0, mid);
        walk(path, mid, s1);
      };

  auto split = [&](const SpanningPair& p) {
    const FVector pa = detail::frame_projection(q, frame, p.a), pb = detail::frame_projection(q, frame, p.b);
    return std::array<FVector, 4>{pa, p.a - pa, pb, p.b - pb};
  };
  const auto sx = split(xp), sy = split(yp);
  const SpanningPair px{sx[0], sx[2]}, py{sy[0], sy[2]};

  auto out_path = [&](const Rational& s) {
    if (s == 1) return px;
    const Scalar k(Rational(1) - s);
    return SpanningPair{sx[0] + k * sx[1], sx[2] + k * sx[3]};
  };
  auto in_path = [&](const Rational& s) {
    if (s == 0) return py;
    const Scalar k(s);
    return SpanningPair{sy[0] + k * sy[1], sy[2] + k * sy[3]};
  };

  walk(out_path, 0, 1);
  if (!(px == py)) {
    const TwistorLine w0 = make_line(l, frame[0].lift(f), frame[1].lift(f), frame[2].lift(f));
    if (!strong) {
      ChainCertificate c = detail::trivial_chain(l, px, py);
      c.points.push_back(py);
      c.lines.push_back(w0);
      c.require_generic.push_back(false);
      detail::append(out, c);
    } else {
      // Interpolate oriented normals; antipodal normals go through a perpendicular one.
      const FVector nx = detail::frame_normal(q, frame, px.a, px.b), ny = detail::frame_normal(q, frame, py.a, py.b);
      std::vector<FVector> normals{nx};
      if (linalg::rank({nx, ny}) < 2 && q.form(nx, ny).sign() < 0) {
        for (const auto& fi : frame) {
          auto m = detail::orthogonal_part(q, {nx}, fi.lift(f));
          if (m && !m->is_zero()) {
            normals.push_back(*m);
            break;
          }
        }
      }
      normals.push_back(ny);
      const std::size_t legs = normals.size() - 1;
      auto normal_path = [&](const Rational& s) -> SpanningPair {
        if (s == 0) return px;
        if (s == 1) return py;
        Rational u = s * static_cast<long>(legs);
        const auto leg = std::min<std::size_t>(static_cast<std::size_t>(mpz_class(u.get_num() / u.get_den()).get_si()), legs - 1);
        u -= static_cast<long>(leg);
        const FVector n = Scalar(Rational(1) - u) * normals[leg] + Scalar(u) * normals[leg + 1];
        return sphere_point(w0, n).pair();
      };
      walk(normal_path, 0, 1);
    }
  }
  walk(in_path, 0, 1);
  out.to = yp;
  return out;
}

// The four-generic-line construction inside a ball: c = (b + b')/2 + t wc with
// wc positive and orthogonal to <a, b, b'>, d = (a + a')/2 + t wd likewise for
// <a, a', b'>, then c and d moved by small generic vectors. Points <a,b>,
// <a,c>, <a,b'>, <d,b'>, <a',b'>; each step is the affine path between
// consecutive points. Centering at the midpoint keeps the negative part of
// b' - b from swamping t wc.
inline ChainCertificate connect_strong_in_ball(const PeriodPoint& x, const PeriodPoint& y, const Ball& ball,
                                               const FieldPtr& field, std::uint64_t seed, int budget = 50) {
  detail::require_same_lattice(x, y);
  const auto& l = x.lattice();
  const QuadLattice& q = *l;
  const FieldPtr f = common_field(common_field(x.field(), y.field()), field);
  if (3 * static_cast<std::size_t>(f->degree()) < q.rank())
    throw Error(ErrorCode::FieldDegreeTooSmall, "generic lines need 3 deg(field) >= rank");
  const FVector a = x.a().lift(f), b = x.b().lift(f), a2 = y.a().lift(f), b2 = y.b().lift(f);
  const SpanningPair xp{a, b}, yp{a2, b2};
  if (!in_ball(ball, xp) || !in_ball(ball, yp)) throw Error(ErrorCode::NotInBall, "endpoints must lie in the open ball");
  ChainCertificate cert = detail::trivial_chain(l, xp, yp);
  cert.ball = ball;
  if (same_point(x, y)) return cert;
  // Each line holds one of these planes; its constraints add at most deg(f) to theirs.
  for (const auto& [u, v] : {std::pair{a, b}, std::pair{a, b2}, std::pair{a2, b2}})
    if (detail::expansion_rank({u, v}) + static_cast<std::size_t>(f->degree()) < q.rank())
      throw Error(ErrorCode::FieldDegreeTooSmall, "an endpoint plane is too close to rational for generic lines over this field");

  const auto frame = detail::frame_basis(q);
  const FVector w = detail::normalized(detail::frame_normal(q, frame, a, b));
  auto away = [&](const std::vector<FVector>& s) {
    auto o = detail::orthogonal_part(q, s, w);
    return o && q.norm(*o).sign() > 0 ? detail::normalized(*o) : w;
  };
  const FVector wc = away({a, b, b2}), wd = away({a, a2, b2});
  const FVector bm = Scalar(Rational(1, 2)) * (b + b2), am = Scalar(Rational(1, 2)) * (a + a2);
  auto spaces = [&](const FVector& c, const FVector& d) -> std::optional<std::vector<ThreeSpace>> {
    std::vector<ThreeSpace> out;
    for (const auto& [u, v, z] : {std::tuple{a, b, c}, std::tuple{a, b2, c}, std::tuple{a, b2, d}, std::tuple{a2, b2, d}}) {
      auto s = detail::try_space(l, u, v, z);
      if (!s) return std::nullopt;
      out.push_back(*s);
    }
    return out;
  };
  auto fits = [&](const FVector& c, const FVector& d) {
    return in_ball(ball, {a, c}) && in_ball(ball, {d, b2});
  };

  Rational t = ball.radius / 2;
  bool found = false;
  for (int i = 0; i < 64 && !found; ++i, t /= 2) {
    const FVector c = bm + Scalar(t) * wc, d = am + Scalar(t) * wd;
    found = fits(c, d) && spaces(c, d).has_value();
    if (found) break;
  }
  if (!found) throw Error(ErrorCode::NotNearEnough, "no t keeps the four three-spaces positive inside the ball");
  const FVector c0 = bm + Scalar(t) * wc, d0 = am + Scalar(t) * wd;

  Rng rng(seed);
  Rational eta = t / 4;
  for (int attempt = 0; attempt < budget; ++attempt) {
    const FVector c = c0 + Scalar(eta) * detail::normalized(rng.small_vector(f, q.rank(), 3));
    const FVector d = d0 + Scalar(eta) * detail::normalized(rng.small_vector(f, q.rank(), 3));
    if (!fits(c, d)) {
      eta /= 2;
      continue;
    }
    auto sp = spaces(c, d);
    if (!sp) {
      eta /= 2;
      continue;
    }
    std::vector<TwistorLine> lines;
    for (const auto& s : *sp) {
      lines.push_back(check_generic(TwistorLine(s)));
      if (!lines.back().is_generic()) break;
    }
    if (lines.size() < 4 || !lines.back().is_generic()) continue;
    cert.points = {xp, {a, c}, {a, b2}, {d, b2}, yp};
    cert.lines = std::move(lines);
    cert.require_generic.assign(4, true);
    for (std::size_t i = 0; i < 4; ++i) cert.segments.push_back({cert.points[i], cert.points[i + 1]});
    return cert;
  }
  throw Error(ErrorCode::BudgetExhausted, "no generic choice of c and d within " + std::to_string(budget) + " draws");
}

struct BoundaryResult {
  TwistorLine line;
  SpanningPair interior;  // strictly inside the ball as recorded
  ChainCertificate certificate;
};

// A generic line W = <a, b, alpha> through a boundary point x of the ball and
// a point of W strictly inside the ball. Interior points are searched along
// in-line deformations (a + s alpha + u b, b + r alpha + v a) whose first-order
// change pulls every tight coordinate inward.
inline BoundaryResult boundary_line(const PeriodPoint& x, const Ball& ball, const FieldPtr& field, std::uint64_t seed,
                                    int budget = 50) {
  const auto& l = x.lattice();
  const QuadLattice& q = *l;
  const FieldPtr f = common_field(x.field(), field);
  const FVector a = x.a().lift(f), b = x.b().lift(f);
  const SpanningPair xp{a, b};
  const Scalar dist = ball_distance(ball, xp), r(ball.radius);
  if (dist < r) throw Error(ErrorCode::NotOnBoundary, "point lies strictly inside the ball");
  if (dist > r) throw Error(ErrorCode::NotInBall, "point lies outside the closed ball");
  if (detail::expansion_rank({a, b}) + static_cast<std::size_t>(f->degree()) < q.rank())
    throw Error(ErrorCode::FieldDegreeTooSmall, "alpha cannot make <a, b, alpha> generic over this field");

  const auto frame = detail::frame_basis(q);
  const FVector n0 = detail::normalized(detail::frame_normal(q, frame, a, b));
  const std::size_t dim = q.rank();

  // Coordinates where the pair touches the sphere, with the sign of the offset.
  std::vector<std::pair<std::size_t, int>> tight_a, tight_b;
  for (std::size_t i = 0; i < dim; ++i) {
    const Scalar da = a[i] - ball.center.a[i], db = b[i] - ball.center.b[i];
    if (da.abs() == r) tight_a.emplace_back(i, da.sign());
    if (db.abs() == r) tight_b.emplace_back(i, db.sign());
  }
  auto pulls_inward = [](const FVector& delta, const std::vector<std::pair<std::size_t, int>>& tight) {
    for (const auto& [i, s] : tight)
      if (delta[i].sign() != -s) return false;
    return true;
  };

  Rng rng(seed);
  Rational eta(1, 4);
  const FVector an = detail::normalized(a), bn = detail::normalized(b);
  for (int attempt = 0; attempt < budget; ++attempt) {
    auto alpha = detail::orthogonal_part(q, {a, b}, n0 + Scalar(eta) * detail::normalized(rng.small_vector(f, dim, 3)));
    if (!alpha || q.norm(*alpha).sign() <= 0) {
      eta /= 2;
      continue;
    }
    const FVector al = detail::normalized(*alpha);
    auto space = detail::try_space(l, a, b, al);
    if (!space) {
      eta /= 2;
      continue;
    }
    TwistorLine line = check_generic(TwistorLine(*space));
    if (!line.is_generic()) continue;
    for (int s : {1, -1, 0})
      for (int u : {0, 1, -1})
        for (int rr : {0, 1, -1})
          for (int v : {0, 1, -1}) {
            const FVector da = Scalar(s) * al + Scalar(u) * bn, db = Scalar(rr) * al + Scalar(v) * an;
            if (da.is_zero() && db.is_zero()) continue;
            if (!pulls_inward(da, tight_a) || !pulls_inward(db, tight_b)) continue;
            Rational mu = ball.radius;
            for (int k = 0; k < 64; ++k, mu /= 2) {
              const SpanningPair yp{a + Scalar(mu) * da, b + Scalar(mu) * db};
              if (!in_ball(ball, yp) || linalg::rank({yp.a, yp.b}) < 2) continue;
              ChainCertificate cert = detail::trivial_chain(l, xp, yp);
              cert.points.push_back(yp);
              cert.lines.push_back(line);
              cert.require_generic.push_back(true);
              cert.ball = ball;
              cert.closed_start = true;
              cert.segments.push_back({xp, yp});
              return {line, yp, std::move(cert)};
            }
          }
  }
  throw Error(ErrorCode::BudgetExhausted, "no generic alpha with an interior point within " + std::to_string(budget) + " draws");
}

}  // namespace torelli
