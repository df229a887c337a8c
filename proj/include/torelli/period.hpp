#pragma once

// Period points as oriented positive 2-planes in L (x) R.
//
// A point x = [a + i b] of the period domain is stored through the ordered pair
// (a, b) after exact Gram-Schmidt, so q(a, b) = 0 while q(a) and q(b) may
// differ. The projective point is [sqrt(q(b)) a + i sqrt(q(a)) b]; equality is
// decided on oriented planes.

#include <torelli/lattice.hpp>
#include <torelli/random.hpp>

#include <complex>
#include <optional>

namespace torelli {

// An ordered pair of vectors, kept verbatim (no orthogonalization).
struct SpanningPair {
  FVector a;
  FVector b;
  friend bool operator==(const SpanningPair&, const SpanningPair&) = default;
};

class PeriodPoint {
 public:
  static PeriodPoint make(LatticePtr l, FVector a, FVector b) {
    l->check(a.size());
    l->check(b.size());
    const FieldPtr f = common_field(a.field(), b.field());
    a = a.lift(f);
    b = b.lift(f);
    if (linalg::rank({a, b}) < 2) throw Error(ErrorCode::DependentSpan, "period vectors are linearly dependent");
    const Scalar qa = l->norm(a);
    if (qa.sign() <= 0) throw Error(ErrorCode::NotPositive, "q(a) <= 0: plane is not positive");
    const Scalar qab = l->form(a, b);
    if (!qab.is_zero()) b = b - (qab / qa) * a;
    if (l->norm(b).sign() <= 0) throw Error(ErrorCode::NotPositive, "plane is not positive definite");
    return PeriodPoint(std::move(l), std::move(a), std::move(b));
  }

  static PeriodPoint make(LatticePtr l, const SpanningPair& p) { return make(std::move(l), p.a, p.b); }

  const LatticePtr& lattice() const { return lattice_; }
  const FVector& a() const { return a_; }
  const FVector& b() const { return b_; }
  const FieldPtr& field() const { return a_.field(); }
  SpanningPair pair() const { return {a_, b_}; }

  // The complex conjugate point: same plane, opposite orientation.
  PeriodPoint conjugate() const { return PeriodPoint(lattice_, b_, a_); }

  // Floating rendering of sqrt(q(b)) a + i sqrt(q(a)) b, for display only.
  std::vector<std::complex<double>> approx_period() const {
    const double sa = std::sqrt(lattice_->norm(a_).approx()), sb = std::sqrt(lattice_->norm(b_).approx());
    std::vector<std::complex<double>> x;
    for (std::size_t i = 0; i < a_.size(); ++i) x.emplace_back(sb * a_[i].approx(), sa * b_[i].approx());
    return x;
  }

 private:
  PeriodPoint(LatticePtr l, FVector a, FVector b) : lattice_(std::move(l)), a_(std::move(a)), b_(std::move(b)) {}

  LatticePtr lattice_;
  FVector a_, b_;
};

namespace detail {

// Coordinates of v in the q-orthogonal basis (a, b), or nullopt if v is not in the plane.
inline std::optional<std::pair<Scalar, Scalar>> plane_coordinates(const PeriodPoint& p, const FVector& v) {
  const QuadLattice& l = *p.lattice();
  const Scalar x = l.form(v, p.a()) / l.norm(p.a());
  const Scalar y = l.form(v, p.b()) / l.norm(p.b());
  if (!(v - x * p.a() - y * p.b()).is_zero()) return std::nullopt;
  return std::make_pair(x, y);
}

// Sign of the change-of-basis determinant from p to (u, v), or 0 if (u, v)
// does not span p's plane.
inline int orientation_against(const PeriodPoint& p, const FVector& u, const FVector& v) {
  auto cu = plane_coordinates(p, u), cv = plane_coordinates(p, v);
  if (!cu || !cv) return 0;
  return (cu->first * cv->second - cu->second * cv->first).sign();
}

}  // namespace detail

inline bool same_plane(const PeriodPoint& p, const PeriodPoint& q) {
  if (p.lattice()->gram() != q.lattice()->gram()) return false;
  return detail::orientation_against(p, q.a(), q.b()) != 0;
}

// Equal oriented planes.
inline bool same_point(const PeriodPoint& p, const PeriodPoint& q) {
  if (p.lattice()->gram() != q.lattice()->gram()) return false;
  return detail::orientation_against(p, q.a(), q.b()) > 0;
}

// L intersected with the orthogonal complement of the period plane.
inline Sublattice picard_lattice(const PeriodPoint& p) { return integral_kernel(p.lattice(), {p.a(), p.b()}); }

inline bool is_generic_period(const PeriodPoint& p) { return picard_lattice(p).rank() == 0; }

struct RandomPeriod {
  PeriodPoint point;
  int attempts;
};

// Small seeded perturbations of the lattice's positive frame plane, retried
// until positive with trivial Picard lattice. Needs 2 deg(field) >= rank for
// success to be possible.
inline RandomPeriod random_generic_period(const LatticePtr& l, const FieldPtr& field, std::uint64_t seed,
                                          int max_attempts = 64) {
  const auto& frame = l->positive_frame();
  if (frame.size() < 2) throw Error(ErrorCode::NotPositive, "lattice has no positive plane");
  const FVector f1 = FVector::from_integers(frame[0]).lift(field);
  const FVector f2 = FVector::from_integers(frame[1]).lift(field);
  Rng rng(seed);
  Rational eps(1, 4);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    const FVector a = f1 + Scalar(eps) * rng.small_vector(field, l->rank(), 3);
    const FVector b = f2 + Scalar(eps) * rng.small_vector(field, l->rank(), 3);
    try {
      PeriodPoint p = PeriodPoint::make(l, a, b);
      if (is_generic_period(p)) return {p, attempt};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotPositive && e.code() != ErrorCode::DependentSpan) throw;
      eps /= 2;
    }
  }
  throw Error(ErrorCode::BudgetExhausted,
              "no generic period found in " + std::to_string(max_attempts) + " attempts over " + field->description());
}

inline PeriodPoint act(const LatticeIsometry& phi, const PeriodPoint& p) {
  if (phi.lattice()->rank() != p.lattice()->rank())
    throw Error(ErrorCode::LengthMismatch, "isometry and period live on lattices of different rank");
  return PeriodPoint::make(p.lattice(), phi.apply(p.a()), phi.apply(p.b()));
}

// One of the two components of {v : q(v) > 0} inside a space of signature
// (1, k): either the orthogonal complement of a period plane in a lattice of
// signature (3, k), or a whole lattice of signature (1, k). The component is
// the one containing ref.
class PositiveConeRef {
 public:
  static PositiveConeRef create(const PeriodPoint& plane, FVector ref) {
    const auto& l = *plane.lattice();
    if (l.signature().positive != 3)
      throw Error(ErrorCode::InvalidArgument, "positive cone of a period needs signature (3, n)");
    if (!l.form(ref, plane.a()).is_zero() || !l.form(ref, plane.b()).is_zero())
      throw Error(ErrorCode::NotOrthogonal, "reference vector is not orthogonal to the period plane");
    if (l.norm(ref).sign() <= 0) throw Error(ErrorCode::NotPositive, "reference vector must have q > 0");
    return PositiveConeRef(plane.lattice(), plane, std::move(ref));
  }

  static PositiveConeRef create(const LatticePtr& l, FVector ref) {
    if (l->signature().positive != 1)
      throw Error(ErrorCode::InvalidArgument, "positive cone without a period plane needs signature (1, n)");
    l->check(ref.size());
    if (l->norm(ref).sign() <= 0) throw Error(ErrorCode::NotPositive, "reference vector must have q > 0");
    return PositiveConeRef(l, std::nullopt, std::move(ref));
  }

  const LatticePtr& lattice() const { return lattice_; }
  const std::optional<PeriodPoint>& plane() const { return plane_; }
  const FVector& ref() const { return ref_; }

  bool orthogonal_to_plane(const FVector& v) const {
    if (!plane_) return true;
    return lattice_->form(v, plane_->a()).is_zero() && lattice_->form(v, plane_->b()).is_zero();
  }

 private:
  PositiveConeRef(LatticePtr l, std::optional<PeriodPoint> plane, FVector ref)
      : lattice_(std::move(l)), plane_(std::move(plane)), ref_(std::move(ref)) {}

  LatticePtr lattice_;
  std::optional<PeriodPoint> plane_;
  FVector ref_;
};

inline bool in_positive_cone(const FVector& v, const PositiveConeRef& c) {
  c.lattice()->check(v.size());
  if (!c.orthogonal_to_plane(v)) throw Error(ErrorCode::NotOrthogonal, "vector is not orthogonal to the period plane");
  const auto& l = *c.lattice();
  return l.norm(v).sign() > 0 && l.form(v, c.ref()).sign() > 0;
}

}  // namespace torelli
