#pragma once

#include <torelli/number_field.hpp>

#include <compare>
#include <utility>

namespace torelli {

// Element of a real number field, stored as the reduced residue
// c0 + c1 t + ... + c_{d-1} t^{d-1}.
class Scalar {
 public:
  Scalar() : field_(NumberField::rationals()), c_{Rational(0)} {}
  Scalar(const Rational& r) : field_(NumberField::rationals()), c_{canonical(r)} {}  // NOLINT
  Scalar(const Integer& z) : Scalar(Rational(z)) {}                                  // NOLINT
  Scalar(long v) : Scalar(Rational(v)) {}                                            // NOLINT
  Scalar(int v) : Scalar(Rational(v)) {}                                             // NOLINT

  explicit Scalar(FieldPtr f) : field_(std::move(f)), c_(static_cast<std::size_t>(field_->degree()), 0) {}

  Scalar(FieldPtr f, poly::Poly coeffs) : field_(std::move(f)) {
    const auto& p = field_->min_poly_q();
    poly::trim(coeffs);
    if (poly::degree(coeffs) >= field_->degree()) coeffs = poly::mod(coeffs, p);
    c_ = std::move(coeffs);
    c_.resize(static_cast<std::size_t>(field_->degree()), 0);
  }

  // The generator t of the field, i.e. the designated root.
  static Scalar generator(const FieldPtr& f) {
    if (f->is_rational()) throw Error(ErrorCode::InvalidArgument, "Q has no irrational generator");
    return Scalar(f, poly::Poly{0, 1});
  }

  const FieldPtr& field() const { return field_; }
  const RatVector& coefficients() const { return c_; }
  const Rational& coefficient(std::size_t k) const { return c_[k]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return false;
    return true;
  }

  // Same value viewed in a field containing this one (only Q embeds).
  Scalar lift(const FieldPtr& f) const {
    if (same_field(field_, f)) return Scalar(f, c_);
    if (!field_->is_rational()) throw Error(ErrorCode::FieldMismatch, "cannot embed " + field_->description());
    return Scalar(f, poly::Poly{c_[0]});
  }

  // Sign at the designated root. Zero is exact: a nonzero reduced residue of
  // degree < deg p shares no root with the irreducible p. Otherwise the residue
  // is evaluated in interval arithmetic on the isolating interval, bisecting it
  // until the enclosure excludes zero.
  int sign() const {
    if (is_zero()) return 0;
    if (field_->is_rational() || is_rational()) return sgn(c_[0]);
    const auto& p = field_->min_poly_q();
    Rational lo = field_->work_lo(), hi = field_->work_hi();
    const int slo = sgn(poly::eval(p, lo));
    for (;;) {
      auto [elo, ehi] = enclose(lo, hi);
      if (elo > 0) return 1;
      if (ehi < 0) return -1;
      Rational mid = (lo + hi) / 2;
      if (sgn(poly::eval(p, mid)) == slo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (field_->is_rational()) return Scalar(1 / c_[0]);
    auto [g, u] = poly::inverse_mod(c_, field_->min_poly_q());
    if (poly::degree(g) != 0) throw Error(ErrorCode::NotIrreducible, "non-invertible residue");
    return Scalar(field_, u);
  }

  double approx() const {
    const double t = field_->approx_root();
    double acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i].get_d();
    return acc;
  }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  Scalar operator-() const {
    Scalar r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, 1); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, -1); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    FieldPtr f = common_field(a.field_, b.field_);
    if (f->is_rational()) return Scalar(a.c_[0] * b.c_[0]);
    if (a.field_->is_rational() || a.is_rational()) return b.lift(f).scaled(a.c_[0]);
    if (b.field_->is_rational() || b.is_rational()) return a.lift(f).scaled(b.c_[0]);
    return Scalar(f, poly::mul(a.c_, b.c_));
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_rational()) {
      if (b.c_[0] == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
      FieldPtr f = common_field(a.field_, b.field_);
      return a.lift(f).scaled(1 / b.c_[0]);
    }
    return a * b.inverse();
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar scaled(const Rational& s) const {
    Scalar r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (same_field(a.field_, b.field_)) return a.c_ == b.c_;
    return (a - b).is_zero();
  }

  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  static Scalar combine(const Scalar& a, const Scalar& b, int s) {
    FieldPtr f = common_field(a.field_, b.field_);
    Scalar r = a.field_.get() == f.get() || same_field(a.field_, f) ? a : a.lift(f);
    if (r.field_ != f) r.field_ = f;
    const std::size_t n = b.c_.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (s > 0) {
        r.c_[k] += b.c_[k];
      } else {
        r.c_[k] -= b.c_[k];
      }
    }
    return r;
  }

  // Interval enclosure of the residue polynomial over [lo, hi].
  std::pair<Rational, Rational> enclose(const Rational& lo, const Rational& hi) const {
    Rational elo = c_.back(), ehi = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      Rational p1 = elo * lo, p2 = elo * hi, p3 = ehi * lo, p4 = ehi * hi;
      Rational mn = std::min({p1, p2, p3, p4}), mx = std::max({p1, p2, p3, p4});
      elo = mn + c_[i];
      ehi = mx + c_[i];
    }
    return {elo, ehi};
  }

  FieldPtr field_;
  RatVector c_;
};

inline int compare(const Scalar& a, const Scalar& b) {
  if (!a.field()->is_rational() && !b.field()->is_rational() && !same_field(a.field(), b.field()))
    throw Error(ErrorCode::FieldMismatch, "comparison across different number fields");
  return (a - b).sign();
}

// A vector of field elements; every coordinate lives in field().
class FVector {
 public:
  FVector() : field_(NumberField::rationals()) {}
  FVector(FieldPtr f, std::size_t n) : field_(std::move(f)), x_(n, Scalar(field_)) {}
  FVector(FieldPtr f, std::vector<Scalar> xs) : field_(std::move(f)), x_(std::move(xs)) {
    for (auto& x : x_) {
      field_ = common_field(field_, x.field());
    }
    for (auto& x : x_) x = x.lift(field_);
  }

  static FVector from_integers(const IntVector& v) {
    FVector r(NumberField::rationals(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r.x_[i] = Scalar(Rational(v[i]));
    return r;
  }

  static FVector from_rationals(const RatVector& v) {
    FVector r(NumberField::rationals(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r.x_[i] = Scalar(v[i]);
    return r;
  }

  static FVector unit(std::size_t n, std::size_t i) {
    IntVector v(n, 0);
    v[i] = 1;
    return from_integers(v);
  }

  const FieldPtr& field() const { return field_; }
  std::size_t size() const { return x_.size(); }
  const Scalar& operator[](std::size_t i) const { return x_[i]; }
  const std::vector<Scalar>& coords() const { return x_; }

  void set(std::size_t i, const Scalar& s) {
    field_ = common_field(field_, s.field());
    if (x_[i].field() != field_) lift_in_place();
    x_[i] = s.lift(field_);
  }

  FVector lift(const FieldPtr& f) const {
    FVector r(*this);
    r.field_ = common_field(field_, f);
    r.lift_in_place();
    return r;
  }

  bool is_zero() const {
    for (const auto& x : x_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_rational() const {
    for (const auto& x : x_)
      if (!x.is_rational()) return false;
    return true;
  }

  // Coordinatewise max-norm, exact.
  Scalar max_norm() const {
    Scalar m(field_);
    for (const auto& x : x_) {
      Scalar a = x.abs();
      if (a > m) m = a;
    }
    return m;
  }

  // Row k holds the t^k coefficients of every coordinate.
  RatMatrix expansion() const {
    const std::size_t d = static_cast<std::size_t>(field_->degree());
    RatMatrix rows(d, RatVector(x_.size()));
    for (std::size_t j = 0; j < x_.size(); ++j)
      for (std::size_t k = 0; k < d; ++k) rows[k][j] = x_[j].coefficient(k);
    return rows;
  }

  std::vector<double> approx() const {
    std::vector<double> r;
    for (const auto& x : x_) r.push_back(x.approx());
    return r;
  }

  friend FVector operator+(const FVector& a, const FVector& b) { return zip(a, b, 1); }
  friend FVector operator-(const FVector& a, const FVector& b) { return zip(a, b, -1); }
  friend FVector operator*(const Scalar& s, const FVector& v) {
    FVector r(common_field(s.field(), v.field_), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r.x_[i] = s * v.x_[i];
    return r;
  }
  FVector operator-() const {
    FVector r(*this);
    for (auto& x : r.x_) x = -x;
    return r;
  }
  friend bool operator==(const FVector& a, const FVector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a.x_[i] == b.x_[i])) return false;
    return true;
  }

 private:
  void lift_in_place() {
    for (auto& x : x_) x = x.lift(field_);
  }

  static FVector zip(const FVector& a, const FVector& b, int s) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "vector lengths differ");
    FVector r(common_field(a.field_, b.field_), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.x_[i] = s > 0 ? a.x_[i] + b.x_[i] : a.x_[i] - b.x_[i];
    return r;
  }

  FieldPtr field_;
  std::vector<Scalar> x_;
};

}  // namespace torelli
