#pragma once

// Real number fields Q[t]/(p(t)) with a designated real root of p, given by an
// isolating rational interval. Degree-1 fields all represent Q.

#include <torelli/integer.hpp>
#include <torelli/polynomial.hpp>

#include <cmath>
#include <memory>
#include <optional>
#include <sstream>

namespace torelli {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

namespace detail {

inline std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline Integer eval_int(const IntVector& p, const Integer& x) {
  Integer acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline bool has_integer_root(const IntVector& p) {
  if (p[0] == 0) return true;
  for (const auto& d : divisors(p[0])) {
    if (eval_int(p, d) == 0 || eval_int(p, -d) == 0) return true;
  }
  return false;
}

inline bool is_perfect_square(const Integer& n, Integer& root) {
  if (n < 0) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root * root == n;
}

// Monic quartic t^4 + c3 t^3 + c2 t^2 + c1 t + c0: does it split as a product
// of two monic integer quadratics (t^2 + a t + b)(t^2 + c t + d)?
inline bool has_quadratic_factor(const IntVector& p) {
  const Integer &c0 = p[0], &c1 = p[1], &c2 = p[2], &c3 = p[3];
  for (const auto& absb : divisors(c0)) {
    for (int s : {1, -1}) {
      const Integer b = absb * s;
      const Integer d = c0 / b;
      if (d != b) {
        const Integer num = c1 - b * c3, den = d - b;
        if (num % den != 0) continue;
        const Integer a = num / den, c = c3 - a;
        if (a * c + b + d == c2 && a * d + b * c == c1) return true;
      } else {
        if (c1 != b * c3) continue;
        // a + c = c3, a c = c2 - 2b
        const Integer disc = c3 * c3 - 4 * (c2 - 2 * b);
        Integer r;
        if (is_perfect_square(disc, r) && (c3 + r) % 2 == 0) return true;
      }
    }
  }
  return false;
}

inline bool is_prime(const Integer& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

inline std::vector<Integer> prime_factors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  for (Integer q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Eisenstein's criterion at some prime dividing c0.
inline bool eisenstein(const IntVector& p) {
  if (p[0] == 0) return false;
  for (const auto& q : prime_factors(p[0])) {
    bool ok = (p[0] % (q * q) != 0);
    for (std::size_t i = 0; ok && i + 1 < p.size(); ++i) ok = (p[i] % q == 0);
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

class NumberField {
 public:
  // Validates monicity, irreducibility and that (lo, hi) isolates exactly one
  // real root. Irreducibility is decided exactly for degree <= 4; above that
  // only Eisenstein polynomials are accepted.
  static FieldPtr create(IntVector min_poly, Rational lo, Rational hi) {
    while (!min_poly.empty() && min_poly.back() == 0) min_poly.pop_back();
    if (min_poly.size() < 2) throw Error(ErrorCode::InvalidArgument, "minimal polynomial must have degree >= 1");
    if (min_poly.back() != 1) throw Error(ErrorCode::InvalidArgument, "minimal polynomial must be monic");
    const std::size_t deg = min_poly.size() - 1;
    if (deg == 1) return rationals();
    bool irreducible = false;
    if (deg <= 3) {
      irreducible = !detail::has_integer_root(min_poly);
    } else if (deg == 4) {
      irreducible = !detail::has_integer_root(min_poly) && !detail::has_quadratic_factor(min_poly);
    } else {
      irreducible = detail::eisenstein(min_poly);
    }
    if (!irreducible) {
      throw Error(ErrorCode::NotIrreducible,
                  deg <= 4 ? "minimal polynomial factors over Q"
                           : "degree > 4 polynomials must satisfy Eisenstein's criterion");
    }
    canonical(lo);
    canonical(hi);
    const auto p = poly::from_integers(min_poly);
    if (!(lo < hi)) throw Error(ErrorCode::BadIsolation, "empty isolation interval");
    if (sgn(poly::eval(p, lo)) * sgn(poly::eval(p, hi)) >= 0)
      throw Error(ErrorCode::BadIsolation, "no sign change of the minimal polynomial on the interval");
    if (poly::count_roots(p, lo, hi) != 1)
      throw Error(ErrorCode::BadIsolation, "interval does not isolate exactly one real root");
    return FieldPtr(new NumberField(std::move(min_poly), lo, hi));
  }

  static FieldPtr rationals() {
    static const FieldPtr q(new NumberField(IntVector{0, 1}, Rational(-1), Rational(1)));
    return q;
  }

  // Q(sqrt k) for squarefree k >= 2.
  static FieldPtr quadratic(long k) {
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "quadratic field needs k >= 2");
    for (long q = 2; q * q <= k; ++q)
      if (k % (q * q) == 0) throw Error(ErrorCode::InvalidArgument, "k must be squarefree");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), Integer(k).get_mpz_t());
    return create(IntVector{Integer(-k), 0, 1}, Rational(r), Rational(r + 1));
  }

  // Q(p^(1/n)) via t^n - p, p prime (Eisenstein at p), real positive root.
  static FieldPtr pure_root(unsigned n, long p) {
    if (n < 1 || !detail::is_prime(Integer(p)))
      throw Error(ErrorCode::InvalidArgument, "pure_root needs n >= 1 and p prime");
    if (n == 1) return rationals();
    IntVector c(n + 1, 0);
    c[0] = -p;
    c[n] = 1;
    return create(std::move(c), Rational(1), Rational(p));
  }

  // Maximal real subfield of the m-th cyclotomic field, generated by
  // 2cos(2 pi / m), for the small m whose minimal polynomials are tabulated.
  static FieldPtr real_cyclotomic(unsigned m) {
    switch (m) {
      case 5: return create(IntVector{-1, 1, 1}, Rational(1, 2), Rational(1));
      case 7: return create(IntVector{-1, -2, 1, 1}, Rational(1), Rational(2));
      case 8: return create(IntVector{-2, 0, 1}, Rational(1), Rational(2));
      case 9: return create(IntVector{1, -3, 0, 1}, Rational(1), Rational(2));
      case 12: return create(IntVector{-3, 0, 1}, Rational(1), Rational(2));
      case 15: return create(IntVector{1, 4, -4, -1, 1}, Rational(3, 2), Rational(2));
      case 16: return create(IntVector{2, 0, -4, 0, 1}, Rational(1), Rational(2));
      default: throw Error(ErrorCode::InvalidArgument, "no tabulated real cyclotomic field for m = " + std::to_string(m));
    }
  }

  int degree() const { return static_cast<int>(poly_.size()) - 1; }
  bool is_rational() const { return degree() == 1; }
  const IntVector& min_poly() const { return poly_; }
  const poly::Poly& min_poly_q() const { return polyq_; }
  const Rational& root_lo() const { return lo_; }
  const Rational& root_hi() const { return hi_; }
  // Tight isolating interval computed once at construction.
  const Rational& work_lo() const { return wlo_; }
  const Rational& work_hi() const { return whi_; }
  double approx_root() const { return is_rational() ? 0.0 : Rational((wlo_ + whi_) / 2).get_d(); }

  bool equals(const NumberField& o) const {
    if (this == &o) return true;
    if (is_rational() && o.is_rational()) return true;
    return poly_ == o.poly_ && lo_ == o.lo_ && hi_ == o.hi_;
  }

  std::string description() const {
    if (is_rational()) return "Q";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = poly_.size(); i-- > 0;) {
      if (poly_[i] == 0) continue;
      Integer c = poly_[i];
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      Integer ac = abs(c);
      if (i == 0 || ac != 1) os << ac.get_str();
      if (i >= 1) os << "t";
      if (i >= 2) os << "^" << i;
      first = false;
    }
    os << ", root in (" << lo_.get_str() << ", " << hi_.get_str() << ")";
    return os.str();
  }

 private:
  NumberField(IntVector p, Rational lo, Rational hi)
      : poly_(std::move(p)), polyq_(poly::from_integers(poly_)), lo_(lo), hi_(hi), wlo_(lo), whi_(hi) {
    if (degree() > 1) {
      int slo = sgn(poly::eval(polyq_, wlo_));
      const Rational target = Rational(1, 1) / Rational(Integer(1) << 64);
      while (whi_ - wlo_ > target) {
        Rational mid = (wlo_ + whi_) / 2;
        const int sm = sgn(poly::eval(polyq_, mid));
        if (sm == slo) {
          wlo_ = mid;
        } else {
          whi_ = mid;
        }
      }
    }
  }

  IntVector poly_;
  poly::Poly polyq_;
  Rational lo_, hi_;
  Rational wlo_, whi_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || a->equals(*b); }

// The field containing both; Q embeds in every field.
inline FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (same_field(a, b)) return a->is_rational() ? b : a;
  if (a->is_rational()) return b;
  if (b->is_rational()) return a;
  throw Error(ErrorCode::FieldMismatch, "mixing elements of " + a->description() + " and " + b->description());
}

}  // namespace torelli
