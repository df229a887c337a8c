#pragma once

// Bounded enumeration of sublattice vectors of a fixed norm.
//
// Results are complete only inside the coordinate box |x_i| <= box_bound (in
// the sublattice's HNF basis), returned up to sign (first nonzero coordinate
// positive) in lexicographic order.

#include <torelli/lattice.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

namespace torelli {

enum class EnumerationMode {
  Auto,      // Definite when the restricted form is definite of the target's sign, else Box
  Box,       // every point of the box
  Definite,  // Fincke-Pohst on the definite form, filtered to the box
};

namespace detail {

template <class Int>
struct BoxEnumerator {
  std::vector<std::vector<Int>> g;
  Int target;
  long bound;
  std::vector<Int> x;
  std::vector<IntVector> out;

  void run() {
    x.assign(g.size(), Int(0));
    recurse(0, Int(0), true);
  }

  void recurse(std::size_t k, Int partial, bool all_zero) {
    const std::size_t r = g.size();
    if (k == r) {
      if (!all_zero && partial == target) {
        IntVector v;
        for (const auto& c : x) v.emplace_back(to_integer(c));
        out.push_back(std::move(v));
      }
      return;
    }
    Int cross(0);
    for (std::size_t i = 0; i < k; ++i) cross += g[k][i] * x[i];
    const long lo = all_zero ? 0 : -bound;
    for (long v = lo; v <= bound; ++v) {
      const Int xv(v);
      x[k] = xv;
      recurse(k + 1, partial + g[k][k] * xv * xv + Int(2) * xv * cross, all_zero && v == 0);
    }
    x[k] = Int(0);
  }

  static Integer to_integer(const Integer& z) { return z; }
  static Integer to_integer(std::int64_t z) { return Integer(static_cast<long>(z)); }
};

inline bool is_definite(const IntMatrix& g, int sign) {
  if (g.empty()) return true;
  RatMatrix a(g.size(), RatVector(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) a[i][j] = g[i][j] * sign;
  // Leading principal minors via elimination pivots.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i][i] <= 0) return false;
    for (std::size_t k = i + 1; k < a.size(); ++k) {
      const Rational f = a[k][i] / a[i][i];
      for (std::size_t l = i; l < a.size(); ++l) a[k][l] -= f * a[i][l];
    }
  }
  return true;
}

// Fincke-Pohst enumeration of { x : Q(x) = t } for positive definite Q.
struct DefiniteEnumerator {
  RatVector d;       // diagonal of the completed square
  RatMatrix mu;      // mu[i][j], j > i
  Rational target;
  long bound;
  std::vector<long> x;
  std::vector<IntVector> out;

  explicit DefiniteEnumerator(const IntMatrix& q, const Integer& t, long b) : target(t), bound(b) {
    const std::size_t r = q.size();
    RatMatrix a(r, RatVector(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) a[i][j] = q[i][j];
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        a[j][i] = a[i][j];
        a[i][j] /= a[i][i];
      }
      for (std::size_t k = i + 1; k < r; ++k)
        for (std::size_t l = k; l < r; ++l) a[k][l] -= a[k][i] * a[i][l];
    }
    d.resize(r);
    mu.assign(r, RatVector(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
      d[i] = a[i][i];
      for (std::size_t j = i + 1; j < r; ++j) mu[i][j] = a[i][j];
    }
  }

  void run() {
    x.assign(d.size(), 0);
    if (!d.empty()) recurse(d.size() - 1, target);
  }

  void recurse(std::size_t i, const Rational& remaining) {
    Rational center = 0;
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (x[j] != 0) center -= mu[i][j] * x[j];
    const double radius = std::sqrt(std::max(0.0, Rational(remaining / d[i]).get_d()));
    const double c = center.get_d();
    long lo = static_cast<long>(std::floor(c - radius)) - 1;
    long hi = static_cast<long>(std::ceil(c + radius)) + 1;
    lo = std::max(lo, -bound);
    hi = std::min(hi, bound);
    for (long v = lo; v <= hi; ++v) {
      const Rational diff = Rational(v) - center;
      const Rational used = d[i] * diff * diff;
      if (used > remaining) continue;
      x[i] = v;
      if (i == 0) {
        if (used == remaining) {
          IntVector out_v;
          for (long c2 : x) out_v.emplace_back(c2);
          out.push_back(std::move(out_v));
        }
      } else {
        recurse(i - 1, remaining - used);
      }
    }
    x[i] = 0;
  }
};

inline bool sign_canonical(const IntVector& v) {
  for (const auto& c : v) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;
}

}  // namespace detail

inline IntVector canonical_sign(IntVector v) {
  if (!detail::sign_canonical(v) && !is_zero(v))
    for (auto& c : v) c = -c;
  return v;
}

// Vectors of q = target in S with |coordinates| <= box_bound, in HNF-basis
// coordinates of S, one per +/- pair.
inline std::vector<IntVector> enumerate_norm_vectors(const Sublattice& s, const Integer& target, long box_bound,
                                                     EnumerationMode mode = EnumerationMode::Auto) {
  if (box_bound < 1) throw Error(ErrorCode::InvalidArgument, "box bound must be >= 1");
  const IntMatrix g = s.gram();
  const std::size_t r = g.size();
  std::vector<IntVector> out;
  if (r == 0 || target == 0) {
    if (target == 0 && r > 0 && mode == EnumerationMode::Definite)
      throw Error(ErrorCode::InvalidArgument, "definite enumeration needs a nonzero target");
    if (r == 0) return out;
  }
  const int want = sgn(target);
  const bool definite = want != 0 && detail::is_definite(g, want);
  if (mode == EnumerationMode::Definite && !definite)
    throw Error(ErrorCode::InvalidArgument, "definite enumeration needs a form definite of the target's sign");

  if (definite && mode != EnumerationMode::Box) {
    IntMatrix q = g;
    for (auto& row : q)
      for (auto& c : row) c *= want;
    detail::DefiniteEnumerator e(q, target * want, box_bound);
    e.run();
    for (auto& v : e.out)
      if (detail::sign_canonical(v)) out.push_back(std::move(v));
  } else {
    Integer gmax = 0;
    for (const auto& row : g)
      for (const auto& c : row) gmax = std::max(gmax, Integer(abs(c)));
    const Integer worst = gmax * Integer(static_cast<long>(r * r)) * box_bound * box_bound * 4 + abs(target);
    if (worst < Integer(std::numeric_limits<std::int64_t>::max() / 4)) {
      detail::BoxEnumerator<std::int64_t> e;
      e.g.assign(r, std::vector<std::int64_t>(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) e.g[i][j] = g[i][j].get_si();
      e.target = target.get_si();
      e.bound = box_bound;
      e.run();
      out = std::move(e.out);
    } else {
      detail::BoxEnumerator<Integer> e;
      e.g = g;
      e.target = target;
      e.bound = box_bound;
      e.run();
      out = std::move(e.out);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace torelli
