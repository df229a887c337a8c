#pragma once

// Positive three-spaces W and their twistor lines T_W (the oriented planes
// inside W), with exact genericity certificates for W^perp intersected with L.

#include <torelli/period.hpp>

#include <array>
#include <variant>

namespace torelli {

class ThreeSpace {
 public:
  static ThreeSpace make(LatticePtr l, FVector w1, FVector w2, FVector w3) {
    for (const auto* w : {&w1, &w2, &w3}) l->check(w->size());
    FieldPtr f = common_field(common_field(w1.field(), w2.field()), w3.field());
    std::array<FVector, 3> w{w1.lift(f), w2.lift(f), w3.lift(f)};
    if (linalg::rank({w[0], w[1], w[2]}) < 3)
      throw Error(ErrorCode::DependentSpan, "three-space basis is linearly dependent");
    std::array<std::array<Scalar, 3>, 3> g;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = l->form(w[i], w[j]);
    std::array<Scalar, 3> minors{
        g[0][0],
        g[0][0] * g[1][1] - g[0][1] * g[1][0],
        linalg::determinant<Scalar>({{g[0][0], g[0][1], g[0][2]}, {g[1][0], g[1][1], g[1][2]}, {g[2][0], g[2][1], g[2][2]}}),
    };
    for (std::size_t k = 0; k < 3; ++k)
      if (minors[k].sign() <= 0)
        throw Error(ErrorCode::NotPositiveDefinite, "leading principal minor " + std::to_string(k + 1) + " is not positive");
    return ThreeSpace(std::move(l), std::move(w), minors);
  }

  const LatticePtr& lattice() const { return lattice_; }
  const std::array<FVector, 3>& basis() const { return w_; }
  const FVector& operator[](std::size_t i) const { return w_[i]; }
  const std::array<Scalar, 3>& minors() const { return minors_; }
  const FieldPtr& field() const { return w_[0].field(); }

  // Coefficients of v in the stored basis, if v lies in W.
  std::optional<std::vector<Scalar>> coordinates(const FVector& v) const {
    return linalg::solve_combination({w_[0], w_[1], w_[2]}, v);
  }

 private:
  ThreeSpace(LatticePtr l, std::array<FVector, 3> w, std::array<Scalar, 3> m)
      : lattice_(std::move(l)), w_(std::move(w)), minors_(std::move(m)) {}

  LatticePtr lattice_;
  std::array<FVector, 3> w_;
  std::array<Scalar, 3> minors_;
};

struct Unchecked {};
// Proves W^perp meets L trivially: the rational system q(alpha, w_i) = 0 has a
// left inverse (see constraint_matrix for the row order).
struct GenericWitness {
  TrivialKernelWitness kernel;
};
// A nonzero lattice vector orthogonal to all of W.
struct NonGenericWitness {
  IntVector vector;
};
using Genericity = std::variant<Unchecked, GenericWitness, NonGenericWitness>;

class TwistorLine {
 public:
  explicit TwistorLine(ThreeSpace space, Genericity g = Unchecked{}) : space_(std::move(space)), genericity_(std::move(g)) {}

  const ThreeSpace& space() const { return space_; }
  const Genericity& genericity() const { return genericity_; }
  const LatticePtr& lattice() const { return space_.lattice(); }
  bool is_generic() const { return std::holds_alternative<GenericWitness>(genericity_); }
  bool is_checked() const { return !std::holds_alternative<Unchecked>(genericity_); }

 private:
  ThreeSpace space_;
  Genericity genericity_;
};

inline TwistorLine make_line(LatticePtr l, FVector w1, FVector w2, FVector w3) {
  return TwistorLine(ThreeSpace::make(std::move(l), std::move(w1), std::move(w2), std::move(w3)));
}

inline TwistorLine check_generic(const TwistorLine& t) {
  const auto& l = t.lattice();
  const auto& w = t.space().basis();
  const std::vector<FVector> cons{w[0], w[1], w[2]};
  const Sublattice k = integral_kernel(l, cons);
  if (k.rank() > 0) return TwistorLine(t.space(), NonGenericWitness{k.basis().front()});
  auto witness = trivial_kernel_witness(constraint_matrix(*l, cons), l->rank());
  if (!witness) throw Error(ErrorCode::Degenerate, "trivial kernel without a left inverse");
  return TwistorLine(t.space(), GenericWitness{std::move(*witness)});
}

// Orientation-insensitive: x and its conjugate lie on the same lines.
inline bool contains(const TwistorLine& t, const PeriodPoint& p) {
  if (t.lattice()->gram() != p.lattice()->gram()) return false;
  return t.space().coordinates(p.a()).has_value() && t.space().coordinates(p.b()).has_value();
}

struct SamePlane {};
struct NoCommonLine {};
using CommonLine = std::variant<TwistorLine, SamePlane, NoCommonLine>;

inline CommonLine common_line(const PeriodPoint& x, const PeriodPoint& y) {
  if (x.lattice()->gram() != y.lattice()->gram())
    throw Error(ErrorCode::InvalidArgument, "points on different lattices");
  const std::size_t r = linalg::rank({x.a(), x.b(), y.a(), y.b()});
  if (r == 2) return SamePlane{};
  if (r == 4) return NoCommonLine{};
  const FVector& third = linalg::rank({x.a(), x.b(), y.a()}) == 3 ? y.a() : y.b();
  try {
    return make_line(x.lattice(), x.a(), x.b(), third);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite) return NoCommonLine{};
    throw;
  }
}

struct GenericizeResult {
  TwistorLine line;
  Rational magnitude;  // strict upper bound on the max-norm shift of each basis vector
  int attempts;
  int perturbed;  // number of trailing basis vectors moved
};

namespace detail {

inline std::size_t expansion_rank(const std::vector<FVector>& vs) {
  RatMatrix rows;
  for (const auto& v : vs)
    for (auto& r : v.expansion()) rows.push_back(std::move(r));
  return rows.empty() ? 0 : linalg::rank(rows);
}

// Upper bound for |s| at the designated root from the coefficients.
inline Rational coefficient_bound(const Scalar& s) {
  const FieldPtr& f = s.field();
  const Rational r = std::max(abs(f->work_lo()), abs(f->work_hi()));
  Rational acc = 0, pw = 1;
  for (const auto& c : s.coefficients()) {
    acc += abs(c) * pw;
    pw *= r;
  }
  return acc;
}

}  // namespace detail

// Moves the trailing basis vectors by seeded small irrational vectors until W
// is still positive and W^perp meets L trivially. Needs 3 deg(field) >= rank.
// Starts with as few moved vectors as the dimension count allows (the span of
// the fixed vectors' rational expansions plus deg(field) per moved vector must
// reach the rank) and moves one more after each non-generic draw.
inline GenericizeResult genericize(const TwistorLine& t, const FieldPtr& field, std::uint64_t seed, int budget) {
  const auto& l = t.lattice();
  const std::size_t n = l->rank();
  const auto d = static_cast<std::size_t>(field->degree());
  if (3 * d < n)
    throw Error(ErrorCode::FieldDegreeTooSmall,
                "3 * deg(field) = " + std::to_string(3 * d) + " < rank " + std::to_string(n));
  if (budget <= 0) throw Error(ErrorCode::BudgetExhausted, "zero genericization budget");
  const FieldPtr f = common_field(t.space().field(), field);
  std::array<FVector, 3> w{t.space()[0].lift(f), t.space()[1].lift(f), t.space()[2].lift(f)};

  int k = 1;
  for (; k < 3; ++k) {
    std::vector<FVector> kept(w.begin(), w.end() - k);
    if (detail::expansion_rank(kept) + static_cast<std::size_t>(k) * d >= n) break;
  }
  Rng rng(seed);
  Rational eps(1, 8);
  for (int attempt = 1; attempt <= budget; ++attempt) {
    std::array<FVector, 3> moved = w;
    Rational bound = 0;
    for (int i = 3 - k; i < 3; ++i) {
      const FVector r = rng.small_vector(f, n, 3);
      moved[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] + Scalar(eps) * r;
      for (const auto& c : r.coords()) bound = std::max(bound, detail::coefficient_bound(c));
    }
    std::optional<TwistorLine> cand;
    try {
      cand.emplace(make_line(l, moved[0], moved[1], moved[2]));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotPositiveDefinite && e.code() != ErrorCode::DependentSpan) throw;
    }
    if (!cand) {
      eps /= 2;
      continue;
    }
    TwistorLine checked = check_generic(*cand);
    if (checked.is_generic()) return {checked, eps * (bound + 1), attempt, k};
    if (k < 3) ++k;
  }
  throw Error(ErrorCode::BudgetExhausted, "no generic perturbation within " + std::to_string(budget) + " attempts");
}

// The point of T_W with normal direction alpha: the plane alpha^perp in W,
// oriented so that (alpha, a, b) is positively oriented relative to the stored
// basis (w1, w2, w3).
inline PeriodPoint sphere_point(const TwistorLine& t, const FVector& alpha) {
  const auto& l = t.lattice();
  const auto& sp = t.space();
  auto ca = sp.coordinates(alpha);
  if (!ca) throw Error(ErrorCode::AlphaNotInW, "alpha does not lie in W");
  const Scalar qa = l->norm(alpha);
  if (qa.sign() <= 0) throw Error(ErrorCode::AlphaNotPositive, "q(alpha) <= 0");
  std::vector<FVector> proj;
  for (const auto& w : sp.basis()) {
    FVector u = w - (l->form(w, alpha) / qa) * alpha;
    if (u.is_zero()) continue;
    if (proj.empty() || linalg::rank({proj[0], u}) == 2) proj.push_back(std::move(u));
    if (proj.size() == 2) break;
  }
  PeriodPoint p = PeriodPoint::make(l, proj[0], proj[1]);
  auto cu = sp.coordinates(p.a()), cv = sp.coordinates(p.b());
  const Scalar det = linalg::determinant<Scalar>({*ca, *cu, *cv});
  if (det.sign() < 0) p = PeriodPoint::make(l, p.a(), -p.b());
  return p;
}

}  // namespace torelli
