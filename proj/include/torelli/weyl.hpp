#pragma once

// Reflections in (-2)-vectors, chamber reduction against a supplied root set,
// and the orientation character of isometries on positive three-spaces.

#include <torelli/enumeration.hpp>
#include <torelli/period.hpp>

#include <algorithm>

namespace torelli {

class Root {
 public:
  // Stored with the lexicographically positive sign; s_delta = s_{-delta}.
  static Root make(LatticePtr l, IntVector v) {
    l->check(v.size());
    const Integer n = l->norm(v);
    if (n != -2) throw Error(ErrorCode::NotARoot, "q(delta) = " + to_string(n) + ", not -2");
    return Root(std::move(l), canonical_sign(std::move(v)));
  }

  const LatticePtr& lattice() const { return lattice_; }
  const IntVector& vector() const { return v_; }

  friend bool operator==(const Root& a, const Root& b) { return a.v_ == b.v_; }

 private:
  Root(LatticePtr l, IntVector v) : lattice_(std::move(l)), v_(std::move(v)) {}

  LatticePtr lattice_;
  IntVector v_;
};

inline IntVector reflect(const Root& delta, const IntVector& v) {
  const auto& d = delta.vector();
  const Integer k = delta.lattice()->form(v, d);
  IntVector out = v;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += k * d[i];
  return out;
}

// The matrix of v -> v + q(v, delta) delta: I + delta (G delta)^T.
inline IntMatrix reflection_matrix(const Root& delta) {
  const auto& d = delta.vector();
  const IntVector gd = delta.lattice()->apply(d);
  IntMatrix m = identity_matrix(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) m[i][j] += d[i] * gd[j];
  return m;
}

// Roots applied left to right: the matrix is S_k ... S_1.
class ReflectionWord {
 public:
  explicit ReflectionWord(LatticePtr l) : lattice_(std::move(l)), matrix_(identity_matrix(lattice_->rank())) {}

  void push_back(const Root& r) {
    roots_.push_back(r);
    matrix_ = multiply(reflection_matrix(r), matrix_);
  }

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<Root>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }
  const IntMatrix& matrix() const { return matrix_; }
  LatticeIsometry isometry() const { return LatticeIsometry(lattice_, matrix_); }

  IntVector apply(IntVector v) const {
    for (const auto& r : roots_) v = reflect(r, v);
    return v;
  }

 private:
  LatticePtr lattice_;
  std::vector<Root> roots_;
  IntMatrix matrix_;
};

struct ChamberResult {
  IntVector omega;
  ReflectionWord word;
};

class StepBudgetError : public Error {
 public:
  StepBudgetError(ChamberResult partial, const std::string& what)
      : Error(ErrorCode::StepBudgetExhausted, what), partial_(std::move(partial)) {}
  const ChamberResult& partial() const { return partial_; }

 private:
  ChamberResult partial_;
};

// Reflects omega in the first supplied wall it violates until
// q(omega, delta) >= 0 for every root, with each root oriented so that
// q(ref, delta) > 0 (ties keep the lexicographic sign). The result is
// relative to the supplied roots only.
inline ChamberResult chamber_reduce(const IntVector& omega, const std::vector<Root>& roots, const PositiveConeRef& cone,
                                    int max_steps) {
  const auto& l = cone.lattice();
  if (!in_positive_cone(FVector::from_integers(omega), cone))
    throw Error(ErrorCode::NotInCone, "omega is not in the chosen component of the positive cone");
  std::vector<Root> walls;
  std::vector<IntVector> oriented;
  for (const auto& r : roots) {
    if (r.lattice()->gram() != l->gram()) throw Error(ErrorCode::InvalidArgument, "root from another lattice");
    IntVector d = r.vector();
    if (l->form(d, cone.ref()).sign() < 0)
      for (auto& c : d) c = -c;
    walls.push_back(r);
    oriented.push_back(std::move(d));
  }
  ChamberResult res{omega, ReflectionWord(l)};
  for (int steps = 0;; ++steps) {
    std::size_t hit = walls.size();
    for (std::size_t i = 0; i < walls.size() && hit == walls.size(); ++i)
      if (l->form(res.omega, oriented[i]) < 0) hit = i;
    if (hit == walls.size()) return res;
    if (steps >= max_steps)
      throw StepBudgetError(res, "still violating walls after " + std::to_string(max_steps) + " reflections");
    res.omega = reflect(walls[hit], res.omega);
    res.word.push_back(walls[hit]);
  }
}

// The (-2)-vectors of the Picard lattice whose coordinates in its reduced
// basis lie in [-box_bound, box_bound], in ambient coordinates.
inline std::vector<Root> roots_of_picard(const PeriodPoint& p, long box_bound,
                                         EnumerationMode mode = EnumerationMode::Auto) {
  const Sublattice pic = picard_lattice(p);
  std::vector<IntVector> amb;
  if (pic.rank() > 0)
    for (const auto& c : enumerate_norm_vectors(pic, -2, box_bound, mode)) amb.push_back(canonical_sign(pic.to_ambient(c)));
  std::sort(amb.begin(), amb.end());
  amb.erase(std::unique(amb.begin(), amb.end()), amb.end());
  std::vector<Root> out;
  for (auto& v : amb) out.push_back(Root::make(p.lattice(), std::move(v)));
  return out;
}

// Sign of det[q(w_i, phi w_j)] for a basis w of a positive three-space W0.
// This is the sign of W0 -> phi(W0) -> W0 (orthogonal projection), which is
// invertible because phi(W0) meets the negative definite W0^perp trivially.
inline int orientation_class(const LatticeIsometry& phi, const std::array<IntVector, 3>& w) {
  const QuadLattice& l = *phi.lattice();
  IntMatrix g(3, IntVector(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g[i][j] = l.form(w[i], w[j]);
  if (!(g[0][0] > 0 && g[0][0] * g[1][1] - g[0][1] * g[1][0] > 0 && nf::determinant(g) > 0))
    throw Error(ErrorCode::NotPositiveDefinite, "reference three-space is not positive");
  IntMatrix m(3, IntVector(3));
  for (std::size_t j = 0; j < 3; ++j) {
    const IntVector pw = phi.apply(w[j]);
    for (std::size_t i = 0; i < 3; ++i) m[i][j] = l.form(w[i], pw);
  }
  return sgn(nf::determinant(m));
}

inline int orientation_class(const LatticeIsometry& phi) {
  const QuadLattice& l = *phi.lattice();
  if (l.signature().positive < 3)
    throw Error(ErrorCode::NoPositiveThreeSpace, "signature has fewer than three positive directions");
  if (l.signature().positive > 3)
    throw Error(ErrorCode::InvalidArgument, "orientation class needs exactly three positive directions");
  const auto& f = l.positive_frame();
  return orientation_class(phi, {f[0], f[1], f[2]});
}

}  // namespace torelli
