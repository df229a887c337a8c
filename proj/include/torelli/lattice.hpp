#pragma once

// Integral quadratic lattices, the Beauville-Bogomolov catalog, sublattices in
// Hermite normal form, integral orthogonal complements and isometries.

#include <torelli/linear_algebra.hpp>
#include <torelli/normal_form.hpp>
#include <torelli/scalar.hpp>

#include <memory>
#include <string>
#include <utility>

namespace torelli {

class QuadLattice;
using LatticePtr = std::shared_ptr<const QuadLattice>;

struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

namespace detail {

struct OrthogonalBasis {
  RatMatrix vectors;  // rows, q-orthogonal
  RatVector norms;    // q(v_i), all nonzero
};

// Symmetric Gaussian reduction over Q. Throws Degenerate if det(gram) == 0.
inline OrthogonalBasis orthogonalize(const IntMatrix& gram) {
  const std::size_t n = gram.size();
  RatMatrix basis(n, RatVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
  RatMatrix a(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];

  OrthogonalBasis out;
  std::vector<bool> done(n, false);
  auto add_into = [&](std::size_t dst, std::size_t src, const Rational& f) {
    // v_dst += f v_src, keeping a = V G V^T current.
    for (std::size_t k = 0; k < n; ++k) basis[dst][k] += f * basis[src][k];
    for (std::size_t k = 0; k < n; ++k) a[dst][k] += f * a[src][k];
    for (std::size_t k = 0; k < n; ++k) a[k][dst] = a[dst][k];
    a[dst][dst] = a[dst][dst] + f * a[src][dst];
  };
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n && p == n; ++i)
      if (!done[i] && a[i][i] != 0) p = i;
    if (p == n) {
      for (std::size_t i = 0; i < n && p == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i && !done[j] && a[i][j] != 0) {
            add_into(i, j, 1);
            p = i;
            break;
          }
        }
      }
    }
    if (p == n) throw Error(ErrorCode::Degenerate, "Gram matrix is degenerate");
    for (std::size_t j = 0; j < n; ++j) {
      if (j == p || done[j] || a[j][p] == 0) continue;
      add_into(j, p, -a[j][p] / a[p][p]);
    }
    done[p] = true;
    out.vectors.push_back(basis[p]);
    out.norms.push_back(a[p][p]);
  }
  return out;
}

}  // namespace detail

class QuadLattice {
 public:
  static LatticePtr create(IntMatrix gram, std::string name = "") {
    const std::size_t n = gram.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "lattice rank must be positive");
    for (const auto& row : gram)
      if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "Gram matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (gram[i][j] != gram[j][i]) throw Error(ErrorCode::InvalidArgument, "Gram matrix must be symmetric");
    auto ortho = detail::orthogonalize(gram);
    return LatticePtr(new QuadLattice(std::move(gram), std::move(name), std::move(ortho)));
  }

  std::size_t rank() const { return gram_.size(); }
  const IntMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  Signature signature() const { return sig_; }
  bool is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_[i][i] % 2 != 0) return false;
    return true;
  }

  // q-orthogonal rational basis from symmetric reduction.
  const RatMatrix& orthogonal_basis() const { return ortho_.vectors; }
  const RatVector& orthogonal_norms() const { return ortho_.norms; }

  // Mutually q-orthogonal primitive integer vectors of positive norm, one per
  // positive direction of the signature (in reduction order).
  const IntMatrix& positive_frame() const { return positive_frame_; }

  Integer form(const IntVector& u, const IntVector& v) const {
    check(u.size());
    check(v.size());
    Integer s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (u[i] == 0) continue;
      Integer row = 0;
      for (std::size_t j = 0; j < rank(); ++j)
        if (gram_[i][j] != 0 && v[j] != 0) row += gram_[i][j] * v[j];
      s += u[i] * row;
    }
    return s;
  }
  Integer norm(const IntVector& v) const { return form(v, v); }

  IntVector apply(const IntVector& v) const {
    check(v.size());
    return multiply(gram_, v);
  }

  FVector apply(const FVector& v) const {
    check(v.size());
    std::vector<Scalar> out(rank(), Scalar(v.field()));
    for (std::size_t i = 0; i < rank(); ++i) {
      Scalar acc(v.field());
      for (std::size_t j = 0; j < rank(); ++j)
        if (gram_[i][j] != 0) acc += Scalar(gram_[i][j]) * v[j];
      out[i] = acc;
    }
    return FVector(v.field(), std::move(out));
  }

  Scalar form(const FVector& u, const FVector& v) const {
    check(u.size());
    const FVector gv = apply(v);
    Scalar s(common_field(u.field(), v.field()));
    for (std::size_t i = 0; i < rank(); ++i)
      if (!u[i].is_zero()) s += u[i] * gv[i];
    return s;
  }
  Scalar form(const IntVector& u, const FVector& v) const {
    check(u.size());
    const FVector gv = apply(v);
    Scalar s(v.field());
    for (std::size_t i = 0; i < rank(); ++i)
      if (u[i] != 0) s += Scalar(u[i]) * gv[i];
    return s;
  }
  Scalar norm(const FVector& v) const { return form(v, v); }

  void check(std::size_t n) const {
    if (n != rank())
      throw Error(ErrorCode::LengthMismatch,
                  "vector of length " + std::to_string(n) + " used with lattice of rank " + std::to_string(rank()));
  }

 private:
  QuadLattice(IntMatrix gram, std::string name, detail::OrthogonalBasis ortho)
      : gram_(std::move(gram)), name_(std::move(name)), ortho_(std::move(ortho)) {
    for (std::size_t i = 0; i < ortho_.norms.size(); ++i) {
      if (ortho_.norms[i] > 0) {
        ++sig_.positive;
        positive_frame_.push_back(primitive_integer(ortho_.vectors[i]));
      } else {
        ++sig_.negative;
      }
    }
  }

  IntMatrix gram_;
  std::string name_;
  detail::OrthogonalBasis ortho_;
  Signature sig_;
  IntMatrix positive_frame_;
};

inline Signature signature(const QuadLattice& l) { return l.signature(); }

inline LatticePtr direct_sum(const std::vector<LatticePtr>& parts, std::string name = "") {
  std::size_t n = 0;
  for (const auto& p : parts) n += p->rank();
  IntMatrix g(n, IntVector(n, 0));
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p->rank(); ++i)
      for (std::size_t j = 0; j < p->rank(); ++j) g[off + i][off + j] = p->gram()[i][j];
    off += p->rank();
  }
  return QuadLattice::create(std::move(g), std::move(name));
}

namespace catalog {

inline LatticePtr u() { return QuadLattice::create({{0, 1}, {1, 0}}, "u"); }

// Negated Cartan matrix of E8 in Bourbaki numbering: simple roots 1..8 with
// edges 1-3, 3-4, 4-5, 5-6, 6-7, 7-8 and 2-4. Diagonal -2, +1 on each edge.
inline LatticePtr e8neg() {
  IntMatrix g(8, IntVector(8, 0));
  for (std::size_t i = 0; i < 8; ++i) g[i][i] = -2;
  const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (auto [a, b] : edges) {
    g[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = 1;
    g[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] = 1;
  }
  return QuadLattice::create(std::move(g), "e8neg");
}

inline LatticePtr rank1(long k) {
  if (k == 0) throw Error(ErrorCode::OutOfRange, "rank-one lattice <k> needs k != 0");
  return QuadLattice::create({{Integer(k)}}, "rank1:" + std::to_string(k));
}

inline LatticePtr diagonal(const std::vector<long>& d) {
  IntMatrix g(d.size(), IntVector(d.size(), 0));
  for (std::size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
  return QuadLattice::create(std::move(g), "diag");
}

// 2(-E8) + 3U, ordered E8, E8, U, U, U.
inline LatticePtr k3() {
  auto e = e8neg(), h = u();
  return direct_sum({e, e, h, h, h}, "k3");
}

// K3 lattice + <-2(n-1)>.
inline LatticePtr hilb_k3(long n) {
  if (n < 2) throw Error(ErrorCode::OutOfRange, "hilb needs n >= 2");
  return direct_sum({k3(), rank1(-2 * (n - 1))}, "hilb:" + std::to_string(n));
}

// 3U + <-2n>: the torus lattice H^2(T, Z) realized as 3U.
inline LatticePtr kummer(long n) {
  if (n < 3) throw Error(ErrorCode::OutOfRange, "kummer needs n >= 3");
  auto h = u();
  return direct_sum({h, h, h, rank1(-2 * n)}, "kummer:" + std::to_string(n));
}

// "k3", "hilb:3", "kummer:4", "u", "e8neg", "rank1:-2", plus "3u" and
// "diag:1,1,1,-1" for test lattices.
inline LatticePtr by_name(const std::string& kind) {
  auto arg = [&](std::size_t pos) -> long {
    try {
      std::size_t used = 0;
      long v = std::stol(kind.substr(pos), &used);
      if (pos + used != kind.size()) throw Error(ErrorCode::Parse, "trailing characters in '" + kind + "'");
      return v;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Parse, "bad lattice parameter in '" + kind + "'");
    }
  };
  if (kind == "k3") return k3();
  if (kind == "u") return u();
  if (kind == "e8neg") return e8neg();
  if (kind == "3u") {
    auto h = u();
    return direct_sum({h, h, h}, "3u");
  }
  if (kind.rfind("hilb:", 0) == 0) return hilb_k3(arg(5));
  if (kind.rfind("kummer:", 0) == 0) return kummer(arg(7));
  if (kind.rfind("rank1:", 0) == 0) return rank1(arg(6));
  if (kind.rfind("diag:", 0) == 0) {
    std::vector<long> d;
    std::size_t pos = 5;
    while (pos <= kind.size()) {
      std::size_t comma = kind.find(',', pos);
      if (comma == std::string::npos) comma = kind.size();
      try {
        d.push_back(std::stol(kind.substr(pos, comma - pos)));
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::Parse, "bad diagonal entry in '" + kind + "'");
      }
      pos = comma + 1;
    }
    auto l = diagonal(d);
    return QuadLattice::create(l->gram(), kind);
  }
  throw Error(ErrorCode::Parse, "unknown lattice kind '" + kind + "'");
}

}  // namespace catalog

// A sublattice given by its canonical row-HNF basis.
class Sublattice {
 public:
  Sublattice(LatticePtr ambient, IntMatrix generators) : ambient_(std::move(ambient)) {
    for (const auto& g : generators) ambient_->check(g.size());
    basis_ = nf::hermite_rows(std::move(generators));
  }

  static Sublattice full(const LatticePtr& l) { return Sublattice(l, identity_matrix(l->rank())); }

  const LatticePtr& ambient() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }

  // Gram matrix of the restricted form in the HNF basis.
  IntMatrix gram() const {
    IntMatrix g(rank(), IntVector(rank()));
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = ambient_->form(basis_[i], basis_[j]);
    return g;
  }

  IntVector to_ambient(const IntVector& coords) const {
    IntVector v(ambient_->rank(), 0);
    for (std::size_t i = 0; i < rank(); ++i)
      if (coords[i] != 0)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += coords[i] * basis_[i][k];
    return v;
  }

  // Integer coordinates of v in the HNF basis, if v lies in the sublattice.
  std::optional<IntVector> coordinates(IntVector v) const {
    ambient_->check(v.size());
    IntVector c(rank(), 0);
    for (std::size_t i = 0; i < rank(); ++i) {
      std::size_t piv = 0;
      while (basis_[i][piv] == 0) ++piv;
      for (std::size_t k = 0; k < piv; ++k)
        if (v[k] != 0) return std::nullopt;
      if (v[piv] % basis_[i][piv] != 0) return std::nullopt;
      c[i] = v[piv] / basis_[i][piv];
      for (std::size_t k = piv; k < v.size(); ++k) v[k] -= c[i] * basis_[i][k];
    }
    if (!is_zero(v)) return std::nullopt;
    return c;
  }

  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

  friend bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.ambient_->gram() == b.ambient_->gram() && a.basis_ == b.basis_;
  }

 private:
  LatticePtr ambient_;
  IntMatrix basis_;
};

// Rows of the rational system q(alpha, w_i) = 0: for each constraint w_i and
// each power t^k, the t^k-coefficients of the vector G w_i.
inline RatMatrix constraint_matrix(const QuadLattice& l, const std::vector<FVector>& constraints) {
  RatMatrix rows;
  for (const auto& w : constraints) {
    l.check(w.size());
    for (auto& r : l.apply(w).expansion()) rows.push_back(std::move(r));
  }
  return rows;
}

// Each row scaled to a primitive integer row; the kernel is unchanged.
inline IntMatrix integerize(const RatMatrix& rows) {
  IntMatrix out;
  for (const auto& r : rows) {
    IntVector z = primitive_integer(r);
    if (!is_zero(z)) out.push_back(std::move(z));
  }
  return out;
}

// { alpha in L : q(alpha, w_i) = 0 for all i }.
inline Sublattice integral_kernel(const LatticePtr& l, const std::vector<FVector>& constraints) {
  const IntMatrix a = integerize(constraint_matrix(*l, constraints));
  if (a.empty()) return Sublattice::full(l);
  return Sublattice(l, nf::integer_kernel(a, l->rank()));
}

// Certificate that a rational system A x = 0 has only the trivial solution:
// a rational left inverse X with X A = I, plus the Smith invariants of the
// integerized system (all n of them nonzero).
struct TrivialKernelWitness {
  RatMatrix left_inverse;
  IntVector invariant_factors;
};

inline std::optional<TrivialKernelWitness> trivial_kernel_witness(const RatMatrix& a, std::size_t n) {
  if (a.size() < n) return std::nullopt;
  // Choose n independent rows greedily.
  std::vector<std::size_t> chosen;
  RatMatrix echelon;
  for (std::size_t i = 0; i < a.size() && chosen.size() < n; ++i) {
    RatMatrix trial = echelon;
    trial.push_back(a[i]);
    if (linalg::rank(trial) == trial.size()) {
      echelon = std::move(trial);
      chosen.push_back(i);
    }
  }
  if (chosen.size() < n) return std::nullopt;
  auto inv = linalg::inverse(echelon);
  if (!inv) return std::nullopt;
  TrivialKernelWitness w;
  w.left_inverse.assign(n, RatVector(a.size(), 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) w.left_inverse[r][chosen[c]] = (*inv)[r][c];
  w.invariant_factors = nf::smith_invariants(integerize(a));
  return w;
}

struct IsometryCheck {
  bool ok = false;
  IntMatrix residual;  // M^T G M - G
  Integer determinant;
};

inline IsometryCheck is_isometry(const QuadLattice& l, const IntMatrix& m) {
  IsometryCheck out;
  const std::size_t n = l.rank();
  if (m.size() != n) return out;
  for (const auto& row : m)
    if (row.size() != n) return out;
  out.residual = multiply(multiply(transpose(m), l.gram()), m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.residual[i][j] -= l.gram()[i][j];
  out.determinant = nf::determinant(m);
  bool zero = true;
  for (const auto& row : out.residual) zero = zero && is_zero(row);
  out.ok = zero && abs(out.determinant) == 1;
  return out;
}

// An element of O(L), acting on column vectors.
class LatticeIsometry {
 public:
  LatticeIsometry(LatticePtr l, IntMatrix m) : lattice_(std::move(l)), m_(std::move(m)) {
    if (!is_isometry(*lattice_, m_).ok) throw Error(ErrorCode::NotAnIsometry, "matrix is not an isometry of the lattice");
  }

  static LatticeIsometry identity(const LatticePtr& l) { return LatticeIsometry(l, identity_matrix(l->rank())); }
  static LatticeIsometry negation(const LatticePtr& l) {
    IntMatrix m = identity_matrix(l->rank());
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = -1;
    return LatticeIsometry(l, std::move(m));
  }

  const LatticePtr& lattice() const { return lattice_; }
  const IntMatrix& matrix() const { return m_; }

  IntVector apply(const IntVector& v) const { return multiply(m_, v); }

  FVector apply(const FVector& v) const {
    lattice_->check(v.size());
    std::vector<Scalar> out(v.size(), Scalar(v.field()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      Scalar acc(v.field());
      for (std::size_t j = 0; j < v.size(); ++j)
        if (m_[i][j] != 0) acc += Scalar(m_[i][j]) * v[j];
      out[i] = acc;
    }
    return FVector(v.field(), std::move(out));
  }

  // (this * other)(v) = this(other(v)).
  LatticeIsometry compose(const LatticeIsometry& other) const {
    return LatticeIsometry(lattice_, multiply(m_, other.m_));
  }

 private:
  LatticePtr lattice_;
  IntMatrix m_;
};

}  // namespace torelli
