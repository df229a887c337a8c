#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torelli {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;  // row-major
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

enum class ErrorCode {
  InvalidArgument,
  NotIrreducible,
  BadIsolation,
  FieldMismatch,
  DivisionByZero,
  Degenerate,
  LengthMismatch,
  OutOfRange,
  NotPositive,
  DependentSpan,
  NotPositiveDefinite,
  NotOrthogonal,
  AlphaNotInW,
  AlphaNotPositive,
  BudgetExhausted,
  FieldDegreeTooSmall,
  NotInBall,
  NotOnBoundary,
  SubdivisionBudgetExhausted,
  NotNearEnough,
  NotARoot,
  NotInCone,
  StepBudgetExhausted,
  NoPositiveThreeSpace,
  NotAnIsometry,
  Parse,
  UnsupportedVersion,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::BadIsolation: return "BadIsolation";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::DependentSpan: return "DependentSpan";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::AlphaNotInW: return "AlphaNotInW";
    case ErrorCode::AlphaNotPositive: return "AlphaNotPositive";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::FieldDegreeTooSmall: return "FieldDegreeTooSmall";
    case ErrorCode::NotInBall: return "NotInBall";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::SubdivisionBudgetExhausted: return "SubdivisionBudgetExhausted";
    case ErrorCode::NotNearEnough: return "NotNearEnough";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::NotInCone: return "NotInCone";
    case ErrorCode::StepBudgetExhausted: return "StepBudgetExhausted";
    case ErrorCode::NoPositiveThreeSpace: return "NoPositiveThreeSpace";
    case ErrorCode::NotAnIsometry: return "NotAnIsometry";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Rational canonical(Rational r) {
  r.canonicalize();
  return r;
}

// Accepts "p", "-p", "p/q".
inline Rational parse_rational(std::string_view s) {
  Rational r;
  if (s.empty() || r.set_str(std::string(s), 10) != 0 || r.get_den() == 0) {
    throw Error(ErrorCode::Parse, "not a rational: '" + std::string(s) + "'");
  }
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline int sgn(const Integer& z) { return ::sgn(z); }
inline int sgn(const Rational& q) { return ::sgn(q); }

inline Integer lcm_of_denominators(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

// Scales a rational vector to a primitive integer vector with the same direction.
inline IntVector primitive_integer(const RatVector& v) {
  Integer l = lcm_of_denominators(v);
  IntVector out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = Integer(v[i] * l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t(a[0].size(), IntVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, IntVector(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw Error(ErrorCode::LengthMismatch, "matrix product shape");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

inline IntVector multiply(const IntMatrix& a, const IntVector& v) {
  IntVector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != v.size()) throw Error(ErrorCode::LengthMismatch, "matrix-vector shape");
    for (std::size_t j = 0; j < v.size(); ++j)
      if (a[i][j] != 0) out[i] += a[i][j] * v[j];
  }
  return out;
}

}  // namespace torelli
