#pragma once

// JSON documents for fields, lattices, period points, twistor lines, chain
// certificates and reflection words. Exact numbers travel as strings.

#include <torelli/verify.hpp>
#include <torelli/weyl.hpp>

#include <json.hpp>

namespace torelli::io {

using Json = nlohmann::json;

inline constexpr int kVersion = 1;

inline void require_version(const Json& j) {
  if (!j.is_object() || !j.contains("v")) throw Error(ErrorCode::UnsupportedVersion, "document has no \"v\" field");
  if (!j["v"].is_number_integer() || j["v"].get<long>() != kVersion)
    throw Error(ErrorCode::UnsupportedVersion, "unsupported document version " + j["v"].dump());
}

inline const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Parse, std::string("missing \"") + key + "\"");
  return j.at(key);
}

// numbers

inline Json to_json(const Rational& r) { return canonical(r).get_str(); }

inline Rational rational_from_json(const Json& j) {
  std::string s;
  if (j.is_number_integer()) s = std::to_string(j.get<long long>());
  else if (j.is_string()) s = j.get<std::string>();
  else throw Error(ErrorCode::Parse, "expected a rational string, got " + j.dump());
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw Error(ErrorCode::Parse, "malformed rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline Integer integer_from_json(const Json& j) {
  const Rational r = rational_from_json(j);
  if (r.get_den() != 1) throw Error(ErrorCode::Parse, "expected an integer, got " + j.dump());
  return r.get_num();
}

// Integers that fit in 64 bits stay JSON numbers.
inline Json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected an integer array");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

inline Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (const auto& r : m) a.push_back(to_json(r));
  return a;
}

inline IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected an integer matrix");
  IntMatrix m;
  for (const auto& r : j) m.push_back(int_vector_from_json(r));
  return m;
}

inline Json to_json(const RatMatrix& m) {
  Json a = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(to_json(x));
    a.push_back(std::move(row));
  }
  return a;
}

inline RatMatrix rat_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected a rational matrix");
  RatMatrix m;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(ErrorCode::Parse, "expected a rational row");
    RatVector row;
    for (const auto& x : r) row.push_back(rational_from_json(x));
    m.push_back(std::move(row));
  }
  return m;
}

// fields

inline Json to_json(const FieldPtr& f) {
  return {{"min_poly", to_json(f->min_poly())}, {"root_lo", to_json(f->root_lo())}, {"root_hi", to_json(f->root_hi())}};
}

inline FieldPtr field_from_json(const Json& j) {
  return NumberField::create(int_vector_from_json(field_of(j, "min_poly")), rational_from_json(field_of(j, "root_lo")),
                             rational_from_json(field_of(j, "root_hi")));
}

// "rational", "sqrt:k", "root:n:p", "cyclo:m".
inline FieldPtr field_from_name(const std::string& name) {
  auto num = [&](const std::string& s) -> long {
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorCode::Parse, "bad field parameter in '" + name + "'");
  };
  if (name == "rational" || name == "Q") return NumberField::rationals();
  if (name.rfind("sqrt:", 0) == 0) return NumberField::quadratic(num(name.substr(5)));
  if (name.rfind("cyclo:", 0) == 0) return NumberField::real_cyclotomic(static_cast<unsigned>(num(name.substr(6))));
  if (name.rfind("root:", 0) == 0) {
    const auto colon = name.find(':', 5);
    if (colon == std::string::npos) throw Error(ErrorCode::Parse, "expected root:n:p, got '" + name + "'");
    const long n = num(name.substr(5, colon - 5));
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "root degree must be positive");
    return NumberField::pure_root(static_cast<unsigned>(n), num(name.substr(colon + 1)));
  }
  throw Error(ErrorCode::Parse, "unknown field '" + name + "'");
}

// An element is its coefficient list in the power basis of the field generator.
inline Json to_json(const Scalar& s) {
  Json a = Json::array();
  for (const auto& c : s.coefficients()) a.push_back(to_json(c));
  return a;
}

inline Scalar scalar_from_json(const FieldPtr& f, const Json& j) {
  if (!j.is_array()) return Scalar(rational_from_json(j)).lift(f);
  if (j.size() > static_cast<std::size_t>(f->degree()))
    throw Error(ErrorCode::Parse, "element has more coefficients than the field degree");
  poly::Poly c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return Scalar(f, std::move(c));
}

inline Json to_json(const FVector& v) {
  Json a = Json::array();
  for (const auto& x : v.coords()) a.push_back(to_json(x));
  return a;
}

inline FVector vector_from_json(const FieldPtr& f, const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected a vector");
  std::vector<Scalar> xs;
  for (const auto& x : j) xs.push_back(scalar_from_json(f, x));
  return FVector(f, std::move(xs));
}

// lattices

inline Json to_json(const QuadLattice& l) {
  Json j = {{"rank", l.rank()}, {"gram", to_json(l.gram())}};
  if (!l.name().empty()) j["name"] = l.name();
  return j;
}

inline LatticePtr lattice_from_json(const Json& j) {
  if (j.is_string()) return catalog::by_name(j.get<std::string>());
  IntMatrix g = int_matrix_from_json(field_of(j, "gram"));
  if (j.contains("rank") && integer_from_json(j["rank"]) != static_cast<long>(g.size()))
    throw Error(ErrorCode::Parse, "lattice rank does not match the Gram matrix");
  return QuadLattice::create(std::move(g), j.value("name", std::string()));
}

// period points and spanning pairs

inline Json to_json(const SpanningPair& p) { return {{"a", to_json(p.a)}, {"b", to_json(p.b)}}; }

inline SpanningPair pair_from_json(const FieldPtr& f, const Json& j) {
  return {vector_from_json(f, field_of(j, "a")), vector_from_json(f, field_of(j, "b"))};
}

inline FieldPtr pair_field(const SpanningPair& p) { return common_field(p.a.field(), p.b.field()); }

inline Json to_json(const PeriodPoint& p) {
  Json j = to_json(p.pair());
  j["field"] = to_json(p.field());
  return j;
}

inline FieldPtr optional_field(const Json& j) {
  return j.is_object() && j.contains("field") ? field_from_json(j["field"]) : NumberField::rationals();
}

inline PeriodPoint period_from_json(const LatticePtr& l, const Json& j) {
  return PeriodPoint::make(l, pair_from_json(optional_field(j), j));
}

// twistor lines

inline Json to_json(const TwistorLine& t) {
  Json basis = Json::array();
  for (const auto& w : t.space().basis()) basis.push_back(to_json(w));
  Json minors = Json::array();
  for (const auto& m : t.space().minors()) minors.push_back(to_json(m));
  Json g;
  if (const auto* gw = std::get_if<GenericWitness>(&t.genericity()))
    g = {{"kind", "generic"},
         {"left_inverse", to_json(gw->kernel.left_inverse)},
         {"invariant_factors", to_json(gw->kernel.invariant_factors)}};
  else if (const auto* nw = std::get_if<NonGenericWitness>(&t.genericity()))
    g = {{"kind", "nongeneric"}, {"vector", to_json(nw->vector)}};
  else
    g = {{"kind", "unchecked"}};
  return {{"field", to_json(t.space().field())}, {"basis", basis}, {"minors", minors}, {"genericity", g}};
}

// Minors are recomputed by ThreeSpace::make; the stored ones are informational.
inline TwistorLine line_from_json(const LatticePtr& l, const Json& j) {
  const FieldPtr f = optional_field(j);
  const Json& basis = field_of(j, "basis");
  if (!basis.is_array() || basis.size() != 3) throw Error(ErrorCode::Parse, "a line needs exactly three basis vectors");
  auto space = ThreeSpace::make(l, vector_from_json(f, basis[0]), vector_from_json(f, basis[1]),
                                vector_from_json(f, basis[2]));
  Genericity g = Unchecked{};
  if (j.contains("genericity")) {
    const Json& gj = j["genericity"];
    const std::string kind = field_of(gj, "kind").get<std::string>();
    if (kind == "generic")
      g = GenericWitness{{rat_matrix_from_json(field_of(gj, "left_inverse")),
                          int_vector_from_json(field_of(gj, "invariant_factors"))}};
    else if (kind == "nongeneric")
      g = NonGenericWitness{int_vector_from_json(field_of(gj, "vector"))};
    else if (kind != "unchecked")
      throw Error(ErrorCode::Parse, "unknown genericity kind '" + kind + "'");
  }
  return TwistorLine(std::move(space), std::move(g));
}

// chain certificates

inline Json to_json(const ChainCertificate& c) {
  FieldPtr f = common_field(pair_field(c.from), pair_field(c.to));
  for (const auto& p : c.points) f = common_field(f, pair_field(p));
  if (c.ball) f = common_field(f, pair_field(c.ball->center));
  for (const auto& s : c.segments) f = common_field(common_field(f, pair_field(s.from)), pair_field(s.to));
  Json points = Json::array(), lines = Json::array(), flags = Json::array(), witnesses = Json::array();
  for (const auto& p : c.points) points.push_back(to_json(p));
  for (const auto& t : c.lines) lines.push_back(to_json(t));
  for (bool b : c.require_generic) flags.push_back(b);
  for (const auto& s : c.segments) witnesses.push_back({{"from", to_json(s.from)}, {"to", to_json(s.to)}});
  Json ball = nullptr;
  if (c.ball) ball = {{"center", to_json(c.ball->center)}, {"radius", to_json(c.ball->radius)}};
  return {{"v", kVersion},
          {"kind", "chain"},
          {"lattice", to_json(*c.lattice)},
          {"field", to_json(f)},
          {"from", to_json(c.from)},
          {"to", to_json(c.to)},
          {"points", points},
          {"lines", lines},
          {"require_generic", flags},
          {"ball", ball},
          {"closed_start", c.closed_start},
          {"witnesses", witnesses}};
}

inline ChainCertificate chain_from_json(const Json& j) {
  require_version(j);
  if (j.value("kind", std::string()) != "chain") throw Error(ErrorCode::Parse, "document is not a chain certificate");
  ChainCertificate c;
  c.lattice = lattice_from_json(field_of(j, "lattice"));
  const FieldPtr f = field_from_json(field_of(j, "field"));
  c.from = pair_from_json(f, field_of(j, "from"));
  c.to = pair_from_json(f, field_of(j, "to"));
  for (const auto& p : field_of(j, "points")) c.points.push_back(pair_from_json(f, p));
  for (const auto& t : field_of(j, "lines")) c.lines.push_back(line_from_json(c.lattice, t));
  for (const auto& b : field_of(j, "require_generic")) {
    if (!b.is_boolean()) throw Error(ErrorCode::Parse, "require_generic entries must be booleans");
    c.require_generic.push_back(b.get<bool>());
  }
  if (j.contains("ball") && !j["ball"].is_null())
    c.ball = Ball{pair_from_json(f, field_of(j["ball"], "center")), rational_from_json(field_of(j["ball"], "radius"))};
  c.closed_start = j.value("closed_start", false);
  if (j.contains("witnesses"))
    for (const auto& s : j["witnesses"])
      c.segments.push_back({pair_from_json(f, field_of(s, "from")), pair_from_json(f, field_of(s, "to"))});
  return c;
}

inline Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e = {{"condition", c.condition}, {"passed", c.passed}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  return {{"ok", r.ok()}, {"checks", checks}};
}

// reflection words: ordered roots plus the product matrix

inline Json to_json(const ReflectionWord& w) {
  Json roots = Json::array();
  for (const auto& r : w.roots()) roots.push_back(to_json(r.vector()));
  return {{"roots", roots}, {"matrix", to_json(w.matrix())}};
}

inline ReflectionWord word_from_json(const LatticePtr& l, const Json& j) {
  ReflectionWord w(l);
  for (const auto& r : field_of(j, "roots")) w.push_back(Root::make(l, int_vector_from_json(r)));
  if (j.contains("matrix") && int_matrix_from_json(j["matrix"]) != w.matrix())
    throw Error(ErrorCode::InvalidArgument, "stored matrix differs from the product of the reflections");
  return w;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace torelli::io
