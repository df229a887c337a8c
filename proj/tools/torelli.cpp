// torelli: JSON front end to the library. Every response is one document
// {"v", "ok", "command", "result", "certificate", "diagnostics"}.

#include <torelli/json_io.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace torelli;
using io::Json;

namespace {

// Bad invocation rather than bad mathematics: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Reply {
  Json result = nullptr;
  Json certificate = nullptr;
  Json diagnostics = Json::array();
  bool ok = true;
};

Json read_json(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    ss << in.rdbuf();
  }
  Json j;
  try {
    j = Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
  if (j.is_object() && j.contains("v")) io::require_version(j);
  return j;
}

// Accepts either the bare object or a response that carries it in "result".
Json unwrap(const Json& j, const char* marker, const char* key) {
  if (j.is_object() && j.contains(marker)) return j;
  if (j.is_object() && j.contains("result") && j["result"].is_object() && j["result"].contains(key))
    return j["result"][key];
  throw Error(ErrorCode::Parse, std::string("input has neither \"") + marker + "\" nor result." + key);
}

LatticePtr lattice_arg(const std::string& s) {
  if (std::filesystem::is_regular_file(s)) return io::lattice_from_json(read_json(s));
  return catalog::by_name(s);
}

// A file path, a name in $TORELLI_FIELD_DIR, or a built-in name.
FieldPtr field_arg(const std::string& s) {
  if (std::filesystem::is_regular_file(s)) return io::field_from_json(read_json(s));
  if (const char* dir = std::getenv("TORELLI_FIELD_DIR")) {
    const auto p = std::filesystem::path(dir) / (s + ".json");
    if (std::filesystem::is_regular_file(p)) return io::field_from_json(read_json(p.string()));
  }
  return io::field_from_name(s);
}

IntVector int_list_arg(const std::string& s) {
  IntVector v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Integer z;
    if (tok.empty() || z.set_str(tok, 10) != 0) throw UsageError("bad integer list '" + s + "'");
    v.push_back(z);
  }
  return v;
}

Json signature_json(Signature s) { return Json::array({s.positive, s.negative}); }

Json display_period(const PeriodPoint& p) {
  Json out = Json::array();
  for (const auto& z : p.approx_period()) out.push_back(Json::array({z.real(), z.imag()}));
  return {{"period", out}};
}

// Error::what() repeats the code; diagnostics carry it separately.
std::string message_of(const Error& e) {
  const std::string w = e.what(), prefix = std::string(to_string(e.code())) + ": ";
  return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
}

void print_text(std::ostream& os, const std::string& command, const Reply& r) {
  os << command << ": " << (r.ok ? "ok" : "failed") << "\n";
  if (r.result.is_object())
    for (const auto& [k, v] : r.result.items()) {
      const std::string s = v.dump();
      if (s.size() <= 100) os << "  " << k << ": " << s << "\n";
      else os << "  " << k << ": (" << s.size() << " bytes, use --format json)\n";
    }
  if (!r.certificate.is_null()) os << "  certificate: " << r.certificate["lines"].size() << " lines\n";
  for (const auto& d : r.diagnostics) os << "  " << d.value("code", "") << ": " << d.value("message", "") << "\n";
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text << std::flush;
    return;
  }
  const std::string tmp = output + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + output + "'");
    out << text;
  }
  std::filesystem::rename(tmp, output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice, period-domain and twistor-chain computations"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  std::string format = "json", output;
  app.add_option("--seed", seed, "seed for randomized commands");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", output, "write the response to a file instead of stdout");

  std::string command;
  std::function<Reply()> handler;
  auto bind = [&](CLI::App* sub, std::string name, std::function<Reply()> fn) {
    sub->callback([&command, &handler, name = std::move(name), fn = std::move(fn)] {
      command = name;
      handler = fn;
    });
  };

  std::string lattice = "k3", field = "rational", input, from, to, center, mode = "global", radius, omega, ref,
              period, roots, matrix;
  int budget = 50, max_attempts = 64, max_subdivisions = 64, max_steps = 1000;
  long box = 3;

  // lattice
  auto* lat = app.add_subcommand("lattice", "lattice catalog and kernels");
  lat->require_subcommand(1);
  auto* info = lat->add_subcommand("info", "rank, signature, parity and Gram matrix");
  info->add_option("kind", lattice, "catalog name or lattice JSON file")->required();
  bind(info, "lattice info", [&] {
    auto l = lattice_arg(lattice);
    Reply r;
    r.result = io::to_json(*l);
    r.result["signature"] = signature_json(l->signature());
    r.result["even"] = l->is_even();
    r.result["determinant"] = io::to_json(nf::determinant(l->gram()));
    return r;
  });
  auto* kernel = lat->add_subcommand("kernel", "lattice vectors orthogonal to field-valued vectors");
  kernel->add_option("--lattice", lattice)->required();
  kernel->add_option("--input", input, "{\"field\", \"vectors\"}")->required();
  bind(kernel, "lattice kernel", [&] {
    auto l = lattice_arg(lattice);
    const Json j = read_json(input);
    const FieldPtr f = io::optional_field(j);
    std::vector<FVector> cons;
    for (const auto& v : io::field_of(j, "vectors")) cons.push_back(io::vector_from_json(f, v));
    const Sublattice k = integral_kernel(l, cons);
    Reply r;
    r.result = {{"rank", k.rank()}, {"basis", io::to_json(k.basis())}};
    return r;
  });

  // period
  auto* per = app.add_subcommand("period", "period points");
  per->require_subcommand(1);
  auto* pcheck = per->add_subcommand("check", "validate a period point and report its Picard rank");
  pcheck->add_option("--lattice", lattice);
  pcheck->add_option("--input", input)->required();
  bind(pcheck, "period check", [&] {
    auto p = io::period_from_json(lattice_arg(lattice), unwrap(read_json(input), "a", "period"));
    const auto pic = picard_lattice(p);
    Reply r;
    r.result = {{"picard_rank", pic.rank()}, {"generic", pic.rank() == 0}, {"display", display_period(p)}};
    return r;
  });
  auto* prandom = per->add_subcommand("random", "seeded period with trivial Picard lattice");
  prandom->add_option("--lattice", lattice);
  prandom->add_option("--field", field);
  prandom->add_option("--max-attempts", max_attempts);
  bind(prandom, "period random", [&] {
    auto rp = random_generic_period(lattice_arg(lattice), field_arg(field), seed, max_attempts);
    Reply r;
    r.result = {{"period", io::to_json(rp.point)}, {"attempts", rp.attempts}};
    return r;
  });
  auto* picard = per->add_subcommand("picard", "Picard lattice of a period point");
  picard->add_option("--lattice", lattice);
  picard->add_option("--input", input)->required();
  bind(picard, "period picard", [&] {
    auto p = io::period_from_json(lattice_arg(lattice), unwrap(read_json(input), "a", "period"));
    const auto pic = picard_lattice(p);
    Reply r;
    r.result = {{"picard_rank", pic.rank()}, {"basis", io::to_json(pic.basis())}};
    return r;
  });

  // twistor
  auto* tw = app.add_subcommand("twistor", "twistor lines");
  tw->require_subcommand(1);
  auto* tcheck = tw->add_subcommand("check", "decide genericity with a witness");
  tcheck->add_option("--lattice", lattice);
  tcheck->add_option("--input", input)->required();
  bind(tcheck, "twistor check", [&] {
    auto t = check_generic(io::line_from_json(lattice_arg(lattice), unwrap(read_json(input), "basis", "line")));
    Reply r;
    r.result = {{"generic", t.is_generic()}, {"line", io::to_json(t)}};
    return r;
  });
  auto* tgen = tw->add_subcommand("genericize", "perturb a line into a generic one");
  tgen->add_option("--lattice", lattice);
  tgen->add_option("--input", input)->required();
  tgen->add_option("--field", field);
  tgen->add_option("--budget", budget);
  bind(tgen, "twistor genericize", [&] {
    auto t = io::line_from_json(lattice_arg(lattice), unwrap(read_json(input), "basis", "line"));
    auto g = genericize(t, field_arg(field), seed, budget);
    Reply r;
    r.result = {{"line", io::to_json(g.line)},
                {"magnitude", io::to_json(g.magnitude)},
                {"attempts", g.attempts},
                {"perturbed", g.perturbed}};
    return r;
  });

  // connect
  auto* con = app.add_subcommand("connect", "chain of twistor lines between period points");
  con->add_option("--lattice", lattice);
  con->add_option("--from", from)->required();
  con->add_option("--to", to, "target point (not used by boundary mode)");
  con->add_option("--mode", mode)->check(CLI::IsMember({"weak", "global", "strong", "ball", "boundary"}));
  con->add_option("--field", field);
  con->add_option("--max-subdivisions", max_subdivisions);
  con->add_option("--budget", budget);
  con->add_option("--center", center, "ball center (defaults to --from)");
  con->add_option("--radius", radius, "ball radius as p/q");
  bind(con, "connect", [&] {
    auto l = lattice_arg(lattice);
    auto load = [&](const std::string& path) { return io::period_from_json(l, unwrap(read_json(path), "a", "period")); };
    const PeriodPoint x = load(from);
    Reply r;
    ChainCertificate c;
    if (mode == "ball" || mode == "boundary") {
      if (radius.empty()) throw UsageError("--radius is required in " + mode + " mode");
      const PeriodPoint ctr = center.empty() ? x : load(center);
      const Ball ball{ctr.pair(), io::rational_from_json(Json(radius))};
      if (mode == "boundary") {
        auto b = boundary_line(x, ball, field_arg(field), seed, budget);
        r.result = {{"interior", io::to_json(b.interior)}, {"line", io::to_json(b.line)}};
        c = std::move(b.certificate);
      } else {
        if (to.empty()) throw UsageError("--to is required");
        c = connect_strong_in_ball(x, load(to), ball, field_arg(field), seed, budget);
        r.result = Json::object();
      }
    } else {
      if (to.empty()) throw UsageError("--to is required");
      const PeriodPoint y = load(to);
      if (mode == "weak") {
        auto w = connect_weak(x, y);
        if (auto* nn = std::get_if<NotNearEnough>(&w)) throw Error(ErrorCode::NotNearEnough, nn->reason);
        c = std::get<ChainCertificate>(std::move(w));
      } else {
        const auto m = mode == "strong" ? ChainMode::Strong : ChainMode::Weak;
        c = connect_global(x, y, field_arg(field), seed, max_subdivisions, m);
      }
      r.result = Json::object();
    }
    std::size_t generic = 0;
    for (const auto& t : c.lines) generic += t.is_generic() ? 1 : 0;
    r.result["mode"] = mode;
    r.result["length"] = c.length();
    r.result["generic_lines"] = generic;
    r.certificate = io::to_json(c);
    return r;
  });

  // verify
  auto* ver = app.add_subcommand("verify", "re-check a chain certificate from scratch");
  ver->add_option("certificate", input, "certificate or connect response")->required();
  bind(ver, "verify", [&] {
    Json j = read_json(input);
    if (j.is_object() && j.contains("certificate") && !j.contains("kind")) {
      if (j["certificate"].is_null()) throw Error(ErrorCode::Parse, "response carries no certificate");
      j = j["certificate"];
    }
    const auto report = verify_chain(io::chain_from_json(j));
    Reply r;
    r.result = io::to_json(report);
    r.ok = report.ok();
    for (const auto& f : report.failures())
      r.diagnostics.push_back({{"code", "VerificationFailed"}, {"message", f.condition + ": " + f.detail}});
    return r;
  });

  // weyl
  auto* weyl = app.add_subcommand("weyl", "reflections in (-2)-vectors");
  weyl->require_subcommand(1);
  auto* reduce = weyl->add_subcommand("reduce", "move omega into the chamber cut out by the roots");
  reduce->add_option("--lattice", lattice);
  reduce->add_option("--omega", omega, "comma-separated coordinates")->required();
  reduce->add_option("--ref", ref, "vector fixing the cone component (defaults to omega)");
  reduce->add_option("--period", period, "period point: roots come from its Picard lattice");
  reduce->add_option("--roots", roots, "explicit root list {\"roots\": [...]}");
  reduce->add_option("--box", box);
  reduce->add_option("--max-steps", max_steps);
  bind(reduce, "weyl reduce", [&] {
    auto l = lattice_arg(lattice);
    const IntVector w = int_list_arg(omega);
    const IntVector rv = ref.empty() ? w : int_list_arg(ref);
    std::optional<PeriodPoint> plane;
    if (!period.empty()) plane = io::period_from_json(l, unwrap(read_json(period), "a", "period"));
    std::vector<Root> rs;
    if (!roots.empty()) {
      for (const auto& v : io::field_of(read_json(roots), "roots")) rs.push_back(Root::make(l, io::int_vector_from_json(v)));
    } else if (plane) {
      rs = roots_of_picard(*plane, box);
    } else {
      for (const auto& v : enumerate_norm_vectors(Sublattice::full(l), -2, box)) rs.push_back(Root::make(l, v));
    }
    const auto cone = plane ? PositiveConeRef::create(*plane, FVector::from_integers(rv))
                            : PositiveConeRef::create(l, FVector::from_integers(rv));
    Reply r;
    try {
      auto res = chamber_reduce(w, rs, cone, max_steps);
      r.result = {{"omega", io::to_json(res.omega)}, {"word", io::to_json(res.word)}, {"roots_considered", rs.size()}};
    } catch (const StepBudgetError& e) {
      r.ok = false;
      r.result = {{"partial", {{"omega", io::to_json(e.partial().omega)}, {"word", io::to_json(e.partial().word)}}}};
      r.diagnostics.push_back({{"code", to_string(e.code())}, {"message", message_of(e)}});
    }
    return r;
  });

  // isom
  auto* isom = app.add_subcommand("isom", "lattice isometries");
  isom->require_subcommand(1);
  auto* orient = isom->add_subcommand("orientation", "orientation character on positive three-spaces");
  orient->add_option("--lattice", lattice);
  orient->add_option("--matrix", matrix, "{\"matrix\"}, a bare matrix, or a reflection word")->required();
  bind(orient, "isom orientation", [&] {
    auto l = lattice_arg(lattice);
    const Json j = read_json(matrix);
    IntMatrix m;
    if (j.is_array()) m = io::int_matrix_from_json(j);
    else if (j.contains("roots")) m = io::word_from_json(l, j).matrix();
    else m = io::int_matrix_from_json(io::field_of(j, "matrix"));
    const LatticeIsometry phi(l, m);
    Reply r;
    r.result = {{"class", orientation_class(phi)}, {"determinant", io::to_json(nf::determinant(m))}};
    return r;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "input and output documents are described by the JSON schemas in schemas/\n";
    return 2;
  }

  Reply reply;
  int status = 0;
  try {
    reply = handler();
    status = reply.ok ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const Error& e) {
    reply = Reply{};
    reply.ok = false;
    reply.diagnostics.push_back({{"code", to_string(e.code())}, {"message", message_of(e)}});
    status = 1;
  } catch (const Json::exception& e) {
    reply = Reply{};
    reply.ok = false;
    reply.diagnostics.push_back({{"code", "Parse"}, {"message", e.what()}});
    status = 1;
  }

  try {
    if (format == "text") {
      std::ostringstream os;
      print_text(os, command, reply);
      emit(os.str(), output);
    } else {
      const Json doc = {{"v", io::kVersion},
                        {"ok", reply.ok},
                        {"command", command},
                        {"result", reply.result},
                        {"certificate", reply.certificate},
                        {"diagnostics", reply.diagnostics}};
      emit(io::dump(doc), output);
    }
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
