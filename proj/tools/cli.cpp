#include "cli.hpp"

#include "rhi/invariants.hpp"
#include "rhi/io.hpp"
#include "rhi/oracle.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace rhi::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  bool json = false;
  bool witness = false;
  bool strict = false;
  bool formal = false;
  std::optional<int> truncation_override;
};

/// Loads algebra and map files, sharing one realized algebra per file path.
template <ExactScalar S>
class Session {
 public:
  explicit Session(const Globals& g) : g_(g) {}

  AlgebraPtr<S> algebra(const fs::path& path) {
    const std::string key = fs::weakly_canonical(path).string();
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto A = realize<S>(load_algebra(path), g_.truncation_override);
    cache_[key] = A;
    return A;
  }

  AlgebraMap<S> map(const fs::path& path) {
    const MapFile m = load_map(path);
    auto dom = algebra(m.domain);
    auto cod = algebra(m.codomain);
    if (!(dom->field() == cod->field()))
      throw FileError(path.string() + ": domain and codomain are over different fields");
    return build_map<S>(dom, cod, m.images);
  }

 private:
  const Globals& g_;
  std::map<std::string, AlgebraPtr<S>> cache_;
};

FieldSpec field_of_map(const fs::path& map_path) {
  const MapFile m = load_map(map_path);
  return load_algebra(m.domain).field;
}

std::string dims_string(const std::vector<int>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s;
}

template <ExactScalar S>
std::vector<int> dims_of(const GradedAlgebra<S>& A) {
  std::vector<int> dims;
  for (int d = 0; d <= A.max_degree(); ++d) dims.push_back(A.dim(d));
  return dims;
}

std::string label(const Globals& g, const std::string& name, const FieldSpec& field) {
  if (name == "relsecat_lb" && !g.formal) return "lower bound for the relative sectional category";
  if (!g.formal) return "cohomological lower bound (pass --formal to assert the maps are formal)";
  if (field.kind != FieldSpec::Kind::rationals)
    return "nilpotency over " + field.name() + "; not a rational homotopy invariant";
  return "rational homotopy invariant of the formal map";
}

template <ExactScalar S>
int emit(const Globals& g, const InvariantReport<S>& r, std::ostream& out, const std::vector<std::string>& notes = {}) {
  const ReportRecord rec = to_record(r);
  if (g.json) {
    out << report_to_json(rec).dump(2) << "\n";
  } else {
    out << r.formula << "\n";
    out << "  " << label(g, r.name, r.algebra->field()) << "\n";
    out << "value: " << r.value << "\n";
    out << "exact: " << (r.exact ? "yes" : "no (lower bound)") << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    for (const auto& n : notes) out << "note: " << n << "\n";
    if (g.witness) {
      out << "witness:";
      if (rec.factors.empty()) out << " empty product (1)";
      for (std::size_t i = 0; i < rec.factors.size(); ++i) out << (i ? " * " : " ") << "(" << rec.factors[i] << ")";
      out << "\n  = " << to_expression(*r.algebra, r.nil.product) << " in degree " << rec.product_degree << "\n";
    }
  }
  return g.strict && !r.warnings.empty() ? strict_warning : ok;
}

/// Runs fn<S> with the scalar type matching the field.
template <class Fn>
int dispatch(const FieldSpec& field, Fn&& fn) {
  if (field.kind == FieldSpec::Kind::rationals) return fn(Rational{});
  return fn(Zp{});
}

// ---------------------------------------------------------------------------

int cmd_algebra_check(const Globals& g, const fs::path& path, std::ostream& out) {
  const AlgebraFile file = load_algebra(path);
  return dispatch(file.field, [&](auto tag) {
    using S = decltype(tag);
    const auto A = realize<S>(file, g.truncation_override);
    std::vector<std::pair<std::string, std::optional<std::string>>> checks;
    checks.emplace_back("unit", check_unit(*A));
    checks.emplace_back("degree additivity", check_degrees(*A));
    checks.emplace_back("graded commutativity", check_graded_commutative(*A));
    checks.emplace_back("associativity", check_associative(*A));
    bool all_ok = true;
    for (const auto& [name, err] : checks) all_ok = all_ok && !err;
    const Finiteness fin = A->finiteness();
    if (g.json) {
      json j{{"field", field_to_json(A->field())},
             {"mode", file.table_mode ? "table" : "presentation"},
             {"dims", dims_of(*A)},
             {"exact", fin.exact},
             {"top_degree", fin.exact ? json(fin.top_degree) : json(nullptr)},
             {"truncation_degree", fin.truncation}};
      json axioms = json::object();
      for (const auto& [name, err] : checks) axioms[name] = err ? *err : "ok";
      j["axioms"] = axioms;
      json basis = json::array();
      for (int d = 0; d <= A->max_degree(); ++d)
        for (int i = 0; i < A->dim(d); ++i) basis.push_back({{"degree", d}, {"name", A->basis_name(d, i)}});
      j["basis"] = basis;
      out << j.dump(2) << "\n";
    } else {
      out << "field: " << A->field().name() << "\n";
      out << "mode: " << (file.table_mode ? "table" : "presentation") << "\n";
      out << "dims: " << dims_string(dims_of(*A)) << "\n";
      if (fin.exact)
        out << "exact, top degree " << fin.top_degree << "\n";
      else
        out << "truncated at degree " << fin.truncation << " (no finiteness certificate)\n";
      for (const auto& [name, err] : checks) out << name << ": " << (err ? *err : "ok") << "\n";
    }
    if (!all_ok) return static_cast<int>(failure);
    return g.strict && !fin.exact ? static_cast<int>(strict_warning) : static_cast<int>(ok);
  });
}

template <ExactScalar S, class Fn>
int with_maps(const Globals& g, const std::vector<fs::path>& paths, Fn&& fn) {
  Session<S> s(g);
  std::vector<AlgebraMap<S>> maps;
  for (const auto& p : paths) maps.push_back(s.map(p));
  for (const auto& m : maps)
    if (!(m.domain()->field() == maps.front().domain()->field()))
      throw FileError("all maps of one command must be over the same field");
  return fn(maps);
}

template <class Fn>
int with_maps_any(const Globals& g, const std::vector<fs::path>& paths, Fn&& fn) {
  if (field_of_map(paths.front()).kind == FieldSpec::Kind::rationals)
    return with_maps<Rational>(g, paths, [&](const auto& maps) { return fn(maps); });
  return with_maps<Zp>(g, paths, [&](const auto& maps) { return fn(maps); });
}

// ---------------------------------------------------------------------------
// table

struct Range {
  int lo, hi;
};

Range parse_range(const std::string& text, const std::string& what) {
  Range r{};
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text);
    } else {
      r.lo = std::stoi(text.substr(0, dots));
      r.hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": expected an integer or a range a..b, got '" + text + "'");
  }
  if (r.lo > r.hi) throw std::invalid_argument(what + ": empty range " + text);
  return r;
}

fs::path cache_dir() {
  if (const char* env = std::getenv("RHI_CACHE_DIR"); env && *env) return fs::path(env);
  return fs::path("rhi-cache");
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream o(path);
  if (!o) throw FileError(path.string() + ": cannot write file");
  o << j.dump(2) << "\n";
}

struct Row {
  std::string family;
  int n = 0;
  int param = 0;  // l or k
  int computed = 0;
  int predicted = 0;
  bool exact = false;
  fs::path map_file;
};

constexpr int kExteriorDegrees[] = {3, 5, 7, 9};
constexpr int kMaxTableTensorDim = 4096;

/// Presentation of one family member; dim is its total dimension.
AlgebraFile family_algebra(const std::string& family, int param, int& total_dim) {
  AlgebraFile a;
  a.field = FieldSpec::rationals();
  auto& p = a.presentation;
  if (family == "spheres") {
    p.generators = {{"x", param}};
    p.relations = {"x^2"};
    p.truncation_degree = 2 * param;
    total_dim = 2;
  } else if (family == "cproj") {
    p.generators = {{"x", 2}};
    p.relations = {"x^" + std::to_string(param + 1)};
    p.truncation_degree = 2 * param + 2;
    total_dim = param + 1;
  } else {
    int sum = 0;
    for (int i = 0; i < param; ++i) {
      p.generators.push_back({"x" + std::to_string(i + 1), kExteriorDegrees[i]});
      sum += kExteriorDegrees[i];
    }
    p.truncation_degree = sum + kExteriorDegrees[param - 1];
    total_dim = 1 << param;
  }
  return a;
}

int predicted_value(const std::string& family, int n, int param) {
  if (family == "spheres") return param % 2 ? n - 1 : n;
  if (family == "cproj") return n * param;
  return (n - 1) * param;
}

int cmd_table(const Globals& g, const std::string& family, const std::string& n_text, const std::string& p_text,
              std::ostream& out) {
  if (family != "spheres" && family != "cproj" && family != "exterior")
    throw std::invalid_argument("unknown family '" + family + "' (expected spheres, cproj or exterior)");
  const std::string pname = family == "exterior" ? "k" : "l";
  const Range nr = parse_range(n_text.empty() ? (family == "spheres" ? "2..5" : "2..4") : n_text, "n");
  const Range pr = parse_range(p_text.empty() ? (family == "spheres" ? "1..4" : "1..3") : p_text, pname);
  const int pmax = family == "exterior" ? 4 : 5;
  if (nr.lo < 2 || nr.hi > 6) throw std::invalid_argument("n must lie in 2..6");
  if (pr.lo < 1 || pr.hi > pmax) throw std::invalid_argument(pname + " must lie in 1.." + std::to_string(pmax));
  for (int param = pr.lo; param <= pr.hi; ++param) {
    int dim = 0;
    family_algebra(family, param, dim);
    double tensor = 1;
    for (int i = 0; i < nr.hi; ++i) tensor *= dim;
    if (tensor > kMaxTableTensorDim)
      throw std::invalid_argument("size guard: " + family + " with " + pname + "=" + std::to_string(param) +
                                  " and n=" + std::to_string(nr.hi) + " needs a tensor power of dimension " +
                                  std::to_string(static_cast<long long>(tensor)) + " > " +
                                  std::to_string(kMaxTableTensorDim));
  }

  const fs::path dir = cache_dir();
  fs::create_directories(dir);
  std::vector<Row> rows;
  for (int param = pr.lo; param <= pr.hi; ++param) {
    int dim = 0;
    const AlgebraFile alg = family_algebra(family, param, dim);
    const std::string stem = family + "_" + pname + std::to_string(param);
    write_json(dir / (stem + ".json"), algebra_to_json(alg));
    MapFile m{stem + ".json", stem + ".json", {}};
    for (const auto& gen : alg.presentation.generators) m.images[gen.name] = gen.name;
    const fs::path map_path = dir / (stem + "_id.map.json");
    write_json(map_path, map_to_json(m));
    Session<Rational> s(g);
    const AlgebraMap<Rational> f = s.map(map_path);
    for (int n = nr.lo; n <= nr.hi; ++n) {
      const auto r = tc_n_formal(f, n);
      rows.push_back({family, n, param, r.value, predicted_value(family, n, param), r.exact, map_path});
    }
  }

  bool all_match = true;
  for (const auto& r : rows) all_match = all_match && r.computed == r.predicted && r.exact;
  if (g.json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"family", r.family},
                     {"n", r.n},
                     {pname, r.param},
                     {"computed", r.computed},
                     {"predicted", r.predicted},
                     {"match", r.computed == r.predicted},
                     {"exact", r.exact},
                     {"map_file", r.map_file.generic_string()}});
    out << arr.dump(2) << "\n";
  } else {
    out << "family,n," << pname << ",computed,predicted,match,exact,map_file\n";
    for (const auto& r : rows)
      out << r.family << "," << r.n << "," << r.param << "," << r.computed << "," << r.predicted << ","
          << (r.computed == r.predicted ? "yes" : "no") << "," << (r.exact ? "yes" : "no") << ","
          << r.map_file.generic_string() << "\n";
  }
  return all_match ? ok : failure;
}

// ---------------------------------------------------------------------------
// fuzz

template <ExactScalar S>
bool fuzz_one(std::uint64_t seed, const FieldSpec& field, std::ostream& out) {
  RandomInstanceSpec spec;
  spec.seed = seed;
  spec.field = field;
  const auto A = random_algebra<S>(spec);
  spec.seed = seed * 7919 + 1;
  const auto B = random_algebra<S>(spec);
  const auto rm = random_map<S>(A, B, seed);
  bool good = true;
  auto compare = [&](const char* what, const Ideal<S>& I) {
    const int fast = nilpotency(I).index;
    const auto brute = brute_nilpotency(I, 64);
    const auto subset = brute_nilpotency_of_set(*I.parent, I.generators, 64);
    const bool same = brute && *brute == fast && subset && *subset == fast;
    good = good && same;
    out << "seed " << seed << " " << field.name() << " " << what << ": nil=" << fast
        << " brute=" << (brute ? std::to_string(*brute) : "cap") << " subset=" << (subset ? std::to_string(*subset) : "cap")
        << (same ? "" : "  MISMATCH") << "\n";
  };
  if (rm.map) compare("kernel", ideal_from_subspace(kernel(*rm.map)));
  compare("ideal", random_ideal(A, seed));
  out << "seed " << seed << " map rejections: " << rm.rejections << "\n";
  return good;
}

int cmd_fuzz(int seeds, std::uint64_t start, const std::string& field_text, std::ostream& out) {
  const FieldSpec field = field_text == "Q" ? FieldSpec::rationals() : FieldSpec::prime(std::stoull(field_text));
  bool good = true;
  for (int i = 0; i < seeds; ++i) {
    const std::uint64_t seed = start + static_cast<std::uint64_t>(i);
    good = (field.kind == FieldSpec::Kind::rationals ? fuzz_one<Rational>(seed, field, out)
                                                     : fuzz_one<Zp>(seed, field, out)) &&
           good;
  }
  return good ? ok : failure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Nilpotency-based invariants of formal maps from cohomology algebras", "rhi"};
  app.fallthrough();
  app.require_subcommand(1);
  int override_value = -1;
  app.add_flag("--json", g.json, "emit machine-readable JSON");
  app.add_flag("--witness", g.witness, "print witness factors");
  app.add_flag("--strict", g.strict, "exit with status 2 when a report carries a warning");
  app.add_flag("--formal", g.formal, "assert that the maps are induced by formal maps");
  app.add_option("--truncation-override", override_value, "replace the truncation degree of presentation files")
      ->check(CLI::PositiveNumber);

  std::function<int()> action;

  auto* algebra = app.add_subcommand("algebra", "algebra file utilities");
  algebra->require_subcommand(1);
  auto* check = algebra->add_subcommand("check", "realize an algebra file and verify its axioms");
  std::string algebra_path;
  check->add_option("file", algebra_path, "algebra file")->required();
  check->callback([&] { action = [&] { return cmd_algebra_check(g, algebra_path, out); }; });

  auto* tc = app.add_subcommand("tc", "higher topological complexity of a formal map");
  std::string tc_map;
  int tc_n = 2;
  tc->add_option("map", tc_map, "map file for f*: H*(Y) -> H*(X)")->required();
  tc->add_option("n", tc_n, "n >= 2")->required();
  tc->callback([&] {
    action = [&] {
      return with_maps_any(g, {tc_map}, [&](const auto& maps) { return emit(g, tc_n_formal(maps[0], tc_n), out); });
    };
  });

  auto* cat = app.add_subcommand("cat", "LS-category of a formal map");
  std::string cat_map;
  cat->add_option("map", cat_map, "map file")->required();
  cat->callback([&] {
    action = [&] {
      return with_maps_any(g, {cat_map}, [&](const auto& maps) { return emit(g, cat_formal(maps[0]), out); });
    };
  });

  auto* secat = app.add_subcommand("secat", "sectional category nil(phi(ker psi))");
  std::string phi_map, psi_map;
  secat->add_option("phi", phi_map, "map file for phi")->required();
  secat->add_option("psi", psi_map, "map file for psi")->required();
  secat->callback([&] {
    action = [&] {
      return with_maps_any(g, {phi_map, psi_map},
                           [&](const auto& maps) { return emit(g, secat_formal(maps[0], maps[1]), out); });
    };
  });

  auto* tcmw = app.add_subcommand("tcmw", "Murillo-Wu topological complexity of a formal map");
  std::string tcmw_map;
  tcmw->add_option("map", tcmw_map, "map file")->required();
  tcmw->callback([&] {
    action = [&] {
      return with_maps_any(g, {tcmw_map}, [&](const auto& maps) { return emit(g, tc_mw_formal(maps[0]), out); });
    };
  });

  auto* hd = app.add_subcommand("hd", "homotopic distance of two formal maps");
  std::string hd_f, hd_g;
  hd->add_option("f", hd_f, "map file for f")->required();
  hd->add_option("g", hd_g, "map file for g")->required();
  hd->callback([&] {
    action = [&] {
      return with_maps_any(g, {hd_f, hd_g}, [&](const auto& maps) { return emit(g, hd_formal(maps[0], maps[1]), out); });
    };
  });

  auto* rel = app.add_subcommand("relsecat-lb", "lower bound nil(f(ker p)) for the relative sectional category");
  std::string rel_f, rel_p, rel_q;
  rel->add_option("f", rel_f, "map file for f")->required();
  rel->add_option("p", rel_p, "map file for p")->required();
  rel->add_option("--pullback", rel_q, "map file q; also report nil(ker q) for comparison");
  rel->callback([&] {
    action = [&] {
      std::vector<fs::path> paths{rel_f, rel_p};
      if (!rel_q.empty()) paths.emplace_back(rel_q);
      return with_maps_any(g, paths, [&](const auto& maps) {
        const auto r = relsecat_lower_bound(maps[0], maps[1]);
        std::vector<std::string> notes;
        if (maps.size() == 3) {
          const int kq = kernel_nilpotency(maps[2]).index;
          notes.push_back("nil(ker q) = " + std::to_string(kq) + (kq > r.value ? ", strictly larger than the bound" : ""));
        }
        return emit(g, r, out, notes);
      });
    };
  });

  auto* table = app.add_subcommand("table", "tabulate tc_n of identity maps against closed forms");
  std::string family, n_range, p_range;
  table->add_option("family", family, "spheres | cproj | exterior")->required();
  table->add_option("--n", n_range, "range of n, e.g. 2..5");
  table->add_option("--l,--k", p_range, "range of l (spheres, cproj) or k (exterior)");
  table->callback([&] { action = [&] { return cmd_table(g, family, n_range, p_range, out); }; });

  auto* fuzz = app.add_subcommand("fuzz", "compare the nilpotency engine with the brute-force oracle");
  fuzz->group("");
  int fuzz_seeds = 20;
  std::uint64_t fuzz_start = 1;
  std::string fuzz_field = "Q";
  fuzz->add_option("--seeds", fuzz_seeds, "number of seeds");
  fuzz->add_option("--start", fuzz_start, "first seed");
  fuzz->add_option("--field", fuzz_field, "Q or a prime p");
  fuzz->callback([&] { action = [&] { return cmd_fuzz(fuzz_seeds, fuzz_start, fuzz_field, out); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : failure;
  }
  if (override_value > 0) g.truncation_override = override_value;
  try {
    return action ? action() : failure;
  } catch (const ParseError& e) {
    err << "error: parse error: " << e.what() << " (token '" << e.token() << "')\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return failure;
}

}  // namespace rhi::cli
