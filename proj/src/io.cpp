#include "rhi/io.hpp"

#include <fstream>
#include <sstream>

namespace rhi {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& what) {
  throw FileError(source + ": " + where + ": " + what);
}

const json& field_of(const json& j, const char* key, const std::string& source, const std::string& where) {
  if (!j.is_object()) fail(source, where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(source, where, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_of(const json& j, const std::string& source, const std::string& where) {
  if (!j.is_string()) fail(source, where, "expected a string");
  return j.get<std::string>();
}

int int_of(const json& j, const std::string& source, const std::string& where) {
  if (!j.is_number_integer()) fail(source, where, "expected an integer");
  return j.get<int>();
}

/// Coefficients may be given as integers or as literal strings like "1/2".
std::string coeff_of(const json& j, const std::string& source, const std::string& where) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) return j.get<std::string>();
  fail(source, where, "expected an integer or a rational literal string");
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FileError(path.string() + ": " + e.what());
  }
}

FieldSpec field_from_json(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "Q") return FieldSpec::rationals();
  if (j.is_object() && j.size() == 1 && j.contains("Fp") && j["Fp"].is_number_unsigned()) {
    try {
      return FieldSpec::prime(j["Fp"].get<std::uint64_t>());
    } catch (const ScalarError& e) {
      throw FileError(where + ": " + e.what());
    }
  }
  throw FileError(where + ": field must be \"Q\" or {\"Fp\": <prime>}");
}

json field_to_json(const FieldSpec& f) {
  if (f.kind == FieldSpec::Kind::rationals) return "Q";
  return json{{"Fp", f.characteristic}};
}

AlgebraFile parse_algebra(const json& j, const std::string& source) {
  AlgebraFile out;
  out.field = field_from_json(field_of(j, "field", source, "field"), source + ": field");
  const std::string mode = string_of(field_of(j, "mode", source, "mode"), source, "mode");
  if (mode == "presentation") {
    const json& p = field_of(j, "presentation", source, "presentation");
    const json& gens = field_of(p, "generators", source, "presentation");
    if (!gens.is_array()) fail(source, "presentation.generators", "expected an array");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string where = "presentation.generators[" + std::to_string(i) + "]";
      out.presentation.generators.push_back({string_of(field_of(gens[i], "name", source, where), source, where + ".name"),
                                             int_of(field_of(gens[i], "degree", source, where), source, where + ".degree")});
    }
    if (p.contains("relations")) {
      const json& rels = p["relations"];
      if (!rels.is_array()) fail(source, "presentation.relations", "expected an array");
      for (std::size_t i = 0; i < rels.size(); ++i) {
        const std::string where = "presentation.relations[" + std::to_string(i) + "]";
        std::string text = string_of(rels[i], source, where);
        try {
          parse_expression(text);
        } catch (const ParseError& e) {
          fail(source, where, e.what());
        }
        out.presentation.relations.push_back(std::move(text));
      }
    }
    out.presentation.truncation_degree =
        int_of(field_of(p, "truncation_degree", source, "presentation"), source, "presentation.truncation_degree");
  } else if (mode == "table") {
    out.table_mode = true;
    const json& t = field_of(j, "table", source, "table");
    const json& basis = field_of(t, "basis", source, "table");
    if (!basis.is_array()) fail(source, "table.basis", "expected an array");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::string where = "table.basis[" + std::to_string(i) + "]";
      out.table.basis.push_back({string_of(field_of(basis[i], "name", source, where), source, where + ".name"),
                                 int_of(field_of(basis[i], "degree", source, where), source, where + ".degree")});
    }
    out.table.unit = string_of(field_of(t, "unit", source, "table"), source, "table.unit");
    const json& prods = field_of(t, "products", source, "table");
    if (!prods.is_array()) fail(source, "table.products", "expected an array");
    for (std::size_t i = 0; i < prods.size(); ++i) {
      const std::string where = "table.products[" + std::to_string(i) + "]";
      TableProduct tp;
      tp.left = string_of(field_of(prods[i], "left", source, where), source, where + ".left");
      tp.right = string_of(field_of(prods[i], "right", source, where), source, where + ".right");
      const json& value = field_of(prods[i], "value", source, where);
      if (!value.is_array()) fail(source, where + ".value", "expected an array of [coeff, name] pairs");
      for (std::size_t k = 0; k < value.size(); ++k) {
        const std::string w = where + ".value[" + std::to_string(k) + "]";
        if (!value[k].is_array() || value[k].size() != 2) fail(source, w, "expected [coeff, name]");
        tp.value.emplace_back(coeff_of(value[k][0], source, w), string_of(value[k][1], source, w));
      }
      out.table.products.push_back(std::move(tp));
    }
  } else {
    fail(source, "mode", "expected \"presentation\" or \"table\", got \"" + mode + "\"");
  }
  return out;
}

AlgebraFile load_algebra(const std::filesystem::path& path) { return parse_algebra(read_json(path), path.string()); }

json algebra_to_json(const AlgebraFile& a) {
  json j;
  j["field"] = field_to_json(a.field);
  if (a.table_mode) {
    j["mode"] = "table";
    json basis = json::array(), prods = json::array();
    for (const auto& b : a.table.basis) basis.push_back({{"name", b.name}, {"degree", b.degree}});
    for (const auto& p : a.table.products) {
      json value = json::array();
      for (const auto& [c, n] : p.value) value.push_back(json::array({c, n}));
      prods.push_back({{"left", p.left}, {"right", p.right}, {"value", value}});
    }
    j["table"] = {{"basis", basis}, {"unit", a.table.unit}, {"products", prods}};
  } else {
    j["mode"] = "presentation";
    json gens = json::array();
    for (const auto& g : a.presentation.generators) gens.push_back({{"name", g.name}, {"degree", g.degree}});
    j["presentation"] = {{"generators", gens},
                         {"relations", a.presentation.relations},
                         {"truncation_degree", a.presentation.truncation_degree}};
  }
  return j;
}

MapFile parse_map(const json& j, const std::filesystem::path& base, const std::string& source) {
  MapFile out;
  out.domain = base / string_of(field_of(j, "domain", source, "domain"), source, "domain");
  out.codomain = base / string_of(field_of(j, "codomain", source, "codomain"), source, "codomain");
  const json& images = field_of(j, "images", source, "images");
  if (!images.is_object()) fail(source, "images", "expected an object of name: expression");
  for (const auto& [name, expr] : images.items()) {
    const std::string where = "images." + name;
    std::string text = expr.is_number_integer() ? std::to_string(expr.get<long long>()) : string_of(expr, source, where);
    try {
      parse_expression(text);
    } catch (const ParseError& e) {
      fail(source, where, e.what());
    }
    out.images[name] = std::move(text);
  }
  return out;
}

MapFile load_map(const std::filesystem::path& path) {
  return parse_map(read_json(path), path.parent_path(), path.string());
}

json map_to_json(const MapFile& m) {
  return json{{"domain", m.domain.generic_string()}, {"codomain", m.codomain.generic_string()}, {"images", m.images}};
}

nlohmann::ordered_json report_to_json(const ReportRecord& r) {
  using ojson = nlohmann::ordered_json;
  return ojson{{"name", r.name},
              {"value", r.value},
              {"exact", r.exact},
              {"warnings", r.warnings},
              {"witness",
               ojson{{"factors", r.factors},
                {"product_degree", r.product_degree},
                {"product_coordinates", r.product_coordinates}}}};
}

ReportRecord report_from_json(const json& j) {
  ReportRecord r;
  r.name = j.at("name").get<std::string>();
  r.value = j.at("value").get<int>();
  r.exact = j.at("exact").get<bool>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  const json& w = j.at("witness");
  r.factors = w.at("factors").get<std::vector<std::string>>();
  r.product_degree = w.at("product_degree").get<int>();
  r.product_coordinates = w.at("product_coordinates").get<std::vector<std::string>>();
  return r;
}

}  // namespace rhi
