#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace isbell::cli {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_at(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string, found " + std::string(v.type_name()));
  return v.get<std::string>();
}

const Json& array_at(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array, found " + std::string(v.type_name()));
  return v;
}

const Json& object_at(const Json& v, const std::string& where) {
  if (!v.is_object()) throw ParseError(where + ": expected an object, found " + std::string(v.type_name()));
  return v;
}

std::vector<std::string> strings_at(const Json& v, const std::string& where) {
  std::vector<std::string> out;
  const auto& arr = array_at(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(string_at(arr[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

void check_header(const Json& doc, const std::string& where, const char* kind) {
  object_at(doc, where);
  const auto& fmt = field(doc, "format", where);
  if (!fmt.is_number_integer() || fmt.get<int>() != format_version)
    throw ParseError(where + ".format: unsupported format (expected " + std::to_string(format_version) + ")");
  if (auto it = doc.find("kind"); it != doc.end()) {
    const auto k = string_at(*it, where + ".kind");
    if (k != kind) throw ParseError(where + ".kind: expected '" + kind + "', found '" + k + "'");
  }
}

std::string optional_name(const Json& doc, const std::string& where) {
  if (auto it = doc.find("name"); it != doc.end()) return string_at(*it, where + ".name");
  return {};
}

Variance parse_variance(const Json& v, const std::string& where) {
  const auto s = string_at(v, where);
  if (s == "co" || s == "covariant") return Variance::covariant;
  if (s == "contra" || s == "contravariant") return Variance::contravariant;
  throw ParseError(where + ": variance must be \"co\" or \"contra\", found '" + s + "'");
}

}  // namespace

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::string variance_name(Variance v) { return v == Variance::covariant ? "co" : "contra"; }

CategoryDescription parse_category(const Json& doc, const std::string& where) {
  check_header(doc, where, "category");
  CategoryDescription c;
  c.name = optional_name(doc, where);
  c.objects = strings_at(field(doc, "objects", where), where + ".objects");

  const auto& morphisms = array_at(field(doc, "morphisms", where), where + ".morphisms");
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto at = where + ".morphisms[" + std::to_string(i) + "]";
    const auto& m = object_at(morphisms[i], at);
    c.morphisms.push_back({string_at(field(m, "id", at), at + ".id"), string_at(field(m, "src", at), at + ".src"),
                           string_at(field(m, "tgt", at), at + ".tgt")});
  }

  const auto& ids = object_at(field(doc, "identities", where), where + ".identities");
  for (const auto& [object, morphism] : ids.items())
    c.identities.emplace_back(object, string_at(morphism, where + ".identities." + object));

  const auto& compose = array_at(field(doc, "compose", where), where + ".compose");
  for (std::size_t i = 0; i < compose.size(); ++i) {
    const auto at = where + ".compose[" + std::to_string(i) + "]";
    const auto& row = array_at(compose[i], at);
    if (row.size() != 3) throw ParseError(at + ": expected [g, f, result]");
    c.compose.push_back({string_at(row[0], at + "[0]"), string_at(row[1], at + "[1]"), string_at(row[2], at + "[2]")});
  }
  return c;
}

FunctorDescription parse_functor(const Json& doc, const std::string& where) {
  check_header(doc, where, "functor");
  FunctorDescription f;
  f.variance = parse_variance(field(doc, "variance", where), where + ".variance");
  for (const auto& [object, elements] : object_at(field(doc, "objects", where), where + ".objects").items())
    f.objects[object] = strings_at(elements, where + ".objects." + object);
  if (auto it = doc.find("morphisms"); it != doc.end()) {
    for (const auto& [morphism, table] : object_at(*it, where + ".morphisms").items()) {
      auto& entry = f.morphisms[morphism];
      const auto at = where + ".morphisms." + morphism;
      for (const auto& [from, to] : object_at(table, at).items()) entry[from] = string_at(to, at + "." + from);
    }
  }
  return f;
}

MetricFile parse_metric(const Json& doc, const std::string& where) {
  check_header(doc, where, "metric");
  MetricFile m;
  m.name = optional_name(doc, where);
  m.points = strings_at(field(doc, "points", where), where + ".points");
  const auto& d = array_at(field(doc, "d", where), where + ".d");
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto at = where + ".d[" + std::to_string(i) + "]";
    std::vector<double> row;
    const auto& r = array_at(d[i], at);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (!r[j].is_number()) throw ParseError(at + "[" + std::to_string(j) + "]: expected a number");
      row.push_back(r[j].get<double>());
    }
    m.d.push_back(std::move(row));
  }
  return m;
}

Json InputLoader::read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto bytes = buf.str();
  inputs_.push_back({path, digest(bytes)});
  try {
    return Json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

CategoryDescription InputLoader::category_description(const std::string& path) {
  return parse_category(read(path), path);
}

namespace {

std::shared_ptr<const FinCategory> build_category(const CategoryDescription& raw, const std::string& where) {
  try {
    return std::make_shared<const FinCategory>(FinCategory::build(raw));
  } catch (const StructuralError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

std::shared_ptr<const FinCategory> InputLoader::category(const std::string& path) {
  const auto key = std::filesystem::path(path).lexically_normal().string();
  if (auto it = categories_.find(key); it != categories_.end()) return it->second;
  auto c = build_category(category_description(key), key);
  categories_.emplace(key, c);
  return c;
}

std::shared_ptr<const FinCategory> InputLoader::category_from(const Json& doc, const std::string& where,
                                                              const std::string& key) {
  const auto& ref = field(doc, "category", where);
  if (ref.is_object()) return build_category(parse_category(ref, where + ".category"), where + ".category");
  const auto rel = string_at(ref, where + ".category");
  auto p = std::filesystem::path(rel);
  if (p.is_relative()) p = std::filesystem::path(key).parent_path() / p;
  return category(p.lexically_normal().string());
}

FunctorFile InputLoader::functor_description(const std::string& path) {
  const auto doc = read(path);
  FunctorFile out;
  out.description = parse_functor(doc, path);
  out.name = optional_name(doc, path);
  out.category = category_from(doc, path, path);
  return out;
}

SetValuedFunctor InputLoader::functor(const std::string& path, std::optional<Variance> expected) {
  auto file = functor_description(path);
  if (expected && file.description.variance != *expected)
    throw ParseError(path + ".variance: this subcommand expects a " +
                     (*expected == Variance::contravariant ? std::string("presheaf (\"contra\")")
                                                           : std::string("copresheaf (\"co\")")) +
                     ", file declares \"" + variance_name(file.description.variance) + "\"");
  try {
    return validate_functor(file.category, file.description);
  } catch (const StructuralError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

MetricFile InputLoader::metric_description(const std::string& path) { return parse_metric(read(path), path); }

Json to_json(const FinCategory& c) {
  Json j;
  j["name"] = c.name();
  j["objects"] = Json::array();
  for (auto x : c.objects()) j["objects"].push_back(c.label(x));
  j["morphisms"] = Json::array();
  for (auto u : c.morphisms())
    j["morphisms"].push_back({{"id", c.label(u)}, {"src", c.label(c.src(u))}, {"tgt", c.label(c.tgt(u))}});
  return j;
}

Json to_json(const SetValuedFunctor& f) {
  const auto& c = f.base();
  Json j;
  j["variance"] = variance_name(f.variance());
  j["objects"] = Json::object();
  for (auto x : c.objects()) j["objects"][c.label(x)] = f.at(x).elements();
  j["morphisms"] = Json::object();
  for (auto u : c.morphisms()) {
    Json table = Json::object();
    const auto& dom = f.at(f.action_source(u));
    const auto& cod = f.at(f.action_target(u));
    for (std::uint32_t a = 0; a < dom.size(); ++a) table[dom.label(a)] = cod.label(f.on(u)(a));
    j["morphisms"][c.label(u)] = std::move(table);
  }
  return j;
}

Json to_json(const SetValuedFunctor& source, const SetValuedFunctor& target, const NatTransformation& alpha) {
  const auto& c = source.base();
  Json j = Json::object();
  for (auto x : c.objects()) {
    Json comp = Json::object();
    for (std::uint32_t a = 0; a < source.at(x).size(); ++a) comp[source.at(x).label(a)] = target.at(x).label(alpha.at(x)(a));
    j[c.label(x)] = std::move(comp);
  }
  return j;
}

Json to_json(const ValidationReport& r) {
  Json j = Json::array();
  for (const auto& v : r.violations) j.push_back({{"law", v.law}, {"witness", v.witness}});
  return j;
}

Json to_json(const tightspan::FiniteMetricSpace& m, const tightspan::DistanceFunction& f) {
  Json j = Json::object();
  for (std::size_t x = 0; x < m.size(); ++x) j[m.label(x)] = f[x];
  return j;
}

namespace {

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!scalar(e)) return false;
  return true;
}

std::string inline_array(const Json& j) {
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
  return s + "]";
}

void render(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (scalar(value)) {
        os << pad << key << ": " << scalar_text(value) << '\n';
      } else if (flat_array(value)) {
        os << pad << key << ": " << inline_array(value) << '\n';
      } else if (value.empty()) {
        os << pad << key << ": " << (value.is_array() ? "[]" : "{}") << '\n';
      } else {
        os << pad << key << ":\n";
        render(value, indent + 1, os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (scalar(e)) {
        os << pad << "- " << scalar_text(e) << '\n';
      } else if (flat_array(e)) {
        os << pad << "- " << inline_array(e) << '\n';
      } else {
        os << pad << "-\n";
        render(e, indent + 1, os);
      }
    }
  } else {
    os << pad << scalar_text(j) << '\n';
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream os;
  render(doc, 0, os);
  return os.str();
}

}  // namespace isbell::cli
