#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "isbell/fincat.hpp"
#include "isbell/setfunc.hpp"
#include "isbell/tightspan.hpp"

namespace isbell::cli {

using Json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

/// Malformed input file. The message names the file and the field path.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputRecord {
  std::string path;
  std::string digest;
};

struct FunctorFile {
  std::shared_ptr<const FinCategory> category;
  FunctorDescription description;
  std::string name;
};

struct MetricFile {
  std::string name;
  std::vector<std::string> points;
  std::vector<std::vector<double>> d;
};

/// Reads category, functor and metric documents. Structural checks happen
/// here; law checks are left to the core. Every file read is recorded, in
/// order, with a content digest. Categories are cached per path so functors
/// over the same file share one base.
class InputLoader {
 public:
  CategoryDescription category_description(const std::string& path);
  /// Structural parse plus law validation (LawViolationError on failure).
  std::shared_ptr<const FinCategory> category(const std::string& path);

  FunctorFile functor_description(const std::string& path);
  /// Throws ParseError when the file's variance differs from `expected`.
  SetValuedFunctor functor(const std::string& path, std::optional<Variance> expected = std::nullopt);

  MetricFile metric_description(const std::string& path);

  [[nodiscard]] const std::vector<InputRecord>& inputs() const noexcept { return inputs_; }

 private:
  Json read(const std::string& path);
  std::shared_ptr<const FinCategory> category_from(const Json& doc, const std::string& where, const std::string& key);

  std::vector<InputRecord> inputs_;
  std::map<std::string, std::shared_ptr<const FinCategory>> categories_;
};

/// Parsing from an in-memory document; `where` prefixes diagnostics.
CategoryDescription parse_category(const Json& doc, const std::string& where);
FunctorDescription parse_functor(const Json& doc, const std::string& where);
MetricFile parse_metric(const Json& doc, const std::string& where);

/// FNV-1a 64 of the bytes, as "fnv1a64:<16 hex digits>".
std::string digest(std::string_view bytes);

std::string variance_name(Variance v);

Json to_json(const FinCategory& c);
Json to_json(const SetValuedFunctor& f);
/// Components as {object: {element: element}}.
Json to_json(const SetValuedFunctor& source, const SetValuedFunctor& target, const NatTransformation& alpha);
Json to_json(const ValidationReport& r);
Json to_json(const tightspan::FiniteMetricSpace& m, const tightspan::DistanceFunction& f);

/// Indented key: value rendering of a report.
std::string render_text(const Json& doc);

}  // namespace isbell::cli
