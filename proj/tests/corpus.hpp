#pragma once

#include <memory>
#include <string>
#include <vector>

#include "io.hpp"
#include "isbell/fincat.hpp"
#include "isbell/setfunc.hpp"
#include "isbell/tightspan.hpp"

namespace corpus {

inline std::string fixture(const std::string& rel) { return std::string(ISBELL_FIXTURE_DIR) + "/" + rel; }
inline std::string test_data(const std::string& rel) { return std::string(ISBELL_TEST_DATA_DIR) + "/" + rel; }

inline const std::vector<std::string>& category_names() {
  static const std::vector<std::string> names = {"terminal", "discrete2", "walking_arrow", "z2", "square"};
  return names;
}

inline const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {"two_point", "m345", "equilateral", "collinear", "random5"};
  return names;
}

struct Corpus {
  isbell::cli::InputLoader loader;

  std::shared_ptr<const isbell::FinCategory> category(const std::string& name) {
    return loader.category(fixture("categories/" + name + ".json"));
  }
  isbell::SetValuedFunctor functor(const std::string& name) {
    return loader.functor(fixture("functors/" + name + ".json"));
  }
  isbell::tightspan::FiniteMetricSpace metric(const std::string& name) {
    auto m = loader.metric_description(fixture("metrics/" + name + ".json"));
    return isbell::tightspan::FiniteMetricSpace::validate(m.points, m.d);
  }
};

/// The constant functor with value {"*"} (or the empty functor).
inline isbell::SetValuedFunctor constant(const std::shared_ptr<const isbell::FinCategory>& c, isbell::Variance v,
                                         std::size_t n) {
  std::vector<isbell::FinSet> sets(c->object_count(), isbell::FinSet::numbered(n));
  std::vector<isbell::SetFunction> actions(c->morphism_count(), isbell::SetFunction::identity(n));
  return isbell::SetValuedFunctor(c, v, std::move(sets), std::move(actions));
}

}  // namespace corpus
