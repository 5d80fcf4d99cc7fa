#pragma once

// Seeded generators for the property suites.

#include <optional>
#include <random>

#include "isbell/setfunc.hpp"
#include "isbell/tightspan.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t below(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// Rejection sampling: random sizes and actions until the functor laws hold.
inline std::optional<isbell::SetValuedFunctor> functor(const std::shared_ptr<const isbell::FinCategory>& c,
                                                       isbell::Variance v, std::size_t max_size, Rng& rng,
                                                       int attempts = 500) {
  for (int k = 0; k < attempts; ++k) {
    std::vector<std::size_t> sizes;
    for (std::size_t x = 0; x < c->object_count(); ++x) sizes.push_back(below(rng, max_size + 1));
    std::vector<isbell::FinSet> sets;
    for (auto n : sizes) sets.push_back(isbell::FinSet::numbered(n));
    std::vector<isbell::SetFunction> actions;
    bool possible = true;
    for (auto u : c->morphisms()) {
      const auto from = v == isbell::Variance::covariant ? c->src(u) : c->tgt(u);
      const auto to = v == isbell::Variance::covariant ? c->tgt(u) : c->src(u);
      if (c->is_identity(u)) {
        actions.push_back(isbell::SetFunction::identity(sizes[from.index]));
        continue;
      }
      isbell::SetFunction f;
      f.codomain_size = sizes[to.index];
      if (f.codomain_size == 0 && sizes[from.index] > 0) {
        possible = false;
        break;
      }
      for (std::size_t a = 0; a < sizes[from.index]; ++a)
        f.image.push_back(static_cast<std::uint32_t>(below(rng, f.codomain_size)));
      actions.push_back(std::move(f));
    }
    if (!possible) continue;
    isbell::SetValuedFunctor f(c, v, std::move(sets), std::move(actions));
    if (isbell::check_functor_laws(f).ok()) return f;
  }
  return std::nullopt;
}

/// Shortest-path metric of a complete graph with integer weights in
/// [1, max_weight]; exact in floating point.
inline isbell::tightspan::FiniteMetricSpace metric(std::size_t n, int max_weight, Rng& rng) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = static_cast<double>(1 + below(rng, max_weight));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::vector<std::string> points;
  for (std::size_t i = 0; i < n; ++i) points.push_back("p" + std::to_string(i));
  return isbell::tightspan::FiniteMetricSpace::validate(points, d);
}

/// Real-valued 3-point metric: d12, d13 uniform, d23 uniform in the
/// triangle-admissible interval.
inline isbell::tightspan::FiniteMetricSpace triangle(Rng& rng) {
  std::uniform_real_distribution<double> side(0.1, 10.0);
  const double a = side(rng);
  const double b = side(rng);
  std::uniform_real_distribution<double> third(std::abs(a - b) + 1e-3, a + b);
  const double c = third(rng);
  return isbell::tightspan::FiniteMetricSpace::validate({"x1", "x2", "x3"}, {{0, a, b}, {a, 0, c}, {b, c, 0}});
}

}  // namespace gen
