#include "isbell/tightspan.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace isbell::tightspan {

namespace {

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_same_space(const FiniteMetricSpace& m, const DistanceFunction& f) {
  if (f.values.size() != m.size())
    throw MismatchedSpaceError("distance function has " + std::to_string(f.values.size()) +
                               " values for a space of " + std::to_string(m.size()) + " points");
}

}  // namespace

ValidationReport check_metric(const std::vector<std::string>& points, const std::vector<std::vector<double>>& d,
                              double tol) {
  const auto n = points.size();
  if (n == 0) throw StructuralError("points: at least one point is required");
  if (d.size() != n)
    throw StructuralError("d: " + std::to_string(d.size()) + " rows for " + std::to_string(n) + " points");
  for (std::size_t i = 0; i < n; ++i)
    if (d[i].size() != n)
      throw StructuralError("d[" + std::to_string(i) + "]: row has " + std::to_string(d[i].size()) +
                            " entries, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].empty()) throw StructuralError("points[" + std::to_string(i) + "]: empty label");
    for (std::size_t j = 0; j < i; ++j)
      if (points[i] == points[j]) throw StructuralError("points: duplicate label '" + points[i] + "'");
  }

  ValidationReport report;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(d[i][j])) {
        report.add("finite", {points[i], points[j], number(d[i][j])});
      } else if (d[i][j] < 0) {
        report.add("nonnegativity", {points[i], points[j], number(d[i][j])});
      }
    }
    if (std::abs(d[i][i]) > tol) report.add("zero-diagonal", {points[i], number(d[i][i])});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(d[i][j] - d[j][i]) > tol) report.add("symmetry", {points[i], points[j]});
      if (d[i][j] <= tol) report.add("positivity", {points[i], points[j]});
    }
  if (!report.ok()) return report;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = x + 1; z < n; ++z)
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        if (d[x][z] > d[x][y] + d[y][z] + tol) report.add("triangle", {points[x], points[y], points[z]});
      }
  return report;
}

FiniteMetricSpace FiniteMetricSpace::validate(std::vector<std::string> points,
                                              const std::vector<std::vector<double>>& d, double tol) {
  auto report = check_metric(points, d, tol);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    std::string what = "metric violates " + v.law + " at (";
    for (std::size_t k = 0; k < v.witness.size(); ++k) what += (k ? ", " : "") + v.witness[k];
    throw LawViolationError(what + ")", std::move(report));
  }
  FiniteMetricSpace m;
  m.points_ = std::move(points);
  for (const auto& row : d) m.dist_.insert(m.dist_.end(), row.begin(), row.end());
  return m;
}

PointIndex FiniteMetricSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] == label) return i;
  throw UnknownIdError("unknown point '" + std::string(label) + "'");
}

double FiniteMetricSpace::diameter() const {
  double best = 0;
  for (auto v : dist_) best = std::max(best, v);
  return best;
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  std::vector<std::vector<double>> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i].assign(dist_.begin() + i * size(), dist_.begin() + (i + 1) * size());
  return out;
}

DistanceFunction kuratowski_embed(const FiniteMetricSpace& m, PointIndex x) {
  if (x >= m.size()) throw UnknownIdError("kuratowski_embed: point index out of range");
  DistanceFunction f;
  for (std::size_t y = 0; y < m.size(); ++y) f.values.push_back(m(x, y));
  return f;
}

DistanceFunction best_witness_map(const FiniteMetricSpace& m, const DistanceFunction& h) {
  require_same_space(m, h);
  DistanceFunction e;
  e.values.resize(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) {
    double best = -INFINITY;
    for (std::size_t y = 0; y < m.size(); ++y) best = std::max(best, m(x, y) - h[y]);
    e.values[x] = best;
  }
  return e;
}

Defect extremality_defect(const FiniteMetricSpace& m, const DistanceFunction& f, double tol) {
  require_same_space(m, f);
  Defect out;
  const auto e = best_witness_map(m, f);
  for (std::size_t x = 0; x < m.size(); ++x) {
    // f(x) - E(f)(x) < 0 means some pair undercuts d; that is slack.
    out.slack = std::max(out.slack, e[x] - f[x]);
    out.gap = std::max(out.gap, f[x] - e[x]);
  }
  out.admissible = out.slack <= tol;
  return out;
}

Projection extremal_project(const FiniteMetricSpace& m, const DistanceFunction& f, double tol, std::size_t cap) {
  require_same_space(m, f);
  Projection p{f, 0, extremality_defect(m, f, tol)};
  if (!p.defect.admissible)
    throw ProjectionError("extremal_project: input is not admissible (slack " + number(p.defect.slack) + ")",
                          p.defect.value(), 0);
  while (p.defect.value() > tol) {
    if (p.iterations == cap)
      throw ProjectionError("extremal_project: no convergence within " + std::to_string(cap) +
                                " iterations (defect " + number(p.defect.value()) + ")",
                            p.defect.value(), p.iterations);
    const auto e = best_witness_map(m, p.result);
    for (std::size_t x = 0; x < m.size(); ++x) p.result.values[x] = (p.result[x] + e[x]) / 2;
    ++p.iterations;
    p.defect = extremality_defect(m, p.result, tol);
  }
  return p;
}

double tight_span_distance(const FiniteMetricSpace& m, const DistanceFunction& f, const DistanceFunction& g) {
  require_same_space(m, f);
  require_same_space(m, g);
  double best = 0;
  for (std::size_t x = 0; x < m.size(); ++x) best = std::max(best, std::abs(f[x] - g[x]));
  return best;
}

GeodesicWitness geodesic_witness(const FiniteMetricSpace& m, const DistanceFunction& f, PointIndex x, double tol) {
  require_same_space(m, f);
  if (x >= m.size()) throw UnknownIdError("geodesic_witness: point index out of range");
  GeodesicWitness best{0, INFINITY};
  for (std::size_t y = 0; y < m.size(); ++y) {
    const double r = std::abs(f[x] + f[y] - m(x, y));
    if (r < best.residual) best = {y, r};
  }
  if (!(best.residual <= tol))
    throw NoWitnessError("no geodesic witness for '" + m.label(x) + "' (best residual " + number(best.residual) + ")",
                         best.residual);
  return best;
}

Tripod tripod(const FiniteMetricSpace& m) {
  if (m.size() != 3)
    throw std::invalid_argument("tripod: needs exactly 3 points, got " + std::to_string(m.size()));
  Tripod t;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto j = (i + 1) % 3;
    const auto k = (i + 2) % 3;
    t.legs[i] = (m(i, j) + m(i, k) - m(j, k)) / 2;
  }
  t.hub.values.assign(t.legs.begin(), t.legs.end());
  return t;
}

DistanceFunction clip_to_admissible(const FiniteMetricSpace& m, DistanceFunction f) {
  const auto e = best_witness_map(m, f);
  for (std::size_t x = 0; x < m.size(); ++x) f.values[x] = std::max(f[x], e[x]);
  return f;
}

std::vector<DistanceFunction> sample_tight_span(const FiniteMetricSpace& m, std::size_t count, std::uint64_t seed,
                                                double tol) {
  std::vector<DistanceFunction> out;
  if (count == 0) return out;
  // Explicit conversions keep the stream identical across standard libraries.
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double diameter = m.diameter();
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto f = kuratowski_embed(m, static_cast<PointIndex>(rng() % m.size()));
    for (auto& v : f.values) v += unit() * diameter;
    out.push_back(extremal_project(m, clip_to_admissible(m, std::move(f)), tol).result);
  }
  return out;
}

}  // namespace isbell::tightspan
