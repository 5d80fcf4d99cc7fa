#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isbell/errors.hpp"

namespace isbell::tightspan {

/// Tolerance for metric axioms and extremality.
inline constexpr double validation_tolerance = 1e-9;
/// Tolerance for the geodesic equation f(x) + f(x') = d(x, x').
inline constexpr double witness_tolerance = 1e-6;
inline constexpr std::size_t iteration_cap = 10'000;

using PointIndex = std::size_t;

/// Checks square shape, zero diagonal, nonnegativity, symmetry, positivity
/// off the diagonal and every triangle. Shape problems throw StructuralError.
ValidationReport check_metric(const std::vector<std::string>& points, const std::vector<std::vector<double>>& d,
                              double tol = validation_tolerance);

class FiniteMetricSpace {
 public:
  /// Throws StructuralError or LawViolationError.
  static FiniteMetricSpace validate(std::vector<std::string> points, const std::vector<std::vector<double>>& d,
                                    double tol = validation_tolerance);

  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] double operator()(PointIndex x, PointIndex y) const { return dist_[x * size() + y]; }
  [[nodiscard]] const std::string& label(PointIndex x) const { return points_.at(x); }
  [[nodiscard]] const std::vector<std::string>& points() const noexcept { return points_; }
  /// Throws UnknownIdError.
  [[nodiscard]] PointIndex index_of(std::string_view label) const;
  [[nodiscard]] double diameter() const;
  [[nodiscard]] std::vector<std::vector<double>> matrix() const;

 private:
  std::vector<std::string> points_;
  std::vector<double> dist_;
};

/// A candidate point of the tight span: values[x] plays the role of d(x, y).
struct DistanceFunction {
  std::vector<double> values;

  [[nodiscard]] double operator[](PointIndex x) const { return values[x]; }
  friend bool operator==(const DistanceFunction&, const DistanceFunction&) = default;
};

class MismatchedSpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// f_x = d(x, -), the isometric copy of x.
DistanceFunction kuratowski_embed(const FiniteMetricSpace& m, PointIndex x);

/// slack: how far f is from admissible, max(0, max d(x,x') - f(x) - f(x')).
/// gap: how far above its best witness any coordinate sits,
/// max(0, max_x f(x) - max_x' (d(x,x') - f(x'))).
struct Defect {
  double slack = 0;
  double gap = 0;
  bool admissible = true;

  [[nodiscard]] double value() const noexcept { return slack > gap ? slack : gap; }
};

Defect extremality_defect(const FiniteMetricSpace& m, const DistanceFunction& f, double tol = validation_tolerance);

/// E(h)(x) = max_x' (d(x, x') - h(x')).
DistanceFunction best_witness_map(const FiniteMetricSpace& m, const DistanceFunction& h);

class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(const std::string& what, double final_defect, std::size_t iterations)
      : std::runtime_error(what), final_defect_(final_defect), iterations_(iterations) {}
  [[nodiscard]] double final_defect() const noexcept { return final_defect_; }
  [[nodiscard]] std::size_t iterations() const noexcept { return iterations_; }

 private:
  double final_defect_;
  std::size_t iterations_;
};

struct Projection {
  DistanceFunction result;
  std::size_t iterations = 0;
  Defect defect;
};

/// Iterates h <- (h + E(h)) / 2 from an admissible f until the defect is at
/// most tol. Throws ProjectionError for inadmissible input or when the cap
/// is reached.
Projection extremal_project(const FiniteMetricSpace& m, const DistanceFunction& f, double tol = validation_tolerance,
                            std::size_t cap = iteration_cap);

/// Sup metric on distance functions.
double tight_span_distance(const FiniteMetricSpace& m, const DistanceFunction& f, const DistanceFunction& g);

struct GeodesicWitness {
  PointIndex partner = 0;
  double residual = 0;  // |f(x) + f(x') - d(x, x')|
};

class NoWitnessError : public std::runtime_error {
 public:
  NoWitnessError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  [[nodiscard]] double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// The x' minimizing |f(x) + f(x') - d(x, x')|, earliest on ties. Throws
/// NoWitnessError if the minimum exceeds tol.
GeodesicWitness geodesic_witness(const FiniteMetricSpace& m, const DistanceFunction& f, PointIndex x,
                                 double tol = witness_tolerance);

struct Tripod {
  std::array<double, 3> legs{};
  DistanceFunction hub;
};

/// Closed form for three points: a_i = (d_ij + d_ik - d_jk) / 2.
Tripod tripod(const FiniteMetricSpace& m);

/// Raises coordinates until f is admissible: f(x) >= max_x' (d(x,x') - f(x')).
DistanceFunction clip_to_admissible(const FiniteMetricSpace& m, DistanceFunction f);

/// count extremal functions drawn from a fixed seed: a random embedded point
/// plus a uniform [0, diameter] perturbation per coordinate, clipped and
/// projected.
std::vector<DistanceFunction> sample_tight_span(const FiniteMetricSpace& m, std::size_t count, std::uint64_t seed,
                                                double tol = validation_tolerance);

}  // namespace isbell::tightspan
