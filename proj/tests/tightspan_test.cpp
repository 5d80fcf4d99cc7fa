#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "isbell/tightspan.hpp"

using namespace isbell;
using namespace isbell::tightspan;

namespace {

FiniteMetricSpace space(std::vector<std::vector<double>> d) {
  std::vector<std::string> points;
  for (std::size_t i = 0; i < d.size(); ++i) points.push_back("x" + std::to_string(i + 1));
  return FiniteMetricSpace::validate(points, d);
}

FiniteMetricSpace m345() { return space({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}); }
FiniteMetricSpace two_point() { return space({{0, 2}, {2, 0}}); }

/// Admissible and every coordinate has a witness, checked pairwise.
bool extremal_by_pairs(const FiniteMetricSpace& m, const DistanceFunction& f, double tol) {
  for (std::size_t x = 0; x < m.size(); ++x) {
    bool witnessed = false;
    for (std::size_t y = 0; y < m.size(); ++y) {
      const double s = f[x] + f[y] - m(x, y);
      if (s < -tol) return false;
      if (std::abs(s) <= tol) witnessed = true;
    }
    if (!witnessed) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("validate_metric") {
  CHECK_NOTHROW(two_point());
  CHECK_NOTHROW(m345());

  auto report = check_metric({"1", "2", "3"}, {{0, 1, 10}, {1, 0, 1}, {10, 1, 0}});
  REQUIRE(report.has("triangle"));
  CHECK(report.violations.front().witness == std::vector<std::string>{"1", "2", "3"});

  CHECK(check_metric({"a", "b"}, {{0, 1}, {2, 0}}).has("symmetry"));
  CHECK(check_metric({"a", "b"}, {{1, 1}, {1, 0}}).has("zero-diagonal"));
  CHECK(check_metric({"a", "b"}, {{0, -1}, {-1, 0}}).has("nonnegativity"));
  CHECK(check_metric({"a", "b"}, {{0, 0}, {0, 0}}).has("positivity"));
  CHECK_THROWS_AS(check_metric({"a", "b"}, {{0, 1}}), StructuralError);
  CHECK_THROWS_AS(check_metric({"a", "b"}, {{0, 1}, {1}}), StructuralError);
  CHECK_THROWS_AS(check_metric({"a", "a"}, {{0, 1}, {1, 0}}), StructuralError);
  CHECK_THROWS_AS(FiniteMetricSpace::validate({"1", "2", "3"}, {{0, 1, 10}, {1, 0, 1}, {10, 1, 0}}),
                  LawViolationError);
}

TEST_CASE("validate_metric: all six triangle checks of {3,4,5}") {
  const double d[3][3] = {{0, 3, 4}, {3, 0, 5}, {4, 5, 0}};
  int checked = 0;
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z)
      for (int y = 0; y < 3; ++y)
        if (x != z && y != x && y != z) {
          CHECK(d[x][z] <= d[x][y] + d[y][z]);
          ++checked;
        }
  CHECK(checked == 6);
  CHECK(check_metric({"1", "2", "3"}, {{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}).ok());
}

TEST_CASE("kuratowski_embed") {
  auto m = two_point();
  CHECK(kuratowski_embed(m, 0).values == std::vector<double>{0, 2});
  CHECK_THROWS_AS(kuratowski_embed(m, 2), UnknownIdError);
  corpus::Corpus c;
  for (const auto& name : corpus::metric_names()) {
    auto sp = c.metric(name);
    for (std::size_t x = 0; x < sp.size(); ++x) {
      const auto d = extremality_defect(sp, kuratowski_embed(sp, x));
      CHECK(d.value() == 0);
      CHECK(d.admissible);
      for (std::size_t y = 0; y < sp.size(); ++y)
        CHECK(tight_span_distance(sp, kuratowski_embed(sp, x), kuratowski_embed(sp, y)) == sp(x, y));
    }
  }
}

TEST_CASE("extremality_defect") {
  auto m = two_point();
  SUBCASE("(2,2): admissible, each coordinate 2 above its best witness") {
    auto d = extremality_defect(m, {{2, 2}});
    CHECK(d.admissible);
    CHECK(d.slack == 0);
    CHECK(d.gap == 2);
    CHECK(d.value() == 2);
  }
  SUBCASE("(0.5, 1): inadmissible") {
    auto d = extremality_defect(m, {{0.5, 1.0}});
    CHECK_FALSE(d.admissible);
    CHECK(d.slack == doctest::Approx(0.5));
  }
  SUBCASE("mismatched function") { CHECK_THROWS_AS(extremality_defect(m, {{1, 2, 3}}), MismatchedSpaceError); }
}

TEST_CASE("extremal_project") {
  SUBCASE("two points, (2,2) -> (1,1)") {
    auto m = two_point();
    // by hand: E(2,2) = (0,0) so h = (1,1); E(1,1) = (1,1), a fixed point
    CHECK(best_witness_map(m, {{2, 2}}).values == std::vector<double>{0, 0});
    CHECK(best_witness_map(m, {{1, 1}}).values == std::vector<double>{1, 1});
    auto p = extremal_project(m, {{2, 2}});
    CHECK(p.result.values == std::vector<double>{1, 1});
    CHECK(p.iterations == 1);
  }
  SUBCASE("extremal input is returned unchanged") {
    auto m = m345();
    auto f = kuratowski_embed(m, 1);
    auto p = extremal_project(m, f);
    CHECK(p.result == f);
    CHECK(p.iterations == 0);
  }
  SUBCASE("{3,4,5} from (3,3,3)") {
    auto m = m345();
    const DistanceFunction f{{3, 3, 3}};
    auto p = extremal_project(m, f);
    CHECK(p.defect.value() <= validation_tolerance);
    CHECK(extremal_by_pairs(m, p.result, validation_tolerance));
    for (std::size_t x = 0; x < 3; ++x) CHECK(p.result[x] <= f[x]);
  }
  SUBCASE("inadmissible input") {
    CHECK_THROWS_AS(extremal_project(two_point(), {{0.5, 1.0}}), ProjectionError);
  }
  SUBCASE("iteration cap is reported") {
    try {
      (void)extremal_project(m345(), {{30, 30, 30}}, 1e-12, 2);
      FAIL("expected non-convergence");
    } catch (const ProjectionError& e) {
      CHECK(e.iterations() == 2);
      CHECK(e.final_defect() > 1e-12);
    }
  }
}

TEST_CASE("tight_span_distance") {
  auto m = two_point();
  CHECK(tight_span_distance(m, {{1, 1}}, {{1, 1}}) == 0);
  CHECK(tight_span_distance(m, {{1, 1}}, {{0, 2}}) == 1);
  CHECK(tight_span_distance(m, kuratowski_embed(m, 0), kuratowski_embed(m, 1)) == 2);
  CHECK_THROWS_AS(tight_span_distance(m, {{1}}, {{1, 1}}), MismatchedSpaceError);
}

TEST_CASE("geodesic_witness") {
  SUBCASE("two points, midpoint") {
    auto w = geodesic_witness(two_point(), {{1, 1}}, 0);
    CHECK(w.partner == 1);
    CHECK(w.residual == 0);
  }
  SUBCASE("embedded point is its own witness") {
    auto m = m345();
    auto f = kuratowski_embed(m, 0);
    for (std::size_t x = 0; x < 3; ++x) {
      auto w = geodesic_witness(m, f, x);
      CHECK(w.partner == 0);
      CHECK(w.residual == 0);
    }
  }
  SUBCASE("Steiner point of {3,4,5}") {
    auto w = geodesic_witness(m345(), {{1, 2, 3}}, 0);
    CHECK((w.partner == 1 || w.partner == 2));
    CHECK(w.residual == 0);
  }
  SUBCASE("non-extremal input has no witness") {
    CHECK_THROWS_AS(geodesic_witness(two_point(), {{2, 2}}, 0), NoWitnessError);
  }
}

TEST_CASE("tripod") {
  SUBCASE("{3,4,5}") {
    auto t = tripod(m345());
    CHECK(t.legs == std::array<double, 3>{1, 2, 3});
    CHECK(t.legs[0] + t.legs[1] == 3);
    CHECK(t.legs[0] + t.legs[2] == 4);
    CHECK(t.legs[1] + t.legs[2] == 5);
    CHECK(extremality_defect(m345(), t.hub).value() == 0);
  }
  SUBCASE("collinear: hub is the middle point") {
    auto m = space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    auto t = tripod(m);
    CHECK(t.legs == std::array<double, 3>{1, 0, 1});
    CHECK(t.hub == kuratowski_embed(m, 1));
  }
  SUBCASE("equilateral") {
    auto t = tripod(space({{0, 2, 2}, {2, 0, 2}, {2, 2, 0}}));
    CHECK(t.legs == std::array<double, 3>{1, 1, 1});
  }
  SUBCASE("wrong size") { CHECK_THROWS_AS(tripod(two_point()), std::invalid_argument); }
}

TEST_CASE("sample_tight_span") {
  corpus::Corpus c;
  auto m = c.metric("random5");
  CHECK(sample_tight_span(m, 0, 0).empty());
  auto a = sample_tight_span(m, 25, 7);
  auto b = sample_tight_span(m, 25, 7);
  CHECK(a == b);
  CHECK(a != sample_tight_span(m, 25, 8));
  for (const auto& f : a) CHECK(extremality_defect(m, f).value() <= validation_tolerance);
}

TEST_CASE("clip_to_admissible") {
  auto m = two_point();
  auto f = clip_to_admissible(m, {{0.5, 1.0}});
  CHECK(extremality_defect(m, f).admissible);
  CHECK(f.values == std::vector<double>{1.0, 1.5});
  CHECK(clip_to_admissible(m, {{2, 2}}).values == std::vector<double>{2, 2});
}
