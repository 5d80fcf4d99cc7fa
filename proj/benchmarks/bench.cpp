#include <benchmark/benchmark.h>

#include "isbell/isbell.hpp"
#include "isbell/tightspan.hpp"

using namespace isbell;
namespace ts = isbell::tightspan;

namespace {

// One object whose endomorphisms form the cyclic group Z/n.
std::shared_ptr<const FinCategory> cyclic(std::size_t n) {
  CategoryDescription d;
  d.name = "Z" + std::to_string(n);
  d.objects = {"*"};
  for (std::size_t k = 0; k < n; ++k) d.morphisms.push_back({"r" + std::to_string(k), "*", "*"});
  d.identities = {{"*", "r0"}};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      d.compose.push_back({"r" + std::to_string(a), "r" + std::to_string(b), "r" + std::to_string((a + b) % n)});
  return std::make_shared<const FinCategory>(FinCategory::build(d));
}

// The regular action of Z/n on itself, as a presheaf.
SetValuedFunctor regular(const std::shared_ptr<const FinCategory>& c) {
  const auto n = c->morphism_count();
  std::vector<SetFunction> actions;
  for (std::size_t k = 0; k < n; ++k) {
    SetFunction f;
    f.codomain_size = n;
    for (std::size_t a = 0; a < n; ++a) f.image.push_back(static_cast<std::uint32_t>((a + n - k) % n));
    actions.push_back(std::move(f));
  }
  return SetValuedFunctor(c, Variance::contravariant, {FinSet::numbered(n)}, std::move(actions));
}

// Constant functor with n elements on the terminal category: n^n families.
SetValuedFunctor discrete_set(std::size_t n) {
  CategoryDescription d;
  d.name = "terminal";
  d.objects = {"*"};
  d.morphisms = {{"id", "*", "*"}};
  d.identities = {{"*", "id"}};
  d.compose = {{"id", "id", "id"}};
  auto c = std::make_shared<const FinCategory>(FinCategory::build(d));
  return SetValuedFunctor(c, Variance::contravariant, {FinSet::numbered(n)}, {SetFunction::identity(n)});
}

void BM_EnumerateUnconstrained(benchmark::State& state) {
  const auto f = discrete_set(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Budget budget(1'000'000'000);
    benchmark::DoNotOptimize(enumerate_nat(f, f, budget));
  }
}
BENCHMARK(BM_EnumerateUnconstrained)->DenseRange(3, 6);

void BM_EnumerateRegular(benchmark::State& state) {
  const auto f = regular(cyclic(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    Budget budget(1'000'000'000);
    benchmark::DoNotOptimize(enumerate_nat(f, f, budget));
  }
}
BENCHMARK(BM_EnumerateRegular)->RangeMultiplier(2)->Range(2, 32);

void BM_Unit(benchmark::State& state) {
  const auto f = regular(cyclic(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    Budget budget(1'000'000'000);
    benchmark::DoNotOptimize(unit(f, budget));
  }
}
BENCHMARK(BM_Unit)->RangeMultiplier(2)->Range(2, 16);

ts::FiniteMetricSpace path_metric(std::size_t n) {
  std::vector<std::string> points;
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back("p" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) d[i][j] = i > j ? double(i - j) : double(j - i);
  }
  return ts::FiniteMetricSpace::validate(points, d);
}

void BM_Sample(benchmark::State& state) {
  const auto m = path_metric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ts::sample_tight_span(m, 100, 0));
}
BENCHMARK(BM_Sample)->RangeMultiplier(2)->Range(4, 32);

}  // namespace

BENCHMARK_MAIN();
