#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the enumerator, the naturality recheck or the conjugate machinery.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "isbell/fincat.hpp"
#include "isbell/setfunc.hpp"

namespace oracle {

using isbell::FinCategory;
using isbell::MorphismId;
using isbell::NatTransformation;
using isbell::SetFunction;
using isbell::SetValuedFunctor;
using isbell::Variance;

/// Every naturality square, written out directly from the definitions.
inline bool natural(const SetValuedFunctor& f, const SetValuedFunctor& g, const NatTransformation& t) {
  const auto& c = f.base();
  for (auto u : c.morphisms()) {
    const auto a = c.src(u);
    const auto b = c.tgt(u);
    if (f.variance() == Variance::covariant) {
      // G(u)(t_a(x)) == t_b(F(u)(x)) for x in F(a)
      for (std::uint32_t x = 0; x < f.at(a).size(); ++x)
        if (g.on(u).image[t.components[a.index].image[x]] != t.components[b.index].image[f.on(u).image[x]])
          return false;
    } else {
      // G(u)(t_b(x)) == t_a(F(u)(x)) for x in F(b)
      for (std::uint32_t x = 0; x < f.at(b).size(); ++x)
        if (g.on(u).image[t.components[b.index].image[x]] != t.components[a.index].image[f.on(u).image[x]])
          return false;
    }
  }
  return true;
}

/// Number of unfiltered component families, or nullopt past `cap`.
inline std::optional<std::uint64_t> family_count(const SetValuedFunctor& f, const SetValuedFunctor& g,
                                                 std::uint64_t cap = 1'000'000) {
  std::uint64_t total = 1;
  for (auto x : f.base().objects())
    for (std::size_t k = 0; k < f.at(x).size(); ++k) {
      total *= g.at(x).size();
      if (total > cap) return std::nullopt;
    }
  return total;
}

/// Unpruned enumeration: every family in the product space, filtered by
/// `natural`. Mixed-radix counter with the last element fastest, so the
/// output is in lexicographic order.
inline std::vector<NatTransformation> brute_force_nat(const SetValuedFunctor& f, const SetValuedFunctor& g) {
  const auto& c = f.base();
  std::vector<std::uint32_t> owner;
  for (auto x : c.objects())
    for (std::size_t k = 0; k < f.at(x).size(); ++k) owner.push_back(x.index);
  std::vector<std::uint32_t> digit(owner.size(), 0);
  for (auto o : owner)
    if (g.at(isbell::ObjectId{o}).size() == 0) return {};

  std::vector<NatTransformation> out;
  while (true) {
    NatTransformation t;
    std::size_t pos = 0;
    for (auto x : c.objects()) {
      SetFunction comp;
      comp.codomain_size = g.at(x).size();
      for (std::size_t k = 0; k < f.at(x).size(); ++k) comp.image.push_back(digit[pos++]);
      t.components.push_back(std::move(comp));
    }
    if (natural(f, g, t)) out.push_back(std::move(t));
    std::size_t k = digit.size();
    for (;;) {
      if (k == 0) return out;
      --k;
      if (++digit[k] < g.at(isbell::ObjectId{owner[k]}).size()) break;
      digit[k] = 0;
    }
  }
}

/// Associativity failures (h, g, f) by label, straight from the table.
inline std::set<std::tuple<std::string, std::string, std::string>> associativity_failures(
    const isbell::CategoryDescription& raw) {
  auto lookup = [&](const std::string& g, const std::string& f) -> std::optional<std::string> {
    for (const auto& c : raw.compose)
      if (c.g == g && c.f == f) return c.result;
    return std::nullopt;
  };
  std::set<std::tuple<std::string, std::string, std::string>> out;
  for (const auto& f : raw.morphisms)
    for (const auto& g : raw.morphisms)
      for (const auto& h : raw.morphisms) {
        if (f.tgt != g.src || g.tgt != h.src) continue;
        auto gf = lookup(g.id, f.id);
        auto hg = lookup(h.id, g.id);
        if (!gf || !hg) continue;
        auto lhs = lookup(h.id, *gf);
        auto rhs = lookup(*hg, f.id);
        if (lhs && rhs && *lhs != *rhs) out.emplace(h.id, g.id, f.id);
      }
  return out;
}

}  // namespace oracle
