#include <doctest.h>

#include "corpus.hpp"
#include "isbell/fincat.hpp"
#include "oracles.hpp"

using namespace isbell;

namespace {

CategoryDescription one_object(std::vector<std::string> morphisms, std::vector<CategoryDescription::Composite> table) {
  CategoryDescription d;
  d.name = "monoid";
  d.objects = {"*"};
  for (auto& m : morphisms) d.morphisms.push_back({m, "*", "*"});
  d.identities = {{"*", "e"}};
  d.compose = std::move(table);
  return d;
}

}  // namespace

TEST_CASE("terminal category validates") {
  corpus::Corpus c;
  auto raw = c.loader.category_description(corpus::fixture("categories/terminal.json"));
  CHECK(validate_category(raw).ok());
  auto cat = FinCategory::build(raw);
  CHECK(cat.object_count() == 1);
  CHECK(cat.morphism_count() == 1);
}

TEST_CASE("every corpus category validates") {
  corpus::Corpus c;
  for (const auto& name : corpus::category_names()) {
    CAPTURE(name);
    auto raw = c.loader.category_description(corpus::fixture("categories/" + name + ".json"));
    CHECK(validate_category(raw).ok());
  }
}

TEST_CASE("missing composite is a totality violation with witness") {
  corpus::Corpus c;
  auto raw = c.loader.category_description(corpus::test_data("walking_arrow_missing.json"));
  auto report = validate_category(raw);
  REQUIRE_FALSE(report.ok());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].law == "composition-totality");
  CHECK(report.violations[0].witness == std::vector<std::string>{"f", "id_A"});
  CHECK_THROWS_AS(FinCategory::build(raw), LawViolationError);
}

TEST_CASE("non-associative table reports exactly the oracle's triples") {
  // a.a = a, a.b = e, b.a = b, b.b = b: (a.a).b = e but a.(a.b) = a.
  auto raw = one_object({"e", "a", "b"}, {{"e", "e", "e"},
                                          {"e", "a", "a"},
                                          {"e", "b", "b"},
                                          {"a", "e", "a"},
                                          {"b", "e", "b"},
                                          {"a", "a", "a"},
                                          {"a", "b", "e"},
                                          {"b", "a", "b"},
                                          {"b", "b", "b"}});
  const auto expected = oracle::associativity_failures(raw);
  REQUIRE(expected.count({"a", "a", "b"}) == 1);

  auto report = validate_category(raw);
  std::set<std::tuple<std::string, std::string, std::string>> got;
  for (const auto& v : report.violations) {
    REQUIRE(v.law == "associativity");
    got.emplace(v.witness.at(0), v.witness.at(1), v.witness.at(2));
  }
  CHECK(got == expected);
}

TEST_CASE("identity and typing laws") {
  SUBCASE("left identity") {
    auto raw = one_object({"e", "s"}, {{"e", "e", "e"}, {"e", "s", "e"}, {"s", "e", "s"}, {"s", "s", "e"}});
    auto report = validate_category(raw);
    CHECK(report.has("left-identity"));
  }
  SUBCASE("identity with wrong endpoints") {
    CategoryDescription d;
    d.objects = {"A", "B"};
    d.morphisms = {{"f", "A", "B"}, {"id_B", "B", "B"}};
    d.identities = {{"A", "f"}, {"B", "id_B"}};
    d.compose = {{"id_B", "id_B", "id_B"}, {"id_B", "f", "f"}};
    CHECK(validate_category(d).has("identity-typing"));
  }
  SUBCASE("missing identity") {
    CategoryDescription d;
    d.objects = {"A"};
    d.morphisms = {{"u", "A", "A"}};
    d.compose = {{"u", "u", "u"}};
    CHECK(validate_category(d).has("identity-missing"));
  }
  SUBCASE("composite of a non-composable pair") {
    CategoryDescription d;
    d.objects = {"A", "B"};
    d.morphisms = {{"id_A", "A", "A"}, {"id_B", "B", "B"}, {"f", "A", "B"}};
    d.identities = {{"A", "id_A"}, {"B", "id_B"}};
    d.compose = {{"id_A", "id_A", "id_A"}, {"id_B", "id_B", "id_B"}, {"f", "id_A", "f"},
                 {"id_B", "f", "f"},       {"f", "id_B", "f"}};
    CHECK(validate_category(d).has("composition-domain"));
  }
  SUBCASE("mistyped composite") {
    CategoryDescription d;
    d.objects = {"A", "B"};
    d.morphisms = {{"id_A", "A", "A"}, {"id_B", "B", "B"}, {"f", "A", "B"}};
    d.identities = {{"A", "id_A"}, {"B", "id_B"}};
    d.compose = {{"id_A", "id_A", "id_A"}, {"id_B", "id_B", "id_B"}, {"f", "id_A", "id_A"}, {"id_B", "f", "f"}};
    CHECK(validate_category(d).has("composition-typing"));
  }
}

TEST_CASE("structural errors are distinct from law violations") {
  corpus::Corpus c;
  auto raw = c.loader.category_description(corpus::test_data("dangling.json"));
  CHECK_THROWS_AS(validate_category(raw), StructuralError);

  CategoryDescription dup;
  dup.objects = {"A", "A"};
  CHECK_THROWS_AS(validate_category(dup), StructuralError);

  CategoryDescription twice = one_object({"e"}, {{"e", "e", "e"}, {"e", "e", "e"}});
  CHECK_THROWS_AS(validate_category(twice), StructuralError);
}

TEST_CASE("opposite") {
  corpus::Corpus c;
  SUBCASE("is an involution on the corpus") {
    for (const auto& name : corpus::category_names()) {
      CAPTURE(name);
      auto cat = c.category(name);
      CHECK(opposite(opposite(*cat)) == *cat);
      CHECK(opposite(opposite(*cat)).name() == cat->name());
    }
  }
  SUBCASE("walking arrow reverses f") {
    auto op = opposite(*c.category("walking_arrow"));
    const auto f = op.morphism("f");
    CHECK(op.label(op.src(f)) == "B");
    CHECK(op.label(op.tgt(f)) == "A");
    CHECK(op.hom(op.object("B"), op.object("A")).size() == 1);
  }
  SUBCASE("Z/2 is its own opposite") {
    auto z2 = c.category("z2");
    CHECK(opposite(*z2) == *z2);
  }
  SUBCASE("opposite composes in reverse") {
    auto sq = c.category("square");
    auto op = opposite(*sq);
    CHECK(op.label(op.compose(op.morphism("p"), op.morphism("r"))) == "t");
    CHECK(validate_category(op.describe()).ok());
  }
}

TEST_CASE("hom sets") {
  corpus::Corpus c;
  auto terminal = c.category("terminal");
  auto arrow = c.category("walking_arrow");
  auto z2 = c.category("z2");
  auto labels = [](const FinCategory& cat, std::vector<MorphismId> ids) {
    std::vector<std::string> out;
    for (auto f : ids) out.push_back(cat.label(f));
    return out;
  };
  CHECK(labels(*terminal, hom_set(*terminal, ObjectId{0}, ObjectId{0})) == std::vector<std::string>{"id"});
  CHECK(labels(*arrow, hom_set(*arrow, arrow->object("A"), arrow->object("B"))) == std::vector<std::string>{"f"});
  CHECK(hom_set(*arrow, arrow->object("B"), arrow->object("A")).empty());
  CHECK(labels(*z2, hom_set(*z2, ObjectId{0}, ObjectId{0})) == std::vector<std::string>{"e", "s"});
  CHECK_THROWS_AS(hom_set(*arrow, ObjectId{0}, ObjectId{7}), UnknownIdError);
  CHECK_THROWS_AS((void)arrow->object("C"), UnknownIdError);
}

TEST_CASE("hom sets partition the morphisms") {
  corpus::Corpus c;
  for (const auto& name : corpus::category_names()) {
    auto cat = c.category(name);
    std::size_t total = 0;
    for (auto a : cat->objects())
      for (auto x : cat->objects()) total += cat->hom(a, x).size();
    CHECK(total == cat->morphism_count());
  }
}

TEST_CASE("compose") {
  corpus::Corpus c;
  auto arrow = c.category("walking_arrow");
  auto z2 = c.category("z2");
  CHECK(compose(*arrow, arrow->morphism("id_B"), arrow->morphism("f")) == arrow->morphism("f"));
  CHECK(compose(*z2, z2->morphism("s"), z2->morphism("s")) == z2->morphism("e"));
  CHECK_THROWS_AS((void)compose(*arrow, arrow->morphism("f"), arrow->morphism("id_B")), std::invalid_argument);
}

TEST_CASE("associativity holds on every corpus category") {
  corpus::Corpus c;
  for (const auto& name : corpus::category_names()) {
    auto cat = c.category(name);
    for (auto f : cat->morphisms())
      for (auto g : cat->morphisms())
        for (auto h : cat->morphisms()) {
          if (!cat->composable(g, f) || !cat->composable(h, g)) continue;
          CHECK(cat->compose(h, cat->compose(g, f)) == cat->compose(cat->compose(h, g), f));
        }
  }
}

TEST_CASE("describe round-trips through build") {
  corpus::Corpus c;
  for (const auto& name : corpus::category_names()) {
    auto cat = c.category(name);
    CHECK(FinCategory::build(cat->describe()) == *cat);
  }
}
