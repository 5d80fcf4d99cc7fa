#include "isbell/fincat.hpp"

#include <algorithm>
#include <stdexcept>

namespace isbell {

namespace {

struct Resolved {
  std::unordered_map<std::string, std::uint32_t> objects;
  std::unordered_map<std::string, std::uint32_t> morphisms;
  std::vector<std::uint32_t> src;
  std::vector<std::uint32_t> tgt;
  std::vector<std::int32_t> identity;  // per object, -1 when missing
  std::vector<std::int32_t> table;     // [g * m + f], -1 when missing
  ValidationReport laws;
};

Resolved resolve(const CategoryDescription& raw) {
  Resolved r;
  for (std::size_t i = 0; i < raw.objects.size(); ++i) {
    const auto& label = raw.objects[i];
    if (label.empty()) throw StructuralError("objects[" + std::to_string(i) + "]: empty object label");
    if (!r.objects.emplace(label, static_cast<std::uint32_t>(i)).second)
      throw StructuralError("objects[" + std::to_string(i) + "]: duplicate object label '" + label + "'");
  }
  auto object_ref = [&](const std::string& label, const std::string& where) {
    auto it = r.objects.find(label);
    if (it == r.objects.end()) throw StructuralError(where + ": undeclared object '" + label + "'");
    return it->second;
  };
  for (std::size_t i = 0; i < raw.morphisms.size(); ++i) {
    const auto& m = raw.morphisms[i];
    const std::string where = "morphisms[" + std::to_string(i) + "] (morphism '" + m.id + "')";
    if (m.id.empty()) throw StructuralError("morphisms[" + std::to_string(i) + "]: empty morphism id");
    if (!r.morphisms.emplace(m.id, static_cast<std::uint32_t>(i)).second)
      throw StructuralError(where + ": duplicate morphism id");
    r.src.push_back(object_ref(m.src, where + ".src"));
    r.tgt.push_back(object_ref(m.tgt, where + ".tgt"));
  }
  auto morphism_ref = [&](const std::string& label, const std::string& where) {
    auto it = r.morphisms.find(label);
    if (it == r.morphisms.end()) throw StructuralError(where + ": undeclared morphism '" + label + "'");
    return it->second;
  };

  const std::size_t n = raw.objects.size();
  const std::size_t m = raw.morphisms.size();
  r.identity.assign(n, -1);
  for (const auto& [object, morphism] : raw.identities) {
    const auto x = object_ref(object, "identities");
    const auto id = morphism_ref(morphism, "identities." + object);
    if (r.identity[x] != -1) throw StructuralError("identities: object '" + object + "' listed twice");
    r.identity[x] = static_cast<std::int32_t>(id);
  }

  r.table.assign(m * m, -1);
  for (std::size_t i = 0; i < raw.compose.size(); ++i) {
    const auto& c = raw.compose[i];
    const std::string where = "compose[" + std::to_string(i) + "]";
    const auto g = morphism_ref(c.g, where + "[0]");
    const auto f = morphism_ref(c.f, where + "[1]");
    const auto h = morphism_ref(c.result, where + "[2]");
    auto& slot = r.table[std::size_t{g} * m + f];
    if (slot != -1)
      throw StructuralError(where + ": duplicate entry for (" + c.g + ", " + c.f + ")");
    if (r.tgt[f] != r.src[g]) {
      r.laws.add("composition-domain", {c.g, c.f});
      continue;
    }
    slot = static_cast<std::int32_t>(h);
  }
  return r;
}

ValidationReport check_laws(const CategoryDescription& raw, Resolved& r) {
  ValidationReport report = std::move(r.laws);
  const std::size_t n = raw.objects.size();
  const std::size_t m = raw.morphisms.size();
  const auto& label = [&](std::size_t f) -> const std::string& { return raw.morphisms[f].id; };

  for (std::size_t x = 0; x < n; ++x) {
    const auto id = r.identity[x];
    if (id == -1) {
      report.add("identity-missing", {raw.objects[x]});
    } else if (r.src[id] != x || r.tgt[id] != x) {
      report.add("identity-typing", {raw.objects[x], label(id)});
    }
  }

  auto at = [&](std::size_t g, std::size_t f) { return r.table[g * m + f]; };
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t f = 0; f < m; ++f) {
      if (r.tgt[f] != r.src[g]) continue;
      const auto h = at(g, f);
      if (h == -1) {
        report.add("composition-totality", {label(g), label(f)});
      } else if (r.src[h] != r.src[f] || r.tgt[h] != r.tgt[g]) {
        report.add("composition-typing", {label(g), label(f), label(h)});
      }
    }
  }

  for (std::size_t f = 0; f < m; ++f) {
    const auto left = r.identity[r.tgt[f]];
    const auto right = r.identity[r.src[f]];
    if (left != -1 && r.src[left] == r.tgt[f]) {
      const auto h = at(left, f);
      if (h != -1 && static_cast<std::size_t>(h) != f) report.add("left-identity", {label(left), label(f)});
    }
    if (right != -1 && r.tgt[right] == r.src[f]) {
      const auto h = at(f, right);
      if (h != -1 && static_cast<std::size_t>(h) != f) report.add("right-identity", {label(f), label(right)});
    }
  }

  // Exhaustive over composable triples h . g . f; entries that are missing or
  // mistyped have already been reported above.
  auto well_typed = [&](std::int32_t gf, std::size_t g, std::size_t f) {
    return gf != -1 && r.src[gf] == r.src[f] && r.tgt[gf] == r.tgt[g];
  };
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t g = 0; g < m; ++g) {
      if (r.tgt[f] != r.src[g]) continue;
      const auto gf = at(g, f);
      if (!well_typed(gf, g, f)) continue;
      for (std::size_t h = 0; h < m; ++h) {
        if (r.tgt[g] != r.src[h]) continue;
        const auto hg = at(h, g);
        if (!well_typed(hg, h, g)) continue;
        const auto lhs = at(h, static_cast<std::size_t>(gf));
        const auto rhs = at(static_cast<std::size_t>(hg), f);
        if (lhs == -1 || rhs == -1) continue;
        if (lhs != rhs) report.add("associativity", {label(h), label(g), label(f)});
      }
    }
  }
  return report;
}

}  // namespace

ValidationReport validate_category(const CategoryDescription& raw) {
  auto resolved = resolve(raw);
  return check_laws(raw, resolved);
}

FinCategory FinCategory::build(const CategoryDescription& raw) {
  auto r = resolve(raw);
  auto report = check_laws(raw, r);
  if (!report.ok()) {
    const auto& first = report.violations.front();
    std::string what = "category '" + raw.name + "' violates " + first.law;
    throw LawViolationError(what, std::move(report));
  }

  FinCategory c;
  c.name_ = raw.name;
  c.object_labels_ = raw.objects;
  for (const auto& mor : raw.morphisms) c.morphism_labels_.push_back(mor.id);
  for (auto s : r.src) c.src_.push_back(ObjectId{s});
  for (auto t : r.tgt) c.tgt_.push_back(ObjectId{t});
  for (auto id : r.identity) c.identity_.push_back(MorphismId{static_cast<std::uint32_t>(id)});
  c.table_ = std::move(r.table);
  c.object_index_ = std::move(r.objects);
  c.morphism_index_ = std::move(r.morphisms);
  c.index_tables();
  return c;
}

void FinCategory::index_tables() {
  const std::size_t n = object_count();
  hom_.assign(n * n, {});
  for (std::uint32_t f = 0; f < morphism_count(); ++f)
    hom_[std::size_t{src_[f].index} * n + tgt_[f].index].push_back(MorphismId{f});
}

std::optional<ObjectId> FinCategory::find_object(std::string_view label) const {
  auto it = object_index_.find(std::string(label));
  if (it == object_index_.end()) return std::nullopt;
  return ObjectId{it->second};
}

std::optional<MorphismId> FinCategory::find_morphism(std::string_view label) const {
  auto it = morphism_index_.find(std::string(label));
  if (it == morphism_index_.end()) return std::nullopt;
  return MorphismId{it->second};
}

ObjectId FinCategory::object(std::string_view label) const {
  if (auto x = find_object(label)) return *x;
  throw UnknownIdError("unknown object '" + std::string(label) + "' in category '" + name_ + "'");
}

MorphismId FinCategory::morphism(std::string_view label) const {
  if (auto f = find_morphism(label)) return *f;
  throw UnknownIdError("unknown morphism '" + std::string(label) + "' in category '" + name_ + "'");
}

MorphismId FinCategory::compose(MorphismId g, MorphismId f) const {
  if (!composable(g, f))
    throw std::invalid_argument("morphisms '" + label(g) + "' and '" + label(f) + "' are not composable");
  return MorphismId{static_cast<std::uint32_t>(table_[std::size_t{g.index} * morphism_count() + f.index])};
}

std::vector<ObjectId> FinCategory::objects() const {
  std::vector<ObjectId> out;
  for (std::uint32_t i = 0; i < object_count(); ++i) out.push_back(ObjectId{i});
  return out;
}

std::vector<MorphismId> FinCategory::morphisms() const {
  std::vector<MorphismId> out;
  for (std::uint32_t i = 0; i < morphism_count(); ++i) out.push_back(MorphismId{i});
  return out;
}

CategoryDescription FinCategory::describe() const {
  CategoryDescription d;
  d.name = name_;
  d.objects = object_labels_;
  for (std::size_t f = 0; f < morphism_count(); ++f)
    d.morphisms.push_back({morphism_labels_[f], object_labels_[src_[f].index], object_labels_[tgt_[f].index]});
  for (std::size_t x = 0; x < object_count(); ++x)
    d.identities.emplace_back(object_labels_[x], morphism_labels_[identity_[x].index]);
  const std::size_t m = morphism_count();
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      if (table_[g * m + f] != undefined)
        d.compose.push_back({morphism_labels_[g], morphism_labels_[f], morphism_labels_[table_[g * m + f]]});
  return d;
}

FinCategory opposite(const FinCategory& c) {
  FinCategory op;
  op.name_ = c.name_.ends_with("^op") ? c.name_.substr(0, c.name_.size() - 3) : c.name_ + "^op";
  op.object_labels_ = c.object_labels_;
  op.morphism_labels_ = c.morphism_labels_;
  op.src_ = c.tgt_;
  op.tgt_ = c.src_;
  op.identity_ = c.identity_;
  const std::size_t m = c.morphism_count();
  op.table_.assign(m * m, FinCategory::undefined);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) op.table_[g * m + f] = c.table_[f * m + g];
  op.object_index_ = c.object_index_;
  op.morphism_index_ = c.morphism_index_;
  op.index_tables();
  return op;
}

std::vector<MorphismId> hom_set(const FinCategory& c, ObjectId a, ObjectId x) {
  if (a.index >= c.object_count() || x.index >= c.object_count())
    throw UnknownIdError("hom_set: object id out of range");
  auto h = c.hom(a, x);
  return {h.begin(), h.end()};
}

}  // namespace isbell
