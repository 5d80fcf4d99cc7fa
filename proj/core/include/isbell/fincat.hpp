#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "isbell/errors.hpp"

namespace isbell {

struct ObjectId {
  std::uint32_t index = 0;
  friend auto operator<=>(ObjectId, ObjectId) = default;
};

struct MorphismId {
  std::uint32_t index = 0;
  friend auto operator<=>(MorphismId, MorphismId) = default;
};

/// A category as written in a file: labels only, nothing resolved or checked.
struct CategoryDescription {
  struct Morphism {
    std::string id;
    std::string src;
    std::string tgt;
  };
  /// compose(g, f) = result, i.e. g after f.
  struct Composite {
    std::string g;
    std::string f;
    std::string result;
  };

  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // object -> morphism
  std::vector<Composite> compose;
};

/// Checks identity, typing, totality and associativity laws of a candidate.
/// Structural problems (duplicate labels, dangling references) throw
/// StructuralError instead of being reported as law violations.
ValidationReport validate_category(const CategoryDescription& raw);

/// A finite category with a dense composition table. Immutable; objects and
/// morphisms keep their declaration order, which is the canonical order used
/// by every enumeration downstream.
class FinCategory {
 public:
  /// Throws StructuralError or LawViolationError.
  static FinCategory build(const CategoryDescription& raw);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t object_count() const noexcept { return object_labels_.size(); }
  [[nodiscard]] std::size_t morphism_count() const noexcept { return morphism_labels_.size(); }

  [[nodiscard]] const std::string& label(ObjectId x) const { return object_labels_.at(x.index); }
  [[nodiscard]] const std::string& label(MorphismId f) const { return morphism_labels_.at(f.index); }

  [[nodiscard]] std::optional<ObjectId> find_object(std::string_view label) const;
  [[nodiscard]] std::optional<MorphismId> find_morphism(std::string_view label) const;
  /// Throws UnknownIdError.
  [[nodiscard]] ObjectId object(std::string_view label) const;
  [[nodiscard]] MorphismId morphism(std::string_view label) const;

  [[nodiscard]] ObjectId src(MorphismId f) const { return src_.at(f.index); }
  [[nodiscard]] ObjectId tgt(MorphismId f) const { return tgt_.at(f.index); }
  [[nodiscard]] MorphismId identity(ObjectId x) const { return identity_.at(x.index); }
  [[nodiscard]] bool is_identity(MorphismId f) const { return identity(src(f)) == f; }

  [[nodiscard]] bool composable(MorphismId g, MorphismId f) const { return tgt(f) == src(g); }
  /// g after f. Throws std::invalid_argument when tgt(f) != src(g).
  [[nodiscard]] MorphismId compose(MorphismId g, MorphismId f) const;

  /// Morphisms a -> x in declaration order.
  [[nodiscard]] std::span<const MorphismId> hom(ObjectId a, ObjectId x) const {
    return hom_.at(std::size_t{a.index} * object_count() + x.index);
  }

  [[nodiscard]] std::vector<ObjectId> objects() const;
  [[nodiscard]] std::vector<MorphismId> morphisms() const;

  [[nodiscard]] CategoryDescription describe() const;

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.object_labels_ == b.object_labels_ && a.morphism_labels_ == b.morphism_labels_ &&
           a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.identity_ == b.identity_ && a.table_ == b.table_;
  }

  friend FinCategory opposite(const FinCategory& c);

 private:
  FinCategory() = default;
  void index_tables();

  static constexpr std::int32_t undefined = -1;

  std::string name_;
  std::vector<std::string> object_labels_;
  std::vector<std::string> morphism_labels_;
  std::vector<ObjectId> src_;
  std::vector<ObjectId> tgt_;
  std::vector<MorphismId> identity_;
  std::vector<std::int32_t> table_;  // [g * m + f]
  std::vector<std::vector<MorphismId>> hom_;
  std::unordered_map<std::string, std::uint32_t> object_index_;
  std::unordered_map<std::string, std::uint32_t> morphism_index_;
};

/// Same objects and morphism labels, src/tgt swapped, composition reversed.
FinCategory opposite(const FinCategory& c);

/// hom(a, x) as an owned list. Throws UnknownIdError for ids out of range.
std::vector<MorphismId> hom_set(const FinCategory& c, ObjectId a, ObjectId x);

inline MorphismId compose(const FinCategory& c, MorphismId g, MorphismId f) { return c.compose(g, f); }

}  // namespace isbell
