#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "isbell/errors.hpp"
#include "isbell/fincat.hpp"

namespace isbell {

enum class Variance { covariant, contravariant };

[[nodiscard]] constexpr Variance flip(Variance v) noexcept {
  return v == Variance::covariant ? Variance::contravariant : Variance::covariant;
}

/// Finite set with labeled elements in a fixed order.
class FinSet {
 public:
  FinSet() = default;
  /// Throws StructuralError on duplicate labels.
  explicit FinSet(std::vector<std::string> elements);
  /// Elements labeled "0", "1", ...
  static FinSet numbered(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] bool empty() const noexcept { return elements_.empty(); }
  [[nodiscard]] const std::string& label(std::uint32_t i) const { return elements_.at(i); }
  [[nodiscard]] const std::vector<std::string>& elements() const noexcept { return elements_; }
  [[nodiscard]] std::optional<std::uint32_t> find(std::string_view label) const;

  friend bool operator==(const FinSet& a, const FinSet& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<std::string> elements_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Total function between finite sets, stored as element indices. The domain
/// size is image.size().
struct SetFunction {
  std::vector<std::uint32_t> image;
  std::size_t codomain_size = 0;

  static SetFunction identity(std::size_t n);

  [[nodiscard]] std::size_t domain_size() const noexcept { return image.size(); }
  [[nodiscard]] std::uint32_t operator()(std::uint32_t a) const { return image[a]; }
  [[nodiscard]] bool injective() const;
  [[nodiscard]] bool surjective() const;
  [[nodiscard]] bool bijective() const { return injective() && surjective(); }
  /// Requires bijective().
  [[nodiscard]] SetFunction inverse() const;

  friend bool operator==(const SetFunction&, const SetFunction&) = default;
  friend auto operator<=>(const SetFunction& a, const SetFunction& b) { return a.image <=> b.image; }
};

/// g after f. Throws std::invalid_argument on a size mismatch.
SetFunction compose(const SetFunction& g, const SetFunction& f);

/// A functor as written in a file. Morphism actions map element labels; the
/// action of an identity morphism may be omitted and defaults to the identity.
struct FunctorDescription {
  Variance variance = Variance::contravariant;
  std::map<std::string, std::vector<std::string>> objects;
  std::map<std::string, std::map<std::string, std::string>> morphisms;
};

/// A set-valued functor on a finite category. Contravariant functors are the
/// presheaves [C^op, Set]; covariant ones are the copresheaves [C, Set].
/// For u: A -> B the action F(u) runs F(A) -> F(B) if covariant and
/// F(B) -> F(A) if contravariant.
class SetValuedFunctor {
 public:
  /// Checks typing of every action against the declared sets; throws
  /// StructuralError on a mismatch. Functor laws are not checked here.
  SetValuedFunctor(std::shared_ptr<const FinCategory> base, Variance variance, std::vector<FinSet> sets,
                   std::vector<SetFunction> actions);

  [[nodiscard]] const FinCategory& base() const noexcept { return *base_; }
  [[nodiscard]] const std::shared_ptr<const FinCategory>& base_ptr() const noexcept { return base_; }
  [[nodiscard]] Variance variance() const noexcept { return variance_; }
  [[nodiscard]] const FinSet& at(ObjectId x) const { return sets_.at(x.index); }
  [[nodiscard]] const SetFunction& on(MorphismId u) const { return actions_.at(u.index); }
  [[nodiscard]] const std::vector<FinSet>& sets() const noexcept { return sets_; }
  [[nodiscard]] const std::vector<SetFunction>& actions() const noexcept { return actions_; }

  /// Object whose set is the domain of F(u).
  [[nodiscard]] ObjectId action_source(MorphismId u) const {
    return variance_ == Variance::covariant ? base_->src(u) : base_->tgt(u);
  }
  [[nodiscard]] ObjectId action_target(MorphismId u) const {
    return variance_ == Variance::covariant ? base_->tgt(u) : base_->src(u);
  }

  [[nodiscard]] FunctorDescription describe() const;

  /// Structural equality: same base, variance, labels and actions.
  friend bool operator==(const SetValuedFunctor& a, const SetValuedFunctor& b);

 private:
  std::shared_ptr<const FinCategory> base_;
  Variance variance_;
  std::vector<FinSet> sets_;
  std::vector<SetFunction> actions_;
};

[[nodiscard]] bool same_base(const SetValuedFunctor& a, const SetValuedFunctor& b);

/// Identity and composition laws, exhaustively, respecting variance.
ValidationReport check_functor_laws(const SetValuedFunctor& f);

/// Resolves labels and checks the functor laws. Throws StructuralError for
/// typing problems and LawViolationError for law failures.
SetValuedFunctor validate_functor(std::shared_ptr<const FinCategory> base, const FunctorDescription& raw);

/// A natural transformation, one component per object of the base in
/// canonical order. Source and target are carried by the context that
/// produced it (a hom list, a conjugate table).
struct NatTransformation {
  std::vector<SetFunction> components;

  [[nodiscard]] const SetFunction& at(ObjectId x) const { return components.at(x.index); }

  friend bool operator==(const NatTransformation&, const NatTransformation&) = default;
  friend auto operator<=>(const NatTransformation& a, const NatTransformation& b) {
    return a.components <=> b.components;
  }
};

struct NatTransformationHash {
  std::size_t operator()(const NatTransformation& t) const noexcept;
};

/// Lookup of a transformation's position in an enumerated hom list.
class TransformationIndex {
 public:
  TransformationIndex() = default;
  explicit TransformationIndex(const std::vector<NatTransformation>& list);
  [[nodiscard]] std::optional<std::uint32_t> find(const NatTransformation& t) const;

 private:
  std::unordered_map<NatTransformation, std::uint32_t, NatTransformationHash> index_;
};

/// Independent recheck: component typing plus every naturality square.
ValidationReport check_naturality(const SetValuedFunctor& source, const SetValuedFunctor& target,
                                  const NatTransformation& alpha);
[[nodiscard]] inline bool is_natural(const SetValuedFunctor& source, const SetValuedFunctor& target,
                                     const NatTransformation& alpha) {
  return check_naturality(source, target, alpha).ok();
}

/// All natural transformations source => target in canonical order
/// (lexicographic in the component images, objects in declaration order).
/// Backtracks element by element and propagates naturality constraints after
/// each choice. Each tried value costs one unit of budget.
std::vector<NatTransformation> enumerate_nat(const SetValuedFunctor& source, const SetValuedFunctor& target,
                                             Budget& budget);
std::vector<NatTransformation> enumerate_nat(const SetValuedFunctor& source, const SetValuedFunctor& target);

NatTransformation identity_transformation(const SetValuedFunctor& f);
/// Vertical composite beta after alpha.
NatTransformation compose(const NatTransformation& beta, const NatTransformation& alpha);
[[nodiscard]] bool componentwise_bijective(const NatTransformation& alpha);
/// Componentwise inverse; requires componentwise_bijective.
NatTransformation inverse(const NatTransformation& alpha);

/// y(x) = hom(-, x), a presheaf. Elements are morphism labels.
SetValuedFunctor yoneda(const std::shared_ptr<const FinCategory>& c, ObjectId x);
/// z(x) = hom(x, -), a copresheaf.
SetValuedFunctor coyoneda(const std::shared_ptr<const FinCategory>& c, ObjectId x);
/// y(u): y(x) => y(y') for u: x -> y', components postcompose with u.
NatTransformation yoneda_on_morphism(const FinCategory& c, MorphismId u);
/// z(u) for u: x' -> x, realized in [C, Set] as z(x) => z(x'); components
/// precompose with u.
NatTransformation coyoneda_on_morphism(const FinCategory& c, MorphismId u);

struct Bijection {
  SetFunction forward;
  SetFunction backward;

  [[nodiscard]] bool round_trips() const;
};

/// nat(y(x), F) ~ F(x): forward sends alpha to alpha_x(id_x), backward sends
/// a to the transformation u |-> F(u)(a).
struct YonedaBijection {
  SetValuedFunctor representable;
  std::vector<NatTransformation> transformations;
  Bijection bijection;
};

YonedaBijection yoneda_lemma_bijection(const SetValuedFunctor& f, ObjectId x, Budget& budget);

/// (F + G)(x) = F(x) + G(x), tagged "L." / "R.".
SetValuedFunctor pointwise_sum(const SetValuedFunctor& f, const SetValuedFunctor& g);

/// Some invertible natural transformation f => g whose inverse is natural,
/// or nullopt.
std::optional<NatTransformation> iso_check(const SetValuedFunctor& f, const SetValuedFunctor& g, Budget& budget);

}  // namespace isbell
