#pragma once

#include <cstdint>
#include <vector>

#include "isbell/setfunc.hpp"

namespace isbell {

/// A functor together with its Isbell conjugate. Element k of
/// conjugate(x) is labeled "tk" and is realized by evaluation_tables[x][k].
///
/// For a presheaf F the conjugate is the copresheaf F*(x) = nat(F, y(x)).
/// For a copresheaf G it is the presheaf G*(x) = nat(G, z(x)): the hom in
/// [C, Set]^op from z(x) to G, read in [C, Set].
struct ConjugatePair {
  SetValuedFunctor original;
  SetValuedFunctor conjugate;
  std::vector<std::vector<NatTransformation>> evaluation_tables;

  [[nodiscard]] const NatTransformation& realizer(ObjectId x, std::uint32_t element) const {
    return evaluation_tables.at(x.index).at(element);
  }
};

ConjugatePair conjugate_presheaf(const SetValuedFunctor& f, Budget& budget);
ConjugatePair conjugate_copresheaf(const SetValuedFunctor& g, Budget& budget);
/// Dispatches on variance.
ConjugatePair conjugate(const SetValuedFunctor& f, Budget& budget);

/// For h: F' => F between presheaves, h*: F* => F'* with components
/// alpha |-> alpha . h.
NatTransformation conjugate_on_transformation(const ConjugatePair& target_pair, const ConjugatePair& source_pair,
                                              const NatTransformation& h);

/// The family p(x, y): F(x) x G(y) -> hom(x, y) shared by both sides of the
/// adjunction. Values are positions within hom(x, y).
class PairingForm {
 public:
  PairingForm(const SetValuedFunctor& f, const SetValuedFunctor& g);

  [[nodiscard]] std::uint32_t& at(ObjectId x, ObjectId y, std::uint32_t a, std::uint32_t b) {
    return blocks_[block(x, y)][a * g_sizes_[y.index] + b];
  }
  [[nodiscard]] std::uint32_t at(ObjectId x, ObjectId y, std::uint32_t a, std::uint32_t b) const {
    return blocks_[block(x, y)][a * g_sizes_[y.index] + b];
  }

  friend bool operator==(const PairingForm&, const PairingForm&) = default;

 private:
  [[nodiscard]] std::size_t block(ObjectId x, ObjectId y) const { return std::size_t{x.index} * n_ + y.index; }

  std::size_t n_;
  std::vector<std::size_t> g_sizes_;
  std::vector<std::vector<std::uint32_t>> blocks_;
};

/// Both hom-sets of the Isbell adjunction for a presheaf F and copresheaf G,
/// with the transpose built through the pairing form.
///
/// left_homset = nat(G, F*) realizes hom(F*, G) (hom in [C, Set]^op);
/// right_homset = nat(F, G*).
struct AdjunctionWitness {
  ConjugatePair f_conjugate;
  ConjugatePair g_conjugate;
  std::vector<NatTransformation> left_homset;
  std::vector<NatTransformation> right_homset;
  Bijection transpose;  // forward: left -> right
  ValidationReport report;

  [[nodiscard]] bool holds() const { return report.ok(); }
};

PairingForm pairing_from_left(const AdjunctionWitness& w, const NatTransformation& alpha);
PairingForm pairing_from_right(const AdjunctionWitness& w, const NatTransformation& beta);

/// alpha in nat(G, F*) to its transpose in nat(F, G*); nullopt only if the
/// curried family fails to be one of the enumerated transformations.
std::optional<std::uint32_t> transpose_left(const AdjunctionWitness& w, const NatTransformation& alpha);
std::optional<std::uint32_t> transpose_right(const AdjunctionWitness& w, const NatTransformation& beta);

/// Builds the witness and verifies cardinalities and both round trips,
/// recording any failure in report.
AdjunctionWitness adjunction_transpose(const SetValuedFunctor& f, const SetValuedFunctor& g, Budget& budget);

/// Naturality of the transpose in the presheaf variable along h: F' => F:
/// transpose'(h* . alpha) == transpose(alpha) . h for every alpha.
ValidationReport check_transpose_naturality(const SetValuedFunctor& f_prime, const SetValuedFunctor& f,
                                            const SetValuedFunctor& g, const NatTransformation& h,
                                            Budget& budget);

/// The unit i: F => F** for a presheaf F.
struct UnitMap {
  ConjugatePair single;  // F*
  ConjugatePair double_;  // F**
  NatTransformation unit;

  [[nodiscard]] bool injective() const;
  [[nodiscard]] bool surjective() const;
  /// Componentwise bijective with a natural inverse.
  [[nodiscard]] bool isomorphism() const;
};

UnitMap unit(const SetValuedFunctor& f, Budget& budget);

struct ScanEntry {
  SetValuedFunctor functor;
  bool reflexive = false;
  bool injective = false;
  bool surjective = false;
};

/// Every presheaf on c with value sets of size at most max_set_size
/// (elements "0", "1", ...), with its unit verdict. Order: size vectors
/// lexicographically, then morphism actions lexicographically. Isomorphic
/// duplicates are kept.
std::vector<ScanEntry> reflexive_scan(const std::shared_ptr<const FinCategory>& c, std::size_t max_set_size,
                                      Budget& budget);

}  // namespace isbell
