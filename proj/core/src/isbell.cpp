#include "isbell/isbell.hpp"

#include <stdexcept>

namespace isbell {

namespace {

FinSet conjugate_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back("t" + std::to_string(k));
  return FinSet(std::move(labels));
}

/// Shared construction: tables[x] = nat(f, rep(x)); the action of u sends a
/// realizer t to rep(u) . t, looked up in the table of the action target.
template <typename Representable, typename RepresentableOnMorphism>
ConjugatePair conjugate_with(const SetValuedFunctor& f, Variance result_variance, Representable rep,
                             RepresentableOnMorphism rep_on, Budget& budget) {
  const auto& c = f.base();
  ConjugatePair pair{f, f, {}};
  std::vector<TransformationIndex> index;
  std::vector<FinSet> sets;
  for (auto x : c.objects()) {
    pair.evaluation_tables.push_back(enumerate_nat(f, rep(f.base_ptr(), x), budget));
    index.emplace_back(pair.evaluation_tables.back());
    sets.push_back(conjugate_labels(pair.evaluation_tables.back().size()));
  }
  std::vector<SetFunction> actions;
  for (auto u : c.morphisms()) {
    const auto from = result_variance == Variance::covariant ? c.src(u) : c.tgt(u);
    const auto to = result_variance == Variance::covariant ? c.tgt(u) : c.src(u);
    const auto along = rep_on(c, u);
    SetFunction act;
    act.codomain_size = sets[to.index].size();
    for (const auto& t : pair.evaluation_tables[from.index]) {
      auto pos = index[to.index].find(compose(along, t));
      if (!pos) throw std::logic_error("conjugate: composite with a representable is not natural");
      act.image.push_back(*pos);
    }
    actions.push_back(std::move(act));
  }
  pair.conjugate = SetValuedFunctor(f.base_ptr(), result_variance, std::move(sets), std::move(actions));
  return pair;
}

}  // namespace

ConjugatePair conjugate_presheaf(const SetValuedFunctor& f, Budget& budget) {
  if (f.variance() != Variance::contravariant)
    throw std::invalid_argument("conjugate_presheaf: functor must be a presheaf (contravariant)");
  return conjugate_with(f, Variance::covariant, yoneda, yoneda_on_morphism, budget);
}

ConjugatePair conjugate_copresheaf(const SetValuedFunctor& g, Budget& budget) {
  if (g.variance() != Variance::covariant)
    throw std::invalid_argument("conjugate_copresheaf: functor must be a copresheaf (covariant)");
  return conjugate_with(g, Variance::contravariant, coyoneda, coyoneda_on_morphism, budget);
}

ConjugatePair conjugate(const SetValuedFunctor& f, Budget& budget) {
  return f.variance() == Variance::contravariant ? conjugate_presheaf(f, budget) : conjugate_copresheaf(f, budget);
}

NatTransformation conjugate_on_transformation(const ConjugatePair& target_pair, const ConjugatePair& source_pair,
                                              const NatTransformation& h) {
  const auto& c = target_pair.original.base();
  NatTransformation out;
  for (auto x : c.objects()) {
    const TransformationIndex index(source_pair.evaluation_tables[x.index]);
    SetFunction comp;
    comp.codomain_size = source_pair.evaluation_tables[x.index].size();
    for (const auto& alpha : target_pair.evaluation_tables[x.index]) {
      auto pos = index.find(compose(alpha, h));
      if (!pos) throw std::logic_error("conjugate_on_transformation: alpha . h is not natural");
      comp.image.push_back(*pos);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

PairingForm::PairingForm(const SetValuedFunctor& f, const SetValuedFunctor& g) : n_(f.base().object_count()) {
  for (const auto& s : g.sets()) g_sizes_.push_back(s.size());
  blocks_.resize(n_ * n_);
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y) blocks_[x * n_ + y].assign(f.sets()[x].size() * g_sizes_[y], 0);
}

PairingForm pairing_from_left(const AdjunctionWitness& w, const NatTransformation& alpha) {
  const auto& f = w.f_conjugate.original;
  const auto& g = w.g_conjugate.original;
  PairingForm p(f, g);
  for (auto y : f.base().objects())
    for (std::uint32_t b = 0; b < g.at(y).size(); ++b) {
      // alpha_y(b) is a transformation F => y(y)
      const auto& t = w.f_conjugate.realizer(y, alpha.at(y)(b));
      for (auto x : f.base().objects())
        for (std::uint32_t a = 0; a < f.at(x).size(); ++a) p.at(x, y, a, b) = t.at(x)(a);
    }
  return p;
}

PairingForm pairing_from_right(const AdjunctionWitness& w, const NatTransformation& beta) {
  const auto& f = w.f_conjugate.original;
  const auto& g = w.g_conjugate.original;
  PairingForm p(f, g);
  for (auto x : f.base().objects())
    for (std::uint32_t a = 0; a < f.at(x).size(); ++a) {
      // beta_x(a) is a transformation G => z(x)
      const auto& t = w.g_conjugate.realizer(x, beta.at(x)(a));
      for (auto y : f.base().objects())
        for (std::uint32_t b = 0; b < g.at(y).size(); ++b) p.at(x, y, a, b) = t.at(y)(b);
    }
  return p;
}

namespace {

/// Curry p in its G variable: alpha_y(b) = [x, a |-> p(x, y)(a, b)].
std::optional<NatTransformation> left_from_pairing(const AdjunctionWitness& w, const PairingForm& p) {
  const auto& f = w.f_conjugate.original;
  const auto& g = w.g_conjugate.original;
  const auto& c = f.base();
  NatTransformation alpha;
  for (auto y : c.objects()) {
    const TransformationIndex index(w.f_conjugate.evaluation_tables[y.index]);
    SetFunction comp;
    comp.codomain_size = w.f_conjugate.evaluation_tables[y.index].size();
    for (std::uint32_t b = 0; b < g.at(y).size(); ++b) {
      NatTransformation t;
      for (auto x : c.objects()) {
        SetFunction tx;
        tx.codomain_size = c.hom(x, y).size();
        for (std::uint32_t a = 0; a < f.at(x).size(); ++a) tx.image.push_back(p.at(x, y, a, b));
        t.components.push_back(std::move(tx));
      }
      auto pos = index.find(t);
      if (!pos) return std::nullopt;
      comp.image.push_back(*pos);
    }
    alpha.components.push_back(std::move(comp));
  }
  return alpha;
}

/// Curry p in its F variable: beta_x(a) = [y, b |-> p(x, y)(a, b)].
std::optional<NatTransformation> right_from_pairing(const AdjunctionWitness& w, const PairingForm& p) {
  const auto& f = w.f_conjugate.original;
  const auto& g = w.g_conjugate.original;
  const auto& c = f.base();
  NatTransformation beta;
  for (auto x : c.objects()) {
    const TransformationIndex index(w.g_conjugate.evaluation_tables[x.index]);
    SetFunction comp;
    comp.codomain_size = w.g_conjugate.evaluation_tables[x.index].size();
    for (std::uint32_t a = 0; a < f.at(x).size(); ++a) {
      NatTransformation t;
      for (auto y : c.objects()) {
        SetFunction ty;
        ty.codomain_size = c.hom(x, y).size();
        for (std::uint32_t b = 0; b < g.at(y).size(); ++b) ty.image.push_back(p.at(x, y, a, b));
        t.components.push_back(std::move(ty));
      }
      auto pos = index.find(t);
      if (!pos) return std::nullopt;
      comp.image.push_back(*pos);
    }
    beta.components.push_back(std::move(comp));
  }
  return beta;
}

}  // namespace

std::optional<std::uint32_t> transpose_left(const AdjunctionWitness& w, const NatTransformation& alpha) {
  auto beta = right_from_pairing(w, pairing_from_left(w, alpha));
  if (!beta) return std::nullopt;
  return TransformationIndex(w.right_homset).find(*beta);
}

std::optional<std::uint32_t> transpose_right(const AdjunctionWitness& w, const NatTransformation& beta) {
  auto alpha = left_from_pairing(w, pairing_from_right(w, beta));
  if (!alpha) return std::nullopt;
  return TransformationIndex(w.left_homset).find(*alpha);
}

AdjunctionWitness adjunction_transpose(const SetValuedFunctor& f, const SetValuedFunctor& g, Budget& budget) {
  if (f.variance() != Variance::contravariant || g.variance() != Variance::covariant)
    throw std::invalid_argument("adjunction_transpose: expects a presheaf F and a copresheaf G");
  if (!same_base(f, g)) throw std::invalid_argument("adjunction_transpose: functors have different base categories");

  AdjunctionWitness w{conjugate_presheaf(f, budget), conjugate_copresheaf(g, budget), {}, {}, {}, {}};
  w.left_homset = enumerate_nat(g, w.f_conjugate.conjugate, budget);
  w.right_homset = enumerate_nat(f, w.g_conjugate.conjugate, budget);

  if (w.left_homset.size() != w.right_homset.size())
    w.report.add("cardinality", {std::to_string(w.left_homset.size()), std::to_string(w.right_homset.size())});

  const TransformationIndex left_index(w.left_homset);
  const TransformationIndex right_index(w.right_homset);
  w.transpose.forward.codomain_size = w.right_homset.size();
  w.transpose.backward.codomain_size = w.left_homset.size();
  for (std::uint32_t i = 0; i < w.left_homset.size(); ++i) {
    auto beta = right_from_pairing(w, pairing_from_left(w, w.left_homset[i]));
    auto j = beta ? right_index.find(*beta) : std::nullopt;
    if (!j) {
      w.report.add("transpose-not-natural", {"left", std::to_string(i)});
      continue;
    }
    w.transpose.forward.image.push_back(*j);
  }
  for (std::uint32_t j = 0; j < w.right_homset.size(); ++j) {
    auto alpha = left_from_pairing(w, pairing_from_right(w, w.right_homset[j]));
    auto i = alpha ? left_index.find(*alpha) : std::nullopt;
    if (!i) {
      w.report.add("transpose-not-natural", {"right", std::to_string(j)});
      continue;
    }
    w.transpose.backward.image.push_back(*i);
  }
  if (!w.report.ok()) return w;

  for (std::uint32_t i = 0; i < w.left_homset.size(); ++i)
    if (w.transpose.backward(w.transpose.forward(i)) != i) w.report.add("round-trip-left", {std::to_string(i)});
  for (std::uint32_t j = 0; j < w.right_homset.size(); ++j)
    if (w.transpose.forward(w.transpose.backward(j)) != j) w.report.add("round-trip-right", {std::to_string(j)});
  return w;
}

ValidationReport check_transpose_naturality(const SetValuedFunctor& f_prime, const SetValuedFunctor& f,
                                            const SetValuedFunctor& g, const NatTransformation& h,
                                            Budget& budget) {
  ValidationReport report;
  if (!is_natural(f_prime, f, h)) {
    report.add("h-not-natural", {});
    return report;
  }
  const auto w = adjunction_transpose(f, g, budget);
  const auto w_prime = adjunction_transpose(f_prime, g, budget);
  if (!w.holds() || !w_prime.holds()) {
    report.add("adjunction-fails", {});
    return report;
  }
  const auto h_star = conjugate_on_transformation(w.f_conjugate, w_prime.f_conjugate, h);
  const TransformationIndex left_prime(w_prime.left_homset);
  const TransformationIndex right_prime(w_prime.right_homset);
  for (std::uint32_t i = 0; i < w.left_homset.size(); ++i) {
    const auto& alpha = w.left_homset[i];
    auto moved_left = left_prime.find(compose(h_star, alpha));
    auto moved_right = right_prime.find(compose(w.right_homset[w.transpose.forward(i)], h));
    if (!moved_left || !moved_right || w_prime.transpose.forward(*moved_left) != *moved_right)
      report.add("transpose-naturality", {std::to_string(i)});
  }
  return report;
}

bool UnitMap::injective() const {
  for (const auto& c : unit.components)
    if (!c.injective()) return false;
  return true;
}

bool UnitMap::surjective() const {
  for (const auto& c : unit.components)
    if (!c.surjective()) return false;
  return true;
}

bool UnitMap::isomorphism() const {
  if (!componentwise_bijective(unit)) return false;
  return is_natural(double_.conjugate, single.original, inverse(unit));
}

UnitMap unit(const SetValuedFunctor& f, Budget& budget) {
  auto single = conjugate_presheaf(f, budget);
  auto double_ = conjugate_copresheaf(single.conjugate, budget);
  const auto& c = f.base();
  NatTransformation i;
  for (auto x : c.objects()) {
    const TransformationIndex index(double_.evaluation_tables[x.index]);
    SetFunction comp;
    comp.codomain_size = double_.evaluation_tables[x.index].size();
    for (std::uint32_t s = 0; s < f.at(x).size(); ++s) {
      // evaluation at s: the transformation F* => z(x), alpha |-> alpha_x(s)
      NatTransformation ev;
      for (auto y : c.objects()) {
        SetFunction ey;
        ey.codomain_size = c.hom(x, y).size();
        for (const auto& alpha : single.evaluation_tables[y.index]) ey.image.push_back(alpha.at(x)(s));
        ev.components.push_back(std::move(ey));
      }
      auto pos = index.find(ev);
      if (!pos) throw std::logic_error("unit: evaluation map is not natural");
      comp.image.push_back(*pos);
    }
    i.components.push_back(std::move(comp));
  }
  return {std::move(single), std::move(double_), std::move(i)};
}

namespace {

/// Odometer over digits with per-position radix; returns false on wrap.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < radix[k]) return true;
    digits[k] = 0;
  }
  return false;
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::vector<ScanEntry> reflexive_scan(const std::shared_ptr<const FinCategory>& cp, std::size_t max_set_size,
                                      Budget& budget) {
  const auto& c = *cp;
  std::vector<MorphismId> free_morphisms;
  for (auto u : c.morphisms())
    if (!c.is_identity(u)) free_morphisms.push_back(u);

  std::vector<ScanEntry> out;
  std::vector<std::size_t> sizes(c.object_count(), 0);
  const std::vector<std::size_t> size_radix(c.object_count(), max_set_size + 1);
  do {
    // Presheaf: u: a -> b acts F(b) -> F(a).
    std::vector<std::size_t> radix;
    bool any_empty_choice = false;
    for (auto u : free_morphisms) {
      const auto functions = power(sizes[c.src(u).index], sizes[c.tgt(u).index]);
      if (functions == 0) any_empty_choice = true;
      radix.push_back(functions);
    }
    if (any_empty_choice) continue;

    std::vector<std::size_t> choice(free_morphisms.size(), 0);
    do {
      budget.charge();
      std::vector<FinSet> sets;
      for (auto n : sizes) sets.push_back(FinSet::numbered(n));
      std::vector<SetFunction> actions(c.morphism_count());
      for (auto x : c.objects()) actions[c.identity(x).index] = SetFunction::identity(sizes[x.index]);
      for (std::size_t k = 0; k < free_morphisms.size(); ++k) {
        const auto u = free_morphisms[k];
        const auto dom = sizes[c.tgt(u).index];
        const auto cod = sizes[c.src(u).index];
        SetFunction act;
        act.codomain_size = cod;
        act.image.assign(dom, 0);
        // decode choice[k] in base cod, most significant digit first
        auto code = choice[k];
        for (std::size_t a = dom; a-- > 0;) {
          act.image[a] = static_cast<std::uint32_t>(code % cod);
          code /= cod;
        }
        actions[u.index] = std::move(act);
      }
      SetValuedFunctor f(cp, Variance::contravariant, std::move(sets), std::move(actions));
      if (!check_functor_laws(f).ok()) continue;
      auto i = unit(f, budget);
      out.push_back({std::move(f), i.isomorphism(), i.injective(), i.surjective()});
    } while (advance(choice, radix));
  } while (advance(sizes, size_radix));
  return out;
}

}  // namespace isbell
