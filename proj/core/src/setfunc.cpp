#include "isbell/setfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace isbell {

FinSet::FinSet(std::vector<std::string> elements) : elements_(std::move(elements)) {
  for (std::uint32_t i = 0; i < elements_.size(); ++i)
    if (!index_.emplace(elements_[i], i).second)
      throw StructuralError("duplicate set element '" + elements_[i] + "'");
}

FinSet FinSet::numbered(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FinSet(std::move(labels));
}

std::optional<std::uint32_t> FinSet::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SetFunction SetFunction::identity(std::size_t n) {
  SetFunction f;
  f.codomain_size = n;
  f.image.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) f.image[i] = i;
  return f;
}

bool SetFunction::injective() const {
  std::vector<bool> hit(codomain_size, false);
  for (auto b : image) {
    if (hit[b]) return false;
    hit[b] = true;
  }
  return true;
}

bool SetFunction::surjective() const {
  std::vector<bool> hit(codomain_size, false);
  for (auto b : image) hit[b] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

SetFunction SetFunction::inverse() const {
  if (!bijective()) throw std::invalid_argument("inverse of a non-bijective function");
  SetFunction inv;
  inv.codomain_size = domain_size();
  inv.image.resize(codomain_size);
  for (std::uint32_t a = 0; a < image.size(); ++a) inv.image[image[a]] = a;
  return inv;
}

SetFunction compose(const SetFunction& g, const SetFunction& f) {
  if (f.codomain_size != g.domain_size()) throw std::invalid_argument("compose: size mismatch");
  SetFunction h;
  h.codomain_size = g.codomain_size;
  h.image.reserve(f.domain_size());
  for (auto b : f.image) h.image.push_back(g.image[b]);
  return h;
}

SetValuedFunctor::SetValuedFunctor(std::shared_ptr<const FinCategory> base, Variance variance,
                                   std::vector<FinSet> sets, std::vector<SetFunction> actions)
    : base_(std::move(base)), variance_(variance), sets_(std::move(sets)), actions_(std::move(actions)) {
  if (!base_) throw std::invalid_argument("functor without a base category");
  if (sets_.size() != base_->object_count()) throw StructuralError("functor: one set per object required");
  if (actions_.size() != base_->morphism_count())
    throw StructuralError("functor: one action per morphism required");
  for (auto u : base_->morphisms()) {
    const auto& act = actions_[u.index];
    const auto& dom = sets_[action_source(u).index];
    const auto& cod = sets_[action_target(u).index];
    if (act.domain_size() != dom.size() || act.codomain_size != cod.size())
      throw StructuralError("functor: action of '" + base_->label(u) + "' has the wrong domain or codomain");
    for (auto b : act.image)
      if (b >= cod.size())
        throw StructuralError("functor: action of '" + base_->label(u) + "' leaves its codomain");
  }
}

FunctorDescription SetValuedFunctor::describe() const {
  FunctorDescription d;
  d.variance = variance_;
  for (auto x : base_->objects()) d.objects[base_->label(x)] = sets_[x.index].elements();
  for (auto u : base_->morphisms()) {
    auto& entry = d.morphisms[base_->label(u)];
    const auto& dom = sets_[action_source(u).index];
    const auto& cod = sets_[action_target(u).index];
    for (std::uint32_t a = 0; a < dom.size(); ++a) entry[dom.label(a)] = cod.label(actions_[u.index](a));
  }
  return d;
}

bool same_base(const SetValuedFunctor& a, const SetValuedFunctor& b) {
  return a.base_ptr() == b.base_ptr() || a.base() == b.base();
}

bool operator==(const SetValuedFunctor& a, const SetValuedFunctor& b) {
  return a.variance_ == b.variance_ && a.sets_ == b.sets_ && a.actions_ == b.actions_ && same_base(a, b);
}

ValidationReport check_functor_laws(const SetValuedFunctor& f) {
  ValidationReport report;
  const auto& c = f.base();
  for (auto x : c.objects()) {
    const auto id = c.identity(x);
    if (f.on(id) != SetFunction::identity(f.at(x).size())) report.add("functor-identity", {c.label(id)});
  }
  for (auto g : c.morphisms()) {
    for (auto h : c.morphisms()) {
      if (!c.composable(g, h)) continue;
      const auto gh = c.compose(g, h);
      // Covariant: F(g.h) = F(g).F(h); contravariant: F(g.h) = F(h).F(g).
      const auto expected = f.variance() == Variance::covariant ? compose(f.on(g), f.on(h))
                                                                 : compose(f.on(h), f.on(g));
      if (f.on(gh) != expected) report.add("functor-composition", {c.label(g), c.label(h), c.label(gh)});
    }
  }
  return report;
}

SetValuedFunctor validate_functor(std::shared_ptr<const FinCategory> base, const FunctorDescription& raw) {
  const auto& c = *base;
  for (const auto& [label, _] : raw.objects)
    if (!c.find_object(label)) throw StructuralError("objects: '" + label + "' is not an object of the category");
  for (const auto& [label, _] : raw.morphisms)
    if (!c.find_morphism(label))
      throw StructuralError("morphisms: '" + label + "' is not a morphism of the category");

  std::vector<FinSet> sets;
  for (auto x : c.objects()) {
    auto it = raw.objects.find(c.label(x));
    if (it == raw.objects.end()) throw StructuralError("objects: missing set for object '" + c.label(x) + "'");
    try {
      sets.emplace_back(it->second);
    } catch (const StructuralError& e) {
      throw StructuralError("objects." + c.label(x) + ": " + e.what());
    }
  }

  auto source_of = [&](MorphismId u) { return raw.variance == Variance::covariant ? c.src(u) : c.tgt(u); };
  auto target_of = [&](MorphismId u) { return raw.variance == Variance::covariant ? c.tgt(u) : c.src(u); };

  std::vector<SetFunction> actions;
  for (auto u : c.morphisms()) {
    const auto& dom = sets[source_of(u).index];
    const auto& cod = sets[target_of(u).index];
    const std::string where = "morphisms." + c.label(u);
    auto it = raw.morphisms.find(c.label(u));
    if (it == raw.morphisms.end()) {
      if (!c.is_identity(u)) throw StructuralError(where + ": missing action");
      actions.push_back(SetFunction::identity(dom.size()));
      continue;
    }
    SetFunction act;
    act.codomain_size = cod.size();
    act.image.assign(dom.size(), 0);
    for (const auto& [from, _] : it->second)
      if (!dom.find(from)) throw StructuralError(where + ": '" + from + "' is not in the domain set");
    for (std::uint32_t a = 0; a < dom.size(); ++a) {
      auto img = it->second.find(dom.label(a));
      if (img == it->second.end()) throw StructuralError(where + ": no image for '" + dom.label(a) + "'");
      auto b = cod.find(img->second);
      if (!b) throw StructuralError(where + "." + dom.label(a) + ": '" + img->second + "' is not in the codomain set");
      act.image[a] = *b;
    }
    actions.push_back(std::move(act));
  }

  SetValuedFunctor f(std::move(base), raw.variance, std::move(sets), std::move(actions));
  auto report = check_functor_laws(f);
  if (!report.ok()) {
    const auto what = "functor violates " + report.violations.front().law;
    throw LawViolationError(what, std::move(report));
  }
  return f;
}

std::size_t NatTransformationHash::operator()(const NatTransformation& t) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 0x100000001b3ull; };
  for (const auto& c : t.components) {
    mix(c.image.size());
    for (auto b : c.image) mix(b);
  }
  return h;
}

TransformationIndex::TransformationIndex(const std::vector<NatTransformation>& list) {
  for (std::uint32_t i = 0; i < list.size(); ++i) index_.emplace(list[i], i);
}

std::optional<std::uint32_t> TransformationIndex::find(const NatTransformation& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

void require_parallel(const SetValuedFunctor& a, const SetValuedFunctor& b, const char* op) {
  if (a.variance() != b.variance())
    throw std::invalid_argument(std::string(op) + ": functors have different variance");
  if (!same_base(a, b)) throw std::invalid_argument(std::string(op) + ": functors have different base categories");
}

}  // namespace

ValidationReport check_naturality(const SetValuedFunctor& source, const SetValuedFunctor& target,
                                  const NatTransformation& alpha) {
  require_parallel(source, target, "check_naturality");
  ValidationReport report;
  const auto& c = source.base();
  if (alpha.components.size() != c.object_count()) {
    report.add("component-count", {});
    return report;
  }
  for (auto x : c.objects()) {
    const auto& comp = alpha.at(x);
    bool typed = comp.domain_size() == source.at(x).size() && comp.codomain_size == target.at(x).size() &&
                 std::all_of(comp.image.begin(), comp.image.end(),
                             [&](std::uint32_t b) { return b < comp.codomain_size; });
    if (!typed) report.add("component-typing", {c.label(x)});
  }
  if (!report.ok()) return report;
  for (auto u : c.morphisms()) {
    const auto from = source.action_source(u);
    const auto to = source.action_target(u);
    // target(u) . alpha_from == alpha_to . source(u)
    if (compose(target.on(u), alpha.at(from)) != compose(alpha.at(to), source.on(u)))
      report.add("naturality", {c.label(u)});
  }
  return report;
}

namespace {

/// Backtracking search over the flattened variables (x, a), a in F(x).
class NatEnumerator {
 public:
  NatEnumerator(const SetValuedFunctor& source, const SetValuedFunctor& target, Budget& budget)
      : source_(source), target_(target), budget_(budget) {
    const auto& c = source.base();
    for (auto x : c.objects()) {
      offset_.push_back(static_cast<std::uint32_t>(owner_.size()));
      owner_.insert(owner_.end(), source.at(x).size(), x.index);
    }
    const auto vars = owner_.size();
    edges_.resize(vars);
    for (auto u : c.morphisms()) {
      if (c.is_identity(u)) continue;
      const auto from = source.action_source(u);
      const auto to = source.action_target(u);
      for (std::uint32_t a = 0; a < source.at(from).size(); ++a) {
        const auto v = offset_[from.index] + a;
        const auto w = offset_[to.index] + source.on(u)(a);
        edges_[v].push_back({w, u.index});
      }
    }
    value_.assign(vars, unassigned);
  }

  std::vector<NatTransformation> run() {
    search(0);
    return std::move(results_);
  }

 private:
  static constexpr std::uint32_t unassigned = UINT32_MAX;

  struct Edge {
    std::uint32_t to;
    std::uint32_t morphism;
  };

  bool assign(std::uint32_t v, std::uint32_t val) {
    if (value_[v] != unassigned) return value_[v] == val;
    value_[v] = val;
    trail_.push_back(v);
    pending_.push_back(v);
    return true;
  }

  // Every constraint reads alpha(to) = G(u)(alpha(from)); it is enforced the
  // moment its `from` variable receives a value.
  bool propagate() {
    while (!pending_.empty()) {
      const auto v = pending_.back();
      pending_.pop_back();
      for (const auto& e : edges_[v]) {
        const auto forced = target_.on(MorphismId{e.morphism})(value_[v]);
        if (!assign(e.to, forced)) {
          pending_.clear();
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = unassigned;
      trail_.pop_back();
    }
  }

  void search(std::uint32_t next) {
    while (next < value_.size() && value_[next] != unassigned) ++next;
    if (next == value_.size()) {
      emit();
      return;
    }
    const auto choices = target_.at(ObjectId{owner_[next]}).size();
    for (std::uint32_t val = 0; val < choices; ++val) {
      budget_.charge();
      const auto mark = trail_.size();
      if (assign(next, val) && propagate()) search(next + 1);
      undo(mark);
    }
  }

  void emit() {
    NatTransformation t;
    const auto& c = source_.base();
    t.components.reserve(c.object_count());
    for (auto x : c.objects()) {
      SetFunction comp;
      comp.codomain_size = target_.at(x).size();
      const auto n = source_.at(x).size();
      comp.image.assign(value_.begin() + offset_[x.index], value_.begin() + offset_[x.index] + n);
      t.components.push_back(std::move(comp));
    }
    results_.push_back(std::move(t));
  }

  const SetValuedFunctor& source_;
  const SetValuedFunctor& target_;
  Budget& budget_;
  std::vector<std::uint32_t> offset_;
  std::vector<std::uint32_t> owner_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<std::uint32_t> value_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::uint32_t> pending_;
  std::vector<NatTransformation> results_;
};

}  // namespace

std::vector<NatTransformation> enumerate_nat(const SetValuedFunctor& source, const SetValuedFunctor& target,
                                             Budget& budget) {
  require_parallel(source, target, "enumerate_nat");
  return NatEnumerator(source, target, budget).run();
}

std::vector<NatTransformation> enumerate_nat(const SetValuedFunctor& source, const SetValuedFunctor& target) {
  Budget budget;
  return enumerate_nat(source, target, budget);
}

NatTransformation identity_transformation(const SetValuedFunctor& f) {
  NatTransformation t;
  for (const auto& s : f.sets()) t.components.push_back(SetFunction::identity(s.size()));
  return t;
}

NatTransformation compose(const NatTransformation& beta, const NatTransformation& alpha) {
  if (beta.components.size() != alpha.components.size())
    throw std::invalid_argument("compose: transformations over different bases");
  NatTransformation t;
  for (std::size_t i = 0; i < alpha.components.size(); ++i)
    t.components.push_back(compose(beta.components[i], alpha.components[i]));
  return t;
}

bool componentwise_bijective(const NatTransformation& alpha) {
  return std::all_of(alpha.components.begin(), alpha.components.end(),
                     [](const SetFunction& f) { return f.bijective(); });
}

NatTransformation inverse(const NatTransformation& alpha) {
  NatTransformation t;
  for (const auto& c : alpha.components) t.components.push_back(c.inverse());
  return t;
}

namespace {

/// Labels of hom(a, x) as a FinSet, plus a morphism -> element lookup.
FinSet hom_as_set(const FinCategory& c, ObjectId a, ObjectId x) {
  std::vector<std::string> labels;
  for (auto f : c.hom(a, x)) labels.push_back(c.label(f));
  return FinSet(std::move(labels));
}

std::uint32_t position_in_hom(const FinCategory& c, ObjectId a, ObjectId x, MorphismId f) {
  auto h = c.hom(a, x);
  auto it = std::find(h.begin(), h.end(), f);
  if (it == h.end()) throw std::logic_error("morphism not in its hom-set");
  return static_cast<std::uint32_t>(it - h.begin());
}

/// The map hom(a, x) -> hom(b, y) given by g |-> op(g) for a function op on
/// morphisms.
template <typename Op>
SetFunction hom_map(const FinCategory& c, ObjectId a, ObjectId x, ObjectId b, ObjectId y, Op op) {
  SetFunction fn;
  fn.codomain_size = c.hom(b, y).size();
  for (auto g : c.hom(a, x)) fn.image.push_back(position_in_hom(c, b, y, op(g)));
  return fn;
}

}  // namespace

SetValuedFunctor yoneda(const std::shared_ptr<const FinCategory>& cp, ObjectId x) {
  const auto& c = *cp;
  if (x.index >= c.object_count()) throw UnknownIdError("yoneda: unknown object");
  std::vector<FinSet> sets;
  for (auto a : c.objects()) sets.push_back(hom_as_set(c, a, x));
  std::vector<SetFunction> actions;
  // u: a' -> a acts hom(a, x) -> hom(a', x) by g |-> g . u
  for (auto u : c.morphisms())
    actions.push_back(hom_map(c, c.tgt(u), x, c.src(u), x, [&](MorphismId g) { return c.compose(g, u); }));
  return SetValuedFunctor(cp, Variance::contravariant, std::move(sets), std::move(actions));
}

SetValuedFunctor coyoneda(const std::shared_ptr<const FinCategory>& cp, ObjectId x) {
  const auto& c = *cp;
  if (x.index >= c.object_count()) throw UnknownIdError("coyoneda: unknown object");
  std::vector<FinSet> sets;
  for (auto a : c.objects()) sets.push_back(hom_as_set(c, x, a));
  std::vector<SetFunction> actions;
  // u: a -> b acts hom(x, a) -> hom(x, b) by g |-> u . g
  for (auto u : c.morphisms())
    actions.push_back(hom_map(c, x, c.src(u), x, c.tgt(u), [&](MorphismId g) { return c.compose(u, g); }));
  return SetValuedFunctor(cp, Variance::covariant, std::move(sets), std::move(actions));
}

NatTransformation yoneda_on_morphism(const FinCategory& c, MorphismId u) {
  NatTransformation t;
  for (auto a : c.objects())
    t.components.push_back(hom_map(c, a, c.src(u), a, c.tgt(u), [&](MorphismId g) { return c.compose(u, g); }));
  return t;
}

NatTransformation coyoneda_on_morphism(const FinCategory& c, MorphismId u) {
  NatTransformation t;
  for (auto a : c.objects())
    t.components.push_back(hom_map(c, c.tgt(u), a, c.src(u), a, [&](MorphismId g) { return c.compose(g, u); }));
  return t;
}

bool Bijection::round_trips() const {
  return compose(backward, forward) == SetFunction::identity(forward.domain_size()) &&
         compose(forward, backward) == SetFunction::identity(backward.domain_size());
}

YonedaBijection yoneda_lemma_bijection(const SetValuedFunctor& f, ObjectId x, Budget& budget) {
  if (f.variance() != Variance::contravariant)
    throw std::invalid_argument("yoneda_lemma_bijection: functor must be a presheaf");
  const auto& c = f.base();
  auto rep = yoneda(f.base_ptr(), x);
  auto transformations = enumerate_nat(rep, f, budget);
  const TransformationIndex index(transformations);

  const auto id_x = position_in_hom(c, x, x, c.identity(x));
  Bijection bij;
  bij.forward.codomain_size = f.at(x).size();
  for (const auto& alpha : transformations) bij.forward.image.push_back(alpha.at(x)(id_x));

  bij.backward.codomain_size = transformations.size();
  for (std::uint32_t a = 0; a < f.at(x).size(); ++a) {
    NatTransformation t;
    for (auto b : c.objects()) {
      SetFunction comp;
      comp.codomain_size = f.at(b).size();
      // g: b -> x goes to F(g)(a) in F(b)
      for (auto g : c.hom(b, x)) comp.image.push_back(f.on(g)(a));
      t.components.push_back(std::move(comp));
    }
    auto pos = index.find(t);
    if (!pos) throw std::logic_error("yoneda_lemma_bijection: constructed transformation is not natural");
    bij.backward.image.push_back(*pos);
  }
  return {std::move(rep), std::move(transformations), std::move(bij)};
}

SetValuedFunctor pointwise_sum(const SetValuedFunctor& f, const SetValuedFunctor& g) {
  require_parallel(f, g, "pointwise_sum");
  const auto& c = f.base();
  std::vector<FinSet> sets;
  for (auto x : c.objects()) {
    std::vector<std::string> labels;
    for (const auto& e : f.at(x).elements()) labels.push_back("L." + e);
    for (const auto& e : g.at(x).elements()) labels.push_back("R." + e);
    sets.emplace_back(std::move(labels));
  }
  std::vector<SetFunction> actions;
  for (auto u : c.morphisms()) {
    const auto& fu = f.on(u);
    const auto& gu = g.on(u);
    SetFunction act;
    act.codomain_size = fu.codomain_size + gu.codomain_size;
    for (auto b : fu.image) act.image.push_back(b);
    for (auto b : gu.image) act.image.push_back(static_cast<std::uint32_t>(fu.codomain_size + b));
    actions.push_back(std::move(act));
  }
  return SetValuedFunctor(f.base_ptr(), f.variance(), std::move(sets), std::move(actions));
}

std::optional<NatTransformation> iso_check(const SetValuedFunctor& f, const SetValuedFunctor& g, Budget& budget) {
  require_parallel(f, g, "iso_check");
  for (auto x : f.base().objects())
    if (f.at(x).size() != g.at(x).size()) return std::nullopt;
  for (auto& alpha : enumerate_nat(f, g, budget)) {
    if (!componentwise_bijective(alpha)) continue;
    if (is_natural(g, f, inverse(alpha))) return std::move(alpha);
  }
  return std::nullopt;
}

}  // namespace isbell
