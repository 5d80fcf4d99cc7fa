#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <cmath>
#include <map>
#include <sstream>
#include <ostream>

#include <CLI11.hpp>

#include "io.hpp"
#include "isbell/isbell.hpp"
#include "isbell/tightspan.hpp"

namespace isbell::cli {

namespace {

namespace ts = isbell::tightspan;

struct Outcome {
  Json results = Json::object();
  bool violated = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::string& input(const RunConfig& cfg, std::size_t i) {
  if (i >= cfg.inputs.size()) throw UsageError(cfg.subcommand + ": missing input argument " + std::to_string(i + 1));
  return cfg.inputs[i];
}

ts::FiniteMetricSpace load_metric(InputLoader& loader, const std::string& path, double tol) {
  auto file = loader.metric_description(path);
  try {
    return ts::FiniteMetricSpace::validate(file.points, file.d, tol);
  } catch (const StructuralError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json array_of(const std::vector<std::string>& v) { return Json(v); }

Json size_map(const SetValuedFunctor& f) {
  Json j = Json::object();
  for (auto x : f.base().objects()) j[f.base().label(x)] = f.at(x).size();
  return j;
}

Outcome validate_cat(const RunConfig& cfg, InputLoader& loader, Budget&) {
  const auto raw = loader.category_description(input(cfg, 0));
  ValidationReport report;
  try {
    report = validate_category(raw);
  } catch (const StructuralError& e) {
    throw ParseError(input(cfg, 0) + ": " + e.what());
  }
  Outcome o;
  o.results["name"] = raw.name;
  o.results["objects"] = raw.objects.size();
  o.results["morphisms"] = raw.morphisms.size();
  o.results["ok"] = report.ok();
  o.results["violations"] = to_json(report);
  o.violated = !report.ok();
  return o;
}

Outcome validate_fun(const RunConfig& cfg, InputLoader& loader, Budget&) {
  const auto& path = input(cfg, 0);
  auto file = loader.functor_description(path);
  Outcome o;
  o.results["name"] = file.name;
  o.results["category"] = file.category->name();
  o.results["variance"] = variance_name(file.description.variance);
  try {
    auto f = validate_functor(file.category, file.description);
    o.results["ok"] = true;
    o.results["sizes"] = size_map(f);
    o.results["violations"] = Json::array();
  } catch (const StructuralError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const LawViolationError& e) {
    o.results["ok"] = false;
    o.results["violations"] = to_json(e.report());
    o.violated = true;
  }
  return o;
}

Outcome hom(const RunConfig& cfg, InputLoader& loader, Budget&) {
  auto c = loader.category(input(cfg, 0));
  Outcome o;
  auto entry = [&](ObjectId a, ObjectId x) {
    Json j;
    j["from"] = c->label(a);
    j["to"] = c->label(x);
    j["morphisms"] = Json::array();
    for (auto f : hom_set(*c, a, x)) j["morphisms"].push_back(c->label(f));
    return j;
  };
  if (cfg.inputs.size() >= 3) {
    o.results["hom"] = Json::array({entry(c->object(cfg.inputs[1]), c->object(cfg.inputs[2]))});
  } else if (cfg.inputs.size() == 1) {
    o.results["hom"] = Json::array();
    for (auto a : c->objects())
      for (auto x : c->objects()) o.results["hom"].push_back(entry(a, x));
  } else {
    throw UsageError("hom: expected CATEGORY [FROM TO]");
  }
  return o;
}

Outcome nat(const RunConfig& cfg, InputLoader& loader, Budget& budget) {
  auto f = loader.functor(input(cfg, 0));
  auto g = loader.functor(input(cfg, 1));
  if (f.variance() != g.variance()) throw UsageError("nat: functors have different variance");
  if (!same_base(f, g)) throw UsageError("nat: functors are over different categories");
  const auto list = enumerate_nat(f, g, budget);
  Outcome o;
  o.results["variance"] = variance_name(f.variance());
  o.results["count"] = list.size();
  o.results["transformations"] = Json::array();
  bool all_natural = true;
  for (const auto& alpha : list) {
    all_natural = all_natural && is_natural(f, g, alpha);
    o.results["transformations"].push_back(to_json(f, g, alpha));
  }
  o.results["all_natural"] = all_natural;
  o.violated = !all_natural;
  return o;
}

Outcome yoneda_cmd(const RunConfig& cfg, InputLoader& loader, Budget&) {
  auto c = loader.category(input(cfg, 0));
  const auto x = c->object(input(cfg, 1));
  auto f = cfg.co ? coyoneda(c, x) : yoneda(c, x);
  Outcome o;
  o.results["embedding"] = cfg.co ? "coyoneda" : "yoneda";
  o.results["object"] = c->label(x);
  o.results["functor"] = to_json(f);
  o.results["laws_ok"] = check_functor_laws(f).ok();
  return o;
}

Outcome yoneda_check(const RunConfig& cfg, InputLoader& loader, Budget& budget) {
  auto f = loader.functor(input(cfg, 0), Variance::contravariant);
  Outcome o;
  o.results["objects"] = Json::array();
  std::vector<ObjectId> targets;
  if (cfg.inputs.size() > 1) {
    for (std::size_t i = 1; i < cfg.inputs.size(); ++i) targets.push_back(f.base().object(cfg.inputs[i]));
  } else {
    targets = f.base().objects();
  }
  bool all = true;
  for (auto x : targets) {
    const auto yb = yoneda_lemma_bijection(f, x, budget);
    const bool equal = yb.transformations.size() == f.at(x).size();
    const bool trips = yb.bijection.round_trips();
    Json entry;
    entry["object"] = f.base().label(x);
    entry["nat_count"] = yb.transformations.size();
    entry["value_count"] = f.at(x).size();
    entry["round_trips"] = trips;
    Json forward = Json::object();
    for (std::uint32_t i = 0; i < yb.transformations.size(); ++i)
      forward["t" + std::to_string(i)] = f.at(x).label(yb.bijection.forward(i));
    entry["forward"] = std::move(forward);
    o.results["objects"].push_back(std::move(entry));
    all = all && equal && trips;
  }
  o.results["holds"] = all;
  o.violated = !all;
  return o;
}

Outcome sum(const RunConfig& cfg, InputLoader& loader, Budget&) {
  auto f = loader.functor(input(cfg, 0));
  auto g = loader.functor(input(cfg, 1));
  if (f.variance() != g.variance()) throw UsageError("sum: functors have different variance");
  if (!same_base(f, g)) throw UsageError("sum: functors are over different categories");
  auto s = pointwise_sum(f, g);
  const auto laws = check_functor_laws(s);
  Outcome o;
  o.results["functor"] = to_json(s);
  o.results["laws_ok"] = laws.ok();
  o.results["violations"] = to_json(laws);
  o.violated = !laws.ok();
  return o;
}

Json tables_json(const ConjugatePair& pair) {
  const auto& f = pair.original;
  const auto& c = f.base();
  Json tables = Json::object();
  for (auto x : c.objects()) {
    const auto rep = f.variance() == Variance::contravariant ? yoneda(f.base_ptr(), x) : coyoneda(f.base_ptr(), x);
    Json t = Json::object();
    for (std::uint32_t k = 0; k < pair.evaluation_tables[x.index].size(); ++k)
      t[pair.conjugate.at(x).label(k)] = to_json(f, rep, pair.evaluation_tables[x.index][k]);
    tables[c.label(x)] = std::move(t);
  }
  return tables;
}

Outcome conjugate_cmd(const RunConfig& cfg, InputLoader& loader, Budget& budget) {
  auto f = loader.functor(input(cfg, 0));
  const auto pair = conjugate(f, budget);
  const auto laws = check_functor_laws(pair.conjugate);
  Outcome o;
  o.results["original_variance"] = variance_name(f.variance());
  o.results["conjugate"] = to_json(pair.conjugate);
  o.results["evaluation_tables"] = tables_json(pair);
  o.results["laws_ok"] = laws.ok();
  o.results["violations"] = to_json(laws);
  o.violated = !laws.ok();
  return o;
}

Outcome adjunction_check(const RunConfig& cfg, InputLoader& loader, Budget& budget) {
  auto f = loader.functor(input(cfg, 0), Variance::contravariant);
  auto g = loader.functor(input(cfg, 1), Variance::covariant);
  if (!same_base(f, g)) throw UsageError("adjunction-check: functors are over different categories");
  const auto w = adjunction_transpose(f, g, budget);
  Outcome o;
  o.results["left_homset_size"] = w.left_homset.size();
  o.results["right_homset_size"] = w.right_homset.size();
  o.results["cardinalities_equal"] = w.left_homset.size() == w.right_homset.size();
  o.results["round_trip"] = w.holds();
  Json pairs = Json::array();
  if (w.holds())
    for (std::uint32_t i = 0; i < w.left_homset.size(); ++i) pairs.push_back({i, w.transpose.forward(i)});
  o.results["transpose"] = std::move(pairs);
  o.results["violations"] = to_json(w.report);
  o.violated = !w.holds();
  return o;
}

Outcome unit_cmd(const RunConfig& cfg, InputLoader& loader, Budget& budget) {
  auto f = loader.functor(input(cfg, 0), Variance::contravariant);
  const auto u = unit(f, budget);
  const auto natural = check_naturality(f, u.double_.conjugate, u.unit);
  Outcome o;
  o.results["single_conjugate_sizes"] = size_map(u.single.conjugate);
  o.results["double_conjugate"] = to_json(u.double_.conjugate);
  o.results["unit"] = to_json(f, u.double_.conjugate, u.unit);
  o.results["natural"] = natural.ok();
  o.results["injective"] = u.injective();
  o.results["surjective"] = u.surjective();
  o.results["isomorphism"] = u.isomorphism();
  o.results["violations"] = to_json(natural);
  o.violated = !natural.ok();
  return o;
}

Outcome reflexive_scan_cmd(const RunConfig& cfg, InputLoader& loader, Budget& budget) {
  auto c = loader.category(input(cfg, 0));
  const auto entries = reflexive_scan(c, cfg.max_set_size, budget);
  Outcome o;
  o.results["max_set_size"] = cfg.max_set_size;
  o.results["functors"] = entries.size();
  std::size_t reflexive = 0;
  Json list = Json::array();
  for (const auto& e : entries) {
    reflexive += e.reflexive ? 1 : 0;
    Json j;
    j["functor"] = to_json(e.functor);
    j["reflexive"] = e.reflexive;
    j["unit_injective"] = e.injective;
    j["unit_surjective"] = e.surjective;
    list.push_back(std::move(j));
  }
  o.results["reflexive"] = reflexive;
  o.results["entries"] = std::move(list);
  return o;
}

Outcome metric_validate(const RunConfig& cfg, InputLoader& loader, Budget&) {
  const auto& path = input(cfg, 0);
  auto file = loader.metric_description(path);
  ValidationReport report;
  try {
    report = ts::check_metric(file.points, file.d, cfg.tol);
  } catch (const StructuralError& e) {
    throw ParseError(path + ": " + e.what());
  }
  Outcome o;
  o.results["name"] = file.name;
  o.results["points"] = array_of(file.points);
  o.results["ok"] = report.ok();
  o.results["violations"] = to_json(report);
  o.violated = !report.ok();
  return o;
}

Json defect_json(const ts::Defect& d) {
  return {{"slack", d.slack}, {"gap", d.gap}, {"defect", d.value()}, {"admissible", d.admissible}};
}

Outcome tripod_cmd(const RunConfig& cfg, InputLoader& loader, Budget&) {
  const auto m = load_metric(loader, input(cfg, 0), cfg.tol);
  if (m.size() != 3) throw UsageError("tripod: metric must have exactly 3 points");
  const auto t = ts::tripod(m);
  const auto d = ts::extremality_defect(m, t.hub, cfg.tol);
  Outcome o;
  o.results["legs"] = to_json(m, t.hub);
  o.results["hub_defect"] = defect_json(d);
  o.violated = d.value() > cfg.tol;
  return o;
}

Outcome project_cmd(const RunConfig& cfg, InputLoader& loader, Budget&) {
  const auto m = load_metric(loader, input(cfg, 0), cfg.tol);
  if (cfg.values.size() != m.size())
    throw UsageError("project: --values needs " + std::to_string(m.size()) + " comma-separated numbers");
  const ts::DistanceFunction f{cfg.values};
  const auto before = ts::extremality_defect(m, f, cfg.tol);
  Outcome o;
  o.results["input"] = to_json(m, f);
  o.results["input_defect"] = defect_json(before);
  if (!before.admissible) {
    std::size_t wx = 0, wy = 0;
    double worst = -INFINITY;
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = 0; y < m.size(); ++y)
        if (m(x, y) - f[x] - f[y] > worst) {
          worst = m(x, y) - f[x] - f[y];
          wx = x;
          wy = y;
        }
    o.results["converged"] = false;
    o.results["violations"] = Json::array(
        {{{"law", "admissibility"}, {"witness", Json::array({m.label(wx), m.label(wy)})}}});
    o.violated = true;
    return o;
  }
  try {
    const auto p = ts::extremal_project(m, f, cfg.tol);
    o.results["converged"] = true;
    o.results["iterations"] = p.iterations;
    o.results["output"] = to_json(m, p.result);
    o.results["output_defect"] = defect_json(p.defect);
    o.results["violations"] = Json::array();
  } catch (const ts::ProjectionError& e) {
    o.results["converged"] = false;
    o.results["iterations"] = e.iterations();
    o.results["violations"] = Json::array(
        {{{"law", "convergence"}, {"witness", Json::array({std::to_string(e.final_defect())})}}});
    o.violated = true;
  }
  return o;
}

Outcome geodesic_check(const RunConfig& cfg, InputLoader& loader, Budget&) {
  const auto m = load_metric(loader, input(cfg, 0), cfg.tol);
  Outcome o;
  // Embedded points first, then the seeded sample.
  std::vector<ts::DistanceFunction> functions;
  for (std::size_t x = 0; x < m.size(); ++x) functions.push_back(ts::kuratowski_embed(m, x));
  auto sample = ts::sample_tight_span(m, cfg.count, cfg.seed, cfg.tol);
  functions.insert(functions.end(), sample.begin(), sample.end());

  bool isometric = true;
  Json violations = Json::array();
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (ts::tight_span_distance(m, functions[x], functions[y]) != m(x, y)) {
        isometric = false;
        violations.push_back({{"law", "embedding-isometry"}, {"witness", Json::array({m.label(x), m.label(y)})}});
      }

  double max_residual = 0;
  std::size_t checks = 0;
  for (std::size_t k = 0; k < functions.size(); ++k) {
    for (std::size_t x = 0; x < m.size(); ++x) {
      ++checks;
      try {
        const auto w = ts::geodesic_witness(m, functions[k], x);
        max_residual = std::max(max_residual, w.residual);
      } catch (const ts::NoWitnessError& e) {
        max_residual = std::max(max_residual, e.best_residual());
        violations.push_back({{"law", "geodesic-witness"},
                              {"witness", Json::array({std::to_string(k), m.label(x), std::to_string(e.best_residual())})}});
      }
    }
  }
  o.results["embedded"] = m.size();
  o.results["sampled"] = sample.size();
  o.results["checks"] = checks;
  o.results["max_residual"] = max_residual;
  o.results["witness_tolerance"] = ts::witness_tolerance;
  o.results["isometric_embedding"] = isometric;
  o.results["holds"] = violations.empty();
  o.results["violations"] = std::move(violations);
  o.violated = !o.results["holds"].get<bool>();
  return o;
}

Outcome sample_span(const RunConfig& cfg, InputLoader& loader, Budget&) {
  const auto m = load_metric(loader, input(cfg, 0), cfg.tol);
  const auto sample = ts::sample_tight_span(m, cfg.count, cfg.seed, cfg.tol);
  Outcome o;
  o.results["count"] = sample.size();
  Json list = Json::array();
  double worst = 0;
  for (const auto& f : sample) {
    const auto d = ts::extremality_defect(m, f, cfg.tol);
    worst = std::max(worst, d.value());
    list.push_back({{"values", to_json(m, f)}, {"defect", d.value()}});
  }
  o.results["max_defect"] = worst;
  o.results["samples"] = std::move(list);
  o.violated = worst > cfg.tol;
  return o;
}

using Handler = std::function<Outcome(const RunConfig&, InputLoader&, Budget&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"validate-cat", validate_cat},     {"validate-fun", validate_fun},
      {"hom", hom},                       {"nat", nat},
      {"yoneda", yoneda_cmd},             {"yoneda-check", yoneda_check},
      {"sum", sum},                       {"conjugate", conjugate_cmd},
      {"adjunction-check", adjunction_check}, {"unit", unit_cmd},
      {"reflexive-scan", reflexive_scan_cmd}, {"metric-validate", metric_validate},
      {"tripod", tripod_cmd},             {"project", project_cmd},
      {"geodesic-check", geodesic_check}, {"sample-span", sample_span},
  };
  return table;
}

struct SubcommandInfo {
  const char* name;
  const char* help;
  const char* inputs;
};

constexpr SubcommandInfo subcommands[] = {
    {"validate-cat", "Check the category axioms of a category file", "CATEGORY"},
    {"validate-fun", "Check the functor laws of a functor file", "FUNCTOR"},
    {"hom", "List hom-sets", "CATEGORY [FROM TO]"},
    {"nat", "Enumerate natural transformations F => G", "F G"},
    {"yoneda", "Print the representable y(X) (or z(X) with --co)", "CATEGORY OBJECT"},
    {"yoneda-check", "Verify nat(y(X), F) ~ F(X) for a presheaf", "PRESHEAF [OBJECT...]"},
    {"sum", "Pointwise disjoint union of two functors", "F G"},
    {"conjugate", "Isbell conjugate of a presheaf or copresheaf", "FUNCTOR"},
    {"adjunction-check", "Verify nat(G, F*) ~ nat(F, G*) through the transpose", "PRESHEAF COPRESHEAF"},
    {"unit", "The unit F => F** and its isomorphism verdict", "PRESHEAF"},
    {"reflexive-scan", "Unit verdicts for every small presheaf", "CATEGORY"},
    {"metric-validate", "Check the metric axioms", "METRIC"},
    {"tripod", "Tight span of a 3-point metric", "METRIC"},
    {"project", "Project a distance function onto the tight span", "METRIC"},
    {"geodesic-check", "Verify geodesic witnesses on embedded and sampled tight-span points", "METRIC"},
    {"sample-span", "Seeded sample of tight-span points", "METRIC"},
};

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--values: '" + item + "' is not a number");
    }
  }
  return out;
}

void emit(const RunConfig& cfg, const Json& report, std::ostream& out) {
  const auto text = cfg.format == OutputFormat::structured ? report.dump(2) + "\n" : render_text(report);
  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) throw UsageError("--output: cannot write '" + *cfg.output + "'");
    file << text;
  } else {
    out << text;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "text";
  std::string values;

  CLI::App app{"Finite categories, presheaves, Isbell conjugation and tight spans"};
  app.require_subcommand(1);
  app.add_option("--budget", cfg.budget, "Node-expansion cap for searches")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Validation tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for sampling");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--output", cfg.output, "Write the report to PATH");
  app.add_flag("--timing", cfg.timing, "Include wall-clock timing in the report");

  for (const auto& info : subcommands) {
    auto* sub = app.add_subcommand(info.name, info.help);
    sub->fallthrough();
    sub->add_option("inputs", cfg.inputs, info.inputs)->required();
    const std::string name = info.name;
    if (name == "geodesic-check" || name == "sample-span")
      sub->add_option("--count", cfg.count, "Number of sampled points");
    if (name == "reflexive-scan") sub->add_option("--max-set-size", cfg.max_set_size, "Largest value set");
    if (name == "project") sub->add_option("--values", values, "Comma-separated function values")->required();
    if (name == "yoneda") sub->add_flag("--co", cfg.co, "Co-Yoneda embedding z(X) instead");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return static_cast<int>(ExitCode::usage);
  }
  cfg.format = format == "structured" ? OutputFormat::structured : OutputFormat::text;
  cfg.subcommand = app.get_subcommands().front()->get_name();

  Json report;
  report["format"] = format_version;
  report["subcommand"] = cfg.subcommand;
  report["config"] = {{"budget", cfg.budget}, {"tol", cfg.tol}, {"seed", cfg.seed}};

  InputLoader loader;
  Budget budget(cfg.budget);
  ExitCode code = ExitCode::ok;
  const auto start = std::chrono::steady_clock::now();
  Json results;
  std::string status;
  try {
    if (!values.empty()) cfg.values = parse_values(values);
    auto outcome = handlers().at(cfg.subcommand)(cfg, loader, budget);
    results = std::move(outcome.results);
    status = outcome.violated ? "violated" : "ok";
    code = outcome.violated ? ExitCode::violated : ExitCode::ok;
  } catch (const LawViolationError& e) {
    status = "violated";
    results = {{"error", e.what()}, {"violations", to_json(e.report())}};
    code = ExitCode::violated;
  } catch (const BudgetExceeded& e) {
    status = "error";
    results = {{"error", e.what()}, {"budget_limit", e.limit()}};
    err << "error: " << e.what() << '\n';
    code = ExitCode::usage;
  } catch (const ParseError& e) {
    status = "error";
    results = {{"error", e.what()}};
    err << "error: " << e.what() << '\n';
    code = ExitCode::usage;
  } catch (const UsageError& e) {
    status = "error";
    results = {{"error", e.what()}};
    err << "error: " << e.what() << '\n';
    code = ExitCode::usage;
  } catch (const UnknownIdError& e) {
    status = "error";
    results = {{"error", e.what()}};
    err << "error: " << e.what() << '\n';
    code = ExitCode::usage;
  }

  Json inputs = Json::array();
  for (const auto& rec : loader.inputs()) inputs.push_back({{"path", rec.path}, {"digest", rec.digest}});
  report["inputs"] = std::move(inputs);
  report["status"] = status;
  report["results"] = std::move(results);
  report["budget"] = {{"limit", budget.limit()}, {"used", budget.used()}};
  if (cfg.timing) {
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing"] = {{"wall_ms", elapsed}};
  }
  try {
    emit(cfg, report, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::usage);
  }
  return static_cast<int>(code);
}

}  // namespace isbell::cli
