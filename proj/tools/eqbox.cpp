#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqbox/boxdist.hpp"
#include "eqbox/error.hpp"
#include "eqbox/experiments.hpp"
#include "eqbox/generators.hpp"
#include "eqbox/group.hpp"
#include "eqbox/io.hpp"
#include "eqbox/obsdist.hpp"
#include "eqbox/report.hpp"
#include "eqbox/verify.hpp"

namespace fs = std::filesystem;
using namespace eqbox;

namespace {

struct DistanceArgs {
  std::string a, b;
  bool eq = false;
  bool oracle = false;
  double grid = 0.125;
  double lip_grid = 0.125;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultMwisBudget;
  bool heuristic = false;
};

Json certificate_json(const DPiCertificate& c, std::size_t g, std::size_t h) {
  return {{"g", g}, {"h", h}, {"value", c.value}, {"threshold", c.threshold}, {"exact", c.exact},
          {"subset", relation_to_json(c.subset)}};
}

Json certificates(const MMAction& a, const MMAction& b, const Coupling& pi, const DPiOptions& opts) {
  const BoxPiResult t = box_pi(a, b, pi, opts);
  Json out = Json::array();
  for (std::size_t g = 0; g < a.order(); ++g)
    for (std::size_t h = 0; h < b.order(); ++h) out.push_back(certificate_json(t.at(g, h), g, h));
  return out;
}

int run_distance(const DistanceArgs& args, bool dconc) {
  MMAction a = load_action(args.a), b = load_action(args.b);
  if (!args.eq) {
    a = trivial_action(a.space());
    b = trivial_action(b.space());
  }
  DPiOptions dpi{args.budget, args.heuristic};
  Json out;
  if (args.oracle) {
    if (dconc) {
      const DconcOracleResult r = dconc_oracle(a, b, args.grid, args.lip_grid);
      out = {{"value", r.value}, {"kind", "ORACLE"}, {"err", r.err}, {"lip_slack", r.lip_slack},
             {"witness_coupling", coupling_to_json(r.witness)}, {"certificates", Json::array()}};
    } else {
      const OracleResult r = box_oracle(a, b, args.grid, dpi);
      out = {{"value", r.value}, {"kind", "ORACLE"}, {"err", r.err},
             {"witness_coupling", coupling_to_json(r.witness)}, {"certificates", certificates(a, b, r.witness, dpi)}};
    }
  } else {
    SearchBudget budget;
    budget.seed = args.seed;
    budget.dpi = dpi;
    const SearchResult r = dconc ? dconc_upper(a, b, budget) : box_upper(a, b, budget);
    out = {{"value", r.value}, {"kind", "UPPER"}, {"err", 0.0}, {"exact_inner", r.exact_inner},
           {"witness_coupling", coupling_to_json(r.witness)},
           {"certificates", dconc ? Json::array() : certificates(a, b, r.witness, dpi)}};
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

// path string, {"file": path}, or {"cycle": n, "metric": "geodesic" | "chord"}
NamedAction load_entry(const Json& e, const fs::path& base) {
  if (e.is_string()) {
    const fs::path p = base / e.get<std::string>();
    return {p.stem().string(), load_action(p)};
  }
  if (!e.is_object()) throw Error(Errc::ParseError, "sequence entry must be a path or an object");
  if (e.contains("file")) {
    const fs::path p = base / e.at("file").get<std::string>();
    return {get_or<std::string>(e, "name", p.stem().string()), load_action(p)};
  }
  if (e.contains("cycle")) {
    const auto n = e.at("cycle").get<std::size_t>();
    const std::string metric = get_or<std::string>(e, "metric", "geodesic");
    if (metric != "geodesic" && metric != "chord") throw Error(Errc::ParseError, "unknown cycle metric '" + metric + "'");
    const auto m = metric == "chord" ? CycleMetric::Chord : CycleMetric::Geodesic;
    return {get_or<std::string>(e, "name", "cycle" + std::to_string(n)), gen_cycle(n, m)};
  }
  if (e.contains("space")) return {get_or<std::string>(e, "name", "action"), action_from_json(e, base)};
  throw Error(Errc::ParseError, "sequence entry needs 'file', 'cycle' or 'space'");
}

std::vector<NamedAction> load_sequence(const Json& cfg, const fs::path& base) {
  if (!cfg.contains("sequence") || !cfg.at("sequence").is_array())
    throw Error(Errc::ParseError, "config needs a 'sequence' array");
  std::vector<NamedAction> seq;
  for (const auto& e : cfg.at("sequence")) seq.push_back(load_entry(e, base));
  return seq;
}

SearchBudget budget_from(const Json& cfg) {
  SearchBudget b;
  b.seed = get_or<std::uint64_t>(cfg, "seed", 0);
  b.random_perms = get_or<std::size_t>(cfg, "random_perms", b.random_perms);
  b.random_vertices = get_or<std::size_t>(cfg, "random_vertices", b.random_vertices);
  b.max_evals = get_or<std::size_t>(cfg, "max_evals", b.max_evals);
  b.dpi.mwis_budget = get_or<std::size_t>(cfg, "mwis_budget", b.dpi.mwis_budget);
  b.dpi.heuristic = get_or<bool>(cfg, "heuristic", b.dpi.heuristic);
  return b;
}

LensExperimentConfig lens_from(const Json& cfg) {
  LensExperimentConfig c;
  c.lens.js = get_or(cfg, "js", c.lens.js);
  c.lens.n_of_j = get_or(cfg, "n_of_j", c.lens.n_of_j);
  c.lens.a = get_or(cfg, "a", c.lens.a);
  c.lens.a_of_j = get_or(cfg, "a_of_j", c.lens.a_of_j);
  c.lens.K = get_or(cfg, "K", c.lens.K);
  c.lens.truncation = get_or(cfg, "truncation", c.lens.truncation);
  c.lens.point_budget = get_or(cfg, "point_budget", c.lens.point_budget);
  c.sample_counts = get_or(cfg, "sample_counts", c.sample_counts);
  c.seeds = get_or(cfg, "seeds", c.seeds);
  c.budget = budget_from(cfg);
  if (!std::is_sorted(c.lens.js.begin(), c.lens.js.end())) throw Error(Errc::InvalidArgument, "js must be ascending");
  return c;
}

int run_experiment(const std::string& kind, const fs::path& config, const fs::path& out_dir) {
  const Json cfg = config.empty() ? Json::object() : read_json_file(config);
  const fs::path base = config.empty() ? fs::current_path() : config.parent_path();
  const auto formats = get_or<std::vector<std::string>>(cfg, "formats", {"csv", "json", "svg"});
  ExperimentReport rep;
  if (kind == "lens") {
    const LensExperimentConfig c = lens_from(cfg);
    rep = run_lens_experiment(c);
    for (const auto& t : lens_trend(rep, c))
      std::cerr << "seed " << t.seed << ": nonincreasing " << (t.nonincreasing ? "yes" : "no") << ", quotient below "
                << (t.quotient_below ? "yes" : "no") << '\n';
  } else if (kind == "quotient") {
    if (!cfg.contains("target")) throw Error(Errc::ParseError, "config needs a 'target'");
    QuotientOptions opts;
    opts.budget = budget_from(cfg);
    opts.kappa = get_or(cfg, "kappa", opts.kappa);
    rep = run_quotient_convergence(load_sequence(cfg, base), load_entry(cfg.at("target"), base), opts);
  } else if (kind == "properness") {
    if (!cfg.contains("limit")) throw Error(Errc::ParseError, "config needs a 'limit'");
    rep = run_properness_probe(load_sequence(cfg, base), load_entry(cfg.at("limit"), base).action.space(),
                               budget_from(cfg))
              .report;
  } else {
    throw Error(Errc::InvalidArgument, "unknown experiment '" + kind + "'");
  }
  fs::create_directories(out_dir);
  for (const auto& p : emit_report(rep, formats, out_dir / kind)) std::cout << p.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant box and concentration distances on finite mm-spaces"};
  app.require_subcommand(1);

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check a space or action file");
  validate->add_option("file", file, "space or action JSON")->required();

  auto* aut = app.add_subcommand("aut", "Automorphism group of a space");
  aut->add_option("file", file, "space JSON")->required();

  auto* quot = app.add_subcommand("quotient", "Quotient space of an action");
  quot->add_option("action", file, "action JSON")->required();

  double radius = 0.0, level = 0.0;
  auto* thick = app.add_subcommand("thick", "Thick part {x : mu(B_r(x)) > v}");
  thick->add_option("file", file, "space or action JSON")->required();
  thick->add_option("-r,--radius", radius, "ball radius")->required();
  thick->add_option("-v,--level", level, "mass threshold")->required();

  DistanceArgs dist;
  auto add_distance = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("A", dist.a, "first space or action")->required();
    c->add_option("B", dist.b, "second space or action")->required();
    c->add_flag("--eq", dist.eq, "use the group actions");
    c->add_flag("--oracle", dist.oracle, "grid brute force instead of coupling search");
    c->add_option("--grid", dist.grid, "coupling mass grid for --oracle")->capture_default_str();
    c->add_option("--lip-grid", dist.lip_grid, "Lipschitz value grid for dconc --oracle")->capture_default_str();
    c->add_option("--seed", dist.seed, "search seed")->capture_default_str();
    c->add_option("--budget", dist.budget, "exact MWIS support budget")->capture_default_str();
    c->add_flag("--heuristic", dist.heuristic, "heuristic MWIS past the budget");
    return c;
  };
  auto* box = add_distance("box", "Box distance");
  auto* dconc = add_distance("dconc", "Concentration distance");

  std::string kind, config, out = ".";
  auto* exp = app.add_subcommand("experiment", "Run an experiment and write reports");
  exp->add_option("kind", kind, "lens | quotient | properness")
      ->required()
      ->check(CLI::IsMember({"lens", "quotient", "properness"}));
  exp->add_option("--config", config, "experiment JSON");
  exp->add_option("--out", out, "output directory")->capture_default_str();

  std::string suite = "all";
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--suite", suite, "suite name or all")->capture_default_str();
  verify->add_option("--seed", seed, "seed for random cases")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const MMAction a = load_action(file);
      std::cout << Json{{"valid", true}, {"points", a.space().size()}, {"group_order", a.order()},
                        {"diameter", a.space().diameter()}}
                       .dump(2)
                << '\n';
    } else if (*aut) {
      std::cout << action_to_json(enumerate_aut(load_action(file).space())).dump(2) << '\n';
    } else if (*quot) {
      const Quotient q = quotient(load_action(file));
      std::cout << Json{{"space", space_to_json(q.space)}, {"orbits", q.orbits}}.dump(2) << '\n';
    } else if (*thick) {
      const MMAction a = load_action(file);
      const auto pts = thick_part(a.space(), radius, level);
      std::cout << Json{{"points", pts}, {"mass", subset_mass(a.space(), pts)}}.dump(2) << '\n';
    } else if (*box || *dconc) {
      return run_distance(dist, static_cast<bool>(*dconc));
    } else if (*exp) {
      return run_experiment(kind, config, out);
    } else if (*verify) {
      const auto results = run_suites(suite, seed);
      std::cout << render(results);
      for (const auto& r : results)
        if (!r.pass) return 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_budget_error(e.code()) ? 3 : 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
