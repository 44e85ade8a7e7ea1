#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "eqbox/error.hpp"
#include "eqbox/experiments.hpp"
#include "eqbox/generators.hpp"
#include "eqbox/io.hpp"
#include "eqbox/report.hpp"

using namespace eqbox;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("eqbox_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(EQBOX_CLI) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Io, SpaceRoundTrip) {
  const MMSpace s = gen_cycle(5, CycleMetric::Chord).space();
  const MMSpace t = space_from_json(space_to_json(s));
  EXPECT_EQ(t.labels(), s.labels());
  EXPECT_EQ(t.masses(), s.masses());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) EXPECT_EQ(t.dist(i, j), s.dist(i, j));
}

TEST(Io, ActionRoundTripAndBareSpace) {
  const MMAction a = gen_cycle(6);
  EXPECT_EQ(action_from_json(action_to_json(a)).elements(), a.elements());
  EXPECT_TRUE(action_from_json(space_to_json(a.space())).is_trivial());
}

TEST(Io, CouplingAndRelationRoundTrip) {
  const Coupling pi = Coupling::product({0.25, 0.75}, {0.5, 0.5});
  EXPECT_EQ(coupling_from_json(coupling_to_json(pi)).plan()(1, 0), pi(1, 0));
  const Relation r = Relation::from_pairs(2, 3, {{0, 2}, {1, 1}});
  EXPECT_EQ(relation_from_json(relation_to_json(r), 2, 3), r);
}

TEST(Io, ActionWithSpacePath) {
  const fs::path dir = scratch_dir("io");
  write_text_file(dir / "sq.json", space_to_json(gen_cycle(4).space()).dump());
  write_text_file(dir / "act.json", R"({"space": "sq.json", "generators": [[1, 2, 3, 0]]})");
  EXPECT_EQ(load_action(dir / "act.json").order(), 4u);
  EXPECT_THROW(load_action(dir / "missing.json"), Error);
  write_text_file(dir / "bad.json", "{not json");
  EXPECT_THROW(load_action(dir / "bad.json"), Error);
}

TEST(Generators, Cycle) {
  const MMAction one = gen_cycle(1);
  EXPECT_EQ(one.space().size(), 1u);
  EXPECT_TRUE(one.is_trivial());
  const MMAction c4 = gen_cycle(4);
  EXPECT_EQ(c4.space().dist(0, 1), 0.25);
  EXPECT_EQ(c4.space().dist(0, 2), 0.5);
  EXPECT_EQ(c4.order(), 4u);
  EXPECT_THROW(gen_cycle(0), Error);
}

TEST(Generators, LensExamples) {
  LensConfig cfg;
  cfg.js = {1, 2};
  cfg.n_of_j = {2, 1};
  cfg.a_of_j = {{1, 0.5}, {1}};
  cfg.samples = 1;
  cfg.seed = 3;
  EXPECT_TRUE(gen_lens_instance(cfg, 1).is_trivial());
  // one base point on the unit circle scaled by sqrt(2): antipodal pair
  const MMAction two = gen_lens_instance(cfg, 2);
  ASSERT_EQ(two.space().size(), 2u);
  EXPECT_NEAR(two.space().dist(0, 1), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_EQ(two.order(), 2u);
  cfg.samples = 200;
  EXPECT_THROW(gen_lens_instance(cfg, 2), Error);
}

TEST(Generators, LensOrbitsAreExact) {
  LensConfig cfg;
  cfg.samples = 3;
  for (std::size_t j : cfg.js) {
    const PointCloud c = gen_lens_cloud(cfg, j);
    EXPECT_EQ(c.action.order(), j);
    EXPECT_EQ(c.coords.size(), 3 * j);
  }
}

TEST(Generators, GaussianPreservesRadii) {
  LensConfig cfg;
  cfg.K = 6;
  cfg.truncation = 1;
  cfg.a = {1};
  cfg.samples = 4;
  const PointCloud g = gen_gaussian_cloud(cfg);
  for (std::size_t b = 0; b < 4; ++b)
    for (std::size_t r = 1; r < 6; ++r)
      EXPECT_NEAR(std::abs(g.coords[b * 6 + r][0]), std::abs(g.coords[b * 6][0]), 1e-12);
  cfg.K = 1;
  EXPECT_TRUE(gen_gaussian_instance(cfg).is_trivial());
}

TEST(Experiments, ConstantSequenceIsZero) {
  const std::vector<NamedAction> seq(2, NamedAction{"c4", gen_cycle(4)});
  const ExperimentReport rep = run_quotient_convergence(seq, {"c4", gen_cycle(4)});
  for (const auto& row : rep.rows)
    if (row.metric != "obsdiam" && row.metric != "concquot_margin") EXPECT_EQ(row.value, 0.0) << row.metric;
}

TEST(Experiments, QuotientBelowEquivariant) {
  std::vector<NamedAction> seq;
  for (std::size_t n : {2u, 4u, 6u}) seq.push_back({"c" + std::to_string(n), gen_cycle(n)});
  const ExperimentReport rep = run_quotient_convergence(seq, {"c8", gen_cycle(8)});
  std::map<std::string, std::map<std::string, double>> v;
  for (const auto& row : rep.rows) v[row.instance][row.metric] = row.value;
  for (const auto& [inst, m] : v) {
    EXPECT_LE(m.at("box_quot"), m.at("box_eq") + 1e-12) << inst;
    EXPECT_GE(m.at("concquot_margin"), 0.0) << inst;
  }
}

TEST(Experiments, LensDegenerateConfigIsZero) {
  // one complex coordinate, j = K and identical seeds would still differ in law;
  // a single sample of a single point is the degenerate case
  LensExperimentConfig cfg;
  cfg.lens.js = {1};
  cfg.lens.K = 1;
  cfg.lens.truncation = 1;
  cfg.lens.a = {1};
  cfg.sample_counts = {1};
  cfg.seeds = {1};
  const ExperimentReport rep = run_lens_experiment(cfg);
  for (const auto& row : rep.rows) {
    EXPECT_EQ(row.value, 0.0);
    EXPECT_EQ(row.kind, BoundKind::Upper);
  }
}

TEST(Experiments, LensRowsAreUpper) {
  LensExperimentConfig cfg;
  cfg.lens.js = {2};
  cfg.lens.K = 2;
  cfg.sample_counts = {1, 2};
  cfg.seeds = {1};
  const ExperimentReport rep = run_lens_experiment(cfg);
  EXPECT_EQ(rep.rows.size(), 4u);
  for (const auto& row : rep.rows) EXPECT_EQ(row.kind, BoundKind::Upper);
  EXPECT_EQ(lens_trend(rep, cfg).size(), 1u);
}

TEST(Experiments, PropernessProbe) {
  const std::vector<NamedAction> seq(2, NamedAction{"c4", gen_cycle(4)});
  const PropernessResult r = run_properness_probe(seq, gen_cycle(4).space());
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(r.groups[k], gen_cycle(4).elements());
    EXPECT_EQ(r.defects[k], 0.0);
  }
}

TEST(Report, CsvJsonSvg) {
  ExperimentReport empty{"t", {}};
  EXPECT_EQ(to_csv(empty), "instance,metric,value,kind,err,seed,wall_ms\n");
  ExperimentReport one{"t", {{"a", "box_eq", 0.5, BoundKind::Upper, 0.0, 7, 0.0}}};
  EXPECT_EQ(to_csv(one), "instance,metric,value,kind,err,seed,wall_ms\na,box_eq,0.5,UPPER,0,7,0\n");
  EXPECT_EQ(to_json(one)["rows"][0]["kind"], "UPPER");
  one.rows.push_back({"b", "box_eq", 0.25, BoundKind::Upper, 0.0, 7, 0.0});
  one.rows.push_back({"a", "defect", 0.0, BoundKind::Oracle, 0.0, 7, 0.0});
  const std::string svg = to_svg(one);
  std::size_t lines = 0;
  for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++lines;
  EXPECT_EQ(lines, 2u);
}

TEST(Report, EmitWritesFiles) {
  const fs::path dir = scratch_dir("report");
  ExperimentReport r{"t", {{"a", "m", 1.0, BoundKind::Lower, 0.0, 0, 0.0}}};
  const auto files = emit_report(r, {"csv", "json", "svg"}, dir / "out");
  EXPECT_EQ(files.size(), 3u);
  for (const auto& f : files) EXPECT_TRUE(fs::exists(f));
  EXPECT_EQ(slurp(dir / "out.csv"), to_csv(r));
}

TEST(Cli, DistanceAndExitCodes) {
  const fs::path dir = scratch_dir("cli");
  write_text_file(dir / "t1.json", R"({"dist": [[0, 1], [1, 0]], "mass": [0.5, 0.5]})");
  write_text_file(dir / "t2.json", R"({"dist": [[0, 2], [2, 0]], "mass": [0.5, 0.5]})");
  write_text_file(dir / "bad.json", R"({"dist": [[0, 1], [1, 0]], "mass": [1.0, 0.0]})");
  write_text_file(dir / "z2.json", R"({"space": "t1.json", "generators": [[1, 0]]})");
  const fs::path out = dir / "out.txt";

  ASSERT_EQ(run_cli("box " + (dir / "t1.json").string() + " " + (dir / "t2.json").string(), out), 0);
  Json j = Json::parse(slurp(out));
  EXPECT_EQ(j["value"], 0.5);
  EXPECT_EQ(j["kind"], "UPPER");
  EXPECT_TRUE(j.contains("witness_coupling"));
  EXPECT_TRUE(j.contains("certificates"));

  ASSERT_EQ(run_cli("box --eq --oracle --grid 0.125 " + (dir / "z2.json").string() + " " + (dir / "t1.json").string(),
                    out),
            0);
  j = Json::parse(slurp(out));
  EXPECT_EQ(j["value"], 1.0);
  EXPECT_EQ(j["kind"], "ORACLE");

  EXPECT_EQ(run_cli("validate " + (dir / "bad.json").string(), out), 2);
  EXPECT_NE(slurp(out).find("ZeroMass"), std::string::npos);
  EXPECT_EQ(run_cli("validate " + (dir / "z2.json").string(), out), 0);
  EXPECT_EQ(run_cli("box --oracle --grid 0.3 " + (dir / "t1.json").string() + " " + (dir / "t2.json").string(), out),
            2);

  write_text_file(dir / "c4.json", space_to_json(gen_cycle(4).space()).dump());
  EXPECT_EQ(run_cli("box --oracle " + (dir / "c4.json").string() + " " + (dir / "c4.json").string(), out), 3);
}

TEST(Cli, AutQuotientThickExperiment) {
  const fs::path dir = scratch_dir("cli2");
  write_text_file(dir / "c4.json", space_to_json(gen_cycle(4).space()).dump());
  const fs::path out = dir / "out.txt";
  ASSERT_EQ(run_cli("aut " + (dir / "c4.json").string(), out), 0);
  const MMAction aut = action_from_json(Json::parse(slurp(out)));
  EXPECT_EQ(aut.order(), 8u);
  write_text_file(dir / "c4z4.json", action_to_json(gen_cycle(4)).dump());
  ASSERT_EQ(run_cli("quotient " + (dir / "c4z4.json").string(), out), 0);
  EXPECT_EQ(Json::parse(slurp(out))["orbits"].size(), 1u);
  ASSERT_EQ(run_cli("thick " + (dir / "c4.json").string() + " -r 0.25 -v 0.5", out), 0);
  EXPECT_EQ(Json::parse(slurp(out))["points"].size(), 4u);

  write_text_file(dir / "q.json", R"({"sequence": [{"cycle": 4}, {"cycle": 6, "metric": "chord"}],
                                      "target": {"cycle": 8}, "kappa": 0.1})");
  ASSERT_EQ(run_cli("experiment quotient --config " + (dir / "q.json").string() + " --out " + (dir / "rep").string(),
                    out),
            0);
  EXPECT_TRUE(fs::exists(dir / "rep" / "quotient.csv"));
  EXPECT_TRUE(fs::exists(dir / "rep" / "quotient.svg"));
}
