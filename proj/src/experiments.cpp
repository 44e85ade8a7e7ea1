#include "eqbox/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "eqbox/obsdist.hpp"

namespace eqbox {

namespace {

ReportRow row(const std::string& inst, const std::string& metric, double value, BoundKind kind, double err,
              std::uint64_t seed) {
  return ReportRow{inst, metric, value, kind, err, seed, 0.0};
}

struct QuotientBounds {
  double box = 1.0;
  double dconc = 1.0;
};

// Plain bounds between quotients: the better of a fresh search and the
// pushforward of the equivariant witness.
QuotientBounds quotient_bounds(const MMAction& a, const MMAction& b, const Coupling& box_witness,
                               const Coupling& dconc_witness, const SearchBudget& budget) {
  const Quotient qa = quotient(a), qb = quotient(b);
  const MMAction ta = trivial_action(qa.space), tb = trivial_action(qb.space);
  QuotientBounds out;
  out.box = std::min(box_upper(ta, tb, budget).value,
                     box_pi_value(ta, tb, pushforward_coupling(box_witness, qa, qb), budget.dpi));
  DconcOptions opts;
  opts.dpi = budget.dpi;
  out.dconc = std::min(dconc_upper(ta, tb, budget).value,
                       dconc_pi(ta, tb, pushforward_coupling(dconc_witness, qa, qb), DconcMode::Upper, opts).value);
  return out;
}

}  // namespace

Coupling pushforward_coupling(const Coupling& pi, const Quotient& qx, const Quotient& qy) {
  Matrix plan(qx.orbits.size(), qy.orbits.size());
  for (std::size_t i = 0; i < pi.rows(); ++i)
    for (std::size_t j = 0; j < pi.cols(); ++j) plan(qx.orbit_of[i], qy.orbit_of[j]) += pi(i, j);
  return Coupling::checked(std::move(plan), qx.space.masses(), qy.space.masses());
}

ExperimentReport run_quotient_convergence(const std::vector<NamedAction>& seq, const NamedAction& target,
                                          const QuotientOptions& opts) {
  ExperimentReport rep;
  rep.title = "quotient convergence vs " + target.name;
  const std::uint64_t seed = opts.budget.seed;
  const double dy = obs_diam_lower(target.action.space(), opts.kappa, seed);
  for (const auto& x : seq) {
    const SearchResult box = box_upper(x.action, target.action, opts.budget);
    const SearchResult dc = dconc_upper(x.action, target.action, opts.budget);
    const QuotientBounds q = quotient_bounds(x.action, target.action, box.witness, dc.witness, opts.budget);
    const double d = std::max(obs_diam_lower(x.action.space(), opts.kappa, seed), dy);
    const double margin = std::sqrt(3.0 * (d + 1.0) * dc.value) + opts.kappa - q.dconc;
    rep.rows.push_back(row(x.name, "box_eq", box.value, BoundKind::Upper, 0.0, seed));
    rep.rows.push_back(row(x.name, "box_quot", q.box, BoundKind::Upper, 0.0, seed));
    rep.rows.push_back(row(x.name, "dconc_eq", dc.value, BoundKind::Upper, 0.0, seed));
    rep.rows.push_back(row(x.name, "dconc_quot", q.dconc, BoundKind::Upper, 0.0, seed));
    rep.rows.push_back(row(x.name, "obsdiam", d, BoundKind::Lower, 0.0, seed));
    rep.rows.push_back(row(x.name, "concquot_margin", margin, BoundKind::Margin, 0.0, seed));
  }
  return rep;
}

ExperimentReport run_lens_experiment(const LensExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.title = "lens experiment";
  for (auto seed : cfg.seeds)
    for (auto samples : cfg.sample_counts) {
      LensConfig lc = cfg.lens;
      lc.seed = seed;
      lc.samples = samples;
      const PointCloud gcloud = gen_gaussian_cloud(lc);
      const MMAction& gauss = gcloud.action;
      const Quotient qg = quotient(gauss);
      for (auto j : lc.js) {
        const PointCloud lcloud = gen_lens_cloud(lc, j);
        const MMAction& lens = lcloud.action;
        SearchBudget b = cfg.budget;
        b.seed = seed;
        // both clouds share the ambient space, so a nearest matching is a natural candidate
        std::vector<Coupling> extra;
        if (lcloud.coords.size() == gcloud.coords.size())
          extra.push_back(assignment_coupling(cross_distances(lcloud, gcloud)));
        const SearchResult eq = box_upper(lens, gauss, b, extra);
        const Quotient ql = quotient(lens);
        const MMAction ta = trivial_action(ql.space), tb = trivial_action(qg.space);
        const double quot = std::min(box_upper(ta, tb, b).value,
                                     box_pi_value(ta, tb, pushforward_coupling(eq.witness, ql, qg), b.dpi));
        const std::string inst =
            "seed=" + std::to_string(seed) + "/samples=" + std::to_string(samples) + "/j=" + std::to_string(j);
        rep.rows.push_back(row(inst, "box_eq", eq.value, BoundKind::Upper, 0.0, seed));
        rep.rows.push_back(row(inst, "box_quot", quot, BoundKind::Upper, 0.0, seed));
      }
    }
  return rep;
}

std::vector<LensTrend> lens_trend(const ExperimentReport& report, const LensExperimentConfig& cfg) {
  // (seed, j) -> box_eq values in sample order
  std::map<std::pair<std::uint64_t, std::size_t>, std::vector<double>> eq;
  std::map<std::string, double> eq_by_inst;
  std::vector<LensTrend> out;
  for (auto s : cfg.seeds) out.push_back({s, true, true});
  auto trend_of = [&](std::uint64_t s) -> LensTrend& {
    return *std::find_if(out.begin(), out.end(), [&](const LensTrend& t) { return t.seed == s; });
  };
  for (const auto& r : report.rows) {
    if (r.metric == "box_eq") {
      eq_by_inst[r.instance] = r.value;
      const auto jpos = r.instance.rfind("j=");
      eq[{r.seed, std::stoul(r.instance.substr(jpos + 2))}].push_back(r.value);
    } else if (r.metric == "box_quot") {
      if (r.value > eq_by_inst[r.instance] + 1e-12) trend_of(r.seed).quotient_below = false;
    }
  }
  for (const auto& [key, vals] : eq)
    for (std::size_t k = 1; k < vals.size(); ++k)
      if (vals[k] > vals[k - 1] + 1e-12) trend_of(key.first).nonincreasing = false;
  return out;
}

PropernessResult run_properness_probe(const std::vector<NamedAction>& seq, const MMSpace& limit,
                                      const SearchBudget& budget) {
  PropernessResult out;
  out.report.title = "properness probe";
  const MMAction ty = trivial_action(limit);
  for (const auto& x : seq) {
    const MMAction tx = trivial_action(x.action.space());
    const SearchResult box = box_upper(tx, ty, budget);
    const auto id_x = Permutation::identity(tx.space().size());
    const auto id_y = Permutation::identity(limit.size());
    const DPiCertificate cert =
        d_pi(MapPair::on_x(id_x), MapPair::on_y(id_y), box.witness, tx.space(), limit, budget.dpi);
    const LimitGroup lg = extract_limit_group(x.action, limit, cert.subset, cert.value);
    out.groups.push_back(lg.generated);
    out.defects.push_back(lg.max_defect);
    out.report.rows.push_back(row(x.name, "box_plain", box.value, BoundKind::Upper, 0.0, budget.seed));
    out.report.rows.push_back(row(x.name, "defect", lg.max_defect, BoundKind::Oracle, 0.0, budget.seed));
    out.report.rows.push_back(row(x.name, "group_order", static_cast<double>(lg.generated.size()),
                                  BoundKind::Oracle, 0.0, budget.seed));
  }
  return out;
}

}  // namespace eqbox
