// Copyright 2026 The minimax-spp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <cmath>
#include <ostream>
#include <sstream>

#include "mmspp/report.h"
#include "protocols.h"

namespace mmspp::cli {
namespace {

std::string Join(const std::string& dir, const std::string& name) {
  if (dir.empty()) return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void WriteJson(const std::string& path, const Json& j) {
  WriteFileAtomic(path, j.dump(2) + "\n");
}

// nlohmann refuses non-finite numbers; encode them as strings.
Json Num(double v) {
  if (std::isfinite(v)) return v;
  return FormatDouble(v);
}

std::vector<double> Range(size_t n) {
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
  return v;
}

}  // namespace

Json ResolveConfig(const Invocation& inv) {
  Json doc = LoadConfigDocument(inv.config_path);
  for (const auto& o : inv.overrides) ApplyOverride(doc, o);
  if (inv.seed) doc["seed"] = *inv.seed;
  if (inv.trials) {
    const char* key = inv.subcommand == "rate"       ? "seeds"
                      : inv.subcommand == "proptest" ? "samples"
                                                     : "trials";
    doc[key] = *inv.trials;
  }
  return doc;
}

int RunRegress(const RegressConfig& cfg, const std::string& out_dir,
               std::ostream& log) {
  const RegressOutcome out = RunRegressionSweep(cfg);

  std::ostringstream curves;
  curves << "batch,alpha,s,mean_rel_pct\n";
  for (const auto& c : out.cells) {
    for (size_t s = 0; s < c.mean_rel_pct.size(); ++s) {
      curves << c.batch << ',' << FormatDouble(c.alpha) << ',' << s << ','
             << FormatDouble(c.mean_rel_pct[s]) << '\n';
    }
  }
  std::ostringstream trials;
  trials << "batch,alpha,trial,s,kkt_residual,constraint_violation\n";
  for (const auto& r : out.runs) {
    for (const auto& row : r.report.rows) {
      trials << r.batch << ',' << FormatDouble(r.alpha) << ',' << r.trial << ','
             << row.s << ',' << FormatDouble(row.kkt_residual) << ','
             << FormatDouble(row.constraint_violation) << '\n';
    }
  }
  WriteFileAtomic(Join(out_dir, "regress_curves.csv"), curves.str());
  WriteFileAtomic(Join(out_dir, "regress_trials.csv"), trials.str());

  LineChart chart;
  chart.title = "Relative gradient percentage";
  chart.x_label = "epoch";
  chart.y_label = "100 kkt(s) / kkt(0)";
  chart.log_y = true;
  Json cells = Json::array();
  for (const auto& c : out.cells) {
    std::ostringstream name;
    name << "alpha=" << FormatDouble(c.alpha) << " b=" << c.batch;
    chart.series.push_back({name.str(), Range(c.mean_rel_pct.size()), c.mean_rel_pct});
    cells.push_back({{"alpha", c.alpha}, {"batch", c.batch},
                     {"diverged_trials", c.diverged},
                     {"final_mean_rel_pct", Num(c.final_mean_rel_pct)}});
    log << "regress alpha=" << FormatDouble(c.alpha) << " b=" << c.batch
        << " final_rel_pct=" << FormatDouble(c.final_mean_rel_pct)
        << " diverged=" << c.diverged << "/" << cfg.trials << '\n';
  }
  WriteFileAtomic(Join(out_dir, "regress_curves.svg"), RenderSvg(chart));
  WriteJson(Join(out_dir, "regress_summary.json"),
            {{"config", cfg.ToJson()}, {"alpha_bound", Num(out.alpha_bound)},
             {"cells", cells}});
  return 0;
}

int RunNetflow(const NetflowConfig& cfg, const std::string& out_dir,
               std::ostream& log) {
  const NetflowOutcome out = RunNetflowGrid(cfg);

  std::ostringstream trials;
  trials << "p_er,sigma,budget_frac,budget,trial,strategy,rho,feasible,"
            "q_clean,q_attacked,note\n";
  for (const auto& r : out.rows) {
    std::string note = r.note;
    for (char& ch : note)
      if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
    trials << FormatDouble(r.p_er) << ',' << FormatDouble(r.sigma) << ','
           << FormatDouble(r.budget_frac) << ',' << FormatDouble(r.budget) << ','
           << r.trial << ',' << AttackName(r.strategy) << ','
           << FormatDouble(r.rho) << ',' << (r.feasible ? 1 : 0) << ','
           << FormatDouble(r.q_clean) << ',' << FormatDouble(r.q_attacked) << ','
           << note << '\n';
  }
  std::ostringstream summary;
  summary << "p_er,sigma,budget_frac,strategy,mean_rho,included,excluded\n";
  Json sj = Json::array();
  for (const auto& s : out.summary) {
    summary << FormatDouble(s.p_er) << ',' << FormatDouble(s.sigma) << ','
            << FormatDouble(s.budget_frac) << ',' << AttackName(s.strategy)
            << ',' << FormatDouble(s.mean_rho) << ',' << s.included << ','
            << s.excluded << '\n';
    sj.push_back({{"p_er", s.p_er}, {"sigma", s.sigma},
                  {"budget_frac", s.budget_frac},
                  {"strategy", AttackName(s.strategy)},
                  {"mean_rho", Num(s.mean_rho)}, {"included", s.included},
                  {"excluded", s.excluded}});
  }
  WriteFileAtomic(Join(out_dir, "netflow_trials.csv"), trials.str());
  WriteFileAtomic(Join(out_dir, "netflow_summary.csv"), summary.str());
  WriteJson(Join(out_dir, "netflow_summary.json"),
            {{"config", cfg.ToJson()}, {"summary", sj}});

  for (size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    const auto [p_er, sigma] = cfg.cells[ci];
    LineChart chart;
    std::ostringstream title;
    title << "p_er=" << FormatDouble(p_er) << " sigma=" << FormatDouble(sigma);
    chart.title = title.str();
    chart.x_label = "budget fraction";
    chart.y_label = "mean relative cost increase";
    for (AttackKind k : cfg.strategies) {
      Series s;
      s.name = AttackName(k);
      for (double b : cfg.budgets) {
        const NetflowSummaryRow* row = FindSummary(out, p_er, sigma, b, k);
        s.x.push_back(b);
        s.y.push_back(row ? row->mean_rho : std::nan(""));
        log << "netflow " << title.str() << " budget=" << FormatDouble(b)
            << ' ' << s.name << " mean_rho=" << FormatDouble(s.y.back())
            << '\n';
      }
      chart.series.push_back(std::move(s));
    }
    WriteFileAtomic(Join(out_dir, "netflow_cell" + std::to_string(ci) + ".svg"),
                    RenderSvg(chart));
  }
  return 0;
}

int RunRate(const RateConfig& cfg, const std::string& out_dir,
            std::ostream& log) {
  const RateOutcome out = RunRateStudy(cfg);

  std::ostringstream csv;
  csv << "alpha,s,mean_dist_sq_primal,mean_dist_sq_dual\n";
  LineChart chart;
  chart.title = "Mean squared distance to the saddle point";
  chart.x_label = "epoch";
  chart.y_label = "distance squared";
  chart.log_y = true;
  Json per = Json::array();
  bool ok = true;
  for (const auto& r : out.per_alpha) {
    for (size_t s = 0; s < r.mean_primal.size(); ++s) {
      csv << FormatDouble(r.alpha) << ',' << s << ','
          << FormatDouble(r.mean_primal[s]) << ','
          << FormatDouble(r.mean_dual[s]) << '\n';
    }
    const std::string a = FormatDouble(r.alpha);
    chart.series.push_back({"primal alpha=" + a, Range(r.mean_primal.size()), r.mean_primal});
    chart.series.push_back({"dual alpha=" + a, Range(r.mean_dual.size()), r.mean_dual});
    per.push_back({{"alpha", r.alpha}, {"fitted_ratio", Num(r.fitted_ratio)},
                   {"theoretical_ratio", Num(r.theoretical_ratio)},
                   {"dual_slope", Num(r.dual_slope)},
                   {"dual_terminal_ratio", Num(r.dual_terminal_ratio)},
                   {"diverged_seeds", r.diverged}, {"gate_ok", r.gate_ok}});
    log << "rate alpha=" << a << " fitted=" << FormatDouble(r.fitted_ratio)
        << " theoretical=" << FormatDouble(r.theoretical_ratio)
        << " dual_slope=" << FormatDouble(r.dual_slope)
        << (r.gate_ok ? " ok" : " GATE FAILED") << '\n';
    ok = ok && r.gate_ok;
  }
  WriteFileAtomic(Join(out_dir, "rate_curves.csv"), csv.str());
  WriteFileAtomic(Join(out_dir, "rate_curves.svg"), RenderSvg(chart));
  WriteJson(Join(out_dir, "rate_summary.json"),
            {{"config", cfg.ToJson()}, {"alpha_bound", Num(out.alpha_bound)},
             {"mu_min", out.problem.mu_min()}, {"per_alpha", per}});
  return ok ? 0 : 1;
}

int RunProptest(const ProptestConfig& cfg, const std::string& out_dir,
                std::ostream& log) {
  const ProptestOutcome out = RunPropertySuites(cfg);
  Json runs = Json::object();
  for (const auto& [name, n] : out.cases_run) {
    runs[name] = n;
    log << "property " << name << ": " << n << " cases\n";
  }
  Json fails = Json::array();
  for (const auto& f : out.failures) {
    fails.push_back({{"property", f.property}, {"case", f.case_index},
                     {"seed", f.seed}, {"detail", f.detail}});
    log << "FAILED " << f.property << " case " << f.case_index << ": "
        << f.detail << " (replay: --seed " << f.seed
        << " --set replay=" << f.case_index << " --set properties=[\""
        << f.property << "\"])\n";
  }
  WriteJson(Join(out_dir, "proptest_summary.json"),
            {{"config", cfg.ToJson()}, {"cases_run", runs}, {"failures", fails}});
  return out.failures.empty() ? 0 : 1;
}

int Run(const Invocation& inv, std::ostream& log, std::ostream& err) {
  Json doc;
  try {
    doc = ResolveConfig(inv);
    if (inv.subcommand == "regress") {
      const auto cfg = RegressConfig::FromJson(doc);
      return RunRegress(cfg, inv.out_dir, log);
    }
    if (inv.subcommand == "netflow") {
      const auto cfg = NetflowConfig::FromJson(doc);
      return RunNetflow(cfg, inv.out_dir, log);
    }
    if (inv.subcommand == "rate") {
      const auto cfg = RateConfig::FromJson(doc);
      return RunRate(cfg, inv.out_dir, log);
    }
    if (inv.subcommand == "proptest") {
      const auto cfg = ProptestConfig::FromJson(doc);
      return RunProptest(cfg, inv.out_dir, log);
    }
    err << "unknown subcommand: " << inv.subcommand << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mmspp::cli
