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

#include "config.h"

#include <set>
#include <sstream>

#include "mmspp/problem_io.h"
#include "mmspp/report.h"

namespace mmspp::cli {
namespace {

// Pulls typed fields out of one JSON object and rejects leftovers.
class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw InvalidArgument(where_ + ": expected an object");
  }

  template <class T>
  void Get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const Json::exception& e) {
      throw InvalidArgument(where_ + "." + key + ": " + e.what());
    }
  }

  const Json* Sub(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void Finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        throw InvalidArgument(where_ + ": unknown key '" + item.key() + "'");
      }
    }
  }

 private:
  const Json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void Positive(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(std::string("config: ") + what);
}

}  // namespace

Json LoadConfigDocument(const std::string& path) {
  Json doc = Json::object();
  if (!path.empty()) {
    try {
      doc = Json::parse(ReadFile(path));
    } catch (const Json::exception& e) {
      throw InvalidArgument("config '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
  }
  if (doc.contains("format")) {
    if (!doc["format"].is_string() || doc["format"].get<std::string>() != kFormatTag) {
      throw InvalidArgument(std::string("config format must be \"") + kFormatTag +
                            "\"");
    }
  } else {
    doc["format"] = kFormatTag;
  }
  return doc;
}

void ApplyOverride(Json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InvalidArgument("--set expects key=value, got '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  Json value = Json::parse(raw, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = raw;
  Json* node = &doc;
  std::stringstream ss(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    if (parts[i].empty()) throw InvalidArgument("--set: empty key segment");
    Json& next = (*node)[parts[i]];
    if (next.is_null()) next = Json::object();
    if (!next.is_object()) {
      throw InvalidArgument("--set: '" + parts[i] + "' is not an object");
    }
    node = &next;
  }
  if (parts.empty() || parts.back().empty()) {
    throw InvalidArgument("--set: empty key");
  }
  (*node)[parts.back()] = value;
}

RegressConfig RegressConfig::FromJson(const Json& j) {
  RegressConfig c;
  Reader r(j, "regress");
  std::string fmt, sampling = SamplingModeName(c.sampling);
  r.Get("format", fmt);
  r.Get("n", c.n);
  r.Get("m_dim", c.m_dim);
  r.Get("p", c.p);
  r.Get("N", c.N);
  r.Get("sigma", c.sigma);
  r.Get("S", c.S);
  r.Get("m_inner", c.m_inner);
  r.Get("alphas", c.alphas);
  r.Get("batch_sizes", c.batch_sizes);
  r.Get("trials", c.trials);
  r.Get("eps_floor", c.eps_floor);
  r.Get("delta0", c.delta0);
  r.Get("delta_ratio", c.delta_ratio);
  r.Get("sampling", sampling);
  r.Get("start_scale", c.start_scale);
  r.Get("project_each_outer", c.project_each_outer);
  r.Get("seed", c.seed);
  r.Get("threads", c.threads);
  r.Finish();
  c.sampling = ParseSamplingMode(sampling);
  Positive(c.S >= 1 && c.m_inner >= 1 && c.trials >= 1, "S, m_inner, trials >= 1");
  Positive(!c.alphas.empty() && !c.batch_sizes.empty(), "empty alpha or batch grid");
  for (double a : c.alphas) Positive(a > 0.0, "alphas must be positive");
  for (Index b : c.batch_sizes) Positive(b >= 1 && b <= c.N, "batch sizes in [1, N]");
  return c;
}

Json RegressConfig::ToJson() const {
  return Json{{"format", kFormatTag}, {"n", n}, {"m_dim", m_dim}, {"p", p},
              {"N", N}, {"sigma", sigma}, {"S", S}, {"m_inner", m_inner},
              {"alphas", alphas}, {"batch_sizes", batch_sizes},
              {"trials", trials}, {"eps_floor", eps_floor},
              {"delta0", delta0}, {"delta_ratio", delta_ratio},
              {"sampling", SamplingModeName(sampling)},
              {"start_scale", start_scale},
              {"project_each_outer", project_each_outer}, {"seed", seed},
              {"threads", threads}};
}

NetflowConfig NetflowConfig::FromJson(const Json& j) {
  NetflowConfig c;
  Reader r(j, "netflow");
  std::string fmt;
  r.Get("format", fmt);
  r.Get("n_nodes", c.n_nodes);
  std::vector<std::vector<double>> cells;
  if (const Json* cj = r.Sub("cells")) {
    try {
      cells = cj->get<std::vector<std::vector<double>>>();
    } catch (const Json::exception& e) {
      throw InvalidArgument(std::string("netflow.cells: ") + e.what());
    }
    c.cells.clear();
    for (const auto& cell : cells) {
      if (cell.size() != 2) throw InvalidArgument("netflow.cells: pairs [p_er, sigma]");
      c.cells.emplace_back(cell[0], cell[1]);
    }
  }
  r.Get("budgets", c.budgets);
  r.Get("trials", c.trials);
  r.Get("M", c.M);
  r.Get("eta_y", c.eta_y);
  r.Get("eps_z", c.eps_z);
  r.Get("seed", c.seed);
  r.Get("threads", c.threads);
  if (const Json* sj = r.Sub("snmmspp")) {
    Reader s(*sj, "netflow.snmmspp");
    s.Get("S", c.snmmspp.S);
    s.Get("m_inner", c.snmmspp.m_inner);
    s.Get("alpha", c.snmmspp.alpha);
    s.Get("batch", c.snmmspp.batch);
    s.Get("eps_sub", c.snmmspp.eps_sub);
    s.Get("project_each_outer", c.snmmspp.project_each_outer);
    s.Get("rho", c.snmmspp.ssn.rho);
    s.Get("gamma_hat", c.snmmspp.ssn.gamma_hat);
    s.Get("tau", c.snmmspp.ssn.tau);
    s.Get("tau1", c.snmmspp.ssn.tau1);
    s.Get("tau2", c.snmmspp.ssn.tau2);
    s.Get("eta_floor", c.snmmspp.ssn.eta_floor);
    s.Finish();
  }
  if (const Json* mj = r.Sub("mgd")) {
    Reader s(*mj, "netflow.mgd");
    s.Get("T", c.mgd.T);
    s.Get("K", c.mgd.K);
    s.Get("step_out", c.mgd.step_out);
    s.Get("step_in", c.mgd.step_in);
    s.Finish();
  }
  std::vector<std::string> strategies;
  r.Get("strategies", strategies);
  r.Finish();
  if (!strategies.empty()) {
    c.strategies.clear();
    for (const auto& s : strategies) c.strategies.push_back(ParseAttack(s));
  }
  Positive(c.trials >= 1 && !c.cells.empty() && !c.budgets.empty(),
           "netflow needs trials, cells and budgets");
  for (double b : c.budgets) Positive(b >= 0.0 && b <= 1.0, "budgets in [0, 1]");
  c.snmmspp.ssn.Validate();
  return c;
}

Json NetflowConfig::ToJson() const {
  Json cells_j = Json::array();
  for (const auto& [p, s] : cells) cells_j.push_back({p, s});
  Json strat = Json::array();
  for (AttackKind k : strategies) strat.push_back(AttackName(k));
  return Json{{"format", kFormatTag}, {"n_nodes", n_nodes}, {"cells", cells_j},
              {"budgets", budgets}, {"trials", trials}, {"M", M},
              {"eta_y", eta_y}, {"eps_z", eps_z}, {"seed", seed},
              {"threads", threads}, {"strategies", strat},
              {"snmmspp",
               {{"S", snmmspp.S}, {"m_inner", snmmspp.m_inner},
                {"alpha", snmmspp.alpha}, {"batch", snmmspp.batch},
                {"eps_sub", snmmspp.eps_sub},
                {"project_each_outer", snmmspp.project_each_outer},
                {"rho", snmmspp.ssn.rho}, {"gamma_hat", snmmspp.ssn.gamma_hat},
                {"tau", snmmspp.ssn.tau}, {"tau1", snmmspp.ssn.tau1},
                {"tau2", snmmspp.ssn.tau2},
                {"eta_floor", snmmspp.ssn.eta_floor}}},
              {"mgd",
               {{"T", mgd.T}, {"K", mgd.K}, {"step_out", mgd.step_out},
                {"step_in", mgd.step_in}}}};
}

RateConfig RateConfig::FromJson(const Json& j) {
  RateConfig c;
  Reader r(j, "rate");
  std::string fmt;
  r.Get("format", fmt);
  r.Get("instance", c.instance);
  r.Get("n", c.n);
  r.Get("m_dim", c.m_dim);
  r.Get("rows", c.rows);
  r.Get("N", c.N);
  r.Get("sigma", c.sigma);
  r.Get("seeds", c.seeds);
  r.Get("S", c.S);
  r.Get("m_inner", c.m_inner);
  r.Get("batch", c.batch);
  r.Get("alphas", c.alphas);
  r.Get("delta0", c.delta0);
  r.Get("delta_ratio", c.delta_ratio);
  r.Get("eps_floor", c.eps_floor);
  r.Get("start_scale", c.start_scale);
  r.Get("gate_margin", c.gate_margin);
  r.Get("seed", c.seed);
  r.Get("threads", c.threads);
  r.Finish();
  if (c.instance != "regression" && c.instance != "quadratic") {
    throw InvalidArgument("rate.instance must be regression or quadratic");
  }
  Positive(c.seeds >= 1 && c.S >= 10 && c.m_inner >= 1 && c.batch >= 1,
           "rate needs seeds >= 1, S >= 10, m_inner >= 1, batch >= 1");
  return c;
}

Json RateConfig::ToJson() const {
  return Json{{"format", kFormatTag}, {"instance", instance}, {"n", n},
              {"m_dim", m_dim}, {"rows", rows}, {"N", N}, {"sigma", sigma},
              {"seeds", seeds}, {"S", S}, {"m_inner", m_inner},
              {"batch", batch}, {"alphas", alphas}, {"delta0", delta0},
              {"delta_ratio", delta_ratio}, {"eps_floor", eps_floor},
              {"start_scale", start_scale}, {"gate_margin", gate_margin},
              {"seed", seed}, {"threads", threads}};
}

ProptestConfig ProptestConfig::FromJson(const Json& j) {
  ProptestConfig c;
  Reader r(j, "proptest");
  std::string fmt;
  r.Get("format", fmt);
  r.Get("samples", c.samples);
  r.Get("seed", c.seed);
  r.Get("replay", c.replay);
  r.Get("properties", c.properties);
  r.Finish();
  Positive(c.samples >= 1, "proptest.samples >= 1");
  return c;
}

Json ProptestConfig::ToJson() const {
  return Json{{"format", kFormatTag}, {"samples", samples}, {"seed", seed},
              {"replay", replay}, {"properties", properties}};
}

}  // namespace mmspp::cli
