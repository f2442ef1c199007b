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

#include "protocols.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "mmspp/experiments/quadratic.h"
#include "mmspp/experiments/regression.h"
#include "mmspp/regularizer.h"
#include "mmspp/rng.h"
#include "mmspp/ssn.h"
#include "parallel.h"

namespace mmspp::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t Derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return SplitMix64(SplitMix64(seed ^ SplitMix64(a + 1)) ^ (b * 0x9E3779B97F4A7C15ULL));
}

Vec GaussianStart(std::uint64_t seed, std::uint64_t trial, std::uint64_t which,
                  Index n, double scale) {
  CounterRng rng(seed, Stream::kStart, trial, which);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = scale * rng.Normal();
  return v;
}

DeltaSchedule MakeDelta(double delta0, double ratio) {
  DeltaSchedule d;
  d.delta0 = delta0;
  d.ratio = ratio;
  d.kind = ratio == 1.0 ? DeltaSchedule::Kind::kConstant
                        : DeltaSchedule::Kind::kGeometric;
  return d;
}

}  // namespace

// ---- regression ------------------------------------------------------------

RegressOutcome RunRegressionSweep(const RegressConfig& cfg) {
  RegressOutcome out;
  RegressionConfig rc;
  rc.n = cfg.n;
  rc.m_dim = cfg.m_dim;
  rc.p = cfg.p;
  rc.N = cfg.N;
  rc.sigma = cfg.sigma;
  rc.seed = cfg.seed;
  out.problem = GenRegression(rc);
  const ProblemSpec& p = out.problem;
  out.alpha_bound = TheoreticalAlphaBound(p, cfg.m_inner, cfg.batch_sizes.front());

  for (Index b : cfg.batch_sizes) {
    for (double a : cfg.alphas) {
      for (int t = 0; t < cfg.trials; ++t) {
        RegressRun r;
        r.alpha = a;
        r.batch = b;
        r.trial = t;
        out.runs.push_back(std::move(r));
      }
    }
  }
  ParallelFor(out.runs.size(), cfg.threads, [&](std::size_t i) {
    RegressRun& run = out.runs[i];
    SolverConfig sc;
    sc.S = cfg.S;
    sc.m_inner = cfg.m_inner;
    sc.alpha = run.alpha;
    sc.sampler.mode = cfg.sampling;
    sc.sampler.batch_size = run.batch;
    sc.sampler.seed = Derive(cfg.seed, static_cast<std::uint64_t>(run.trial));
    sc.delta = MakeDelta(cfg.delta0, cfg.delta_ratio);
    sc.eps_floor = cfg.eps_floor;
    sc.project_each_outer = cfg.project_each_outer;
    const auto t = static_cast<std::uint64_t>(run.trial);
    sc.x0 = GaussianStart(cfg.seed, t, 0, p.n, cfg.start_scale);
    sc.y0 = GaussianStart(cfg.seed, t, 1, p.m_dim, cfg.start_scale);
    try {
      run.report = OuterLoop(p, sc).second;
    } catch (const RunAborted& e) {
      run.diverged = true;
      run.error = e.what();
      run.report = e.report();
    } catch (const Error& e) {
      run.diverged = true;
      run.error = e.what();
    }
  });

  size_t idx = 0;
  for (Index b : cfg.batch_sizes) {
    for (double a : cfg.alphas) {
      RegressCell cell;
      cell.alpha = a;
      cell.batch = b;
      cell.mean_rel_pct.assign(static_cast<size_t>(cfg.S) + 1, 0.0);
      for (int t = 0; t < cfg.trials; ++t, ++idx) {
        const RegressRun& run = out.runs[idx];
        if (run.diverged) ++cell.diverged;
        const auto& rows = run.report.rows;
        const double k0 = rows.empty() ? kInf : rows.front().kkt_residual;
        for (size_t s = 0; s < cell.mean_rel_pct.size(); ++s) {
          const double v = s < rows.size() && k0 > 0.0
                               ? 100.0 * rows[s].kkt_residual / k0
                               : kInf;
          cell.mean_rel_pct[s] += (std::isfinite(v) ? v : kInf) / cfg.trials;
        }
      }
      cell.final_mean_rel_pct = cell.mean_rel_pct.back();
      out.cells.push_back(std::move(cell));
    }
  }
  return out;
}

// ---- network ---------------------------------------------------------------

NetflowOutcome RunNetflowGrid(const NetflowConfig& cfg) {
  const size_t n_cells = cfg.cells.size();
  const size_t n_trials = static_cast<size_t>(cfg.trials);
  const size_t n_budgets = cfg.budgets.size();
  const size_t n_strat = cfg.strategies.size();
  std::vector<std::vector<NetflowTrialRow>> per_task(n_cells * n_trials);

  ParallelFor(per_task.size(), cfg.threads, [&](std::size_t task) {
    const size_t cell = task / n_trials, trial = task % n_trials;
    const auto [p_er, sigma] = cfg.cells[cell];
    FlowNetworkConfig fc;
    fc.n_nodes = cfg.n_nodes;
    fc.p_er = p_er;
    fc.sigma = sigma;
    fc.M = cfg.M;
    fc.budget_frac = 0.0;
    fc.eta_y = cfg.eta_y;
    fc.eps_z = cfg.eps_z;
    fc.seed = Derive(cfg.seed, cell, trial);
    FlowNetwork net = GenFlowNetwork(fc);
    const MinCostFlowResult clean = MinCostFlowEval(net, Vec::Zero(net.E()));
    auto& rows = per_task[task];
    for (size_t bi = 0; bi < n_budgets; ++bi) {
      net.budget = cfg.budgets[bi] * net.capacity.sum();
      for (size_t si = 0; si < n_strat; ++si) {
        NetflowTrialRow row;
        row.p_er = p_er;
        row.sigma = sigma;
        row.budget_frac = cfg.budgets[bi];
        row.budget = net.budget;
        row.trial = static_cast<int>(trial);
        row.strategy = cfg.strategies[si];
        row.q_clean = clean.q_tot;
        const std::uint64_t attack_seed = Derive(fc.seed, bi + 1, si + 1);
        try {
          Vec y;
          switch (row.strategy) {
            case AttackKind::kRandom: y = RandomAttack(net, attack_seed); break;
            case AttackKind::kMaxCapacity: y = MaxCapacityAttack(net); break;
            case AttackKind::kGreedy: y = GreedyAttack(net); break;
            case AttackKind::kMgd: y = MgdAttack(net, cfg.mgd); break;
            case AttackKind::kSnmmspp: {
              SnmmsppAttackParams prm = cfg.snmmspp;
              prm.seed = attack_seed;
              y = SnmmsppAttack(net, prm);
              break;
            }
          }
          const AttackResult r =
              RelativeCostIncrease(net, y, AttackName(row.strategy), &clean);
          row.rho = r.rho;
          row.feasible = r.feasible;
          row.q_attacked = r.q_attacked;
          if (!r.feasible) row.note = "infeasible";
        } catch (const Error& e) {
          row.feasible = false;
          row.rho = kInf;
          row.q_attacked = kInf;
          row.note = std::string("error: ") + e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  });

  NetflowOutcome out;
  // Reorder to (cell, budget, trial, strategy).
  for (size_t cell = 0; cell < n_cells; ++cell) {
    for (size_t bi = 0; bi < n_budgets; ++bi) {
      for (size_t trial = 0; trial < n_trials; ++trial) {
        const auto& rows = per_task[cell * n_trials + trial];
        for (size_t si = 0; si < n_strat; ++si) {
          out.rows.push_back(rows[bi * n_strat + si]);
        }
      }
      for (size_t si = 0; si < n_strat; ++si) {
        NetflowSummaryRow s;
        s.p_er = cfg.cells[cell].first;
        s.sigma = cfg.cells[cell].second;
        s.budget_frac = cfg.budgets[bi];
        s.strategy = cfg.strategies[si];
        double sum = 0.0;
        for (size_t trial = 0; trial < n_trials; ++trial) {
          const auto& r = per_task[cell * n_trials + trial][bi * n_strat + si];
          if (r.feasible && r.note.empty()) {
            sum += r.rho;
            ++s.included;
          } else {
            ++s.excluded;
          }
        }
        s.mean_rho = s.included > 0 ? sum / s.included
                                    : std::numeric_limits<double>::quiet_NaN();
        out.summary.push_back(s);
      }
    }
  }
  return out;
}

const NetflowSummaryRow* FindSummary(const NetflowOutcome& out, double p_er,
                                     double sigma, double budget_frac,
                                     AttackKind strategy) {
  for (const auto& s : out.summary) {
    if (s.p_er == p_er && s.sigma == sigma && s.budget_frac == budget_frac &&
        s.strategy == strategy) {
      return &s;
    }
  }
  return nullptr;
}

// ---- rate ------------------------------------------------------------------

ProblemSpec BuildRateInstance(const RateConfig& cfg) {
  if (cfg.instance == "quadratic") {
    QuadraticConfig qc;
    qc.n = cfg.n;
    qc.m_dim = cfg.m_dim;
    qc.q = cfg.rows;
    qc.N = cfg.N;
    qc.seed = cfg.seed;
    return GenQuadratic(qc);
  }
  RegressionConfig rc;
  rc.n = cfg.n;
  rc.m_dim = cfg.m_dim;
  rc.p = cfg.rows;
  rc.N = cfg.N;
  rc.sigma = cfg.sigma;
  rc.seed = cfg.seed;
  return GenRegression(rc);
}

RateOutcome RunRateStudy(const RateConfig& cfg) {
  RateOutcome out;
  out.problem = BuildRateInstance(cfg);
  const ProblemSpec& p = out.problem;
  out.reference = SolveKktReference(p);
  out.alpha_bound = TheoreticalAlphaBound(p, cfg.m_inner, cfg.batch);
  std::vector<double> alphas = cfg.alphas;
  if (alphas.empty()) alphas.push_back(0.9 * out.alpha_bound);

  for (double a : alphas) {
    for (int i = 0; i < cfg.seeds; ++i) {
      RateSeedRun r;
      r.alpha = a;
      r.seed_index = i;
      out.runs.push_back(std::move(r));
    }
  }
  ParallelFor(out.runs.size(), cfg.threads, [&](std::size_t idx) {
    RateSeedRun& run = out.runs[idx];
    SolverConfig sc;
    sc.S = cfg.S;
    sc.m_inner = cfg.m_inner;
    sc.alpha = run.alpha;
    sc.sampler.batch_size = std::min(cfg.batch, p.N());
    sc.sampler.seed = Derive(cfg.seed, static_cast<std::uint64_t>(run.seed_index));
    sc.delta = MakeDelta(cfg.delta0, cfg.delta_ratio);
    sc.eps_floor = cfg.eps_floor;
    sc.reference = out.reference;
    // Common start across seeds; only the batches differ.
    sc.x0 = GaussianStart(cfg.seed, 0, 0, p.n, cfg.start_scale);
    sc.y0 = GaussianStart(cfg.seed, 0, 1, p.m_dim, cfg.start_scale);
    try {
      run.report = OuterLoop(p, sc).second;
    } catch (const RunAborted& e) {
      run.diverged = true;
      run.error = e.what();
      run.report = e.report();
    } catch (const Error& e) {
      run.diverged = true;
      run.error = e.what();
    }
  });

  size_t idx = 0;
  for (double a : alphas) {
    RateAlphaResult res;
    res.alpha = a;
    const size_t len = static_cast<size_t>(cfg.S) + 1;
    res.mean_primal.assign(len, 0.0);
    res.mean_dual.assign(len, 0.0);
    for (int i = 0; i < cfg.seeds; ++i, ++idx) {
      const RateSeedRun& run = out.runs[idx];
      if (run.diverged) ++res.diverged;
      for (size_t s = 0; s < len; ++s) {
        const bool have = s < run.report.rows.size();
        const double dp = have ? run.report.rows[s].dist_sq_primal : kInf;
        const double dd = have ? run.report.rows[s].dist_sq_dual : kInf;
        res.mean_primal[s] += (std::isfinite(dp) ? dp : kInf) / cfg.seeds;
        res.mean_dual[s] += (std::isfinite(dd) ? dd : kInf) / cfg.seeds;
      }
    }
    res.fitted_ratio = FitTailRatio(res.mean_primal);
    res.theoretical_ratio = TheoreticalRatio(a, p.mu_min());
    res.dual_slope = LogLinearSlope(res.mean_dual);
    res.dual_terminal_ratio = res.mean_dual.back() / res.mean_dual.front();
    res.gate_ok = res.diverged == 0 &&
                  res.fitted_ratio <= res.theoretical_ratio + cfg.gate_margin;
    out.per_alpha.push_back(std::move(res));
  }
  return out;
}


// ---- property suites -------------------------------------------------------

namespace {

using CaseRng = CounterRng;
// Empty string on success, failure detail otherwise.
using PropertyFn = std::string (*)(CaseRng&);

Index Pick(CaseRng& rng, Index lo, Index hi) {
  return lo + static_cast<Index>(rng.UniformInt(static_cast<std::uint64_t>(hi - lo + 1)));
}

Vec RandVec(CaseRng& rng, Index n, double scale = 1.0) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = scale * rng.Normal();
  return v;
}

Regularizer RandRegularizer(CaseRng& rng, Index dim) {
  switch (rng.UniformInt(4)) {
    case 0: return Regularizer::Zero();
    case 1: return Regularizer::L1(rng.Uniform(0.01, 2.0));
    case 2: {
      Vec lo = -Vec::Constant(dim, rng.Uniform(0.1, 2.0));
      Vec hi = Vec::Constant(dim, rng.Uniform(0.1, 2.0));
      return Regularizer::Box(lo, hi);
    }
    default: return Regularizer::SquaredL2(rng.Uniform(0.01, 2.0));
  }
}

ProblemSpec RandProblem(CaseRng& rng, Index max_n = 6, Index max_N = 8) {
  QuadraticConfig qc;
  qc.n = Pick(rng, 1, max_n);
  qc.m_dim = Pick(rng, 1, max_n);
  qc.q = Pick(rng, 1, std::min(qc.n + qc.m_dim, Index{3}));
  qc.N = Pick(rng, 1, max_N);
  qc.hess_spread = rng.Uniform(0.0, 2.0);
  qc.coupling = rng.Uniform(0.0, 1.0);
  qc.a_scale = rng.Uniform(0.1, 2.0);
  qc.b_scale = rng.Uniform(0.1, 2.0);
  qc.seed = rng.NextU64();
  return GenQuadratic(qc);
}

std::string Fmt(const char* what, double got, double limit) {
  std::ostringstream os;
  os.precision(6);
  os << what << ": " << got << " > " << limit;
  return os.str();
}

std::string PropProxMoreau(CaseRng& rng) {
  const Index n = Pick(rng, 1, 10);
  const Regularizer r = RandRegularizer(rng, n);
  const double alpha = std::exp(rng.Uniform(-5.0, 3.0));
  const Vec v = RandVec(rng, n, std::exp(rng.Uniform(-2.0, 2.0)));
  const double err = MoreauIdentityCheck(r, alpha, v);
  const double tol = 1e-12 * (1.0 + v.norm());
  if (!(err <= tol)) return Fmt("moreau identity residual", err, tol);
  // Envelope gradient (v - prox) / alpha by central differences.
  const Vec p = ProxEval(r, alpha, v);
  const Vec g = (v - p) / alpha;
  Vec fd(n);
  for (Index i = 0; i < n; ++i) {
    const double h = 1e-6 * (1.0 + std::abs(v(i)));
    Vec a = v, b = v;
    a(i) += h;
    b(i) -= h;
    fd(i) = (MoreauEnvelope(r, alpha, a) - MoreauEnvelope(r, alpha, b)) / (2 * h);
  }
  const double ferr = (fd - g).norm();
  const double ftol = 1e-4 * (1.0 + g.norm()) + 1e-5 / alpha;
  if (!(ferr <= ftol)) return Fmt("envelope gradient mismatch", ferr, ftol);
  return {};
}

std::string PropUnbiased(CaseRng& rng) {
  const ProblemSpec p = RandProblem(rng, 4, 5);
  const Index N = p.N();
  const Index b = Pick(rng, 1, std::min<Index>(N, 3));
  const Vec x = RandVec(rng, p.n), y = RandVec(rng, p.m_dim);
  const Vec xr = RandVec(rng, p.n), yr = RandVec(rng, p.m_dim);
  const auto [fx, fy] = FullGradients(p, xr, yr);
  const auto [gx, gy] = FullGradients(p, x, y);
  for (SamplingMode mode :
       {SamplingMode::kWithReplacement, SamplingMode::kWithoutReplacement}) {
    Vec mx = Vec::Zero(p.n), my = Vec::Zero(p.m_dim);
    for (const auto& [batch, prob] : EnumerateBatches(mode, N, b)) {
      const auto [ux, uy] = SvrgEstimators(p, batch, x, y, xr, yr, fx, fy);
      mx += prob * ux;
      my += prob * uy;
    }
    const double ex = (mx - gx).norm(), ey = (my - gy).norm();
    const double tol = 1e-12 * (1.0 + gx.norm() + gy.norm());
    if (!(ex <= tol)) return Fmt(SamplingModeName(mode), ex, tol);
    if (!(ey <= tol)) return Fmt(SamplingModeName(mode), ey, tol);
  }
  return {};
}

std::string PropGradPotential(CaseRng& rng) {
  ProblemSpec p = RandProblem(rng);
  p.phi = RandRegularizer(rng, p.n);
  p.psi = RandRegularizer(rng, p.m_dim);
  const Block block = rng.UniformInt(2) == 0 ? Block::kX : Block::kY;
  const Index dim = block == Block::kX ? p.n : p.m_dim;
  const Index odim = block == Block::kX ? p.m_dim : p.n;
  const Index b = Pick(rng, 1, std::min<Index>(p.N(), 4));
  BatchSample batch;
  for (Index i = 0; i < b; ++i)
    batch.push_back(static_cast<Index>(rng.UniformInt(static_cast<std::uint64_t>(p.N()))));
  const double alpha = std::exp(rng.Uniform(-3.0, 1.0));
  const SubproblemSpec spec =
      MakeSubproblem(p, block, RandVec(rng, dim), RandVec(rng, odim), alpha,
                     batch, RandVec(rng, dim, 0.1), 1e-10, SsnParams{});
  const Vec xi = RandVec(rng, spec.size());
  const Vec F = ResidualF(xi, spec);
  Vec fd(xi.size());
  for (Index j = 0; j < xi.size(); ++j) {
    const double h = 1e-5 * (1.0 + std::abs(xi(j)));
    Vec a = xi, c = xi;
    a(j) += h;
    c(j) -= h;
    fd(j) = (ObjectiveI(a, spec) - ObjectiveI(c, spec)) / (2 * h);
  }
  const double err = (fd - F).norm();
  const double tol = 1e-6 * std::max(1.0, F.norm());
  if (!(err <= tol)) return Fmt("potential gradient mismatch", err, tol);
  return {};
}

std::string PropVarianceBound(CaseRng& rng) {
  const ProblemSpec p = RandProblem(rng, 5, 12);
  SamplerConfig sc;
  sc.mode = rng.UniformInt(2) == 0 ? SamplingMode::kWithReplacement
                                   : SamplingMode::kWithoutReplacement;
  sc.batch_size = Pick(rng, 1, p.N());
  sc.seed = rng.NextU64();
  const Vec xr = RandVec(rng, p.n), yr = RandVec(rng, p.m_dim);
  const Vec x = xr + RandVec(rng, p.n, 0.5), y = yr + RandVec(rng, p.m_dim, 0.5);
  const VarianceReport v = VarianceProbe(p, sc, x, y, xr, yr, 200);
  // Monte-Carlo slack over 200 draws.
  const double slack = 1.5;
  if (!(v.empirical_x <= slack * v.bound_x + 1e-20))
    return Fmt("x estimator variance", v.empirical_x, slack * v.bound_x);
  if (!(v.empirical_y <= slack * v.bound_y + 1e-20))
    return Fmt("y estimator variance", v.empirical_y, slack * v.bound_y);
  return {};
}

std::string PropProjection(CaseRng& rng) {
  const ProblemSpec p = RandProblem(rng);
  const Vec x = RandVec(rng, p.n, 3.0), y = RandVec(rng, p.m_dim, 3.0);
  const ProjectionResult r = ProjectOntoC(p, x, y);
  // Round-off in the projection grows with cond([A B]).
  Mat AB(p.q, p.n + p.m_dim);
  AB << p.A, p.B;
  const Vec sv = Eigen::JacobiSVD<Mat>(AB).singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  const double scale = (1.0 + x.norm() + y.norm() + p.c.norm()) * cond;
  const double feas = (p.A * r.x + p.B * r.y + p.c).norm();
  if (!(feas <= 1e-10 * scale)) return Fmt("feasibility", feas, 1e-10 * scale);
  const ProjectionResult r2 = ProjectOntoC(p, r.x, r.y);
  const double idem = (r2.x - r.x).norm() + (r2.y - r.y).norm();
  if (!(idem <= 1e-12 * scale)) return Fmt("idempotence", idem, 1e-12 * scale);
  // The correction is a row-space combination.
  const double rs = (x - r.x - p.A.transpose() * r.zeta).norm() +
                    (y - r.y - p.B.transpose() * r.zeta).norm();
  if (!(rs <= 1e-10 * scale)) return Fmt("row-space correction", rs, 1e-10 * scale);
  // Any other feasible point is no closer.
  const double d0 = (x - r.x).squaredNorm() + (y - r.y).squaredNorm();
  for (int t = 0; t < 5; ++t) {
    const ProjectionResult o =
        ProjectOntoC(p, RandVec(rng, p.n, 3.0), RandVec(rng, p.m_dim, 3.0));
    const double d = (x - o.x).squaredNorm() + (y - o.y).squaredNorm();
    if (!(d0 <= d + 1e-12 * cond * (d0 + scale * scale))) return Fmt("not minimal", d0, d);
  }
  return {};
}

std::string PropThreePoint(CaseRng& rng) {
  const Index n = Pick(rng, 1, 10);
  const double s = std::exp(rng.Uniform(-3.0, 3.0));
  const Vec a = RandVec(rng, n, s), b = RandVec(rng, n, s), c = RandVec(rng, n, s);
  const double rho = rng.Uniform(1e-3, 1.0 - 1e-3);
  const double lhs = (a - b).squaredNorm();
  const double rhs =
      (1 - rho) * (c - b).squaredNorm() + (1 - 1 / rho) * (a - c).squaredNorm();
  const double slack = 1e-12 * (1.0 + lhs + (c - b).squaredNorm() +
                                (a - c).squaredNorm() / rho);
  if (!(lhs >= rhs - slack)) return Fmt("three-point gap", rhs - lhs, slack);
  return {};
}

struct PropertyEntry {
  const char* name;
  PropertyFn fn;
};

constexpr PropertyEntry kProperties[] = {
    {"prox_moreau", PropProxMoreau},     {"unbiased", PropUnbiased},
    {"grad_potential", PropGradPotential}, {"variance_bound", PropVarianceBound},
    {"projection", PropProjection},      {"three_point", PropThreePoint},
};

}  // namespace

const std::vector<std::string>& PropertyNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kProperties) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

ProptestOutcome RunPropertySuites(const ProptestConfig& cfg) {
  for (const auto& name : cfg.properties) {
    const auto& all = PropertyNames();
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      throw InvalidArgument("unknown property: " + name);
    }
  }
  ProptestOutcome out;
  std::uint64_t prop_id = 0;
  for (const auto& e : kProperties) {
    ++prop_id;
    if (!cfg.properties.empty() &&
        std::find(cfg.properties.begin(), cfg.properties.end(), e.name) ==
            cfg.properties.end()) {
      continue;
    }
    const std::int64_t first = cfg.replay >= 0 ? cfg.replay : 0;
    const std::int64_t last = cfg.replay >= 0 ? cfg.replay + 1 : cfg.samples;
    int run = 0;
    for (std::int64_t i = first; i < last; ++i, ++run) {
      CaseRng rng(cfg.seed, Stream::kProbe, prop_id, static_cast<std::uint64_t>(i));
      std::string detail;
      try {
        detail = e.fn(rng);
      } catch (const std::exception& ex) {
        detail = std::string("exception: ") + ex.what();
      }
      if (!detail.empty()) {
        out.failures.push_back({e.name, i, cfg.seed, detail});
        ++run;
        break;  // first failure per property
      }
    }
    out.cases_run.emplace_back(e.name, run);
  }
  return out;
}

}  // namespace mmspp::cli
