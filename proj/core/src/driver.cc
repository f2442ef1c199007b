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

#include "mmspp/driver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/QR>
#include <nlohmann/json.hpp>

namespace mmspp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool AllFinite(const IterateState& st) {
  return st.x.allFinite() && st.y.allFinite() && st.lambda.allFinite();
}

EpochRow MakeRow(const ProblemSpec& p, const SolverConfig& cfg,
                 const IterateState& st, std::uint64_t s) {
  EpochRow row;
  row.s = s;
  const Vec r = p.A * st.x_ref + p.B * st.y_ref + p.c;
  row.constraint_violation = r.norm();
  row.kkt_residual = KktResidual(p, st.x_ref, st.y_ref, st.lambda_ref);
  if (cfg.reference) {
    row.dist_sq_primal = (st.x_ref - cfg.reference->x_star).squaredNorm() +
                         (st.y_ref - cfg.reference->y_star).squaredNorm();
    row.dist_sq_dual =
        (st.lambda_ref - cfg.reference->lambda_star).squaredNorm();
  } else {
    row.dist_sq_primal = kNaN;
    row.dist_sq_dual = kNaN;
  }
  return row;
}

std::string Fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double DeltaSchedule::At(std::uint64_t s) const {
  if (kind == Kind::kConstant) return delta0;
  return delta0 * std::pow(ratio, static_cast<double>(s));
}

void DeltaSchedule::Validate() const {
  if (!(delta0 >= 0.0)) throw InvalidArgument("delta0 must be >= 0");
  if (kind == Kind::kGeometric && !(ratio >= 0.0 && ratio <= 1.0)) {
    throw InvalidArgument("geometric delta ratio must lie in [0, 1]");
  }
}

void SolverConfig::Validate(const ProblemSpec& p) const {
  if (S < 1) throw InvalidArgument("S must be >= 1");
  if (m_inner < 1) throw InvalidArgument("m_inner must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("alpha must be positive and finite");
  }
  if (!(eps_floor > 0.0)) throw InvalidArgument("eps_floor must be > 0");
  sampler.Validate(p.N());
  delta.Validate();
  ssn.Validate();
  if (x0.size() != 0) CheckDim(x0.size(), p.n, "x0");
  if (y0.size() != 0) CheckDim(y0.size(), p.m_dim, "y0");
  if (lambda0.size() != 0) CheckDim(lambda0.size(), p.q, "lambda0");
}

double TheoreticalAlphaBound(const ProblemSpec& p, int m_inner, Index b) {
  if (m_inner < 1 || b < 1) {
    throw InvalidArgument("TheoreticalAlphaBound: m_inner and b must be >= 1");
  }
  const double mm = static_cast<double>(m_inner) * (m_inner - 1);
  const double bb = static_cast<double>(b);
  const double lx = p.L_phi_x(), ly = p.L_phi_y();
  const double t1 = ly + std::sqrt(2.0 * mm) * ly / std::sqrt(bb) +
                    std::sqrt(mm) * lx / std::sqrt(2.0 * bb);
  const double t2 = lx + std::sqrt(2.0 * mm) * lx / std::sqrt(bb) +
                    std::sqrt(mm) * ly / std::sqrt(2.0 * bb);
  return std::min(1.0 / t1, 1.0 / t2);
}

double ToleranceSchedule(const ProblemSpec& p, const Vec& x_ref,
                         const Vec& y_ref, const Vec& lambda_ref,
                         double delta_s, double eps_floor) {
  if (!(delta_s >= 0.0)) throw InvalidArgument("delta_s must be >= 0");
  if (delta_s == 0.0) return eps_floor;
  const double rx =
      NaturalResidual(p, Block::kX, x_ref, y_ref, lambda_ref, 1.0).norm();
  const double ry =
      NaturalResidual(p, Block::kY, x_ref, y_ref, lambda_ref, 1.0).norm();
  return std::max(eps_floor, delta_s * std::min(rx, ry));
}

IterateState InnerStep(const IterateState& state, const ProblemSpec& p,
                       const SolverConfig& cfg, std::uint64_t s,
                       std::uint64_t k, double eps_sub, InnerStepInfo* info) {
  const BatchSample batch = DrawBatch(cfg.sampler, p.N(), s, k);
  const VarianceCorrection vc = BuildCorrection(p, batch, state, cfg.alpha);

  auto context = [&](Block block, const Error& e) {
    std::ostringstream os;
    os << e.what() << " [s=" << s << ", k=" << k
       << ", block=" << BlockName(block) << "]";
    return os.str();
  };

  IterateState next = state;
  NewtonReport y_report, x_report;
  try {
    const SubproblemSpec ys =
        MakeSubproblem(p, Block::kY, state.y, state.x, cfg.alpha, batch,
                       vc.hat_v_y, eps_sub, cfg.ssn);
    SubproblemResult yr = SolveSubproblem(ys);
    next.y = RecoverPrimal(yr.xi, ys);
    y_report = std::move(yr.report);
  } catch (const NonConvergenceError& e) {
    throw NonConvergenceError(context(Block::kY, e));
  }
  try {
    const SubproblemSpec xs =
        MakeSubproblem(p, Block::kX, state.x, next.y, cfg.alpha, batch,
                       vc.hat_v_x, eps_sub, cfg.ssn);
    SubproblemResult xr = SolveSubproblem(xs);
    next.x = RecoverPrimal(xr.xi, xs);
    x_report = std::move(xr.report);
  } catch (const NonConvergenceError& e) {
    throw NonConvergenceError(context(Block::kX, e));
  }
  next.lambda = state.lambda - cfg.alpha * (p.A * next.x + p.B * next.y + p.c);

  if (info) {
    info->batch = batch;
    info->correction = vc;
    info->y_report = std::move(y_report);
    info->x_report = std::move(x_report);
  }
  return next;
}

ConstraintProjector::ConstraintProjector(const ProblemSpec& p) : p_(&p) {
  if (p.q == 0) return;
  Mat AB(p.q, p.n + p.m_dim);
  AB << p.A, p.B;
  Eigen::ColPivHouseholderQR<Mat> qr(AB.transpose());
  qr.setThreshold(1e-12);
  if (qr.rank() < p.q) {
    throw RankDeficientError(
        "[A B] has rank " + std::to_string(qr.rank()) + " < " +
        std::to_string(p.q) +
        " rows; projection onto the constraint set needs full row rank");
  }
  Eigen::HouseholderQR<Mat> hh(AB.transpose());
  q_thin_ = hh.householderQ() * Mat::Identity(p.n + p.m_dim, p.q);
  r_ = hh.matrixQR().topRows(p.q).triangularView<Eigen::Upper>();
}

ProjectionResult ConstraintProjector::Project(const Vec& x,
                                              const Vec& y) const {
  const ProblemSpec& p = *p_;
  CheckDim(x.size(), p.n, "Project x");
  CheckDim(y.size(), p.m_dim, "Project y");
  ProjectionResult out;
  if (p.q == 0) {
    out.x = x;
    out.y = y;
    out.zeta = Vec();
    return out;
  }
  // [A B]' = Q R, so AA' + BB' = R'R and the correction is Q R^{-T} r.
  const Vec r = p.A * x + p.B * y + p.c;
  Vec w = r_.transpose().triangularView<Eigen::Lower>().solve(r);
  // One refinement step against round-off in w.
  const Vec corr0 = q_thin_ * w;
  const Vec r1 = r - (p.A * corr0.head(p.n) + p.B * corr0.tail(p.m_dim));
  w += r_.transpose().triangularView<Eigen::Lower>().solve(r1);
  const Vec corr = q_thin_ * w;
  out.zeta = r_.triangularView<Eigen::Upper>().solve(w);
  out.x = x - corr.head(p.n);
  out.y = y - corr.tail(p.m_dim);
  return out;
}

ProjectionResult ProjectOntoC(const ProblemSpec& p, const Vec& x,
                              const Vec& y) {
  return ConstraintProjector(p).Project(x, y);
}

std::pair<IterateState, RunReport> OuterLoop(const ProblemSpec& p,
                                             const SolverConfig& cfg) {
  cfg.Validate(p);
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed_ms = [&]() {
    if (!cfg.record_wall_time) return 0.0;
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  RunReport report;
  report.has_reference = cfg.reference.has_value();
  report.alpha = cfg.alpha;
  report.alpha_bound =
      TheoreticalAlphaBound(p, cfg.m_inner, cfg.sampler.batch_size);
  report.alpha_above_bound = cfg.alpha > report.alpha_bound;
  report.theoretical_ratio = TheoreticalRatio(cfg.alpha, p.mu_min());
  report.fitted_ratio = kNaN;

  std::optional<ConstraintProjector> projector;
  if (cfg.project_each_outer) projector.emplace(p);

  IterateState st = IterateState::Initial(
      p, cfg.x0.size() ? cfg.x0 : Vec(Vec::Zero(p.n)),
      cfg.y0.size() ? cfg.y0 : Vec(Vec::Zero(p.m_dim)),
      cfg.lambda0.size() ? cfg.lambda0 : Vec(Vec::Zero(p.q)));
  report.rows.push_back(MakeRow(p, cfg, st, 0));
  std::ostringstream newton;

  for (int s = 0; s < cfg.S; ++s) {
    const auto su = static_cast<std::uint64_t>(s);
    const double eps = ToleranceSchedule(p, st.x_ref, st.y_ref, st.lambda_ref,
                                         cfg.delta.At(su), cfg.eps_floor);
    double newton_iters = 0.0;
    for (int k = 0; k < cfg.m_inner; ++k) {
      const auto ku = static_cast<std::uint64_t>(k);
      InnerStepInfo info;
      IterateState next;
      try {
        next = InnerStep(st, p, cfg, su, ku, eps, &info);
      } catch (const DivergenceError& e) {
        throw RunAborted(std::string(e.what()) + " at s=" + std::to_string(s) +
                             ", k=" + std::to_string(k),
                         report);
      }
      if (!AllFinite(next)) {
        throw RunAborted("non-finite iterate at s=" + std::to_string(s) +
                             ", k=" + std::to_string(k),
                         report);
      }
      st = std::move(next);
      newton_iters += info.y_report.iterations + info.x_report.iterations;
      if (cfg.record_newton) {
        newton << NewtonReportCsvRows(info.y_report, su, ku, Block::kY)
               << NewtonReportCsvRows(info.x_report, su, ku, Block::kX);
      }
      if (cfg.on_step) cfg.on_step(su, ku, st);
    }
    if (projector) {
      ProjectionResult pr = projector->Project(st.x, st.y);
      st.x = std::move(pr.x);
      st.y = std::move(pr.y);
    }
    st.RefreshReference(p);
    EpochRow row = MakeRow(p, cfg, st, su + 1);
    row.mean_newton_iters = newton_iters / (2.0 * cfg.m_inner);
    row.wall_ms = elapsed_ms();
    report.rows.push_back(row);
  }
  report.newton_csv = newton.str();
  if (report.has_reference) {
    report.fitted_ratio = EstimateContraction(report, p).fitted_ratio;
  }
  return {std::move(st), std::move(report)};
}

double TheoreticalRatio(double alpha, double mu_min) {
  return 1.0 / (1.0 + 2.0 * alpha * mu_min);
}

double FitTailRatio(const std::vector<double>& d, double floor) {
  const size_t n = d.size();
  if (n < 2) return kNaN;
  size_t lo = (n - 1) / 2;
  size_t hi = lo;
  while (hi + 1 < n && d[hi + 1] > floor && std::isfinite(d[hi + 1])) ++hi;
  if (!(d[lo] > floor) || hi == lo) return kNaN;
  return std::pow(d[hi] / d[lo], 1.0 / static_cast<double>(hi - lo));
}

ContractionEstimate EstimateContraction(const RunReport& report,
                                        const ProblemSpec& p) {
  if (!report.has_reference) {
    throw InvalidArgument("contraction estimate needs a reference point");
  }
  if (report.rows.size() < 11) {
    throw InvalidArgument("contraction estimate needs at least 10 epochs");
  }
  std::vector<double> d;
  for (const auto& r : report.rows) d.push_back(r.dist_sq_primal);
  return {FitTailRatio(d), TheoreticalRatio(report.alpha, p.mu_min())};
}

double LogLinearSlope(const std::vector<double>& d, double floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > floor)) continue;
    const double x = static_cast<double>(i), y = std::log(d[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) return kNaN;
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

std::string RunReport::ToCsv() const {
  std::ostringstream os;
  os << kRunCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.s << ',' << Fmt(r.dist_sq_primal) << ',' << Fmt(r.dist_sq_dual)
       << ',' << Fmt(r.constraint_violation) << ',' << Fmt(r.kkt_residual)
       << ',' << Fmt(r.mean_newton_iters) << ',' << Fmt(r.wall_ms) << '\n';
  }
  return os.str();
}

std::string RunReport::SummaryJson() const {
  nlohmann::json j;
  auto num = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  j["epochs"] = rows.empty() ? 0 : rows.size() - 1;
  j["alpha"] = alpha;
  j["alpha_bound"] = alpha_bound;
  j["alpha_above_bound"] = alpha_above_bound;
  j["fitted_ratio"] = num(fitted_ratio);
  j["theoretical_ratio"] = num(theoretical_ratio);
  if (!rows.empty()) {
    j["final_kkt_residual"] = num(rows.back().kkt_residual);
    j["final_constraint_violation"] = num(rows.back().constraint_violation);
  }
  return j.dump(2);
}

}  // namespace mmspp
