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

#include "mmspp/ssn.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace mmspp {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

const ComponentOracle& Comp(const SubproblemSpec& spec, Index i) {
  return *spec.problem->components[static_cast<size_t>(
      spec.batch[static_cast<size_t>(i)])];
}

Vec ConjGrad(const SubproblemSpec& spec, Index i, const Vec& xi) {
  const ComponentOracle& c = Comp(spec, i);
  return spec.block == Block::kX ? c.conj_grad_x(xi, spec.other_point)
                                 : c.conj_grad_y(xi, spec.other_point);
}

// Value of phi^x_{other,i} or phi^y_{other,i} at `u`.
double PhiValue(const SubproblemSpec& spec, Index i, const Vec& u) {
  const ComponentOracle& c = Comp(spec, i);
  if (spec.block == Block::kX) {
    return c.g_val(u) + c.f_val(u, spec.other_point);
  }
  return c.h_val(u) - c.f_val(spec.other_point, u);
}

bool InDomain(const SubproblemSpec& spec, Index i, const Vec& xi) {
  const ComponentOracle& c = Comp(spec, i);
  return spec.block == Block::kX ? c.in_conj_domain_x(xi, spec.other_point)
                                 : c.in_conj_domain_y(xi, spec.other_point);
}

void CheckDomains(const XiVector& xi, const SubproblemSpec& spec) {
  CheckDim(xi.size(), spec.size(), "xi");
  const Index d = spec.dim();
  for (Index i = 0; i < spec.b(); ++i) {
    if (!InDomain(spec, i, xi.segment(i * d, d))) {
      throw DomainError("xi block " + std::to_string(i) +
                            " left the conjugate domain",
                        i);
    }
  }
}

bool AllInDomain(const XiVector& xi, const SubproblemSpec& spec) {
  const Index d = spec.dim();
  for (Index i = 0; i < spec.b(); ++i) {
    if (!InDomain(spec, i, xi.segment(i * d, d))) return false;
  }
  return true;
}

}  // namespace

void SsnParams::Validate() const {
  if (!(gamma_hat > 0.0 && gamma_hat < 0.5)) {
    throw InvalidArgument("ssn: gamma_hat must lie in (0, 0.5)");
  }
  if (!(rho > 0.0 && rho < 1.0) || !(tau1 > 0.0 && tau1 < 1.0) ||
      !(tau2 > 0.0 && tau2 < 1.0)) {
    throw InvalidArgument("ssn: rho, tau1, tau2 must lie in (0, 1)");
  }
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw InvalidArgument("ssn: tau must lie in (0, 1]");
  }
  if (!(eta_floor >= 0.0)) throw InvalidArgument("ssn: eta_floor < 0");
  if (max_newton_iters < 1 || max_line_search < 0) {
    throw InvalidArgument("ssn: iteration limits must be positive");
  }
}

void SubproblemSpec::Validate() const {
  if (!problem || !regularizer) {
    throw InvalidArgument("subproblem: problem and regularizer are required");
  }
  if (!(alpha > 0.0)) throw InvalidArgument("subproblem: alpha must be > 0");
  if (!(eps_sub > 0.0)) throw InvalidArgument("subproblem: eps_sub must be > 0");
  if (batch.empty()) throw InvalidArgument("subproblem: empty batch");
  const Index want = block == Block::kX ? problem->n : problem->m_dim;
  const Index other = block == Block::kX ? problem->m_dim : problem->n;
  CheckDim(anchor.size(), want, "subproblem anchor");
  CheckDim(drift.size(), want, "subproblem drift");
  CheckDim(other_point.size(), other, "subproblem other point");
  regularizer->CheckDimension(want, "subproblem regularizer");
  for (Index idx : batch) {
    if (idx < 0 || idx >= problem->N()) {
      throw InvalidArgument("subproblem: batch index out of range");
    }
  }
  ssn.Validate();
}

SubproblemSpec MakeSubproblem(const ProblemSpec& problem, Block block,
                              Vec anchor, Vec other_point, double alpha,
                              BatchSample batch, Vec drift, double eps_sub,
                              const SsnParams& ssn) {
  SubproblemSpec spec;
  spec.problem = &problem;
  spec.block = block;
  spec.anchor = std::move(anchor);
  spec.other_point = std::move(other_point);
  spec.alpha = alpha;
  spec.batch = std::move(batch);
  spec.drift = std::move(drift);
  spec.regularizer = block == Block::kX ? &problem.phi : &problem.psi;
  spec.eps_sub = eps_sub;
  spec.ssn = ssn;
  spec.Validate();
  return spec;
}

Vec ProxArgument(const XiVector& xi, const SubproblemSpec& spec) {
  CheckDim(xi.size(), spec.size(), "xi");
  const Index d = spec.dim();
  Vec sum = Vec::Zero(d);
  for (Index i = 0; i < spec.b(); ++i) sum += xi.segment(i * d, d);
  return spec.anchor - spec.drift -
         (spec.alpha / static_cast<double>(spec.b())) * sum;
}

XiVector DefaultStart(const SubproblemSpec& spec) {
  const Index d = spec.dim();
  XiVector xi(spec.size());
  for (Index i = 0; i < spec.b(); ++i) {
    const ComponentOracle& c = Comp(spec, i);
    xi.segment(i * d, d) = spec.block == Block::kX
                               ? c.grad_phi_x(spec.anchor, spec.other_point)
                               : c.grad_phi_y(spec.other_point, spec.anchor);
  }
  return xi;
}

Vec ResidualF(const XiVector& xi, const SubproblemSpec& spec, double* scale) {
  CheckDomains(xi, spec);
  const Index d = spec.dim();
  const Vec z = ProxArgument(xi, spec);
  const Vec prox = ProxEval(*spec.regularizer, spec.alpha, z);
  Vec F(spec.size());
  double mag = 0.0;
  for (Index i = 0; i < spec.b(); ++i) {
    const Vec u = ConjGrad(spec, i, xi.segment(i * d, d));
    F.segment(i * d, d) = u - prox;
    if (scale) {
      // Rounding xi itself moves u by about |H| |xi| eps, which can exceed
      // |u| when the conjugate is steep.
      const Vec& seg = xi.segment(i * d, d);
      const ComponentOracle& c = Comp(spec, i);
      const Vec h = spec.block == Block::kX
                        ? c.conj_jac_x_diag(seg, spec.other_point)
                        : c.conj_jac_y_diag(seg, spec.other_point);
      mag = std::max({mag, u.lpNorm<Eigen::Infinity>(),
                      (h.cwiseAbs().array() * seg.cwiseAbs().array()).maxCoeff()});
    }
  }
  if (scale) {
    mag = std::max({mag, z.lpNorm<Eigen::Infinity>(),
                    spec.anchor.lpNorm<Eigen::Infinity>(),
                    spec.drift.lpNorm<Eigen::Infinity>()});
    *scale = mag;
  }
  return F;
}

double ResidualFloor(double scale, Index size) {
  return 32.0 * kEps *
         std::sqrt(static_cast<double>(size)) * scale;
}

double ObjectiveI(const XiVector& xi, const SubproblemSpec& spec,
                  double* magnitude) {
  CheckDomains(xi, spec);
  const Index d = spec.dim();
  const double b = static_cast<double>(spec.b());
  double value = 0.0, mag = 0.0;
  for (Index i = 0; i < spec.b(); ++i) {
    const Vec xi_i = xi.segment(i * d, d);
    const Vec u = ConjGrad(spec, i, xi_i);
    const double inner = u.dot(xi_i);
    const double phi = PhiValue(spec, i, u);
    value += inner - phi;
    mag += std::abs(inner) + std::abs(phi);
  }
  const Vec z = ProxArgument(xi, spec);
  const double quad = b / (2.0 * spec.alpha) * z.squaredNorm();
  const double env = b * MoreauEnvelope(*spec.regularizer, spec.alpha, z);
  value += quad - env;
  mag += quad + std::abs(env);
  if (magnitude) *magnitude = mag;
  return value;
}

JacobianW::JacobianW(const XiVector& xi, const SubproblemSpec& spec)
    : spec_(&spec), xi_(xi), dim_(spec.dim()), b_(spec.b()) {
  CheckDomains(xi, spec);
  const Vec z = ProxArgument(xi, spec);
  u_diag_ = ProxJacobian(*spec.regularizer, spec.alpha, z).diag;
  diag_.resize(size());
  const double c = spec.alpha / static_cast<double>(b_);
  for (Index i = 0; i < b_; ++i) {
    const ComponentOracle& comp = Comp(spec, i);
    const Vec xi_i = xi_.segment(i * dim_, dim_);
    const Vec h = spec.block == Block::kX
                      ? comp.conj_jac_x_diag(xi_i, spec.other_point)
                      : comp.conj_jac_y_diag(xi_i, spec.other_point);
    diag_.segment(i * dim_, dim_) = h + c * u_diag_;
  }
}

Vec JacobianW::Apply(const Vec& d) const {
  CheckDim(d.size(), size(), "JacobianW::Apply");
  const SubproblemSpec& spec = *spec_;
  Vec sum = Vec::Zero(dim_);
  for (Index i = 0; i < b_; ++i) sum += d.segment(i * dim_, dim_);
  const Vec coupling =
      (spec.alpha / static_cast<double>(b_)) * u_diag_.cwiseProduct(sum);
  Vec out(size());
  for (Index i = 0; i < b_; ++i) {
    const ComponentOracle& comp = Comp(spec, i);
    const Vec xi_i = xi_.segment(i * dim_, dim_);
    const Vec di = d.segment(i * dim_, dim_);
    out.segment(i * dim_, dim_) =
        (spec.block == Block::kX
             ? comp.conj_jac_x_apply(xi_i, spec.other_point, di)
             : comp.conj_jac_y_apply(xi_i, spec.other_point, di)) +
        coupling;
  }
  return out;
}

Mat JacobianW::ToDense() const {
  Mat W(size(), size());
  Vec e = Vec::Zero(size());
  for (Index j = 0; j < size(); ++j) {
    e[j] = 1.0;
    W.col(j) = Apply(e);
    e[j] = 0.0;
  }
  return W;
}

CgResult CgSolve(const LinearOperator& W, double eta, const Vec& rhs,
                 double tol, int max_iter, const Vec& precond_diag) {
  const Index n = rhs.size();
  const bool pre = precond_diag.size() == n && n > 0;
  Vec inv_m;
  if (pre) {
    inv_m = (precond_diag.array() + eta).inverse().matrix();
    if (!inv_m.allFinite() || (inv_m.array() <= 0.0).any()) {
      throw Error("CG: preconditioner diagonal is not positive");
    }
  }
  auto apply_pre = [&](const Vec& r) -> Vec {
    return pre ? Vec(inv_m.cwiseProduct(r)) : r;
  };

  CgResult res;
  res.x = Vec::Zero(n);
  Vec r = rhs;
  double rnorm = r.norm();
  if (!std::isfinite(rnorm)) throw Error("CG: non-finite right-hand side");
  if (rnorm <= tol) {
    res.residual = rnorm;
    return res;
  }
  Vec z = apply_pre(r);
  Vec p = z;
  double rz = r.dot(z);
  for (int it = 1; it <= max_iter; ++it) {
    Vec Ap = W(p) + eta * p;
    const double pAp = p.dot(Ap);
    if (!std::isfinite(pAp)) throw Error("CG: non-finite operator product");
    if (pAp <= 0.0) throw Error("CG: operator is not positive definite");
    const double a = rz / pAp;
    res.x += a * p;
    r -= a * Ap;
    rnorm = r.norm();
    res.iterations = it;
    if (rnorm <= tol) {
      res.residual = rnorm;
      return res;
    }
    z = apply_pre(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  res.residual = rnorm;
  std::ostringstream msg;
  msg << "CG reached the iteration cap " << max_iter
      << " with residual " << rnorm << " > tol " << tol;
  throw NonConvergenceError(msg.str());
}

LineSearchResult ArmijoSearch(const XiVector& xi, const Vec& d,
                              const Vec& grad, double objective,
                              const SubproblemSpec& spec) {
  const double slope = grad.dot(d);
  const double base = objective;
  double t = 1.0;
  for (int ell = 0; ell <= spec.ssn.max_line_search; ++ell) {
    XiVector cand = xi + t * d;
    if (AllInDomain(cand, spec)) {
      double mag = 0.0;
      const double val = ObjectiveI(cand, spec, &mag);
      // The base value has terms of comparable size to the candidate's.
      const double margin = 32.0 * kEps * mag;
      if (val <= base + spec.ssn.gamma_hat * t * slope + margin) {
        return {t, ell, std::move(cand), val};
      }
    }
    t *= spec.ssn.rho;
  }
  std::ostringstream msg;
  msg << "Armijo line search failed after " << spec.ssn.max_line_search
      << " reductions (slope " << slope << ", objective " << base << ")";
  throw NonConvergenceError(msg.str());
}

SubproblemResult SolveSubproblem(const SubproblemSpec& spec,
                                 const std::optional<XiVector>& warm_start,
                                 bool keep_iterates) {
  spec.Validate();
  SubproblemResult out;
  XiVector xi = warm_start ? *warm_start : DefaultStart(spec);
  CheckDomains(xi, spec);
  const SsnParams& prm = spec.ssn;
  const int cg_cap = static_cast<int>(10 * spec.size());
  double objective = ObjectiveI(xi, spec);

  for (int j = 0;; ++j) {
    if (keep_iterates) out.iterates.push_back(xi);
    double scale = 0.0;
    const Vec F = ResidualF(xi, spec, &scale);
    const double fn = F.norm();
    if (!std::isfinite(fn)) throw DivergenceError("non-finite subproblem residual");
    NewtonIteration rec;
    rec.f_norm = fn;
    rec.objective = objective;
    const double floor = ResidualFloor(scale, spec.size());
    if (fn <= std::max(spec.eps_sub, floor)) {
      out.report.limited_by_roundoff = fn > spec.eps_sub;
      out.report.history.push_back(rec);
      out.report.iterations = j;
      out.report.final_residual = fn;
      out.report.converged = true;
      break;
    }
    if (j >= prm.max_newton_iters) {
      out.report.history.push_back(rec);
      out.report.iterations = j;
      out.report.final_residual = fn;
      std::ostringstream msg;
      msg << "semismooth Newton did not reach eps_sub " << spec.eps_sub
          << " in " << j << " iterations (block " << BlockName(spec.block)
          << ", final residual " << fn << ", floor " << floor << "; last steps";
      const auto& h = out.report.history;
      for (size_t i = h.size() > 4 ? h.size() - 4 : 0; i + 1 < h.size(); ++i)
        msg << " [|F| " << h[i].f_norm << " t " << h[i].step << " cg "
            << h[i].cg_iters << "]";
      msg << ")";
      throw NonConvergenceError(msg.str());
    }
    const double eta =
        std::max(prm.eta_floor, prm.tau1 * std::min(prm.tau2, fn));
    const double tol = std::min(eta, std::pow(fn, 1.0 + prm.tau));
    const JacobianW W(xi, spec);
    const CgResult cg =
        CgSolve([&W](const Vec& v) { return W.Apply(v); }, eta, -F, tol,
                cg_cap, prm.precondition ? W.Diagonal() : Vec());
    const LineSearchResult ls = ArmijoSearch(xi, cg.x, F, objective, spec);

    rec.eta = eta;
    rec.cg_iters = cg.iterations;
    rec.cg_residual = cg.residual;
    rec.cg_tol = tol;
    rec.step = ls.step;
    rec.ell = ls.ell;
    out.report.history.push_back(rec);
    xi = ls.xi;
    objective = ls.objective;
  }
  out.xi = std::move(xi);
  return out;
}

Vec RecoverPrimal(const XiVector& xi, const SubproblemSpec& spec) {
  return ProxEval(*spec.regularizer, spec.alpha, ProxArgument(xi, spec));
}

double InexactnessBound(double eps_sub, double alpha, Index b, double mu_star) {
  if (!(alpha > 0.0) || b < 1 || !(mu_star > 0.0) || eps_sub < 0.0) {
    throw InvalidArgument("InexactnessBound: arguments must be positive");
  }
  return alpha * eps_sub / (mu_star * static_cast<double>(b));
}

std::string NewtonReportCsvRows(const NewtonReport& report, std::uint64_t s,
                                std::uint64_t k, Block block) {
  std::ostringstream os;
  os.precision(17);
  for (size_t j = 0; j < report.history.size(); ++j) {
    const NewtonIteration& it = report.history[j];
    os << s << ',' << k << ',' << BlockName(block) << ',' << j << ','
       << it.f_norm << ',' << it.step << ',' << it.cg_iters << ',' << it.eta
       << '\n';
  }
  return os.str();
}

}  // namespace mmspp
