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

#include "mmspp/problem.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace mmspp {
namespace {

const QuadraticBilinearComponent* AsQuadratic(const ComponentPtr& c) {
  return dynamic_cast<const QuadraticBilinearComponent*>(c.get());
}

}  // namespace

void ProblemSpec::Validate() const {
  if (components.empty()) throw InvalidArgument("problem needs N >= 1");
  for (const auto& comp : components) {
    if (!comp) throw InvalidArgument("null component");
    CheckDim(comp->n(), n, "component x dimension");
    CheckDim(comp->m(), m_dim, "component y dimension");
  }
  CheckDim(A.rows(), q, "A rows");
  CheckDim(A.cols(), n, "A cols");
  CheckDim(B.rows(), q, "B rows");
  CheckDim(B.cols(), m_dim, "B cols");
  CheckDim(c.size(), q, "c");
  phi.CheckDimension(n, "phi");
  psi.CheckDimension(m_dim, "psi");
  if (!(mu_x > 0.0) || !(mu_y > 0.0)) {
    throw InvalidArgument("mu_x and mu_y must be positive");
  }
  // Small relative slack: for a single quadratic component the two sides
  // coincide and are computed by different routines.
  const double slack = 1e-12;
  if (L_phi_x() < mu_x * (1.0 - slack) || L_phi_y() < mu_y * (1.0 - slack)) {
    throw InvalidArgument("Lipschitz constants below strong convexity moduli");
  }
  if (!(mu_star_x > 0.0) || !(mu_star_y > 0.0)) {
    throw InvalidArgument("mu_star_x and mu_star_y must be positive");
  }
}

ProblemSpec MakeProblem(std::vector<ComponentPtr> components, Regularizer phi,
                        Regularizer psi, Mat A, Mat B, Vec c) {
  if (components.empty()) throw InvalidArgument("problem needs N >= 1");
  ProblemSpec p;
  p.n = components.front()->n();
  p.m_dim = components.front()->m();
  p.q = c.size();
  p.components = std::move(components);
  p.phi = std::move(phi);
  p.psi = std::move(psi);
  p.A = std::move(A);
  p.B = std::move(B);
  p.c = std::move(c);

  bool all_quadratic = true;
  for (const auto& comp : p.components) {
    if (!AsQuadratic(comp)) all_quadratic = false;
  }
  if (all_quadratic) {
    const double inv_n = 1.0 / static_cast<double>(p.N());
    // Averaged Hessians. Diagonal-only instances stay diagonal.
    bool diag_p = true, diag_q = true;
    for (const auto& comp : p.components) {
      const auto* qc = AsQuadratic(comp);
      diag_p &= qc->P().kind() == StructuredMatrix::Kind::kDiagonal;
      diag_q &= qc->Q().kind() == StructuredMatrix::Kind::kDiagonal;
    }
    Vec pd = Vec::Zero(diag_p ? p.n : 0), qd = Vec::Zero(diag_q ? p.m_dim : 0);
    Mat pm = Mat::Zero(diag_p ? 0 : p.n, diag_p ? 0 : p.n);
    Mat qm = Mat::Zero(diag_q ? 0 : p.m_dim, diag_q ? 0 : p.m_dim);
    for (const auto& comp : p.components) {
      const auto* qc = AsQuadratic(comp);
      p.L_g_bar = std::max(p.L_g_bar, qc->P().SpectralNorm());
      p.L_h_bar = std::max(p.L_h_bar, qc->Q().SpectralNorm());
      p.L_f_bar = std::max(p.L_f_bar, qc->K().SpectralNorm());
      if (diag_p) pd += qc->P().diag(); else pm += qc->P().ToDense();
      if (diag_q) qd += qc->Q().diag(); else qm += qc->Q().ToDense();
    }
    p.mu_x = diag_p ? inv_n * pd.minCoeff()
                    : StructuredMatrix::Dense(inv_n * pm).MinEigenvalue();
    p.mu_y = diag_q ? inv_n * qd.minCoeff()
                    : StructuredMatrix::Dense(inv_n * qm).MinEigenvalue();
    p.mu_star_x = 1.0 / p.L_phi_x();
    p.mu_star_y = 1.0 / p.L_phi_y();
    p.Validate();
  }
  return p;
}

IterateState IterateState::Initial(const ProblemSpec& p, Vec x0, Vec y0,
                                   Vec l0) {
  CheckDim(x0.size(), p.n, "initial x");
  CheckDim(y0.size(), p.m_dim, "initial y");
  CheckDim(l0.size(), p.q, "initial lambda");
  IterateState s;
  s.x = std::move(x0);
  s.y = std::move(y0);
  s.lambda = std::move(l0);
  s.RefreshReference(p);
  return s;
}

void IterateState::RefreshReference(const ProblemSpec& p) {
  x_ref = x;
  y_ref = y;
  lambda_ref = lambda;
  auto [gx, gy] = FullGradients(p, x_ref, y_ref);
  grad_ref_x = std::move(gx);
  grad_ref_y = -gy;
  ++ref_token;
}

std::pair<Vec, Vec> FullGradients(const ProblemSpec& p, const Vec& x,
                                  const Vec& y) {
  CheckDim(x.size(), p.n, "FullGradients x");
  CheckDim(y.size(), p.m_dim, "FullGradients y");
  Vec gx = Vec::Zero(p.n);
  Vec gy = Vec::Zero(p.m_dim);
  for (const auto& comp : p.components) {
    gx += comp->grad_phi_x(x, y);
    gy += comp->grad_phi_y(x, y);
  }
  const double inv_n = 1.0 / static_cast<double>(p.N());
  return {inv_n * gx, inv_n * gy};
}

double LagrangianValue(const ProblemSpec& p, const Vec& x, const Vec& y,
                       const Vec& lambda) {
  CheckDim(x.size(), p.n, "LagrangianValue x");
  CheckDim(y.size(), p.m_dim, "LagrangianValue y");
  CheckDim(lambda.size(), p.q, "LagrangianValue lambda");
  const double phi = p.phi.Value(x);
  const double psi = p.psi.Value(y);
  if (std::isinf(phi) || std::isinf(psi)) return kInfinity;
  double g = 0.0, h = 0.0, f = 0.0;
  for (const auto& comp : p.components) {
    g += comp->g_val(x);
    h += comp->h_val(y);
    f += comp->f_val(x, y);
  }
  const double inv_n = 1.0 / static_cast<double>(p.N());
  return phi + inv_n * (g + f - h) - psi +
         lambda.dot(p.A * x + p.B * y + p.c);
}

Vec NaturalResidual(const ProblemSpec& p, Block block, const Vec& x,
                    const Vec& y, const Vec& lambda, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("NaturalResidual: alpha <= 0");
  CheckDim(lambda.size(), p.q, "NaturalResidual lambda");
  auto [gx, gy] = FullGradients(p, x, y);
  if (block == Block::kX) {
    return x - ProxEval(p.phi, alpha,
                        x - alpha * (gx + p.A.transpose() * lambda));
  }
  // gy = grad h - grad_y f, so the ascent direction is -gy + B'lambda.
  return y - ProxEval(p.psi, alpha,
                      y + alpha * (-gy + p.B.transpose() * lambda));
}

double KktResidual(const ProblemSpec& p, const Vec& x, const Vec& y,
                   const Vec& lambda) {
  const double rx = NaturalResidual(p, Block::kX, x, y, lambda, 1.0).norm();
  const double ry = NaturalResidual(p, Block::kY, x, y, lambda, 1.0).norm();
  const double rc = (p.A * x + p.B * y + p.c).norm();
  return std::max({rx, ry, rc});
}

SaddlePoint SolveKktReference(const ProblemSpec& p) {
  if (p.phi.kind() != Regularizer::Kind::kZero ||
      p.psi.kind() != Regularizer::Kind::kZero) {
    throw UnsupportedProblem(
        "KKT reference requires zero regularizers on both blocks");
  }
  const Index n = p.n, m = p.m_dim, q = p.q;
  Mat Pb = Mat::Zero(n, n), Qb = Mat::Zero(m, m), Kb = Mat::Zero(m, n);
  Vec pb = Vec::Zero(n), qb = Vec::Zero(m);
  for (const auto& comp : p.components) {
    const auto* qc = AsQuadratic(comp);
    if (!qc) {
      throw UnsupportedProblem("KKT reference requires quadratic components, "
                               "found kind '" + comp->kind() + "'");
    }
    Pb += qc->P().ToDense();
    Qb += qc->Q().ToDense();
    Kb += qc->K().ToDense();
    pb += qc->p();
    qb += qc->q();
  }
  const double inv_n = 1.0 / static_cast<double>(p.N());
  Pb *= inv_n; Qb *= inv_n; Kb *= inv_n; pb *= inv_n; qb *= inv_n;

  // Stationarity in x:  Pb x + pb + Kb' y + A' lambda = 0
  // Stationarity in y:  Qb y + qb - Kb x - B' lambda = 0
  // Feasibility:        A x + B y + c = 0
  Mat M = Mat::Zero(n + m + q, n + m + q);
  M.block(0, 0, n, n) = Pb;
  M.block(0, n, n, m) = Kb.transpose();
  M.block(0, n + m, n, q) = p.A.transpose();
  M.block(n, 0, m, n) = -Kb;
  M.block(n, n, m, m) = Qb;
  M.block(n, n + m, m, q) = -p.B.transpose();
  M.block(n + m, 0, q, n) = p.A;
  M.block(n + m, n, q, m) = p.B;
  Vec rhs(n + m + q);
  rhs << -pb, -qb, -p.c;

  Eigen::FullPivLU<Mat> lu(M);
  if (!lu.isInvertible()) {
    throw RankDeficientError(
        "KKT matrix is singular (rank " + std::to_string(lu.rank()) + " of " +
        std::to_string(M.rows()) + "); [A B] must have full row rank");
  }
  Vec sol = lu.solve(rhs);
  // One step of iterative refinement.
  sol += lu.solve(rhs - M * sol);

  SaddlePoint sp;
  sp.x_star = sol.head(n);
  sp.y_star = sol.segment(n, m);
  sp.lambda_star = sol.tail(q);
  sp.kkt_residual = KktResidual(p, sp.x_star, sp.y_star, sp.lambda_star);
  return sp;
}

}  // namespace mmspp
