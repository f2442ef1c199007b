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

#include "mmspp/structured_matrix.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mmspp {

StructuredMatrix::StructuredMatrix(Kind kind, Index rows, Index cols, Mat dense,
                                   Vec diag)
    : kind_(kind),
      rows_(rows),
      cols_(cols),
      dense_(std::move(dense)),
      diag_(std::move(diag)) {}

StructuredMatrix StructuredMatrix::Dense(Mat m) {
  const Index r = m.rows();
  const Index c = m.cols();
  return StructuredMatrix(Kind::kDense, r, c, std::move(m), Vec());
}

StructuredMatrix StructuredMatrix::Diagonal(Vec d) {
  const Index n = d.size();
  return StructuredMatrix(Kind::kDiagonal, n, n, Mat(), std::move(d));
}

StructuredMatrix StructuredMatrix::Diagonal(Vec d, Index rows, Index cols) {
  CheckDim(d.size(), std::min(rows, cols), "StructuredMatrix::Diagonal");
  return StructuredMatrix(Kind::kDiagonal, rows, cols, Mat(), std::move(d));
}

StructuredMatrix StructuredMatrix::ScaledIdentity(Index n, double s) {
  return Diagonal(Vec::Constant(n, s));
}

StructuredMatrix StructuredMatrix::Zero(Index rows, Index cols) {
  return Diagonal(Vec::Zero(std::min(rows, cols)), rows, cols);
}

Vec StructuredMatrix::Apply(const Vec& v) const {
  CheckDim(v.size(), cols_, "StructuredMatrix::Apply");
  if (kind_ == Kind::kDense) return dense_ * v;
  Vec out = Vec::Zero(rows_);
  const Index k = diag_.size();
  out.head(k) = diag_.cwiseProduct(v.head(k));
  return out;
}

Vec StructuredMatrix::ApplyTranspose(const Vec& v) const {
  CheckDim(v.size(), rows_, "StructuredMatrix::ApplyTranspose");
  if (kind_ == Kind::kDense) return dense_.transpose() * v;
  Vec out = Vec::Zero(cols_);
  const Index k = diag_.size();
  out.head(k) = diag_.cwiseProduct(v.head(k));
  return out;
}

Mat StructuredMatrix::ToDense() const {
  if (kind_ == Kind::kDense) return dense_;
  Mat out = Mat::Zero(rows_, cols_);
  for (Index j = 0; j < diag_.size(); ++j) out(j, j) = diag_[j];
  return out;
}

Vec StructuredMatrix::Diagonal() const {
  if (kind_ == Kind::kDense) return dense_.diagonal();
  Vec out = Vec::Zero(std::min(rows_, cols_));
  out.head(diag_.size()) = diag_;
  return out;
}

double StructuredMatrix::SpectralNorm() const {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  if (kind_ == Kind::kDiagonal) {
    return diag_.size() == 0 ? 0.0 : diag_.cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Mat> svd(dense_);
  return svd.singularValues()(0);
}

double StructuredMatrix::MinEigenvalue() const {
  if (!is_square()) throw InvalidArgument("MinEigenvalue of non-square matrix");
  if (kind_ == Kind::kDiagonal) return diag_.minCoeff();
  Eigen::SelfAdjointEigenSolver<Mat> es(dense_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double StructuredMatrix::MaxEigenvalue() const {
  if (!is_square()) throw InvalidArgument("MaxEigenvalue of non-square matrix");
  if (kind_ == Kind::kDiagonal) return diag_.maxCoeff();
  Eigen::SelfAdjointEigenSolver<Mat> es(dense_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(rows_ - 1);
}

StructuredMatrix StructuredMatrix::InverseSpd() const {
  if (!is_square()) throw InvalidArgument("InverseSpd of non-square matrix");
  if (kind_ == Kind::kDiagonal) {
    if ((diag_.array() <= 0.0).any()) {
      throw InvalidArgument("InverseSpd: diagonal has non-positive entries");
    }
    return Diagonal(diag_.cwiseInverse());
  }
  Eigen::LLT<Mat> llt(dense_);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("InverseSpd: matrix is not positive definite");
  }
  Mat inv = llt.solve(Mat::Identity(rows_, cols_));
  // Symmetrize to remove round-off asymmetry.
  return Dense(0.5 * (inv + inv.transpose()));
}

Vec StructuredMatrix::SolveSpd(const Vec& rhs) const {
  CheckDim(rhs.size(), rows_, "StructuredMatrix::SolveSpd");
  if (kind_ == Kind::kDiagonal) return rhs.cwiseQuotient(diag_);
  Eigen::LLT<Mat> llt(dense_);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("SolveSpd: matrix is not positive definite");
  }
  return llt.solve(rhs);
}

StructuredMatrix StructuredMatrix::Scaled(double s) const {
  if (kind_ == Kind::kDense) return Dense(s * dense_);
  return Diagonal(s * diag_, rows_, cols_);
}

Mat DenseSum(const StructuredMatrix& a, const StructuredMatrix& b) {
  CheckDim(b.rows(), a.rows(), "DenseSum rows");
  CheckDim(b.cols(), a.cols(), "DenseSum cols");
  return a.ToDense() + b.ToDense();
}

}  // namespace mmspp
