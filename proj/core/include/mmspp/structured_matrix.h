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

#ifndef MMSPP_STRUCTURED_MATRIX_H_
#define MMSPP_STRUCTURED_MATRIX_H_

#include "mmspp/types.h"

namespace mmspp {

// A rows x cols matrix stored either densely or as a (possibly rectangular)
// diagonal. Diagonal storage holds min(rows, cols) entries placed at (j, j).
//
// The experiment catalog needs both: regression couplings are dense while the
// network costs are diagonal and there are thousands of components, so
// materializing them densely is not an option.
class StructuredMatrix {
 public:
  enum class Kind { kDense, kDiagonal };

  StructuredMatrix() : StructuredMatrix(Diagonal(Vec())) {}

  static StructuredMatrix Dense(Mat m);
  static StructuredMatrix Diagonal(Vec d);
  static StructuredMatrix Diagonal(Vec d, Index rows, Index cols);
  static StructuredMatrix ScaledIdentity(Index n, double s);
  static StructuredMatrix Zero(Index rows, Index cols);

  Kind kind() const { return kind_; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Mat& dense() const { return dense_; }
  const Vec& diag() const { return diag_; }

  Vec Apply(const Vec& v) const;
  Vec ApplyTranspose(const Vec& v) const;
  Mat ToDense() const;
  // Main diagonal of the (square) matrix.
  Vec Diagonal() const;

  double SpectralNorm() const;

  // For symmetric matrices only.
  double MinEigenvalue() const;
  double MaxEigenvalue() const;
  // Inverse of a symmetric positive definite matrix; throws InvalidArgument
  // if the matrix is not positive definite.
  StructuredMatrix InverseSpd() const;
  // Solves this * x = rhs for a symmetric positive definite matrix.
  Vec SolveSpd(const Vec& rhs) const;

  StructuredMatrix Scaled(double s) const;

 private:
  StructuredMatrix(Kind kind, Index rows, Index cols, Mat dense, Vec diag);

  Kind kind_;
  Index rows_;
  Index cols_;
  Mat dense_;
  Vec diag_;
};

// Sum of equally-shaped structured matrices as a dense matrix.
Mat DenseSum(const StructuredMatrix& a, const StructuredMatrix& b);

}  // namespace mmspp

#endif  // MMSPP_STRUCTURED_MATRIX_H_
