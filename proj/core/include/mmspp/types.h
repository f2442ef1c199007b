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

#ifndef MMSPP_TYPES_H_
#define MMSPP_TYPES_H_

#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mmspp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Which half of the saddle problem a quantity belongs to: X is the
// minimization block, Y the maximization block.
enum class Block { kX, kY };

inline const char* BlockName(Block b) { return b == Block::kX ? "x" : "y"; }

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnsupportedProblem : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public Error {
 public:
  using Error::Error;
};

// A point left the open domain of a conjugate oracle.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, Index block)
      : Error(what), block_(block) {}
  Index block() const { return block_; }

 private:
  Index block_;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class StaleReferenceError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Throws DimensionError unless `got == want`.
inline void CheckDim(Index got, Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(want) + ", got " + std::to_string(got));
  }
}

}  // namespace mmspp

#endif  // MMSPP_TYPES_H_
