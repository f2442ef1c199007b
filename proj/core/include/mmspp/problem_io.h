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

#ifndef MMSPP_PROBLEM_IO_H_
#define MMSPP_PROBLEM_IO_H_

#include <string>

#include "mmspp/problem.h"

namespace mmspp {

inline constexpr const char* kFormatTag = "minimax-spp/1";

// JSON round trip for problems built from quadratic-bilinear components.
// Matrices are {"rows", "cols", "data"} with row-major data; structured
// component matrices carry "kind": "dense" | "diagonal". Infinite box bounds
// are written as the strings "inf" / "-inf".
std::string ProblemToJson(const ProblemSpec& p, int indent = 1);
ProblemSpec ProblemFromJson(const std::string& text);

std::string RegularizerToJson(const Regularizer& r);
Regularizer RegularizerFromJson(const std::string& text);

}  // namespace mmspp

#endif  // MMSPP_PROBLEM_IO_H_
