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

#include "mmspp/problem_io.h"

#include <cmath>
#include <memory>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

namespace mmspp {
namespace {

using json = nlohmann::json;

json Number(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

double ParseNumber(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    throw InvalidArgument("bad numeric string '" + s + "'");
  }
  if (!j.is_number()) throw InvalidArgument("expected a number");
  return j.get<double>();
}

json VecToJson(const Vec& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(Number(v[i]));
  return a;
}

Vec VecFromJson(const json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array");
  Vec v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) v[i] = ParseNumber(j[i]);
  return v;
}

json MatToJson(const Mat& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json data = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  }
  j["data"] = std::move(data);
  return j;
}

Mat MatFromJson(const json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const json& data = j.at("data");
  CheckDim(static_cast<Index>(data.size()), rows * cols, "matrix data");
  Mat m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = ParseNumber(data[r * cols + c]);
  }
  return m;
}

json StructuredToJson(const StructuredMatrix& s) {
  if (s.kind() == StructuredMatrix::Kind::kDense) {
    json j = MatToJson(s.dense());
    j["kind"] = "dense";
    return j;
  }
  return json{{"kind", "diagonal"},
              {"rows", s.rows()},
              {"cols", s.cols()},
              {"diag", VecToJson(s.diag())}};
}

StructuredMatrix StructuredFromJson(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dense") return StructuredMatrix::Dense(MatFromJson(j));
  if (kind == "diagonal") {
    return StructuredMatrix::Diagonal(VecFromJson(j.at("diag")),
                                      j.at("rows").get<Index>(),
                                      j.at("cols").get<Index>());
  }
  throw InvalidArgument("unknown matrix kind '" + kind + "'");
}

json RegToJson(const Regularizer& r) {
  json j;
  j["kind"] = KindName(r.kind());
  switch (r.kind()) {
    case Regularizer::Kind::kZero:
      break;
    case Regularizer::Kind::kL1:
    case Regularizer::Kind::kSqL2:
      j["weight"] = r.weight();
      break;
    case Regularizer::Kind::kBox:
      j["lo"] = VecToJson(r.lo());
      j["hi"] = VecToJson(r.hi());
      break;
  }
  return j;
}

Regularizer RegFromJson(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return Regularizer::Zero();
  if (kind == "l1") return Regularizer::L1(j.at("weight").get<double>());
  if (kind == "sql2") return Regularizer::SquaredL2(j.at("weight").get<double>());
  if (kind == "box") {
    return Regularizer::Box(VecFromJson(j.at("lo")), VecFromJson(j.at("hi")));
  }
  throw InvalidArgument("unknown regularizer kind '" + kind + "'");
}

void RejectUnknownKeys(const json& j, const std::set<std::string>& allowed,
                       const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw InvalidArgument(std::string("unknown key '") + it.key() + "' in " +
                            where);
    }
  }
}

}  // namespace

std::string RegularizerToJson(const Regularizer& r) {
  return RegToJson(r).dump();
}

Regularizer RegularizerFromJson(const std::string& text) {
  return RegFromJson(json::parse(text));
}

std::string ProblemToJson(const ProblemSpec& p, int indent) {
  json j;
  j["format"] = kFormatTag;
  j["n"] = p.n;
  j["m"] = p.m_dim;
  j["q"] = p.q;
  j["phi"] = RegToJson(p.phi);
  j["psi"] = RegToJson(p.psi);
  j["A"] = MatToJson(p.A);
  j["B"] = MatToJson(p.B);
  j["c"] = VecToJson(p.c);
  j["moduli"] = {{"mu_x", p.mu_x},           {"mu_y", p.mu_y},
                 {"L_g_bar", p.L_g_bar},     {"L_h_bar", p.L_h_bar},
                 {"L_f_bar", p.L_f_bar},     {"mu_star_x", p.mu_star_x},
                 {"mu_star_y", p.mu_star_y}};
  json comps = json::array();
  for (const auto& comp : p.components) {
    const auto* qc =
        dynamic_cast<const QuadraticBilinearComponent*>(comp.get());
    if (!qc) {
      throw UnsupportedProblem("cannot serialize component kind '" +
                               comp->kind() + "'");
    }
    comps.push_back({{"kind", qc->kind()},
                     {"P", StructuredToJson(qc->P())},
                     {"p", VecToJson(qc->p())},
                     {"Q", StructuredToJson(qc->Q())},
                     {"q", VecToJson(qc->q())},
                     {"K", StructuredToJson(qc->K())}});
  }
  j["components"] = std::move(comps);
  return j.dump(indent);
}

ProblemSpec ProblemFromJson(const std::string& text) {
  const json j = json::parse(text);
  RejectUnknownKeys(j,
                    {"format", "n", "m", "q", "phi", "psi", "A", "B", "c",
                     "moduli", "components"},
                    "problem");
  if (j.value("format", std::string()) != kFormatTag) {
    throw InvalidArgument(std::string("problem format must be '") +
                          kFormatTag + "'");
  }
  std::vector<ComponentPtr> comps;
  for (const auto& cj : j.at("components")) {
    const std::string kind = cj.at("kind").get<std::string>();
    if (kind != "quadratic_bilinear") {
      throw InvalidArgument("unknown component kind '" + kind + "'");
    }
    comps.push_back(std::make_shared<QuadraticBilinearComponent>(
        StructuredFromJson(cj.at("P")), VecFromJson(cj.at("p")),
        StructuredFromJson(cj.at("Q")), VecFromJson(cj.at("q")),
        StructuredFromJson(cj.at("K"))));
  }
  ProblemSpec p = MakeProblem(std::move(comps), RegFromJson(j.at("phi")),
                              RegFromJson(j.at("psi")), MatFromJson(j.at("A")),
                              MatFromJson(j.at("B")), VecFromJson(j.at("c")));
  CheckDim(p.n, j.at("n").get<Index>(), "problem n");
  CheckDim(p.m_dim, j.at("m").get<Index>(), "problem m");
  CheckDim(p.q, j.at("q").get<Index>(), "problem q");
  if (j.contains("moduli")) {
    const json& mj = j.at("moduli");
    p.mu_x = mj.value("mu_x", p.mu_x);
    p.mu_y = mj.value("mu_y", p.mu_y);
    p.L_g_bar = mj.value("L_g_bar", p.L_g_bar);
    p.L_h_bar = mj.value("L_h_bar", p.L_h_bar);
    p.L_f_bar = mj.value("L_f_bar", p.L_f_bar);
    p.mu_star_x = mj.value("mu_star_x", p.mu_star_x);
    p.mu_star_y = mj.value("mu_star_y", p.mu_star_y);
  }
  p.Validate();
  return p;
}

}  // namespace mmspp
