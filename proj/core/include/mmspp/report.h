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

#ifndef MMSPP_REPORT_H_
#define MMSPP_REPORT_H_

#include <string>
#include <vector>

namespace mmspp {

// Writes `content` to `path` through a sibling temporary file and rename, so
// readers never observe a partial file. Creates parent directories.
void WriteFileAtomic(const std::string& path, const std::string& content);

std::string ReadFile(const std::string& path);

// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string FormatDouble(double v);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  int width = 640;
  int height = 400;
  std::vector<Series> series;
};

// Static SVG line chart. Non-finite points (and non-positive points on a log
// axis) break the polyline.
std::string RenderSvg(const LineChart& chart);

}  // namespace mmspp

#endif  // MMSPP_REPORT_H_
