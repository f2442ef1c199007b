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

#include "mmspp/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "mmspp/types.h"

namespace mmspp {

namespace fs = std::filesystem;

void WriteFileAtomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename onto '" + path + "': " + ec.message());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Num(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

std::string Tick(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace

std::string RenderSvg(const LineChart& chart) {
  const double W = chart.width, H = chart.height;
  const double ml = 70, mr = 150, mt = 40, mb = 50;
  const double pw = W - ml - mr, ph = H - mt - mb;

  auto usable = [&](double y) {
    return std::isfinite(y) && (!chart.log_y || y > 0.0);
  };
  auto ty = [&](double y) { return chart.log_y ? std::log10(y) : y; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& s : chart.series) {
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !usable(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!(x0 <= x1)) { x0 = 0; x1 = 1; }
  if (!(y0 <= y1)) { y0 = 0; y1 = 1; }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return mt + (1.0 - (ty(y) - y0) / (y1 - y0)) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width
     << "\" height=\"" << chart.height << "\" font-family=\"sans-serif\" "
     << "font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << Num(W / 2) << "\" y=\"20\" text-anchor=\"middle\" "
     << "font-size=\"14\">" << Escape(chart.title) << "</text>\n";
  os << "<rect x=\"" << Num(ml) << "\" y=\"" << Num(mt) << "\" width=\""
     << Num(pw) << "\" height=\"" << Num(ph)
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double fx = x0 + (x1 - x0) * i / ticks;
    const double gx = ml + pw * i / ticks;
    os << "<text x=\"" << Num(gx) << "\" y=\"" << Num(mt + ph + 16)
       << "\" text-anchor=\"middle\">" << Tick(fx) << "</text>\n";
    const double fy = y0 + (y1 - y0) * i / ticks;
    const double gy = mt + ph - ph * i / ticks;
    const std::string label =
        chart.log_y ? "1e" + Tick(std::round(fy * 10) / 10) : Tick(fy);
    os << "<text x=\"" << Num(ml - 6) << "\" y=\"" << Num(gy + 4)
       << "\" text-anchor=\"end\">" << label << "</text>\n";
    os << "<line x1=\"" << Num(ml) << "\" y1=\"" << Num(gy) << "\" x2=\""
       << Num(ml + pw) << "\" y2=\"" << Num(gy)
       << "\" stroke=\"#dddddd\"/>\n";
  }
  os << "<text x=\"" << Num(ml + pw / 2) << "\" y=\"" << Num(H - 10)
     << "\" text-anchor=\"middle\">" << Escape(chart.x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << Num(mt + ph / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(chart.y_label)
     << "</text>\n";

  for (size_t k = 0; k < chart.series.size(); ++k) {
    const Series& s = chart.series[k];
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    auto flush = [&]() {
      if (!pts.empty()) {
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
        pts.clear();
      }
    };
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !usable(s.y[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += Num(px(s.x[i])) + "," + Num(py(s.y[i]));
    }
    flush();
    const double ly = mt + 14 + 16.0 * static_cast<double>(k);
    os << "<line x1=\"" << Num(ml + pw + 10) << "\" y1=\"" << Num(ly - 4)
       << "\" x2=\"" << Num(ml + pw + 30) << "\" y2=\"" << Num(ly - 4)
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << Num(ml + pw + 34) << "\" y=\"" << Num(ly) << "\">"
       << Escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace mmspp
