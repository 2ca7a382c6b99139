// Copyright 2026 The qphonon developers
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

#include "qphonon/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qphonon {

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw std::runtime_error("ensure_directory: cannot create '" + path + "': " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_text_file: cannot open '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write_text_file: failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_text_file: cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

namespace {

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

struct Frame {
  double x0, x1, y0, y1;           // data range
  double px0, px1, py0, py1;       // pixel box
  bool log_y;

  double sx(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
  double sy(double y) const {
    const double v = log_y ? std::log10(y) : y;
    const double lo = log_y ? std::log10(y0) : y0;
    const double hi = log_y ? std::log10(y1) : y1;
    return py1 - (v - lo) / (hi - lo) * (py1 - py0);
  }
};

}  // namespace

std::string SvgPlot::render(int width, int height) const {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto& [x, y] = s.points[i];
      const double half = i < s.band.size() ? s.band[i] : 0.0;
      const double ylo = y - half, yhi = y + half;
      if (first) {
        x0 = x1 = x;
        y0 = ylo;
        y1 = yhi;
        first = false;
      } else {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, ylo);
        y1 = std::max(y1, yhi);
      }
    }
  }
  if (first) {
    x0 = y0 = 0.0;
    x1 = y1 = 1.0;
  }
  if (x0 == x1) x1 = x0 + 1.0;
  if (log_y) {
    if (y0 <= 0.0) y0 = 1e-12;
    if (y1 <= y0) y1 = 10.0 * y0;
    y0 /= 1.5;
    y1 *= 1.5;
  } else {
    const double pad = 0.05 * (y1 - y0 == 0.0 ? std::max(1.0, std::abs(y1)) : y1 - y0);
    y0 -= pad;
    y1 += pad;
  }

  Frame fr{x0, x1, y0, y1, 70.0, double(width) - 160.0, 40.0, double(height) - 50.0, log_y};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";

  // Axes.
  os << "<line x1=\"" << coord(fr.px0) << "\" y1=\"" << coord(fr.py1) << "\" x2=\"" << coord(fr.px1)
     << "\" y2=\"" << coord(fr.py1) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << coord(fr.px0) << "\" y1=\"" << coord(fr.py0) << "\" x2=\"" << coord(fr.px0)
     << "\" y2=\"" << coord(fr.py1) << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (fr.px0 + fr.px1) / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << (fr.py0 + fr.py1) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
     << "transform=\"rotate(-90 18 " << coord((fr.py0 + fr.py1) / 2) << ")\">" << y_label
     << "</text>\n";

  // Ticks.
  const int n_ticks = 5;
  for (int t = 0; t <= n_ticks; ++t) {
    const double fx = x0 + (x1 - x0) * t / n_ticks;
    os << "<line x1=\"" << coord(fr.sx(fx)) << "\" y1=\"" << coord(fr.py1) << "\" x2=\""
       << coord(fr.sx(fx)) << "\" y2=\"" << coord(fr.py1 + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << coord(fr.sx(fx)) << "\" y=\"" << coord(fr.py1 + 18)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(fx) << "</text>\n";
    double fy;
    if (log_y) {
      fy = std::pow(10.0, std::log10(y0) + (std::log10(y1) - std::log10(y0)) * t / n_ticks);
    } else {
      fy = y0 + (y1 - y0) * t / n_ticks;
    }
    os << "<line x1=\"" << coord(fr.px0 - 5) << "\" y1=\"" << coord(fr.sy(fy)) << "\" x2=\""
       << coord(fr.px0) << "\" y2=\"" << coord(fr.sy(fy)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << coord(fr.px0 - 8) << "\" y=\"" << coord(fr.sy(fy) + 4)
       << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(fy) << "</text>\n";
  }

  // Bands first so lines draw on top.
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.band.size() != s.points.size() || s.points.empty()) continue;
    bool any = false;
    for (double b : s.band) any = any || b > 0.0;
    if (!any) continue;
    const std::string color = s.color.empty() ? kPalette[si % 6] : s.color;
    std::ostringstream path;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      double hi = s.points[i].second + s.band[i];
      path << (i == 0 ? "M" : "L") << coord(fr.sx(s.points[i].first)) << " " << coord(fr.sy(hi));
    }
    for (std::size_t i = s.points.size(); i-- > 0;) {
      double lo = s.points[i].second - s.band[i];
      if (log_y) lo = std::max(lo, y0 * 1.001);
      path << "L" << coord(fr.sx(s.points[i].first)) << " " << coord(fr.sy(lo));
    }
    path << "Z";
    os << "<path d=\"" << path.str() << "\" fill=\"" << color << "\" opacity=\"0.2\" stroke=\"none\"/>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.points.empty()) continue;
    const std::string color = s.color.empty() ? kPalette[si % 6] : s.color;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& [x, y] : s.points) os << coord(fr.sx(x)) << "," << coord(fr.sy(std::max(y, log_y ? fr.y0 * 1.001 : y))) << " ";
    os << "\"/>\n";
    // Legend.
    const double ly = fr.py0 + 16.0 * double(si);
    os << "<line x1=\"" << coord(fr.px1 + 8) << "\" y1=\"" << coord(ly) << "\" x2=\""
       << coord(fr.px1 + 28) << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << coord(fr.px1 + 32) << "\" y=\"" << coord(ly + 4)
       << "\" font-size=\"11\">" << s.label << "</text>\n";
  }

  os << "</svg>\n";
  return os.str();
}

std::string SvgBarChart::render(int width, int height) const {
  if (labels.size() != values.size()) throw std::invalid_argument("SvgBarChart: size mismatch");
  double vmax = 0.0, vmin = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double err = i < errors.size() ? errors[i] : 0.0;
    vmax = std::max(vmax, values[i] + err);
    vmin = std::min(vmin, values[i] - err);
  }
  if (vmax == vmin) vmax = vmin + 1.0;
  const double px0 = 80.0, px1 = double(width) - 30.0;
  const double py0 = 45.0, py1 = double(height) - 60.0;
  auto sy = [&](double v) { return py1 - (v - vmin) / (vmax - vmin) * (py1 - py0); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";
  os << "<text x=\"20\" y=\"" << (py0 + py1) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
     << "transform=\"rotate(-90 20 " << coord((py0 + py1) / 2) << ")\">" << y_label << "</text>\n";
  os << "<line x1=\"" << coord(px0) << "\" y1=\"" << coord(sy(0.0)) << "\" x2=\"" << coord(px1)
     << "\" y2=\"" << coord(sy(0.0)) << "\" stroke=\"black\"/>\n";

  const double slot = (px1 - px0) / double(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double cx = px0 + slot * (double(i) + 0.5);
    const double bw = slot * 0.55;
    const double top = sy(std::max(values[i], 0.0));
    const double bot = sy(std::min(values[i], 0.0));
    os << "<rect x=\"" << coord(cx - bw / 2) << "\" y=\"" << coord(top) << "\" width=\""
       << coord(bw) << "\" height=\"" << coord(std::max(1.0, bot - top)) << "\" fill=\""
       << kPalette[i % 6] << "\"/>\n";
    if (i < errors.size() && errors[i] > 0.0) {
      os << "<line x1=\"" << coord(cx) << "\" y1=\"" << coord(sy(values[i] - errors[i]))
         << "\" x2=\"" << coord(cx) << "\" y2=\"" << coord(sy(values[i] + errors[i]))
         << "\" stroke=\"black\" stroke-width=\"1.3\"/>\n";
    }
    os << "<text x=\"" << coord(cx) << "\" y=\"" << coord(py1 + 18)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << labels[i] << "</text>\n";
    os << "<text x=\"" << coord(cx) << "\" y=\"" << coord(top - 6)
       << "\" text-anchor=\"middle\" font-size=\"10\">" << tick_label(values[i]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace qphonon
