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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qphonon {

void ensure_directory(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Round-trip-precise decimal form.
std::string format_double(double v);

std::uint64_t fnv1a_hash(const std::string& text);

struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<std::pair<double, double>> points;
  /// Optional +/- band half widths, one per point.
  std::vector<double> band;
};

/// Minimal self-contained line plot with optional log-scale y axis and
/// shaded uncertainty bands. Output is deterministic for fixed input.
struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<SvgSeries> series;

  std::string render(int width = 860, int height = 540) const;
};

struct SvgBarChart {
  std::string title;
  std::string y_label;
  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<double> errors;  // optional, same size as values

  std::string render(int width = 860, int height = 540) const;
};

}  // namespace qphonon
