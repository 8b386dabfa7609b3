// Copyright 2026 The kzmagic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace kzmagic {

/// Shortest round-trippable decimal form ("%.17g" trimmed), locale independent.
std::string format_number(double x);

/// Writes to `path.tmp` and renames over `path`. Creates parent directories.
void atomic_write_file(const std::string &path, const std::string &content);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    bool markers = true;
};

/// Static SVG line plot. Non-positive values are skipped on log axes.
std::string render_svg(const PlotSpec &spec, const std::vector<PlotSeries> &series);

}  // namespace kzmagic
