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

#include <optional>
#include <string>
#include <vector>

#include "kzmagic/scaling.hpp"

namespace kzmagic {

struct HistogramConfig {
    double bin_width = 0.02;
    double zero_threshold = kDefaultZeroThreshold;
};

struct CollapseConfig {
    double alpha = 2.0;
    double s_lo = -1.0;
    double s_hi = 1.0;
    int samples = 121;
    double amplitude_exponent = 0.0;
};

struct OutputConfig {
    std::string directory = "out";
    bool csv = true;
    bool jsonl = true;
    bool svg = false;
};

/// One run, parsed from a JSON file. Every numeric constraint is checked at
/// parse time and unknown keys are rejected.
struct RunConfig {
    ModelSpec model = ModelSpec::tfim();
    int L = 200;
    std::optional<double> g_start;
    std::optional<double> g_end;
    std::vector<double> tau_q{16, 32, 64, 128, 256, 512};
    std::vector<double> alphas{0.5, 2.0};
    std::vector<int> cumulant_orders{1, 2, 3};
    Backend backend = Backend::ODE;
    double tolerance = 1e-10;
    bool fit = true;
    std::vector<double> sample_times;  // evolve only; empty means the end of the ramp
    HistogramConfig histogram;
    CollapseConfig collapse;
    OutputConfig output;

    SweepOptions sweep_options() const;
};

RunConfig parse_run_config(const std::string &json_text);

RunConfig load_run_config(const std::string &path);

/// Re-checks cross-field constraints after command-line overrides.
void validate(const RunConfig &cfg);

std::vector<double> parse_number_list(const std::string &text, const std::string &what);

}  // namespace kzmagic
