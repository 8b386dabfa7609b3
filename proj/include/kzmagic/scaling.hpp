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

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kzmagic/magic.hpp"
#include "kzmagic/spectrum.hpp"

namespace kzmagic {

/// delta = 1 / (2 (min(beta, 2) - 1)); TFIM gives 1/2.
double predicted_exponent(const ModelSpec &model);

struct PowerLawFit {
    double exponent = 0.0;
    double log_amplitude = 0.0;
    double stderr_exponent = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    int n_points = 0;
    std::vector<double> residuals;  // ln y - fit, in input order of the window
};

// Least squares of ln y on ln x over points with x in [x_min, x_max]. Needs
// at least four points, all positive.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y, double x_min = 0.0,
                          double x_max = std::numeric_limits<double>::infinity());

struct TrimmedPowerLawFit {
    PowerLawFit full;
    PowerLawFit fit;  // equal to full unless trimmed
    bool trimmed = false;
};

// Fits all points, then refits without the two smallest x when either of them
// sits more than two exponent standard errors off the line in ln y and at
// least four points remain.
TrimmedPowerLawFit fit_power_law_trimmed(std::span<const double> x, std::span<const double> y);

enum class Backend { ODE, KZM };

std::string to_string(Backend b);
Backend parse_backend(const std::string &name);

struct SweepOptions {
    std::vector<double> alphas{2.0};
    std::vector<int> cumulant_orders{1, 2, 3};
    Backend backend = Backend::ODE;
    EvolveOptions evolve;
    std::optional<double> g_start;  // default 5 g_c
    std::optional<double> g_end;    // default 0
    double zero_threshold = kDefaultZeroThreshold;
    int threads = 0;
};

RampProtocol make_ramp(const ModelSpec &model, double tau_Q, const SweepOptions &opts);

/// End-of-ramp state from the chosen backend.
StateSnapshot simulate_ramp(const ModeTable &table, const RampProtocol &ramp, const SweepOptions &opts);

struct SweepRecord {
    double tau_Q = 0.0;
    std::map<double, double> delta_sre;
    std::map<int, double> delta_kappa;
    double defect_density = 0.0;
    double max_norm_drift = 0.0;
    double runtime_seconds = 0.0;
};

// One record per tau_Q, sorted ascending. The reference is the ground state
// at g_end on the same grid.
std::vector<SweepRecord> run_tauq_sweep(const ModelSpec &model, int L, std::span<const double> tau_Qs,
                                        const SweepOptions &opts);

/// t_hat = sqrt(tau_Q).
double freeze_out_time(const ModelSpec &model, double tau_Q);

/// t_c = -g_c tau_Q; throws ConfigError when the ramp misses g_c.
double critical_crossing_time(const RampProtocol &ramp, const ModelSpec &model);

struct Trace {
    double tau_Q = 0.0;
    std::vector<double> s;  // (t - t_c) / t_hat, ascending
    std::vector<double> value;
};

// Every trace is multiplied by tau_Q^amplitude_exponent, interpolated linearly
// onto n_grid points of [s_lo, s_hi], and the metric is the grid average of
// (max - min) / (mean |v| + 1e-6) across traces.
double collapse_metric(std::span<const Trace> traces, double s_lo, double s_hi, double amplitude_exponent = 0.0,
                       int n_grid = 201);

struct CollapseOptions {
    double alpha = 2.0;
    double s_lo = -1.0;
    double s_hi = 1.0;
    double s_sample_lo = -3.0;
    double s_sample_hi = 3.0;
    int samples = 121;
    double amplitude_exponent = 0.0;
};

struct CollapseResult {
    std::vector<Trace> traces;  // unscaled Delta M_alpha vs instantaneous ground state
    double metric = 0.0;
    double amplitude_exponent = 0.0;
};

CollapseResult run_collapse(const ModelSpec &model, int L, std::span<const double> tau_Qs, const SweepOptions &sweep,
                            const CollapseOptions &opts);

struct AlphaSweepResult {
    double tau_Q = 0.0;
    std::vector<double> alphas;
    std::vector<double> delta_sre;
    std::optional<AlphaAsymptotics> asymptotics;  // present when the alpha list spans enough
    std::string asymptotics_note;
};

AlphaSweepResult run_alpha_sweep(const ModelSpec &model, int L, double tau_Q, std::span<const double> alphas,
                                 const SweepOptions &opts);

}  // namespace kzmagic
