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

#include "kzmagic/scaling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "kzmagic/errors.hpp"

namespace kzmagic {

namespace {

constexpr double kCollapseRegularizer = 1e-6;
constexpr double kResidualFloor = 1e-9;

double interpolate(const std::vector<double> &xs, const std::vector<double> &ys, double x) {
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ys.front();
    if (it == xs.end()) return ys.back();
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double f = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ys[j - 1] + f * (ys[j] - ys[j - 1]);
}

}  // namespace

double predicted_exponent(const ModelSpec &model) {
    if (!(model.beta > 1.0)) throw ConfigError("predicted exponent needs beta > 1");
    return 0.5 / (std::min(model.beta, 2.0) - 1.0);
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y, double x_min, double x_max) {
    if (x.size() != y.size()) throw ConfigError("power-law fit: x and y differ in length");
    std::vector<double> lx, ly;
    PowerLawFit out;
    out.x_min = std::numeric_limits<double>::infinity();
    out.x_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < x_min || x[i] > x_max) continue;
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i])) {
            throw NumericalError("power-law fit needs positive data (x=" + std::to_string(x[i]) +
                                 ", y=" + std::to_string(y[i]) + ")");
        }
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
        out.x_min = std::min(out.x_min, x[i]);
        out.x_max = std::max(out.x_max, x[i]);
    }
    if (lx.size() < 4) throw ConfigError("need >= 4 points for fit (got " + std::to_string(lx.size()) + ")");
    const LineFit f = fit_line(lx, ly);
    out.exponent = f.slope;
    out.log_amplitude = f.intercept;
    out.stderr_exponent = f.stderr_slope;
    out.n_points = static_cast<int>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) out.residuals.push_back(ly[i] - (f.intercept + f.slope * lx[i]));
    return out;
}

TrimmedPowerLawFit fit_power_law_trimmed(std::span<const double> x, std::span<const double> y) {
    TrimmedPowerLawFit out;
    out.full = fit_power_law(x, y);
    out.fit = out.full;
    std::vector<std::size_t> order(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    if (order.size() < 6) return out;

    const double limit = std::max(2.0 * out.full.stderr_exponent, kResidualFloor);
    bool outlier = false;
    for (int r = 0; r < 2; ++r) {
        const std::size_t i = order[static_cast<std::size_t>(r)];
        const double resid = std::log(y[i]) - (out.full.log_amplitude + out.full.exponent * std::log(x[i]));
        outlier = outlier || std::abs(resid) > limit;
    }
    if (!outlier) return out;
    const double cut = x[order[2]];
    out.fit = fit_power_law(x, y, cut);
    out.trimmed = true;
    return out;
}

std::string to_string(Backend b) { return b == Backend::ODE ? "ode" : "kzm"; }

Backend parse_backend(const std::string &name) {
    if (name == "ode") return Backend::ODE;
    if (name == "kzm") return Backend::KZM;
    throw ConfigError("backend must be 'ode' or 'kzm' (got '" + name + "')");
}

RampProtocol make_ramp(const ModelSpec &model, double tau_Q, const SweepOptions &opts) {
    RampProtocol r = RampProtocol::standard(model, tau_Q);
    if (opts.g_start) r.g_start = *opts.g_start;
    if (opts.g_end) r.g_end = *opts.g_end;
    r.validate(model);
    return r;
}

StateSnapshot simulate_ramp(const ModeTable &table, const RampProtocol &ramp, const SweepOptions &opts) {
    if (opts.backend == Backend::KZM) return kzm_state(table, ramp, excitation_law(table.model(), table.grid().L));
    return evolve_all(table, ramp, opts.evolve, opts.threads).final_state;
}

std::vector<SweepRecord> run_tauq_sweep(const ModelSpec &model, int L, std::span<const double> tau_Qs,
                                        const SweepOptions &opts) {
    if (tau_Qs.empty()) throw ConfigError("tau_q list is empty");
    std::vector<double> taus(tau_Qs.begin(), tau_Qs.end());
    std::sort(taus.begin(), taus.end());
    const ModeTable table(model, build_momentum_grid(L));
    std::vector<SweepRecord> records;
    records.reserve(taus.size());
    for (double tau : taus) {
        const auto start = std::chrono::steady_clock::now();
        const RampProtocol ramp = make_ramp(model, tau, opts);
        const StateSnapshot state = simulate_ramp(table, ramp, opts);
        const StateSnapshot reference = ground_state_snapshot(table, ramp.g_end, ramp.t_end());

        SweepRecord rec;
        rec.tau_Q = tau;
        for (double a : opts.alphas) rec.delta_sre[a] = relative_sre(state, reference, a);
        if (!opts.cumulant_orders.empty()) {
            const int q_max = *std::max_element(opts.cumulant_orders.begin(), opts.cumulant_orders.end());
            const CumulantSet dk = delta_log_cumulants(state, reference, q_max, opts.zero_threshold);
            for (int q : opts.cumulant_orders) rec.delta_kappa[q] = dk(q);
        }
        rec.defect_density = defect_density(state, table);
        rec.max_norm_drift = max_norm_drift(state);
        rec.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (const auto &[a, v] : rec.delta_sre) {
            if (!std::isfinite(v)) throw NumericalError("non-finite Delta M at tau_Q=" + std::to_string(tau));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

double freeze_out_time(const ModelSpec &, double tau_Q) {
    if (!(tau_Q > 0.0)) throw ConfigError("tau_Q must be positive");
    return std::sqrt(tau_Q);
}

double critical_crossing_time(const RampProtocol &ramp, const ModelSpec &model) {
    if (!(ramp.g_start > model.g_critical && ramp.g_end < model.g_critical)) {
        throw ConfigError("ramp does not cross the critical field g_c=" + std::to_string(model.g_critical));
    }
    return -model.g_critical * ramp.tau_Q;
}

double collapse_metric(std::span<const Trace> traces, double s_lo, double s_hi, double amplitude_exponent,
                       int n_grid) {
    if (traces.size() < 2) throw ConfigError("collapse needs at least two traces");
    if (!(s_hi > s_lo) || n_grid < 2) throw ConfigError("collapse window is empty");
    for (const Trace &tr : traces) {
        if (tr.s.size() < 2 || tr.s.size() != tr.value.size()) throw ConfigError("collapse trace is malformed");
        if (tr.s.front() > s_lo || tr.s.back() < s_hi) {
            throw ConfigError("collapse window outside the sampled range for tau_Q=" + std::to_string(tr.tau_Q));
        }
    }
    double total = 0.0;
    std::vector<double> v(traces.size());
    for (int g = 0; g < n_grid; ++g) {
        const double s = s_lo + (s_hi - s_lo) * g / (n_grid - 1);
        double mean_abs = 0.0;
        for (std::size_t i = 0; i < traces.size(); ++i) {
            v[i] = std::pow(traces[i].tau_Q, amplitude_exponent) * interpolate(traces[i].s, traces[i].value, s);
            mean_abs += std::abs(v[i]);
        }
        mean_abs /= static_cast<double>(traces.size());
        const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
        total += (*mx - *mn) / (mean_abs + kCollapseRegularizer);
    }
    return total / n_grid;
}

CollapseResult run_collapse(const ModelSpec &model, int L, std::span<const double> tau_Qs, const SweepOptions &sweep,
                            const CollapseOptions &opts) {
    if (sweep.backend != Backend::ODE) throw ConfigError("collapse traces need the ode backend");
    if (opts.samples < 2) throw ConfigError("collapse needs at least two samples per trace");
    const ModeTable table(model, build_momentum_grid(L));
    CollapseResult out;
    out.amplitude_exponent = opts.amplitude_exponent;
    std::vector<double> taus(tau_Qs.begin(), tau_Qs.end());
    std::sort(taus.begin(), taus.end());
    for (double tau : taus) {
        RampProtocol ramp = make_ramp(model, tau, sweep);
        const double t_c = critical_crossing_time(ramp, model);
        const double t_hat = freeze_out_time(model, tau);
        Trace tr;
        tr.tau_Q = tau;
        for (int i = 0; i < opts.samples; ++i) {
            const double s = opts.s_sample_lo + (opts.s_sample_hi - opts.s_sample_lo) * i / (opts.samples - 1);
            const double t = t_c + s * t_hat;
            if (t < ramp.t_start() || t > ramp.t_end()) continue;
            tr.s.push_back(s);
            ramp.sample_times.push_back(t);
        }
        const RampResult run = evolve_all(table, ramp, sweep.evolve, sweep.threads);
        for (const StateSnapshot &snap : run.samples) {
            tr.value.push_back(relative_sre(snap, ground_state_snapshot(table, snap.g, snap.time), opts.alpha));
        }
        out.traces.push_back(std::move(tr));
    }
    out.metric = collapse_metric(out.traces, opts.s_lo, opts.s_hi, opts.amplitude_exponent);
    return out;
}

AlphaSweepResult run_alpha_sweep(const ModelSpec &model, int L, double tau_Q, std::span<const double> alphas,
                                 const SweepOptions &opts) {
    if (alphas.empty()) throw ConfigError("alpha list is empty");
    const ModeTable table(model, build_momentum_grid(L));
    const RampProtocol ramp = make_ramp(model, tau_Q, opts);
    const StateSnapshot state = simulate_ramp(table, ramp, opts);
    const StateSnapshot reference = ground_state_snapshot(table, ramp.g_end, ramp.t_end());

    AlphaSweepResult out;
    out.tau_Q = tau_Q;
    out.alphas.assign(alphas.begin(), alphas.end());
    std::sort(out.alphas.begin(), out.alphas.end());
    for (double a : out.alphas) out.delta_sre.push_back(relative_sre(state, reference, a));
    try {
        out.asymptotics = alpha_asymptotics(state, reference, excitation_law(model, L), out.alphas);
    } catch (const ConfigError &e) {
        out.asymptotics_note = e.what();
    }
    return out;
}

}  // namespace kzmagic
