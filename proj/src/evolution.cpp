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

#include "kzmagic/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "kzmagic/errors.hpp"
#include "kzmagic/parallel.hpp"

namespace kzmagic {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 4>;  // Re u, Im u, Re v, Im v

constexpr double kNormDriftLimit = 1e-9;
constexpr double kEulerGamma = 0.57721566490153286061;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

ModeAmplitudes to_amplitudes(const State &y) { return {complex(y[0], y[1]), complex(y[2], y[3])}; }

State to_state(const ModeAmplitudes &a) { return {a.u.real(), a.u.imag(), a.v.real(), a.v.imag()}; }

struct ModeRhs {
    double offset;
    double pairing;
    double tau_Q;

    void operator()(const State &y, State &dydt, double t) const {
        const double a = -t / tau_Q - offset;
        const double b = pairing;
        // w = 2 H psi, then d psi/dt = -i w, i.e. (re, im) -> (im, -re).
        const double wu_re = 2.0 * (a * y[0] + b * y[2]);
        const double wu_im = 2.0 * (a * y[1] + b * y[3]);
        const double wv_re = 2.0 * (b * y[0] - a * y[2]);
        const double wv_im = 2.0 * (b * y[1] - a * y[3]);
        dydt[0] = wu_im;
        dydt[1] = -wu_re;
        dydt[2] = wv_im;
        dydt[3] = -wv_re;
    }
};

std::vector<double> integration_times(const RampProtocol &ramp) {
    std::vector<double> times;
    times.reserve(ramp.sample_times.size() + 2);
    times.push_back(ramp.t_start());
    for (double t : ramp.sample_times) times.push_back(t);
    times.push_back(ramp.t_end());
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

}  // namespace

RampProtocol RampProtocol::standard(const ModelSpec &model, double tau_Q) {
    RampProtocol r;
    r.g_start = 5.0 * model.g_critical;
    r.g_end = 0.0;
    r.tau_Q = tau_Q;
    return r;
}

void RampProtocol::validate(const ModelSpec &model) const {
    if (!(std::isfinite(tau_Q) && tau_Q > 0.0)) throw ConfigError("tau_Q must be positive and finite");
    if (!(g_start > model.g_critical)) throw ConfigError("ramp must start above the critical field");
    if (!(g_end < model.g_critical)) throw ConfigError("ramp must end below the critical field");
    if (g_end < 0.0) throw ConfigError("g_end must be non-negative");
    const double t0 = t_start();
    const double t1 = t_end();
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        const double t = sample_times[i];
        if (!(t >= t0 && t <= t1)) throw ConfigError("sample time outside the ramp window");
        if (i > 0 && !(t > sample_times[i - 1])) throw ConfigError("sample times must be strictly ascending");
    }
}

StateSnapshot ground_state_snapshot(const ModeTable &table, double g, double time) {
    StateSnapshot s;
    s.grid = table.grid();
    s.g = g;
    s.time = time;
    s.amplitudes.reserve(table.size());
    for (std::size_t m = 0; m < table.size(); ++m) {
        s.amplitudes.push_back(ground_state_amplitudes(bogoliubov_angle(table.at(m, g), table.grid().k[m])));
    }
    return s;
}

ModeEvolution evolve_mode(const ModeCouplings &couplings, double k, const RampProtocol &ramp,
                          const EvolveOptions &opts) {
    const double theta0 = bogoliubov_angle(coefficients_at(couplings, ramp.g_start), k);
    State y = to_state(ground_state_amplitudes(theta0));

    const double e_max = std::max(coefficients_at(couplings, ramp.g_start).energy,
                                  coefficients_at(couplings, ramp.g_end).energy);
    const double max_dt = 0.1 / std::max(1.0, 2.0 * e_max);
    auto stepper = odeint::make_controlled(opts.tolerance, opts.tolerance, max_dt,
                                           odeint::runge_kutta_fehlberg78<State>());

    const std::vector<double> times = integration_times(ramp);
    std::vector<State> at_times;
    at_times.reserve(times.size());
    const ModeRhs rhs{couplings.offset, couplings.pairing, ramp.tau_Q};
    double current_t = ramp.t_start();
    try {
        odeint::integrate_times(
            stepper, rhs, y, times.begin(), times.end(), std::min(max_dt, 1e-3),
            [&](const State &s, double t) {
                at_times.push_back(s);
                current_t = t;
            },
            odeint::max_step_checker(static_cast<int>(std::min<std::size_t>(opts.max_steps, 2'000'000'000))));
    } catch (const odeint::odeint_error &e) {
        throw EvolutionError(k, current_t, e.what());
    }
    if (at_times.size() != times.size()) throw EvolutionError(k, current_t, "integrator stopped early");

    ModeEvolution out;
    for (const State &s : at_times) {
        const ModeAmplitudes a = to_amplitudes(s);
        if (!std::isfinite(a.norm_sq())) throw EvolutionError(k, current_t, "non-finite amplitudes");
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(a.norm_sq() - 1.0));
    }
    if (out.max_norm_drift > kNormDriftLimit) {
        throw EvolutionError(k, ramp.t_end(), "norm drift " + format_double(out.max_norm_drift) + " exceeds 1e-9");
    }
    out.final_state = to_amplitudes(at_times.back());
    out.samples.reserve(ramp.sample_times.size());
    for (double t : ramp.sample_times) {
        const auto it = std::lower_bound(times.begin(), times.end(), t);
        out.samples.push_back(to_amplitudes(at_times[static_cast<std::size_t>(it - times.begin())]));
    }
    return out;
}

ModeEvolution evolve_mode(const ModelSpec &model, double k, int L, const RampProtocol &ramp,
                          const EvolveOptions &opts) {
    ramp.validate(model);
    return evolve_mode(mode_couplings(model, k, L), k, ramp, opts);
}

RampResult evolve_all(const ModeTable &table, const RampProtocol &ramp, const EvolveOptions &opts, int threads) {
    ramp.validate(table.model());
    const std::size_t n = table.size();
    std::vector<ModeEvolution> modes(n);
    parallel_for(
        n, [&](std::size_t m) { modes[m] = evolve_mode(table[m], table.grid().k[m], ramp, opts); }, threads);

    RampResult result;
    result.final_state.grid = table.grid();
    result.final_state.g = ramp.g_end;
    result.final_state.time = ramp.t_end();
    result.final_state.amplitudes.reserve(n);
    for (const ModeEvolution &me : modes) result.final_state.amplitudes.push_back(me.final_state);

    result.samples.resize(ramp.sample_times.size());
    for (std::size_t s = 0; s < ramp.sample_times.size(); ++s) {
        StateSnapshot &snap = result.samples[s];
        snap.grid = table.grid();
        snap.time = ramp.sample_times[s];
        snap.g = ramp.field_at(snap.time);
        snap.amplitudes.reserve(n);
        for (const ModeEvolution &me : modes) snap.amplitudes.push_back(me.samples[s]);
    }
    return result;
}

ExcitationLaw excitation_law(const ModelSpec &model, int L) {
    if (model.is_tfim()) return {1.0, 2.0};
    const SmallKCalibration cal = calibrate_small_k(model, L);
    return {cal.c_beta, cal.beta_eff};
}

double lz_probability(const ExcitationLaw &law, double k, double tau_Q) {
    const double gap = law.c_beta * std::pow(std::abs(k), law.beta_eff - 1.0);
    return std::exp(-2.0 * std::numbers::pi * tau_Q * gap * gap);
}

double kzm_phase(double tau_Q) { return 2.0 * tau_Q; }

ModeAmplitudes kzm_amplitudes(double theta_end, double p, double phase) {
    const double c = std::cos(0.5 * theta_end);
    const double s = std::sin(0.5 * theta_end);
    const double stay = std::sqrt(std::max(0.0, 1.0 - p));
    const complex jump = std::polar(std::sqrt(std::max(0.0, p)), phase);
    return {-stay * c + jump * s, stay * s + jump * c};
}

ModeAmplitudes kzm_amplitudes(const ModelSpec &model, double k, double tau_Q, int L, double g_end) {
    const double theta = bogoliubov_angle(mode_coefficients(model, k, g_end, L), k);
    return kzm_amplitudes(theta, lz_probability(excitation_law(model, L), k, tau_Q), kzm_phase(tau_Q));
}

StateSnapshot kzm_state(const ModeTable &table, const RampProtocol &ramp, const ExcitationLaw &law) {
    ramp.validate(table.model());
    StateSnapshot s;
    s.grid = table.grid();
    s.g = ramp.g_end;
    s.time = ramp.t_end();
    s.amplitudes.reserve(table.size());
    const double phase = kzm_phase(ramp.tau_Q);
    for (std::size_t m = 0; m < table.size(); ++m) {
        const double k = table.grid().k[m];
        const double theta = bogoliubov_angle(table.at(m, ramp.g_end), k);
        s.amplitudes.push_back(kzm_amplitudes(theta, lz_probability(law, k, ramp.tau_Q), phase));
    }
    return s;
}

TfimAsymptotics tfim_asymptotics(double k, double tau_Q) {
    TfimAsymptotics r;
    r.p = lz_probability({1.0, 2.0}, k, tau_Q);
    r.phase = 0.25 * std::numbers::pi + 2.0 * tau_Q + k * k * tau_Q * (std::log(4.0 * tau_Q) + kEulerGamma - 2.0);
    const double c2 = std::cos(0.5 * k) * std::cos(0.5 * k);
    r.within_validity = r.p <= c2;
    r.v_sq = 1.0 - c2 + r.p;
    r.u_sq = c2 - r.p;
    // Expressed in the (u, v) sign convention of ground_state_amplitudes.
    r.uv_conj = -0.5 * std::sin(k) - std::polar(std::sqrt(std::max(0.0, r.p * (1.0 - r.p))), r.phase);
    return r;
}

double excitation_probability(const ModeAmplitudes &amps, const ModeCoefficients &coeffs, double k) {
    const ModeAmplitudes e = excited_state_amplitudes(bogoliubov_angle(coeffs, k));
    return std::norm(std::conj(e.u) * amps.u + std::conj(e.v) * amps.v);
}

double defect_density(const StateSnapshot &state, const ModeTable &table) {
    if (!(state.grid == table.grid())) throw ConfigError("snapshot and mode table use different grids");
    double sum = 0.0;
    for (std::size_t m = 0; m < state.size(); ++m) {
        sum += excitation_probability(state.amplitudes[m], table.at(m, state.g), state.grid.k[m]);
    }
    return sum / static_cast<double>(state.grid.L);
}

double max_norm_drift(const StateSnapshot &state) {
    double d = 0.0;
    for (const ModeAmplitudes &a : state.amplitudes) d = std::max(d, std::abs(a.norm_sq() - 1.0));
    return d;
}

}  // namespace kzmagic
