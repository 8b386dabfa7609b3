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

#include <cstddef>
#include <vector>

#include "kzmagic/model.hpp"

namespace kzmagic {

/// Linear ramp g(t) = -t / tau_Q, run from t = -g_start * tau_Q to
/// t = -g_end * tau_Q. It crosses g_critical once at t_c = -g_critical * tau_Q.
struct RampProtocol {
    double g_start = 5.0;
    double g_end = 0.0;
    double tau_Q = 1.0;
    std::vector<double> sample_times;  // ascending, inside [t_start, t_end]

    /// g_start = 5 g_c, g_end = 0.
    static RampProtocol standard(const ModelSpec &model, double tau_Q);

    double t_start() const { return -g_start * tau_Q; }
    double t_end() const { return -g_end * tau_Q; }
    double field_at(double t) const { return -t / tau_Q; }

    /// Throws ConfigError unless g_start > g_c > g_end >= 0 and tau_Q > 0.
    void validate(const ModelSpec &model) const;
};

/// Product state prod_k (u_k |1 1> + v_k |0 0>) over positive momenta.
struct StateSnapshot {
    MomentumGrid grid;
    double g = 0.0;
    double time = 0.0;
    std::vector<ModeAmplitudes> amplitudes;

    std::size_t size() const { return amplitudes.size(); }
};

/// Instantaneous ground state of every mode at field g.
StateSnapshot ground_state_snapshot(const ModeTable &table, double g, double time = 0.0);

struct EvolveOptions {
    double tolerance = 1e-10;
    std::size_t max_steps = 200'000'000;
};

struct ModeEvolution {
    ModeAmplitudes final_state;
    std::vector<ModeAmplitudes> samples;  // aligned with RampProtocol::sample_times
    double max_norm_drift = 0.0;
};

// Solves i d/dt (u, v) = 2 H_k(g(t)) (u, v) with H_k = [[a, b], [b, -a]] on the
// real 4-vector (Re u, Im u, Re v, Im v), starting from the exact ground state
// at g_start. Runge-Kutta-Fehlberg 7(8) with absolute = relative tolerance `tol` and
// a step cap of 0.1 / max(1, 2 e_max). Norm drift above 1e-9 is an error.
ModeEvolution evolve_mode(const ModeCouplings &couplings, double k, const RampProtocol &ramp,
                          const EvolveOptions &opts = {});

ModeEvolution evolve_mode(const ModelSpec &model, double k, int L, const RampProtocol &ramp,
                          const EvolveOptions &opts = {});

struct RampResult {
    StateSnapshot final_state;
    std::vector<StateSnapshot> samples;
};

// Every mode of the table through the ramp, in parallel. Output is assembled
// in grid order and is bit-identical to a sequential run.
RampResult evolve_all(const ModeTable &table, const RampProtocol &ramp, const EvolveOptions &opts = {},
                      int threads = 0);

/// Small-k excitation law p_k = exp(-2 pi tau_Q (c_beta k^(beta_eff - 1))^2).
struct ExcitationLaw {
    double c_beta = 1.0;
    double beta_eff = 2.0;

    /// Exponent 1 / (2 (beta_eff - 1)) of the defect density this law implies.
    double exponent() const { return 0.5 / (beta_eff - 1.0); }
};

/// TFIM: exactly {1, 2}. LRKM: taken from calibrate_small_k(model, L).
ExcitationLaw excitation_law(const ModelSpec &model, int L);

double lz_probability(const ExcitationLaw &law, double k, double tau_Q);

/// Dynamical relative phase between excited and ground components.
double kzm_phase(double tau_Q);

// v = sqrt(1-p) sin(theta/2) + e^{i phi} sqrt(p) cos(theta/2)
// u = -sqrt(1-p) cos(theta/2) + e^{i phi} sqrt(p) sin(theta/2)
ModeAmplitudes kzm_amplitudes(double theta_end, double p, double phase);

ModeAmplitudes kzm_amplitudes(const ModelSpec &model, double k, double tau_Q, int L, double g_end = 0.0);

/// Whole-state KZM approximation at the end of the ramp.
StateSnapshot kzm_state(const ModeTable &table, const RampProtocol &ramp, const ExcitationLaw &law);

/// Large-tau_Q TFIM amplitudes at g = 0.
struct TfimAsymptotics {
    double p = 0.0;
    double phase = 0.0;
    double v_sq = 0.0;
    double u_sq = 0.0;
    complex uv_conj{0.0, 0.0};
    bool within_validity = true;  // false once p > cos^2(k/2)
};

TfimAsymptotics tfim_asymptotics(double k, double tau_Q);

/// |<excited_k(g)|psi_k>|^2.
double excitation_probability(const ModeAmplitudes &amps, const ModeCoefficients &coeffs, double k = 0.0);

/// (1/L) sum_k p_k with the eigenbasis taken at the snapshot's own field.
double defect_density(const StateSnapshot &state, const ModeTable &table);

/// Largest | |u|^2 + |v|^2 - 1 | over the snapshot.
double max_norm_drift(const StateSnapshot &state);

}  // namespace kzmagic
