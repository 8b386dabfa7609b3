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

#include <array>
#include <span>
#include <vector>

#include "kzmagic/evolution.hpp"

namespace kzmagic {

/// The four distinct Pauli expectation values of one momentum pair. Each
/// appears twice among the 16 two-site Pauli pairs; the other 8 vanish.
struct ModePauliValues {
    double s_id = 1.0;
    double s_z = 0.0;
    double s_xy = 0.0;
    double s_xx = 0.0;

    std::array<double, 4> values() const { return {s_id, s_z, s_xy, s_xx}; }
    double bloch_norm_sq() const { return s_z * s_z + s_xy * s_xy + s_xx * s_xx; }
};

ModePauliValues mode_pauli_values(const ModeAmplitudes &amps);

std::vector<ModePauliValues> pauli_values(const StateSnapshot &state);

/// 1 + |s_z|^(2 alpha) + |s_xy|^(2 alpha) + |s_xx|^(2 alpha).
double mode_power_sum(const ModePauliValues &p, double alpha);

/// -(1/2) sum_j s_j^2 log2 s_j^2, the alpha = 1 contribution of one mode.
double mode_shannon_term(const ModePauliValues &p);

/// Stabilizer Renyi entropy in bits. alpha must be > 0; alpha = 1 uses the
/// closed-form limit.
double sre(const StateSnapshot &state, double alpha);

/// M_alpha(state) - M_alpha(reference), accumulated from per-mode ratios so
/// the extensive constants never appear.
double relative_sre(const StateSnapshot &state, const StateSnapshot &reference, double alpha);

/// Per-mode terms of relative_sre, in grid order.
std::vector<double> relative_sre_terms(const StateSnapshot &state, const StateSnapshot &reference, double alpha);

enum class PhaseModel {
    Auto,       // TfimRefined for TFIM, Dynamical otherwise
    Dynamical,  // phi = 2 tau_Q
    TfimRefined // phi = 2 tau_Q + pi/4 + x^2 (ln 4 tau_Q + gamma_E - 2)
};

enum class QuadratureRule { GaussKronrod, TanhSinh };

struct SreIntegral {
    double value = 0.0;
    double error_estimate = 0.0;
    double x_max = 0.0;  // p(x_max) = 1e-14
};

// I = int_0^inf log2[(1 + |1-2p|^(2 alpha) + (4p(1-p))^alpha (|sin phi|^(2 alpha)
//     + |cos phi|^(2 alpha))) / 2] dx,  p(x) = exp(-2 pi c^2 x^(2(beta_eff-1))).
SreIntegral sre_integral(double alpha, double tau_Q, const ExcitationLaw &law, PhaseModel phase,
                         QuadratureRule rule = QuadratureRule::GaussKronrod);

/// (L / (2 pi (1 - alpha))) I tau_Q^(-1/(2(beta_eff-1))).
double analytic_delta_sre(const ModelSpec &model, double alpha, double tau_Q, int L,
                          PhaseModel phase = PhaseModel::Auto);

double analytic_delta_sre(const ExcitationLaw &law, double alpha, double tau_Q, int L, PhaseModel phase);

struct AlphaAsymptotics {
    double small_alpha_limit = 0.0;     // (L/4) log2(3/2)
    double small_alpha_measured = 0.0;  // Delta M at the smallest alpha
    double large_alpha_slope = 0.0;     // fitted over alpha >= 8
    double large_alpha_slope_stderr = 0.0;
    double predicted_slope = 0.0;  // -1 - 1/(2(beta_eff-1))
    std::vector<double> alphas;
    std::vector<double> delta_sre;
};

// alphas must reach 0.1 or below and 10 or above, with at least three values
// >= 8 for the slope fit.
AlphaAsymptotics alpha_asymptotics(const StateSnapshot &state, const StateSnapshot &reference,
                                   const ExcitationLaw &law, std::span<const double> alphas);

}  // namespace kzmagic
