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

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace kzmagic {

using complex = std::complex<double>;

enum class ModelKind { TFIM, LRKM };

std::string to_string(ModelKind kind);

/// Which critical chain is being driven.
///
/// TFIM is the transverse-field Ising chain, critical at g = 1. LRKM is the
/// long-range Kitaev chain with hopping ~ r^-gamma and pairing ~ r^-beta,
/// critical at g = 2. Both reduce to independent 2x2 problems per momentum
/// pair (k, -k). Build through the factories; they validate exponents.
struct ModelSpec {
    ModelKind kind = ModelKind::TFIM;
    double gamma = 2.0;  // unused for TFIM
    double beta = 2.0;   // TFIM behaves as beta = 2
    double g_critical = 1.0;

    static ModelSpec tfim();
    static ModelSpec lrkm(double gamma, double beta);

    bool is_tfim() const { return kind == ModelKind::TFIM; }
    std::string describe() const;
};

/// Positive momenta k_m = (2m+1) pi / L, m = 0 .. L/2-1.
struct MomentumGrid {
    int L = 0;
    std::vector<double> k;

    std::size_t size() const { return k.size(); }
    bool operator==(const MomentumGrid &) const = default;
};

MomentumGrid build_momentum_grid(int L);

/// g-independent part of a mode Hamiltonian: a(g) = g - offset, b = pairing.
struct ModeCouplings {
    double offset = 0.0;
    double pairing = 0.0;
};

/// Mode Hamiltonian [[a, b], [b, -a]] at a given field.
struct ModeCoefficients {
    double a = 0.0;
    double b = 0.0;
    double energy = 0.0;
};

/// Pair amplitudes: u multiplies |1_k 1_-k>, v multiplies |0_k 0_-k>.
struct ModeAmplitudes {
    complex u{0.0, 0.0};
    complex v{1.0, 0.0};

    double norm_sq() const { return std::norm(u) + std::norm(v); }
};

// Couplings of a single mode. For LRKM the normalised partial sums run over
// r = 1 .. L/2, so L is required; TFIM ignores it.
ModeCouplings mode_couplings(const ModelSpec &model, double k, int L);

ModeCoefficients coefficients_at(const ModeCouplings &c, double g);

ModeCoefficients mode_coefficients(const ModelSpec &model, double k, double g, int L);

/// Precomputed couplings for every momentum of a grid. Immutable once built,
/// so it can be shared freely between worker threads.
class ModeTable {
  public:
    ModeTable(const ModelSpec &model, const MomentumGrid &grid);

    const ModelSpec &model() const { return model_; }
    const MomentumGrid &grid() const { return grid_; }
    std::size_t size() const { return couplings_.size(); }
    const ModeCouplings &operator[](std::size_t m) const { return couplings_[m]; }
    ModeCoefficients at(std::size_t m, double g) const { return coefficients_at(couplings_[m], g); }

  private:
    ModelSpec model_;
    MomentumGrid grid_;
    std::vector<ModeCouplings> couplings_;
};

/// Bogoliubov angle with cos(theta) = -a/e and sin(theta) = b/e.
/// Throws DegenerateModeError when e vanishes (k is only used for the message).
double bogoliubov_angle(const ModeCoefficients &c, double k = 0.0);

/// Lowest eigenvector (-cos(theta/2), sin(theta/2)) of [[a, b], [b, -a]].
ModeAmplitudes ground_state_amplitudes(double theta);

/// The orthogonal partner (sin(theta/2), cos(theta/2)), eigenvalue +e.
ModeAmplitudes excited_state_amplitudes(double theta);

/// Small-momentum power laws extracted by log-log least squares over the
/// lowest 10% of grid momenta: b(k) ~ c_beta k^(beta_eff-1) and
/// |a(k, g_c)| ~ k^(gamma_eff-1).
struct SmallKCalibration {
    double beta_eff = 2.0;
    double c_beta = 1.0;
    double gamma_eff = 3.0;
    double gap_at_kmin = 0.0;  // |a(k_min, g_c)|
    int n_points = 0;
};

SmallKCalibration calibrate_small_k(const ModelSpec &model, int L);

/// Ordinary least squares of y on x; returns {slope, intercept}. Shared by the
/// calibration and the power-law fits.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double residual_stderr = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace kzmagic
