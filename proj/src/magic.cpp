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

#include "kzmagic/magic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "kzmagic/errors.hpp"

namespace kzmagic {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kQuadratureAbsTol = 1e-9;
constexpr double kTruncationP = 1e-14;

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw ConfigError("alpha must be positive and finite (got " + std::to_string(alpha) + ")");
    }
}

void check_same_grid(const StateSnapshot &a, const StateSnapshot &b) {
    if (!(a.grid == b.grid) || a.size() != b.size()) throw ConfigError("state and reference use different grids");
}

double abs_pow(double x, double e) { return std::pow(std::abs(x), e); }

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

ModePauliValues mode_pauli_values(const ModeAmplitudes &amps) {
    const complex w = amps.u * std::conj(amps.v);
    ModePauliValues p;
    p.s_z = std::norm(amps.u) - std::norm(amps.v);
    p.s_xy = -2.0 * w.imag();
    p.s_xx = 2.0 * w.real();
    return p;
}

std::vector<ModePauliValues> pauli_values(const StateSnapshot &state) {
    std::vector<ModePauliValues> out;
    out.reserve(state.size());
    for (const ModeAmplitudes &a : state.amplitudes) out.push_back(mode_pauli_values(a));
    return out;
}

double mode_power_sum(const ModePauliValues &p, double alpha) {
    const double e = 2.0 * alpha;
    return 1.0 + abs_pow(p.s_z, e) + abs_pow(p.s_xy, e) + abs_pow(p.s_xx, e);
}

double mode_shannon_term(const ModePauliValues &p) {
    return -0.5 * (xlog2x(p.s_z * p.s_z) + xlog2x(p.s_xy * p.s_xy) + xlog2x(p.s_xx * p.s_xx));
}

double sre(const StateSnapshot &state, double alpha) {
    check_alpha(alpha);
    double total = 0.0;
    if (alpha == 1.0) {
        for (const ModeAmplitudes &a : state.amplitudes) total += mode_shannon_term(mode_pauli_values(a));
        return total;
    }
    const double L = static_cast<double>(state.grid.L);
    for (const ModeAmplitudes &a : state.amplitudes) total += std::log2(mode_power_sum(mode_pauli_values(a), alpha));
    return (0.5 * L + total - L) / (1.0 - alpha);
}

std::vector<double> relative_sre_terms(const StateSnapshot &state, const StateSnapshot &reference, double alpha) {
    check_alpha(alpha);
    check_same_grid(state, reference);
    std::vector<double> terms(state.size());
    for (std::size_t m = 0; m < state.size(); ++m) {
        const ModePauliValues ps = mode_pauli_values(state.amplitudes[m]);
        const ModePauliValues pr = mode_pauli_values(reference.amplitudes[m]);
        if (alpha == 1.0) {
            terms[m] = mode_shannon_term(ps) - mode_shannon_term(pr);
        } else {
            terms[m] = std::log2(mode_power_sum(ps, alpha) / mode_power_sum(pr, alpha)) / (1.0 - alpha);
        }
    }
    return terms;
}

double relative_sre(const StateSnapshot &state, const StateSnapshot &reference, double alpha) {
    double total = 0.0;
    for (double t : relative_sre_terms(state, reference, alpha)) total += t;
    return total;
}

SreIntegral sre_integral(double alpha, double tau_Q, const ExcitationLaw &law, PhaseModel phase,
                         QuadratureRule rule) {
    check_alpha(alpha);
    if (!(tau_Q > 0.0)) throw ConfigError("tau_Q must be positive");
    if (phase == PhaseModel::Auto) throw ConfigError("sre_integral needs an explicit phase model");
    const double power = 2.0 * (law.beta_eff - 1.0);
    const double rate = 2.0 * std::numbers::pi * law.c_beta * law.c_beta;
    const double x_max = std::pow(-std::log(kTruncationP) / rate, 1.0 / power);
    const double chirp = std::log(4.0 * tau_Q) + kEulerGamma - 2.0;
    const double base_phase = phase == PhaseModel::TfimRefined ? 2.0 * tau_Q + 0.25 * std::numbers::pi : 2.0 * tau_Q;

    auto integrand = [&](double x) {
        const double p = std::exp(-rate * std::pow(x, power));
        const double phi = phase == PhaseModel::TfimRefined ? base_phase + x * x * chirp : base_phase;
        const double coherence = abs_pow(4.0 * p * (1.0 - p), alpha);
        const double weight = abs_pow(std::sin(phi), 2.0 * alpha) + abs_pow(std::cos(phi), 2.0 * alpha);
        return std::log2(0.5 * (1.0 + abs_pow(1.0 - 2.0 * p, 2.0 * alpha) + coherence * weight));
    };

    // The integrand has kinks where p = 1/2 and, for the chirped phase, where
    // sin(phi) or cos(phi) vanishes. Integrate piecewise between them.
    std::vector<double> cuts{0.0, std::pow(std::log(2.0) / rate, 1.0 / power), x_max};
    if (phase == PhaseModel::TfimRefined && chirp > 0.0) {
        const double quarter = 0.5 * std::numbers::pi;
        const double phi_max = base_phase + x_max * x_max * chirp;
        for (double n = std::ceil(base_phase / quarter); n * quarter < phi_max; n += 1.0) {
            const double x = std::sqrt((n * quarter - base_phase) / chirp);
            if (x > 0.0 && x < x_max) cuts.push_back(x);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    SreIntegral out;
    out.x_max = x_max;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        if (!(b > a)) continue;
        double err = 0.0;
        if (rule == QuadratureRule::GaussKronrod) {
            out.value +=
                boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a, b, 15, 1e-11, &err);
        } else {
            boost::math::quadrature::tanh_sinh<double> ts(12);
            out.value += ts.integrate(integrand, a, b, 1e-11, &err);
        }
        out.error_estimate += err;
    }
    if (!std::isfinite(out.value) || out.error_estimate > kQuadratureAbsTol) {
        throw NumericalError("SRE quadrature did not converge (alpha=" + std::to_string(alpha) +
                             ", tau_Q=" + std::to_string(tau_Q) + ")");
    }
    return out;
}

double analytic_delta_sre(const ExcitationLaw &law, double alpha, double tau_Q, int L, PhaseModel phase) {
    if (alpha == 1.0) throw ConfigError("analytic_delta_sre is defined for alpha != 1");
    const SreIntegral I = sre_integral(alpha, tau_Q, law, phase);
    return static_cast<double>(L) / (2.0 * std::numbers::pi * (1.0 - alpha)) * I.value *
           std::pow(tau_Q, -law.exponent());
}

double analytic_delta_sre(const ModelSpec &model, double alpha, double tau_Q, int L, PhaseModel phase) {
    if (phase == PhaseModel::Auto) phase = model.is_tfim() ? PhaseModel::TfimRefined : PhaseModel::Dynamical;
    return analytic_delta_sre(excitation_law(model, L), alpha, tau_Q, L, phase);
}

AlphaAsymptotics alpha_asymptotics(const StateSnapshot &state, const StateSnapshot &reference,
                                   const ExcitationLaw &law, std::span<const double> alphas) {
    if (alphas.empty()) throw ConfigError("alpha list is empty");
    const auto [lo, hi] = std::minmax_element(alphas.begin(), alphas.end());
    if (*lo > 0.1 || *hi < 10.0) throw ConfigError("alpha list must reach <= 0.1 and >= 10");

    AlphaAsymptotics out;
    out.small_alpha_limit = 0.25 * state.grid.L * std::log2(1.5);
    out.predicted_slope = -1.0 - law.exponent();
    std::vector<double> lx, ly;
    for (double a : alphas) {
        const double d = relative_sre(state, reference, a);
        out.alphas.push_back(a);
        out.delta_sre.push_back(d);
        if (a >= 8.0) {
            if (!(d > 0.0)) throw NumericalError("non-positive Delta M at alpha=" + std::to_string(a));
            lx.push_back(std::log(a));
            ly.push_back(std::log(d));
        }
    }
    if (lx.size() < 3) throw ConfigError("need at least three alphas >= 8 for the large-alpha slope");
    out.small_alpha_measured = out.delta_sre[static_cast<std::size_t>(lo - alphas.begin())];
    const LineFit fit = fit_line(lx, ly);
    out.large_alpha_slope = fit.slope;
    out.large_alpha_slope_stderr = fit.stderr_slope;
    return out;
}

}  // namespace kzmagic
