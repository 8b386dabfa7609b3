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

#include "kzmagic/model.hpp"

#include <cmath>
#include <numbers>

#include "kzmagic/errors.hpp"

namespace kzmagic {

namespace {

// A grid momentum closer than this to a gapless point is rejected.
constexpr double kGaplessTolerance = 1e-12;

// sum_{r=1}^{L/2} r^-p cos(kr) / sum r^-p  (or sin).
double normalized_power_sum(double k, double exponent, int L, bool sine) {
    const int r_max = L / 2;
    double num = 0.0;
    double den = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        const double w = std::pow(static_cast<double>(r), -exponent);
        const double kr = k * r;
        num += w * (sine ? std::sin(kr) : std::cos(kr));
        den += w;
    }
    return num / den;
}

}  // namespace

std::string to_string(ModelKind kind) { return kind == ModelKind::TFIM ? "tfim" : "lrkm"; }

ModelSpec ModelSpec::tfim() {
    ModelSpec m;
    m.kind = ModelKind::TFIM;
    m.gamma = 2.0;
    m.beta = 2.0;
    m.g_critical = 1.0;
    return m;
}

ModelSpec ModelSpec::lrkm(double gamma, double beta) {
    if (!std::isfinite(gamma) || gamma <= 1.0) {
        throw ConfigError("LRKM requires gamma > 1 (got " + std::to_string(gamma) + ")");
    }
    if (!std::isfinite(beta) || beta <= 1.0) {
        throw ConfigError("LRKM requires beta > 1 (got " + std::to_string(beta) + ")");
    }
    ModelSpec m;
    m.kind = ModelKind::LRKM;
    m.gamma = gamma;
    m.beta = beta;
    m.g_critical = 2.0;
    return m;
}

std::string ModelSpec::describe() const {
    if (is_tfim()) return "tfim";
    char buf[96];
    std::snprintf(buf, sizeof buf, "lrkm(gamma=%g, beta=%g)", gamma, beta);
    return buf;
}

MomentumGrid build_momentum_grid(int L) {
    if (L < 2) throw ConfigError("L must be a positive even integer >= 2 (got " + std::to_string(L) + ")");
    if (L % 2 != 0) throw ConfigError("L must be even (got " + std::to_string(L) + ")");
    MomentumGrid grid;
    grid.L = L;
    grid.k.resize(static_cast<std::size_t>(L / 2));
    for (int m = 0; m < L / 2; ++m) {
        grid.k[static_cast<std::size_t>(m)] = (2.0 * m + 1.0) * std::numbers::pi / L;
    }
    return grid;
}

ModeCouplings mode_couplings(const ModelSpec &model, double k, int L) {
    if (model.is_tfim()) return {std::cos(k), std::sin(k)};
    if (L < 2) throw ConfigError("LRKM couplings need L >= 2");
    return {2.0 * normalized_power_sum(k, model.gamma, L, false), normalized_power_sum(k, model.beta, L, true)};
}

ModeCoefficients coefficients_at(const ModeCouplings &c, double g) {
    const double a = g - c.offset;
    return {a, c.pairing, std::hypot(a, c.pairing)};
}

ModeCoefficients mode_coefficients(const ModelSpec &model, double k, double g, int L) {
    return coefficients_at(mode_couplings(model, k, L), g);
}

ModeTable::ModeTable(const ModelSpec &model, const MomentumGrid &grid) : model_(model), grid_(grid) {
    couplings_.reserve(grid.size());
    for (double k : grid.k) couplings_.push_back(mode_couplings(model, k, grid.L));
}

double bogoliubov_angle(const ModeCoefficients &c, double k) {
    if (!(c.energy > kGaplessTolerance)) throw DegenerateModeError(k);
    return std::atan2(c.b, -c.a);
}

ModeAmplitudes ground_state_amplitudes(double theta) {
    return {complex(-std::cos(0.5 * theta), 0.0), complex(std::sin(0.5 * theta), 0.0)};
}

ModeAmplitudes excited_state_amplitudes(double theta) {
    return {complex(std::sin(0.5 * theta), 0.0), complex(std::cos(0.5 * theta), 0.0)};
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw NumericalError("line fit needs at least two paired points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw NumericalError("line fit is degenerate: all abscissae coincide");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            ssr += r * r;
        }
        fit.residual_stderr = std::sqrt(ssr / static_cast<double>(n - 2));
        fit.stderr_slope = fit.residual_stderr / std::sqrt(sxx);
    }
    return fit;
}

SmallKCalibration calibrate_small_k(const ModelSpec &model, int L) {
    const MomentumGrid grid = build_momentum_grid(L);
    const std::size_t n = grid.size() / 10;
    if (n < 4) {
        throw NumericalError("small-k calibration needs at least 4 momenta in the lowest 10% (L=" + std::to_string(L) +
                             ")");
    }
    std::vector<double> lk, lb, la_k, la;
    SmallKCalibration cal;
    for (std::size_t m = 0; m < n; ++m) {
        const double k = grid.k[m];
        const ModeCoefficients c = mode_coefficients(model, k, model.g_critical, L);
        if (m == 0) cal.gap_at_kmin = std::abs(c.a);
        if (c.b > 0.0) {
            lk.push_back(std::log(k));
            lb.push_back(std::log(c.b));
        }
        if (std::abs(c.a) > 0.0) {
            la_k.push_back(std::log(k));
            la.push_back(std::log(std::abs(c.a)));
        }
    }
    if (lk.size() < 4) throw NumericalError("small-k calibration: pairing term vanishes on the fit window");
    const LineFit fb = fit_line(lk, lb);
    cal.beta_eff = 1.0 + fb.slope;
    cal.c_beta = std::exp(fb.intercept);
    cal.gamma_eff = la.size() >= 4 ? 1.0 + fit_line(la_k, la).slope : std::nan("");
    cal.n_points = static_cast<int>(n);
    return cal;
}

}  // namespace kzmagic
