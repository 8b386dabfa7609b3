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

#include "kzmagic/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "kzmagic/errors.hpp"

namespace kzmagic {

namespace {

constexpr int kMaxCumulantOrder = 4;
constexpr double kWindowSigmas = 8.0;

void check_order(int Q) {
    if (Q < 1 || Q > kMaxCumulantOrder) throw ConfigError("cumulant order must be in 1..4 (got " + std::to_string(Q) + ")");
}

void check_threshold(double t) {
    if (!(t > 0.0 && t <= 1e-6)) throw ConfigError("zero_threshold must lie in (0, 1e-6]");
}

// Cumulants from the first four central moments.
CumulantSet from_central_moments(double mean, double m2, double m3, double m4, int Q) {
    CumulantSet c;
    const double all[4] = {mean, m2, m3, m4 - 3.0 * m2 * m2};
    c.kappa.assign(all, all + Q);
    return c;
}

void accumulate(CumulantSet &total, const CumulantSet &part) {
    for (std::size_t i = 0; i < total.kappa.size(); ++i) total.kappa[i] += part.kappa[i];
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

std::vector<ModeLogSupport> supports_of(std::span<const ModePauliValues> modes, double zero_threshold) {
    check_threshold(zero_threshold);
    std::vector<ModeLogSupport> out;
    out.reserve(modes.size());
    for (const ModePauliValues &p : modes) out.push_back(mode_log_support(p, zero_threshold));
    return out;
}

complex mode_char(const ModeLogSupport &s, double theta) {
    complex sum{0.0, 0.0};
    for (double x : s.values()) sum += std::polar(1.0, theta * x);
    return sum / static_cast<double>(s.count);
}

}  // namespace

ModeLogSupport mode_log_support(const ModePauliValues &p, double zero_threshold) {
    ModeLogSupport s;
    for (double v : p.values()) {
        if (std::abs(v) > zero_threshold) s.logs[static_cast<std::size_t>(s.count++)] = std::log(std::abs(v));
    }
    if (s.count == 0) throw NumericalError("mode has no Pauli value above the zero threshold");
    return s;
}

double LogHistogram::total_mass() const {
    double t = 0.0;
    for (double m : mass) t += m;
    return t;
}

CumulantSet uniform_cumulants(std::span<const double> values, int Q) {
    check_order(Q);
    if (values.empty()) throw NumericalError("cumulants of an empty support");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double x : values) mean += x;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : values) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    return from_central_moments(mean, m2 / n, m3 / n, m4 / n, Q);
}

CumulantSet exact_log_cumulants(std::span<const ModePauliValues> modes, int Q, double zero_threshold) {
    check_order(Q);
    CumulantSet total;
    total.kappa.assign(static_cast<std::size_t>(Q), 0.0);
    for (const ModeLogSupport &s : supports_of(modes, zero_threshold)) accumulate(total, uniform_cumulants(s.values(), Q));
    return total;
}

CumulantSet exact_log_cumulants(const StateSnapshot &state, int Q, double zero_threshold) {
    return exact_log_cumulants(pauli_values(state), Q, zero_threshold);
}

CumulantSet delta_log_cumulants(const StateSnapshot &state, const StateSnapshot &reference, int Q,
                                double zero_threshold) {
    if (!(state.grid == reference.grid)) throw ConfigError("state and reference use different grids");
    CumulantSet d = exact_log_cumulants(state, Q, zero_threshold);
    const CumulantSet r = exact_log_cumulants(reference, Q, zero_threshold);
    for (std::size_t i = 0; i < d.kappa.size(); ++i) d.kappa[i] -= r.kappa[i];
    return d;
}

LogHistogram build_log_histogram(std::span<const ModePauliValues> modes, double bin_width, double zero_threshold) {
    if (!(std::isfinite(bin_width) && bin_width > 0.0)) throw ConfigError("bin_width must be positive");
    if (modes.empty()) throw ConfigError("cannot build a histogram of an empty state");
    const std::vector<ModeLogSupport> supports = supports_of(modes, zero_threshold);

    // Range: every partial sum's window, clipped at its hard minimum, plus all
    // single-mode spikes.
    double lo = 0.0;
    double hi = 0.0;
    double mean = 0.0, var = 0.0, floor_sum = 0.0, ceiling_sum = 0.0;
    double kept = 1.0;
    for (const ModeLogSupport &s : supports) {
        const CumulantSet c = uniform_cumulants(s.values(), 2);
        mean += c(1);
        var += c(2);
        const auto [mn, mx] = std::minmax_element(s.logs.begin(), s.logs.begin() + s.count);
        floor_sum += *mn;
        ceiling_sum += *mx;
        lo = std::min({lo, *mn, std::max(floor_sum, mean - kWindowSigmas * std::sqrt(var))});
        hi = std::max({hi, *mx, std::min(ceiling_sum, mean + kWindowSigmas * std::sqrt(var))});
        kept *= s.count / 4.0;
    }

    LogHistogram h;
    h.bin_width = bin_width;
    const long first = static_cast<long>(std::floor(lo / bin_width));
    const long last = static_cast<long>(std::ceil(hi / bin_width));
    h.origin = (static_cast<double>(first) - 0.5) * bin_width;
    const std::size_t n = static_cast<std::size_t>(last - first + 1);
    h.mass.assign(n, 0.0);
    h.excluded_zero_fraction = 1.0 - kept;
    h.mass[static_cast<std::size_t>(-first)] = 1.0;  // delta at ln 1 = 0

    std::vector<double> next(n);
    const long top = static_cast<long>(n) - 1;
    for (const ModeLogSupport &s : supports) {
        std::fill(next.begin(), next.end(), 0.0);
        const double w = 1.0 / static_cast<double>(s.count);
        for (double x : s.values()) {
            const double shift = x / bin_width;
            const long base = static_cast<long>(std::floor(shift));
            const double frac = shift - static_cast<double>(base);
            for (long i = 0; i <= top; ++i) {
                const double m = h.mass[static_cast<std::size_t>(i)];
                if (m == 0.0) continue;
                const long j0 = std::clamp(i + base, 0L, top);
                const long j1 = std::clamp(i + base + 1, 0L, top);
                next[static_cast<std::size_t>(j0)] += w * m * (1.0 - frac);
                next[static_cast<std::size_t>(j1)] += w * m * frac;
            }
        }
        h.mass.swap(next);
    }
    return h;
}

LogHistogram build_log_histogram(const StateSnapshot &state, double bin_width, double zero_threshold) {
    return build_log_histogram(pauli_values(state), bin_width, zero_threshold);
}

CumulantSet histogram_moments(const LogHistogram &hist, int Q) {
    check_order(Q);
    const double total = hist.total_mass();
    if (!(total > 0.0)) throw NumericalError("histogram has no mass");
    double mean = 0.0;
    for (std::size_t i = 0; i < hist.size(); ++i) mean += hist.mass[i] * hist.bin_center(i);
    mean /= total;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        const double d = hist.bin_center(i) - mean;
        const double m = hist.mass[i];
        m2 += m * d * d;
        m3 += m * d * d * d;
        m4 += m * d * d * d * d;
    }
    return from_central_moments(mean, m2 / total, m3 / total, m4 / total, Q);
}

complex log_char_function(const StateSnapshot &state, double theta, double zero_threshold) {
    complex prod{1.0, 0.0};
    for (const ModeLogSupport &s : supports_of(pauli_values(state), zero_threshold)) prod *= mode_char(s, theta);
    return prod;
}

complex delta_log_char_function(const StateSnapshot &state, const StateSnapshot &reference, double theta,
                                double zero_threshold) {
    if (!(state.grid == reference.grid)) throw ConfigError("state and reference use different grids");
    const auto a = supports_of(pauli_values(state), zero_threshold);
    const auto b = supports_of(pauli_values(reference), zero_threshold);
    complex sum{0.0, 0.0};
    for (std::size_t m = 0; m < a.size(); ++m) sum += std::log(mode_char(a[m], theta)) - std::log(mode_char(b[m], theta));
    return sum;
}

GaussianityMetrics gaussianity_metrics(const LogHistogram &hist) {
    const CumulantSet c = histogram_moments(hist, 4);
    if (!(c(2) > 0.0)) throw NumericalError("histogram variance vanishes; Gaussianity is undefined");
    GaussianityMetrics g;
    const double sd = std::sqrt(c(2));
    g.skewness = c(3) / (sd * sd * sd);
    g.excess_kurtosis = c(4) / (c(2) * c(2));
    double cdf = 0.0;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        const double before = normal_cdf((hist.bin_left(i) - c(1)) / sd);
        g.sup_cdf_distance = std::max(g.sup_cdf_distance, std::abs(cdf - before));
        cdf += hist.mass[i];
        const double after = normal_cdf((hist.bin_right(i) - c(1)) / sd);
        g.sup_cdf_distance = std::max(g.sup_cdf_distance, std::abs(cdf - after));
    }
    return g;
}

double lognormal_cdf(double x, double kappa1, double kappa2) {
    if (!(kappa2 > 0.0)) throw ConfigError("lognormal variance must be positive");
    if (x <= 0.0) return 0.0;
    return normal_cdf((std::log(x) - kappa1) / std::sqrt(kappa2));
}

std::vector<double> lognormal_overlay(double kappa1, double kappa2, std::span<const double> x_grid) {
    if (!(kappa2 > 0.0)) throw ConfigError("lognormal variance must be positive");
    std::vector<double> pdf;
    pdf.reserve(x_grid.size());
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * kappa2);
    for (double x : x_grid) {
        if (!(x > 0.0)) throw ConfigError("lognormal overlay needs x > 0");
        const double d = std::log(x) - kappa1;
        pdf.push_back(norm / x * std::exp(-d * d / (2.0 * kappa2)));
    }
    return pdf;
}

double lognormal_cdf_distance(const LogHistogram &hist, double kappa1, double kappa2) {
    double worst = 0.0;
    double cdf = 0.0;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        worst = std::max(worst, std::abs(cdf - lognormal_cdf(std::exp(hist.bin_left(i)), kappa1, kappa2)));
        cdf += hist.mass[i];
        worst = std::max(worst, std::abs(cdf - lognormal_cdf(std::exp(hist.bin_right(i)), kappa1, kappa2)));
    }
    return worst;
}

void write_histogram_csv(std::ostream &os, const LogHistogram &hist) {
    os << "bin_left,bin_right,mass\n";
    char line[96];
    for (std::size_t i = 0; i < hist.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", hist.bin_left(i), hist.bin_right(i), hist.mass[i]);
        os << line;
    }
}

}  // namespace kzmagic
