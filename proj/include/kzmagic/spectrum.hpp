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
#include <iosfwd>
#include <span>
#include <vector>

#include "kzmagic/magic.hpp"

namespace kzmagic {

constexpr double kDefaultZeroThreshold = 1e-12;

/// Natural logs of the nonzero Pauli values of one mode. Each retained slot
/// carries weight 1/count.
struct ModeLogSupport {
    std::array<double, 4> logs{};
    int count = 0;

    std::span<const double> values() const { return {logs.data(), static_cast<std::size_t>(count)}; }
};

/// Throws NumericalError when no value exceeds the threshold.
ModeLogSupport mode_log_support(const ModePauliValues &p, double zero_threshold = kDefaultZeroThreshold);

/// Distribution of ln|<P>| over nonzero Pauli strings, stored as probability
/// mass on bins of equal width.
struct LogHistogram {
    double bin_width = 0.0;
    double origin = 0.0;  // left edge of bin 0
    std::vector<double> mass;
    double excluded_zero_fraction = 0.0;

    std::size_t size() const { return mass.size(); }
    double bin_left(std::size_t i) const { return origin + static_cast<double>(i) * bin_width; }
    double bin_right(std::size_t i) const { return bin_left(i + 1); }
    double bin_center(std::size_t i) const { return bin_left(i) + 0.5 * bin_width; }
    double total_mass() const;
};

// Shift-and-superpose convolution over modes. Bin centres sit on integer
// multiples of bin_width and each shift is deposited on the two neighbouring
// centres with linear weights, which keeps the mean exact.
LogHistogram build_log_histogram(std::span<const ModePauliValues> modes, double bin_width,
                                 double zero_threshold = kDefaultZeroThreshold);

LogHistogram build_log_histogram(const StateSnapshot &state, double bin_width,
                                 double zero_threshold = kDefaultZeroThreshold);

/// kappa[0] = kappa_1, ..., in natural-log units.
struct CumulantSet {
    std::vector<double> kappa;

    int order() const { return static_cast<int>(kappa.size()); }
    double operator()(int q) const { return kappa.at(static_cast<std::size_t>(q - 1)); }
};

/// Cumulants of the uniform distribution over `values`, up to order Q <= 4.
CumulantSet uniform_cumulants(std::span<const double> values, int Q);

CumulantSet exact_log_cumulants(std::span<const ModePauliValues> modes, int Q,
                                double zero_threshold = kDefaultZeroThreshold);

CumulantSet exact_log_cumulants(const StateSnapshot &state, int Q, double zero_threshold = kDefaultZeroThreshold);

/// exact(state) - exact(reference), each over its own nonzero support.
CumulantSet delta_log_cumulants(const StateSnapshot &state, const StateSnapshot &reference, int Q,
                                double zero_threshold = kDefaultZeroThreshold);

/// Cumulants of the binned mass, with every bin collapsed onto its centre.
CumulantSet histogram_moments(const LogHistogram &hist, int Q);

/// prod_k <exp(i theta ln|value|)>_k.
complex log_char_function(const StateSnapshot &state, double theta, double zero_threshold = kDefaultZeroThreshold);

/// sum_k [log phi_k(state) - log phi_k(reference)] on the principal branch.
complex delta_log_char_function(const StateSnapshot &state, const StateSnapshot &reference, double theta,
                                double zero_threshold = kDefaultZeroThreshold);

struct GaussianityMetrics {
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double sup_cdf_distance = 0.0;
};

/// Moments from histogram_moments; the CDF distance is against the Gaussian
/// with the histogram's own mean and variance, sampled at bin edges.
GaussianityMetrics gaussianity_metrics(const LogHistogram &hist);

std::vector<double> lognormal_overlay(double kappa1, double kappa2, std::span<const double> x_grid);

double lognormal_cdf(double x, double kappa1, double kappa2);

/// sup over bin edges e of |P(|<P>| <= exp(e)) - lognormal_cdf(exp(e))|.
double lognormal_cdf_distance(const LogHistogram &hist, double kappa1, double kappa2);

/// Columns bin_left, bin_right, mass.
void write_histogram_csv(std::ostream &os, const LogHistogram &hist);

}  // namespace kzmagic
