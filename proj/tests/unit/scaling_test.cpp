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

#include <cmath>

#include <doctest.h>

#include "kzmagic/errors.hpp"
#include "kzmagic/scaling.hpp"

using namespace kzmagic;

TEST_SUITE("scaling") {

TEST_CASE("predicted exponent") {
    CHECK(predicted_exponent(ModelSpec::tfim()) == 0.5);
    CHECK(predicted_exponent(ModelSpec::lrkm(1.4, 1.6)) == doctest::Approx(0.8333333333));
    CHECK(predicted_exponent(ModelSpec::lrkm(2.5, 1.4)) == doctest::Approx(1.25));
    CHECK(predicted_exponent(ModelSpec::lrkm(1.2, 5.0)) == 0.5);
}

TEST_CASE("power-law fits") {
    std::vector<double> x, y, flat, wobble;
    for (double v = 1.0; v <= 10.0; v += 0.5) {
        x.push_back(v);
        y.push_back(3.0 * std::pow(v, -0.5));
        flat.push_back(2.0);
        wobble.push_back(std::pow(v, -0.83) * (1.0 + 0.05 * std::sin(2.0 * v)));
    }
    const PowerLawFit f = fit_power_law(x, y);
    CHECK(f.exponent == doctest::Approx(-0.5));
    CHECK(f.log_amplitude == doctest::Approx(std::log(3.0)));
    CHECK(f.stderr_exponent < 1e-12);
    CHECK(std::abs(fit_power_law(x, flat).exponent) < 1e-12);
    CHECK(std::abs(fit_power_law(x, wobble).exponent + 0.83) < 0.03);

    const PowerLawFit w = fit_power_law(x, y, 2.0, 4.0);
    CHECK(w.n_points == 5);
    CHECK(w.x_min == 2.0);
    CHECK(w.x_max == 4.0);

    const std::vector<double> three{1, 2, 3}, vals{1, 2, 3};
    CHECK_THROWS_AS(fit_power_law(three, vals), ConfigError);
    std::vector<double> bad = y;
    bad[3] = -1.0;
    CHECK_THROWS_AS(fit_power_law(x, bad), NumericalError);
}

TEST_CASE("trimmed fit drops pre-asymptotic points") {
    const std::vector<double> x{16, 32, 64, 128, 256, 512};
    std::vector<double> clean, transient;
    for (double v : x) {
        clean.push_back(2.0 * std::pow(v, -0.5));
        transient.push_back(std::pow(v, -0.5) * (1.0 + 0.01 * std::sin(v)) * (v < 40 ? 0.6 : 1.0));
    }
    const TrimmedPowerLawFit a = fit_power_law_trimmed(x, clean);
    CHECK_FALSE(a.trimmed);
    CHECK(a.fit.exponent == a.full.exponent);
    const TrimmedPowerLawFit b = fit_power_law_trimmed(x, transient);
    CHECK(b.trimmed);
    CHECK(b.fit.n_points == 4);
    CHECK(b.fit.x_min == 64.0);
    CHECK(std::abs(b.fit.exponent + 0.5) < 0.02);
}

TEST_CASE("freeze-out and crossing times") {
    CHECK(freeze_out_time(ModelSpec::tfim(), 100.0) == 10.0);
    CHECK(freeze_out_time(ModelSpec::tfim(), 1.0) == 1.0);
    CHECK(freeze_out_time(ModelSpec::tfim(), 400.0) / freeze_out_time(ModelSpec::tfim(), 100.0) == 2.0);
    const ModelSpec t = ModelSpec::tfim(), l = ModelSpec::lrkm(1.4, 1.6);
    CHECK(critical_crossing_time(RampProtocol::standard(t, 64.0), t) == -64.0);
    CHECK(critical_crossing_time(RampProtocol::standard(l, 10.0), l) == -20.0);
    RampProtocol r = RampProtocol::standard(t, 64.0);
    r.g_start = 0.8;
    CHECK_THROWS_AS(critical_crossing_time(r, t), ConfigError);
}

TEST_CASE("collapse metric") {
    Trace a{64.0, {-2, -1, 0, 1, 2}, {1, 2, 3, 2, 1}};
    Trace b = a;
    b.tau_Q = 128.0;
    CHECK(collapse_metric(std::vector{a, b}, -1.0, 1.0) == 0.0);
    for (double &v : b.value) v *= 1.1;
    CHECK(collapse_metric(std::vector{a, b}, -1.0, 1.0) == doctest::Approx(0.1 / 1.05).epsilon(1e-6));
    b.value = a.value;
    for (double &v : b.value) v /= std::sqrt(2.0);
    CHECK(collapse_metric(std::vector{a, b}, -1.0, 1.0, 0.5) == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(collapse_metric(std::vector{a, b}, -3.0, 1.0), ConfigError);
    CHECK_THROWS_AS(collapse_metric(std::vector{a}, -1.0, 1.0), ConfigError);
}

TEST_CASE("sweep records") {
    SweepOptions opts;
    opts.backend = Backend::KZM;
    opts.alphas = {0.5, 2.0};
    const std::vector<double> taus{64, 16, 32};
    const auto recs = run_tauq_sweep(ModelSpec::tfim(), 200, taus, opts);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].tau_Q == 16.0);
    CHECK(recs[2].tau_Q == 64.0);
    for (const SweepRecord &r : recs) {
        CHECK(r.delta_sre.size() == 2);
        CHECK(r.delta_kappa.size() == 3);
        CHECK(r.defect_density > 0.0);
    }
    CHECK(recs[0].defect_density > recs[2].defect_density);
    CHECK(parse_backend("kzm") == Backend::KZM);
    CHECK_THROWS_AS(parse_backend("rk4"), ConfigError);
}

TEST_CASE("backends give consistent exponents") {
    const std::vector<double> taus{8, 16, 32, 64, 128};
    SweepOptions ode, kzm;
    ode.alphas = kzm.alphas = {2.0};
    ode.cumulant_orders = kzm.cumulant_orders = {};
    kzm.backend = Backend::KZM;
    const auto a = run_tauq_sweep(ModelSpec::tfim(), 400, taus, ode);
    const auto b = run_tauq_sweep(ModelSpec::tfim(), 400, taus, kzm);
    std::vector<double> na, nb;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        na.push_back(a[i].defect_density);
        nb.push_back(b[i].defect_density);
    }
    const PowerLawFit fa = fit_power_law(taus, na), fb = fit_power_law(taus, nb);
    CHECK(std::abs(fa.exponent - fb.exponent) < 0.05);
}

TEST_CASE("alpha sweep") {
    SweepOptions opts;
    opts.backend = Backend::KZM;
    const std::vector<double> alphas{0.01, 0.5, 2.0, 8.0, 16.0, 32.0};
    const AlphaSweepResult r = run_alpha_sweep(ModelSpec::tfim(), 100, 16.0, alphas, opts);
    CHECK(r.delta_sre.size() == 6);
    REQUIRE(r.asymptotics.has_value());
    const std::vector<double> narrow{0.5, 2.0};
    const AlphaSweepResult n = run_alpha_sweep(ModelSpec::tfim(), 100, 16.0, narrow, opts);
    CHECK_FALSE(n.asymptotics.has_value());
    CHECK_FALSE(n.asymptotics_note.empty());
}

}  // TEST_SUITE
