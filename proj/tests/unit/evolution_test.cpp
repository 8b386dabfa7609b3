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
#include <numbers>

#include <doctest.h>

#include "kzmagic/errors.hpp"
#include "kzmagic/evolution.hpp"

using namespace kzmagic;

namespace {

double final_excitation(double k, double tau, double tol = 1e-10) {
    const ModelSpec m = ModelSpec::tfim();
    EvolveOptions opts;
    opts.tolerance = tol;
    const ModeEvolution e = evolve_mode(m, k, 0, RampProtocol::standard(m, tau), opts);
    return excitation_probability(e.final_state, mode_coefficients(m, k, 0.0, 0), k);
}

}  // namespace

TEST_SUITE("evolution") {

TEST_CASE("ramp protocol") {
    const ModelSpec m = ModelSpec::lrkm(1.4, 1.6);
    RampProtocol r = RampProtocol::standard(m, 10.0);
    CHECK(r.g_start == 10.0);
    CHECK(r.t_start() == -100.0);
    CHECK(r.t_end() == 0.0);
    CHECK(r.field_at(-20.0) == 2.0);
    r.validate(m);
    r.g_start = 1.5;
    CHECK_THROWS_AS(r.validate(m), ConfigError);
    r = RampProtocol::standard(m, 10.0);
    r.sample_times = {-50.0, -60.0};
    CHECK_THROWS_AS(r.validate(m), ConfigError);
    r.sample_times = {1.0};
    CHECK_THROWS_AS(r.validate(m), ConfigError);
    r = RampProtocol::standard(m, -1.0);
    CHECK_THROWS_AS(r.validate(m), ConfigError);
}

TEST_CASE("norm is preserved at every sample") {
    const ModelSpec m = ModelSpec::tfim();
    RampProtocol r = RampProtocol::standard(m, 20.0);
    r.sample_times = {-90.0, -40.0, -20.0, -5.0};
    for (double k : {0.01, 0.2, 1.5, 3.1}) {
        const ModeEvolution e = evolve_mode(m, k, 0, r);
        CHECK(e.max_norm_drift < 1e-9);
        REQUIRE(e.samples.size() == 4);
        for (const ModeAmplitudes &a : e.samples) CHECK(std::abs(a.norm_sq() - 1.0) < 1e-9);
    }
}

TEST_CASE("large-gap mode stays adiabatic") { CHECK(final_excitation(2.0, 50.0) < 1e-3); }

TEST_CASE("excitation probability follows Landau-Zener") {
    const double p = final_excitation(0.2, 10.0);
    const double lz = std::exp(-2.0 * std::numbers::pi * 10.0 * 0.04);
    CHECK(std::abs(p - lz) < 0.1 * lz);
    CHECK(std::abs(p - final_excitation(0.2, 10.0, 1e-12)) < 1e-7);
}

TEST_CASE("evolution is deterministic") {
    const double a = final_excitation(0.3, 16.0);
    const double b = final_excitation(0.3, 16.0);
    CHECK(a == b);
}

TEST_CASE("evolve_all matches evolve_mode and is thread-count independent") {
    const ModelSpec m = ModelSpec::tfim();
    SUBCASE("L=2") {
        const ModeTable t(m, build_momentum_grid(2));
        const RampResult all = evolve_all(t, RampProtocol::standard(m, 4.0));
        const ModeEvolution one = evolve_mode(m, t.grid().k[0], 2, RampProtocol::standard(m, 4.0));
        CHECK(all.final_state.amplitudes[0].u == one.final_state.u);
        CHECK(all.final_state.amplitudes[0].v == one.final_state.v);
    }
    SUBCASE("threads") {
        const ModeTable t(m, build_momentum_grid(24));
        RampProtocol r = RampProtocol::standard(m, 8.0);
        r.sample_times = {-8.0};
        const RampResult a = evolve_all(t, r, {}, 1);
        const RampResult b = evolve_all(t, r, {}, 4);
        REQUIRE(a.samples.size() == 1);
        CHECK(a.samples[0].g == doctest::Approx(1.0));
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK(a.final_state.amplitudes[i].u == b.final_state.amplitudes[i].u);
            CHECK(a.final_state.amplitudes[i].v == b.final_state.amplitudes[i].v);
            CHECK(a.samples[0].amplitudes[i].u == b.samples[0].amplitudes[i].u);
        }
    }
}

TEST_CASE("L=200 snapshot passes the norm invariant") {
    const ModelSpec m = ModelSpec::tfim();
    const ModeTable t(m, build_momentum_grid(200));
    const RampResult r = evolve_all(t, RampProtocol::standard(m, 64.0));
    CHECK(r.final_state.size() == 100);
    CHECK(max_norm_drift(r.final_state) < 1e-9);
}

TEST_CASE("integrator failure reports the mode") {
    EvolveOptions opts;
    opts.max_steps = 10;
    try {
        evolve_mode(ModelSpec::tfim(), 0.5, 0, RampProtocol::standard(ModelSpec::tfim(), 50.0), opts);
        FAIL("expected EvolutionError");
    } catch (const EvolutionError &e) {
        CHECK(e.k() == 0.5);
    }
}

TEST_CASE("Landau-Zener probability") {
    const ExcitationLaw tfim = excitation_law(ModelSpec::tfim(), 200);
    CHECK(lz_probability(tfim, 1.0, 1.0 / (2.0 * std::numbers::pi)) == doctest::Approx(std::exp(-1.0)));
    CHECK(lz_probability(tfim, 0.2, 10.0) == doctest::Approx(0.0810).epsilon(1e-3));
    CHECK(lz_probability(tfim, 0.2, 1e6) == 0.0);
    const ExcitationLaw lr = excitation_law(ModelSpec::lrkm(1.4, 1.6), 1000);
    CHECK(lr.exponent() == doctest::Approx(0.5 / 0.4865560554).epsilon(1e-8));
}

TEST_CASE("KZM amplitudes") {
    const double theta = 0.7;
    const ModeAmplitudes gs = ground_state_amplitudes(theta);
    const ModeAmplitudes a0 = kzm_amplitudes(theta, 0.0, 3.0);
    CHECK(a0.u == gs.u);
    CHECK(a0.v == gs.v);
    const ModeAmplitudes ex = excited_state_amplitudes(theta);
    const ModeAmplitudes a1 = kzm_amplitudes(theta, 1.0, 3.0);
    const complex phase = std::polar(1.0, 3.0);
    CHECK(std::abs(a1.u - phase * ex.u) < 1e-15);
    CHECK(std::abs(a1.v - phase * ex.v) < 1e-15);
    for (double p : {0.1, 0.5, 0.93}) CHECK(std::abs(kzm_amplitudes(theta, p, 1.3).norm_sq() - 1.0) < 1e-12);
    const ModeAmplitudes a = kzm_amplitudes(theta, 0.3, 1.1);
    CHECK(excitation_probability(a, ModeCoefficients{-std::cos(theta), std::sin(theta), 1.0}) ==
          doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("KZM state tracks the ODE excitation probabilities") {
    const ModelSpec m = ModelSpec::tfim();
    const ModeTable t(m, build_momentum_grid(100));
    const RampProtocol r = RampProtocol::standard(m, 32.0);
    const StateSnapshot kzm = kzm_state(t, r, excitation_law(m, 100));
    const StateSnapshot ode = evolve_all(t, r).final_state;
    const double n_kzm = defect_density(kzm, t);
    const double n_ode = defect_density(ode, t);
    CHECK(std::abs(n_kzm - n_ode) < 0.05 * n_ode);
}

TEST_CASE("exact TFIM asymptotics") {
    SUBCASE("adiabatic limit") {
        const TfimAsymptotics a = tfim_asymptotics(0.4, 1e7);
        CHECK(a.v_sq == doctest::Approx(std::sin(0.2) * std::sin(0.2)));
        CHECK(a.u_sq == doctest::Approx(std::cos(0.2) * std::cos(0.2)));
        CHECK(std::abs(a.uv_conj + 0.5 * std::sin(0.4)) < 1e-12);
        CHECK(a.v_sq + a.u_sq == 1.0);
    }
    SUBCASE("validity edge") {
        const TfimAsymptotics a = tfim_asymptotics(std::numbers::pi, 1e-3);
        CHECK_FALSE(a.within_validity);
        CHECK(a.v_sq > 1.0);
    }
    SUBCASE("agreement with the integrator at slow ramps") {
        const ModelSpec m = ModelSpec::tfim();
        for (double k : {0.02, 0.1, 0.3}) {
            const ModeEvolution e = evolve_mode(m, k, 0, RampProtocol::standard(m, 128.0));
            const TfimAsymptotics a = tfim_asymptotics(k, 128.0);
            CHECK(std::abs(std::norm(e.final_state.v) - a.v_sq) < 1e-2);
            const complex uv = e.final_state.u * std::conj(e.final_state.v);
            CHECK(std::abs(uv - a.uv_conj) < 0.02);
        }
    }
}

TEST_CASE("defect density of the ground state vanishes") {
    const ModelSpec m = ModelSpec::tfim();
    const ModeTable t(m, build_momentum_grid(50));
    CHECK(defect_density(ground_state_snapshot(t, 0.0), t) < 1e-30);
    const ModeTable other(m, build_momentum_grid(52));
    CHECK_THROWS_AS(defect_density(ground_state_snapshot(t, 0.0), other), ConfigError);
}

}  // TEST_SUITE
