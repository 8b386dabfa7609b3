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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "kzmagic/errors.hpp"
#include "kzmagic/magic.hpp"
#include "oracle.hpp"

using namespace kzmagic;

namespace {

StateSnapshot single_mode(complex u, complex v) {
    StateSnapshot s;
    s.grid = build_momentum_grid(2);
    s.amplitudes = {{u, v}};
    return s;
}

}  // namespace

TEST_SUITE("magic") {

TEST_CASE("per-mode Pauli values") {
    const double r = std::sqrt(0.5);
    const ModePauliValues a = mode_pauli_values({0.0, 1.0});
    CHECK(a.s_z == -1.0);
    CHECK(a.s_xy == 0.0);
    CHECK(a.s_xx == 0.0);
    const ModePauliValues b = mode_pauli_values({r, r});
    CHECK(b.s_z == doctest::Approx(0.0));
    CHECK(b.s_xx == doctest::Approx(1.0));
    const ModePauliValues c = mode_pauli_values({r, complex(0.0, r)});
    CHECK(c.s_xy == doctest::Approx(1.0));
    CHECK(c.s_xx == doctest::Approx(0.0));
}

TEST_CASE("Pauli values match the 16 two-site expectations") {
    const StateSnapshot s = oracle::random_state(20, 7);
    for (const ModeAmplitudes &amps : s.amplitudes) {
        const ModePauliValues p = mode_pauli_values(amps);
        CHECK(p.bloch_norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
        std::vector<double> brute, mine;
        int zeros = 0;
        double purity = 0.0;
        for (double e : oracle::two_site_expectations(amps)) {
            purity += e * e;
            if (std::abs(e) < 1e-14) {
                ++zeros;
            } else {
                brute.push_back(std::abs(e));
            }
        }
        CHECK(zeros == 8);
        CHECK(purity == doctest::Approx(4.0));
        for (double v : p.values()) {
            mine.push_back(std::abs(v));
            mine.push_back(std::abs(v));
        }
        std::sort(brute.begin(), brute.end());
        std::sort(mine.begin(), mine.end());
        REQUIRE(brute.size() == mine.size());
        for (std::size_t i = 0; i < mine.size(); ++i) CHECK(brute[i] == doctest::Approx(mine[i]).epsilon(1e-12));
    }
}

TEST_CASE("SRE of simple states") {
    CHECK(sre(single_mode(0.0, 1.0), 2.0) == doctest::Approx(0.0));
    const double r = std::sqrt(0.5);
    for (double a : {0.5, 1.0, 2.0, 3.0}) CHECK(std::abs(sre(single_mode(r, r), a)) < 1e-12);
    const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
    CHECK(sre(single_mode(c, s), 2.0) == doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-12));
    CHECK(std::log2(4.0 / 3.0) == doctest::Approx(0.415037).epsilon(1e-6));
    CHECK_THROWS_AS(sre(single_mode(c, s), -1.0), ConfigError);
    CHECK_THROWS_AS(sre(single_mode(c, s), 0.0), ConfigError);
}

TEST_CASE("product formula equals full enumeration") {
    for (int L : {2, 4, 6, 8}) {
        const StateSnapshot s = oracle::random_state(L, 100 + L);
        const StateSnapshot r = oracle::random_state(L, 200 + L);
        for (double a : {0.5, 1.0, 2.0, 3.0}) {
            CHECK(sre(s, a) == doctest::Approx(oracle::enumerated_sre(s, a)).epsilon(1e-10));
            CHECK(relative_sre(s, r, a) ==
                  doctest::Approx(oracle::enumerated_sre(s, a) - oracle::enumerated_sre(r, a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("alpha = 1 branch is the continuous limit") {
    const StateSnapshot s = oracle::random_state(30, 3);
    const double m1 = sre(s, 1.0);
    const double h = 1e-4;
    const double lo = sre(s, 1.0 - h), hi = sre(s, 1.0 + h);
    CHECK(std::abs(0.5 * (lo + hi) - m1) < 1e-6);
    CHECK(std::abs(lo - m1) < std::abs(hi - lo));
    CHECK(m1 >= 0.0);
}

TEST_CASE("relative SRE") {
    const StateSnapshot s = oracle::random_state(12, 1);
    const StateSnapshot r = oracle::random_state(12, 2);
    for (double a : {0.5, 1.0, 2.0}) {
        CHECK(relative_sre(s, s, a) == 0.0);
        CHECK(relative_sre(s, r, a) == doctest::Approx(-relative_sre(r, s, a)));
    }
    CHECK_THROWS_AS(relative_sre(s, oracle::random_state(14, 2), 2.0), ConfigError);

    const ModelSpec m = ModelSpec::tfim();
    const ModeTable t(m, build_momentum_grid(40));
    RampProtocol ramp = RampProtocol::standard(m, 1e9);
    const StateSnapshot adiabatic = kzm_state(t, ramp, excitation_law(m, 40));
    CHECK(std::abs(relative_sre(adiabatic, ground_state_snapshot(t, 0.0), 2.0)) < 1e-12);
}

TEST_CASE("analytic integral") {
    const ExcitationLaw tfim{1.0, 2.0};
    SUBCASE("two quadrature rules agree") {
        for (PhaseModel ph : {PhaseModel::Dynamical, PhaseModel::TfimRefined}) {
            for (double a : {0.5, 2.0}) {
                const SreIntegral gk = sre_integral(a, 100.0, tfim, ph, QuadratureRule::GaussKronrod);
                const SreIntegral ts = sre_integral(a, 100.0, tfim, ph, QuadratureRule::TanhSinh);
                CHECK(std::isfinite(gk.value));
                CHECK(std::abs(gk.value - ts.value) < 1e-6);
            }
        }
    }
    SUBCASE("vanishes as the excitation window closes") {
        const double I1 = sre_integral(2.0, 100.0, tfim, PhaseModel::Dynamical).value;
        const double I4 = sre_integral(2.0, 100.0, ExcitationLaw{1e4, 2.0}, PhaseModel::Dynamical).value;
        CHECK(I4 == doctest::Approx(I1 / 1e4).epsilon(1e-9));
    }
    SUBCASE("prefactor") {
        const double I = sre_integral(2.0, 64.0, tfim, PhaseModel::TfimRefined).value;
        CHECK(analytic_delta_sre(ModelSpec::tfim(), 2.0, 64.0, 800) ==
              doctest::Approx(800.0 / (2.0 * std::numbers::pi * -1.0) * I / 8.0));
    }
    CHECK_THROWS_AS(analytic_delta_sre(ModelSpec::tfim(), 1.0, 64.0, 800), ConfigError);
}

TEST_CASE("alpha asymptotics input checks") {
    const StateSnapshot s = oracle::random_state(20, 5);
    const StateSnapshot r = oracle::random_state(20, 6);
    const ExcitationLaw law{1.0, 2.0};
    const std::vector<double> narrow{0.5, 1.0, 2.0};
    CHECK_THROWS_AS(alpha_asymptotics(s, r, law, narrow), ConfigError);
    const std::vector<double> few_large{0.01, 0.1, 10.0};
    CHECK_THROWS_AS(alpha_asymptotics(s, r, law, few_large), ConfigError);
}

TEST_CASE("alpha asymptotics report") {
    const ModelSpec m = ModelSpec::tfim();
    const ModeTable t(m, build_momentum_grid(200));
    const RampProtocol ramp = RampProtocol::standard(m, 64.0);
    const StateSnapshot s = kzm_state(t, ramp, excitation_law(m, 200));
    const std::vector<double> alphas{1e-4, 0.01, 0.1, 1.0, 8.0, 16.0, 32.0, 64.0};
    const AlphaAsymptotics a = alpha_asymptotics(s, ground_state_snapshot(t, 0.0), excitation_law(m, 200), alphas);
    CHECK(a.small_alpha_limit == doctest::Approx(50.0 * std::log2(1.5)));
    CHECK(a.predicted_slope == doctest::Approx(-1.5));
    CHECK(a.delta_sre.size() == alphas.size());
    CHECK(a.small_alpha_measured == a.delta_sre.front());
    CHECK(std::isfinite(a.large_alpha_slope));
}

}  // TEST_SUITE
