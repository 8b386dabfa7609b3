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
#include "kzmagic/model.hpp"

using namespace kzmagic;

namespace {

// Applies [[a, b], [b, -a]] to (u, v).
ModeAmplitudes apply_h(const ModeCoefficients &c, const ModeAmplitudes &x) {
    return {c.a * x.u + c.b * x.v, c.b * x.u - c.a * x.v};
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("momentum grid") {
    const MomentumGrid g = build_momentum_grid(8);
    REQUIRE(g.size() == 4);
    CHECK(g.k[0] == doctest::Approx(std::numbers::pi / 8));
    CHECK(g.k[3] == doctest::Approx(7 * std::numbers::pi / 8));
    CHECK_THROWS_AS(build_momentum_grid(7), ConfigError);
    CHECK_THROWS_AS(build_momentum_grid(0), ConfigError);
}

TEST_CASE("model factories validate exponents") {
    CHECK(ModelSpec::tfim().g_critical == 1.0);
    CHECK(ModelSpec::lrkm(1.4, 1.6).g_critical == 2.0);
    CHECK_THROWS_AS(ModelSpec::lrkm(1.0, 1.6), ConfigError);
    CHECK_THROWS_AS(ModelSpec::lrkm(1.4, 0.9), ConfigError);
    CHECK(ModelSpec::lrkm(1.4, 1.6).describe() == "lrkm(gamma=1.4, beta=1.6)");
}

TEST_CASE("tfim couplings") {
    const ModeCoefficients c = mode_coefficients(ModelSpec::tfim(), 0.3, 0.7, 0);
    CHECK(c.a == doctest::Approx(0.7 - std::cos(0.3)));
    CHECK(c.b == doctest::Approx(std::sin(0.3)));
    CHECK(c.energy == doctest::Approx(std::hypot(c.a, c.b)));
}

TEST_CASE("lrkm couplings reduce to nearest neighbour for large exponents") {
    // r^-60 leaves only r = 1: a = g - 2 cos k, b = sin k.
    const ModeCoefficients c = mode_coefficients(ModelSpec::lrkm(60.0, 60.0), 0.4, 2.0, 100);
    CHECK(c.a == doctest::Approx(2.0 - 2.0 * std::cos(0.4)).epsilon(1e-12));
    CHECK(c.b == doctest::Approx(std::sin(0.4)).epsilon(1e-12));
}

TEST_CASE("lrkm gap at the smallest momentum closes at g_c") {
    const ModeCoefficients c = mode_coefficients(ModelSpec::lrkm(1.4, 1.6), std::numbers::pi / 1000, 2.0, 1000);
    CHECK(std::abs(c.a) < 0.05);
}

TEST_CASE("ground and excited states are eigenvectors") {
    for (double g : {-1.3, 0.0, 0.4, 1.0, 2.5}) {
        for (double k : {0.05, 0.8, 2.9}) {
            const ModeCoefficients c = mode_coefficients(ModelSpec::tfim(), k, g, 0);
            const double th = bogoliubov_angle(c, k);
            const ModeAmplitudes gs = ground_state_amplitudes(th);
            const ModeAmplitudes ex = excited_state_amplitudes(th);
            const ModeAmplitudes hg = apply_h(c, gs);
            const ModeAmplitudes he = apply_h(c, ex);
            CHECK(std::abs(hg.u + c.energy * gs.u) < 1e-12);
            CHECK(std::abs(hg.v + c.energy * gs.v) < 1e-12);
            CHECK(std::abs(he.u - c.energy * ex.u) < 1e-12);
            CHECK(std::abs(he.v - c.energy * ex.v) < 1e-12);
            CHECK(std::abs(std::conj(gs.u) * ex.u + std::conj(gs.v) * ex.v) < 1e-15);
        }
    }
}

TEST_CASE("degenerate mode is rejected") {
    CHECK_THROWS_AS(bogoliubov_angle(ModeCoefficients{0.0, 0.0, 0.0}, 0.0), DegenerateModeError);
    try {
        bogoliubov_angle(ModeCoefficients{0.0, 0.0, 0.0}, 0.25);
    } catch (const DegenerateModeError &e) {
        CHECK(e.k() == 0.25);
    }
}

TEST_CASE("mode table matches direct couplings") {
    const ModelSpec m = ModelSpec::lrkm(2.5, 1.4);
    const ModeTable t(m, build_momentum_grid(40));
    for (std::size_t i = 0; i < t.size(); ++i) {
        const ModeCoefficients direct = mode_coefficients(m, t.grid().k[i], 1.7, 40);
        CHECK(t.at(i, 1.7).a == direct.a);
        CHECK(t.at(i, 1.7).b == direct.b);
    }
}

TEST_CASE("line fit") {
    const double x[] = {1, 2, 3, 4};
    const double y[] = {3, 5, 7, 9};
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.stderr_slope == doctest::Approx(0.0));
    const double same[] = {1, 1, 1, 1};
    CHECK_THROWS_AS(fit_line(same, y), NumericalError);
}

// Reference values from an independent numpy implementation of the same
// lowest-10% log-log fit.
TEST_CASE("small-k calibration") {
    SUBCASE("tfim") {
        const SmallKCalibration c = calibrate_small_k(ModelSpec::tfim(), 200);
        CHECK(c.beta_eff == doctest::Approx(1.9954311031).epsilon(1e-9));
        CHECK(c.c_beta == doctest::Approx(0.9849319156).epsilon(1e-9));
        CHECK(c.gamma_eff == doctest::Approx(2.9977196312).epsilon(1e-9));
        CHECK(c.n_points == 10);
    }
    SUBCASE("lrkm") {
        struct Case {
            double gamma, beta, beta_eff, c_beta, gamma_eff, gap;
        };
        const Case cases[] = {
            {1.4, 1.6, 1.4865560554, 0.7308664425, 1.5853833889, 0.0405256129},
            {2.5, 1.4, 1.3323687253, 0.5447635148, 2.4632004051, 0.0003054964},
            {5.0, 5.0, 1.9944059506, 1.0231520847, 2.9944389845, 0.0000114413},
            {1.2, 5.0, 1.9944059506, 1.0231520847, 1.4515693825, 0.0866646773},
        };
        for (const Case &k : cases) {
            const SmallKCalibration c = calibrate_small_k(ModelSpec::lrkm(k.gamma, k.beta), 1000);
            CHECK(c.beta_eff == doctest::Approx(k.beta_eff).epsilon(1e-8));
            CHECK(c.c_beta == doctest::Approx(k.c_beta).epsilon(1e-8));
            CHECK(c.gamma_eff == doctest::Approx(k.gamma_eff).epsilon(1e-8));
            CHECK(c.gap_at_kmin == doctest::Approx(k.gap).epsilon(1e-6));
        }
    }
    CHECK_THROWS_AS(calibrate_small_k(ModelSpec::tfim(), 40), NumericalError);
}

}  // TEST_SUITE
