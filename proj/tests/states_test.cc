// Copyright 2026 The noisetransfer Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "noisetransfer/exceptions.h"
#include "noisetransfer/states.h"

namespace nt {
namespace {

TEST(States, VacuumMarginalsAreUnitGaussians) {
    const Wavefunction wf(StateModel::vacuum());
    const double peak = 1.0 / std::sqrt(2.0 * kPi);
    EXPECT_NEAR(wf.density(Quadrature::Q, 0.0), peak, 1e-14);
    EXPECT_NEAR(wf.density(Quadrature::P, 0.0), peak, 1e-14);
    EXPECT_NEAR(wf.density(Quadrature::P, 1.5), peak * std::exp(-1.125), 1e-14);
}

TEST(States, CoherentStateShiftsPosition) {
    const DensityGrid g = density_grid(StateModel::coherent(1.0), Quadrature::Q, 4001);
    EXPECT_NEAR(g.mass(), 1.0, 1e-10);
    EXPECT_NEAR(g.moment(1), 2.0, 1e-9);
    EXPECT_NEAR(g.moment(2) - 4.0, 1.0, 1e-8);
}

TEST(States, SqueezedVariance) {
    const DensityGrid g = density_grid(StateModel::squeezed(0.25), Quadrature::Q, 4001);
    EXPECT_NEAR(g.moment(2), 0.25, 1e-9);
    const DensityGrid p = density_grid(StateModel::squeezed(0.25), Quadrature::P, 4001);
    EXPECT_NEAR(p.moment(2), 4.0, 1e-8);
}

TEST(States, CatPositionDensityClosedForm) {
    const double alpha = 1.25;
    const Wavefunction wf(StateModel::cat(alpha));
    const double n2 = 1.0 / (2.0 + 2.0 * std::exp(-2.0 * alpha * alpha));
    for (double q : {-3.0, -0.4, 0.0, 1.1, 2.5}) {
        const double g1 = std::pow(2.0 * kPi, -0.25) * std::exp(-(q - 2 * alpha) * (q - 2 * alpha) / 4.0);
        const double g2 = std::pow(2.0 * kPi, -0.25) * std::exp(-(q + 2 * alpha) * (q + 2 * alpha) / 4.0);
        EXPECT_NEAR(wf.density(Quadrature::Q, q), n2 * (g1 + g2) * (g1 + g2), 1e-14) << q;
    }
}

TEST(States, CatMomentumFringes) {
    // p density is proportional to exp(-p^2/2) cos^2(alpha p).
    const double alpha = 2.0;
    const Wavefunction wf(StateModel::cat(alpha));
    EXPECT_NEAR(wf.density(Quadrature::P, kPi / (2 * alpha)), 0.0, 1e-14);
    const double ratio = wf.density(Quadrature::P, kPi / alpha) / wf.density(Quadrature::P, 0.0);
    EXPECT_NEAR(ratio, std::exp(-0.5 * (kPi / alpha) * (kPi / alpha)), 1e-12);
}

// Reference: brute-force Fourier integral of psi_q on a 600001-point grid
// (tests/oracles/frozen_values.py).
TEST(States, GkpMomentumDensityMatchesFourierOracle) {
    EXPECT_NEAR(Wavefunction(StateModel::gkp(0, 0.1)).density(Quadrature::P, 0.0), 0.3986330196, 1e-8);
    EXPECT_NEAR(Wavefunction(StateModel::gkp(1, 0.1)).density(Quadrature::P, 0.0), 0.3992520217, 1e-8);
}

TEST(States, GkpLogicalOnePeaksAtOddMultiples) {
    const Wavefunction wf(StateModel::gkp(1, 0.1));
    EXPECT_GT(wf.density(Quadrature::Q, kSqrt2Pi), 100.0 * wf.density(Quadrature::Q, 0.0));
    EXPECT_GT(wf.density(Quadrature::Q, -kSqrt2Pi), 100.0 * wf.density(Quadrature::Q, 2.0 * kSqrt2Pi));
}

TEST(States, GkpZeroMomentumHasPeaksAtEveryMultiple) {
    const Wavefunction wf(StateModel::gkp(0, 0.1));
    for (int n : {0, 1, 2}) {
        const double x = n * kSqrt2Pi;
        const double d = wf.density(Quadrature::P, x);
        EXPECT_GT(d, wf.density(Quadrature::P, x + 0.3)) << n;
        EXPECT_GT(d, wf.density(Quadrature::P, x - 0.3)) << n;
        EXPECT_GT(d, 10.0 * wf.density(Quadrature::P, x + 0.5 * kSqrt2Pi)) << n;
    }
}

TEST(States, RotationSwapsQuadratures) {
    const StateModel s = StateModel::gkp(1, 0.2);
    const Wavefunction a(s);
    const Wavefunction b(s.rotated90());
    for (double x : {-2.0, -0.3, 0.0, 0.9, 2.5}) {
        EXPECT_NEAR(b.density(Quadrature::Q, x), a.density(Quadrature::P, x), 1e-13);
        EXPECT_NEAR(b.density(Quadrature::P, x), a.density(Quadrature::Q, -x), 1e-13);
    }
    EXPECT_FALSE(s.rotated90().rotated90().rotated);
}

TEST(States, GridsAreNormalized) {
    for (const StateModel& s : {StateModel::cat(0.7), StateModel::gkp(0, 0.05), StateModel::gkp(1, 0.3).rotated90()}) {
        EXPECT_NEAR(density_grid(s, Quadrature::Q, 20001).mass(), 1.0, 1e-8) << s.describe();
        EXPECT_NEAR(density_grid(s, Quadrature::P, 20001).mass(), 1.0, 1e-8) << s.describe();
    }
}

TEST(States, ParameterValidation) {
    EXPECT_THROW(StateModel::gkp(2, 0.1).validate(), DomainError);
    EXPECT_THROW(StateModel::gkp(0, 1.0).validate(), DomainError);
    EXPECT_THROW(StateModel::squeezed(0.0).validate(), DomainError);
    EXPECT_THROW(StateModel::cat(-1.0).validate(), DomainError);
    EXPECT_THROW(Wavefunction(StateModel::gkp(0, -0.1)), DomainError);
    EXPECT_NO_THROW(StateModel::cat(0.0).validate());
}

TEST(States, CatNormalization) {
    EXPECT_NEAR(cat_normalization(0.0), 0.5, 1e-15);
    EXPECT_NEAR(cat_normalization(3.0), 1.0 / std::sqrt(2.0), 1e-7);
}

}  // namespace
}  // namespace nt
