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
#include "noisetransfer/oracle.h"

namespace nt {
namespace {

TEST(Oracle, ChannelParameters) {
    EXPECT_NEAR(ChannelSpec::loss(0.81).scale(), 0.9, 1e-15);
    EXPECT_NEAR(ChannelSpec::loss(0.81).added_variance(), 0.19, 1e-15);
    EXPECT_NEAR(ChannelSpec::amp(2.0).added_variance(), 3.0, 1e-15);
    EXPECT_NEAR(ChannelSpec::loss(0.5).transfer(0.2), 0.6, 1e-15);
    EXPECT_THROW(ChannelSpec::loss(1.5), DomainError);
    EXPECT_THROW(ChannelSpec::amp(0.5), DomainError);
}

TEST(Oracle, GaussianPushIsExact) {
    // Squeezed state through loss stays Gaussian with variance eta v + 1 - eta.
    const StateModel s = StateModel::squeezed(0.2);
    const ChannelSpec spec = ChannelSpec::loss(0.6);
    const double h = oracle_spacing(s, Quadrature::Q, spec);
    const DensityGrid g = density_grid(s, Quadrature::Q, -6.0, 6.0, static_cast<std::size_t>(12.0 / h) + 1);
    const DensityGrid out = push_marginal(g, spec);
    EXPECT_NEAR(out.mass(), 1.0, 1e-12);
    EXPECT_NEAR(out.moment(2), 0.6 * 0.2 + 0.4, 1e-6);
    const double v = 0.52;
    const double x = 0.5;
    const std::size_t i = static_cast<std::size_t>(std::llround((x - out.x_min) / out.spacing));
    EXPECT_NEAR(out.density[i], std::exp(-out.x(i) * out.x(i) / (2 * v)) / std::sqrt(2 * kPi * v), 1e-5);
}

TEST(Oracle, CoarseGridRejected) {
    const DensityGrid g = density_grid(StateModel::vacuum(), Quadrature::Q, -8.0, 8.0, 33);
    EXPECT_THROW(push_marginal(g, ChannelSpec::loss(0.99)), NumericError);
}

TEST(Oracle, IdentityChannel) {
    const DensityGrid g = density_grid(StateModel::cat(1.0), Quadrature::Q, 2001);
    const DensityGrid out = push_marginal(g, ChannelSpec::loss(1.0));
    ASSERT_EQ(out.size(), g.size());
    for (std::size_t i = 0; i < g.size(); i += 100) EXPECT_NEAR(out.density[i], g.density[i], 1e-12);
}

TEST(Oracle, LossTransferCoherent) {
    for (double eta : {0.5, 0.9}) {
        const TransferCheck c = validate_transfer(StateModel::coherent(1.0), Quadrature::Q, ChannelSpec::loss(eta));
        EXPECT_LT(c.rel_err, 1e-6) << eta;
        EXPECT_NEAR(c.oracle_m2, c.formula_m2, 1e-6) << eta;
    }
}

TEST(Oracle, LossTransferCat) {
    for (double eta : {0.5, 0.9}) {
        const TransferCheck c = validate_transfer(StateModel::cat(2.0), Quadrature::Q, ChannelSpec::loss(eta));
        EXPECT_LT(c.rel_err, 0.01) << eta;
        EXPECT_NEAR(c.oracle_m2, c.formula_m2, 1e-6) << eta;
    }
}

TEST(Oracle, GkpTransferAtMildLoss) {
    const TransferCheck c = validate_transfer(StateModel::gkp(0, 0.05), Quadrature::Q, ChannelSpec::loss(0.9));
    EXPECT_LT(c.rel_err, 0.01);
    EXPECT_NEAR(c.oracle_m2, c.formula_m2, 1e-6);
}

TEST(Oracle, NearIdentityChannelRejected) {
    EXPECT_THROW(validate_transfer(StateModel::vacuum(), Quadrature::Q, ChannelSpec::loss(1.0 - 1e-10)), NumericError);
}

TEST(Oracle, GkpHeavyLossIsClipped) {
    const TransferCheck c = validate_transfer(StateModel::gkp(0, 0.05), Quadrature::Q, ChannelSpec::loss(0.5));
    EXPECT_TRUE(c.clipped_regime);
    EXPECT_NEAR(c.oracle_m2, c.formula_m2, 1e-6);
}

TEST(Oracle, AmplifierTransfer) {
    const TransferCheck c = validate_transfer(StateModel::cat(2.0), Quadrature::Q, ChannelSpec::amp(1.1));
    EXPECT_LT(c.rel_err, 0.01);
    EXPECT_NEAR(c.oracle_m2, c.formula_m2, 1e-6);
}

}  // namespace
}  // namespace nt
