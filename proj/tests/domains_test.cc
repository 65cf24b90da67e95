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

#include "noisetransfer/domains.h"
#include "noisetransfer/exceptions.h"

namespace nt {
namespace {

const DomainPartition kLattice = DomainPartition::lattice(kSqrt2Pi);

TEST(Domains, LatticeIndexAndBounds) {
    EXPECT_EQ(kLattice.index(0.0), 0);
    EXPECT_EQ(kLattice.index(kSqrt2Pi), 1);
    EXPECT_EQ(kLattice.index(-1.3 * kSqrt2Pi), -1);
    // Boundary points belong to the domain on their right.
    EXPECT_EQ(kLattice.index(0.5 * kSqrt2Pi), 1);
    const auto [lo, hi] = kLattice.bounds(2);
    EXPECT_NEAR(lo, 1.5 * kSqrt2Pi, 1e-15);
    EXPECT_NEAR(hi, 2.5 * kSqrt2Pi, 1e-15);
    EXPECT_NEAR(kLattice.clip_band(), kSqrt2Pi / 4, 1e-15);
}

TEST(Domains, SignAndExplicitPartitions) {
    const auto sign = DomainPartition::sign_split();
    EXPECT_EQ(sign.index(-0.1), 1);
    EXPECT_EQ(sign.index(0.0), 2);
    const auto ex = DomainPartition::explicit_boundaries({-1.0, 0.5, 2.0});
    EXPECT_EQ(ex.index(-3.0), 0);
    EXPECT_EQ(ex.index(0.5), 2);
    EXPECT_EQ(ex.index(7.0), 3);
    EXPECT_NEAR(ex.clip_band(), 0.375, 1e-15);
    EXPECT_THROW(DomainPartition::explicit_boundaries({1.0, 0.0}), DomainError);
    EXPECT_THROW(DomainPartition::lattice(0.0), DomainError);
}

TEST(Domains, ParseRoundTrip) {
    EXPECT_EQ(DomainPartition::parse("sign").describe(), "sign");
    EXPECT_EQ(DomainPartition::parse("single").describe(), "single");
    const auto l = DomainPartition::parse("lattice:2:0.5");
    EXPECT_EQ(l.index(0.4), 0);
    EXPECT_EQ(l.index(1.6), 1);
    EXPECT_EQ(DomainPartition::parse("explicit:-1,1").index(0.0), 1);
    EXPECT_THROW(DomainPartition::parse("lattice:x"), DomainError);
    EXPECT_THROW(DomainPartition::parse("hexagonal"), DomainError);
}

TEST(Domains, ScaledPartition) {
    const auto s = kLattice.scaled(0.5);
    EXPECT_EQ(s.index(0.5 * kSqrt2Pi), 1);
    EXPECT_EQ(s.index(0.2 * kSqrt2Pi), 0);
}

TEST(Domains, DefaultPartitions) {
    EXPECT_EQ(default_partition(StateModel::cat(2.0), Quadrature::Q).describe(), "sign");
    EXPECT_EQ(default_partition(StateModel::vacuum(), Quadrature::Q).describe(), "single");
    const auto p = default_partition(StateModel::cat(2.0), Quadrature::P);
    EXPECT_EQ(p.index(kPi / 2.0), 1);
    const auto g = default_partition(StateModel::gkp(1, 0.1), Quadrature::Q);
    EXPECT_EQ(g.index(kSqrt2Pi), 1);
}

TEST(Domains, SingleDomainVarianceIsTotalVariance) {
    const DomainStats s = domain_stats(StateModel::coherent(1.5), Quadrature::Q, DomainPartition::single());
    EXPECT_NEAR(s.variance, 1.0, 1e-9);
    EXPECT_NEAR(s.second_moment, 10.0, 1e-8);
    EXPECT_NEAR(s.mass, 1.0, 1e-9);
    ASSERT_EQ(s.domains.size(), 1u);
    EXPECT_NEAR(s.domains[0].mean, 3.0, 1e-9);
}

// Reference values: scipy quad over each domain of the closed-form densities
// (tests/oracles/frozen_values.py).
TEST(Domains, CatPositionSignSplit) {
    const auto sign = DomainPartition::sign_split();
    EXPECT_NEAR(domain_stats(StateModel::cat(0.0), Quadrature::Q, sign).variance, 1.0 - 2.0 / kPi, 1e-9);
    EXPECT_NEAR(domain_stats(StateModel::cat(1.25), Quadrature::Q, sign).variance, 1.071348032310, 1e-9);
    EXPECT_NEAR(domain_stats(StateModel::cat(2.0), Quadrature::Q, sign).variance, 1.003109628125, 1e-9);
}

TEST(Domains, CatMomentumLattice) {
    EXPECT_NEAR(domain_stats(StateModel::cat(1.5), Quadrature::P, DomainPartition::lattice(kPi / 1.5)).variance,
                0.126007862066, 1e-9);
    EXPECT_NEAR(domain_stats(StateModel::cat(3.0), Quadrature::P, DomainPartition::lattice(kPi / 3.0)).variance,
                0.034590229891, 1e-9);
}

TEST(Domains, GkpLatticeVariance) {
    // Grid oracle resolution is about 1e-6.
    EXPECT_NEAR(domain_stats(StateModel::gkp(0, 0.1), Quadrature::Q, kLattice).variance, 0.09994512, 1e-6);
    EXPECT_NEAR(domain_stats(StateModel::gkp(0, 0.1), Quadrature::P, kLattice).variance, 0.10068959, 3e-6);
    EXPECT_NEAR(domain_stats(StateModel::gkp(1, 0.1), Quadrature::Q, kLattice).variance, 0.09994636, 1e-6);
    EXPECT_NEAR(domain_stats(StateModel::gkp(1, 0.1), Quadrature::P, kLattice).variance, 0.09925093, 3e-6);
}

TEST(Domains, GkpDomainProbabilities) {
    const DomainStats s = domain_stats(StateModel::gkp(1, 0.1), Quadrature::Q, kLattice);
    double total = 0.0, odd = 0.0;
    for (const auto& d : s.domains) {
        total += d.prob;
        if (std::abs(d.n) % 2 == 1) odd += d.prob;
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
    // mu = 1 sits on odd domains up to Gaussian tails beyond 4 sigma.
    EXPECT_GT(odd, 0.9999);
}

TEST(Domains, GridAgreesWithAnalytic) {
    const StateModel s = StateModel::cat(1.5);
    const DomainStats a = domain_stats(s, Quadrature::Q, DomainPartition::sign_split());
    const DomainStats g = domain_stats(density_grid(s, Quadrature::Q, 40001), DomainPartition::sign_split());
    EXPECT_NEAR(g.variance, a.variance, 1e-6);
    EXPECT_NEAR(g.clipped_fraction, a.clipped_fraction, 1e-5);
}

TEST(Domains, ClippedFraction) {
    // Vacuum mass within 1 of the sign boundary.
    const DomainStats s = domain_stats(StateModel::vacuum(), Quadrature::Q, DomainPartition::sign_split());
    EXPECT_NEAR(s.clipped_fraction, std::erf(1.0 / std::sqrt(2.0)), 1e-9);
    EXPECT_EQ(domain_stats(StateModel::vacuum(), Quadrature::Q, DomainPartition::single()).clipped_fraction, 0.0);
}

TEST(Domains, SweepMatchesSerial) {
    const auto params = linspace(0.0, 3.0, 13);
    StateFamily family = [](double a) { return StateModel::cat(a); };
    const auto par = sweep_variance(family, params);
    const auto ser = sweep_variance_serial(family, params);
    ASSERT_EQ(par.size(), ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        EXPECT_EQ(par[i].param, ser[i].param);
        EXPECT_EQ(par[i].v_q, ser[i].v_q);
        EXPECT_EQ(par[i].v_p, ser[i].v_p);
    }
    EXPECT_NEAR(par.front().v_q, 1.0 - 2.0 / kPi, 1e-9);
}

TEST(Domains, SweepPropagatesErrors) {
    const std::vector<double> params{0.1, 0.5, 1.5};
    StateFamily family = [](double d2) { return StateModel::gkp(0, d2); };
    EXPECT_THROW(sweep_variance(family, params), DomainError);
}

TEST(Domains, Linspace) {
    const auto v = linspace(1.0, 2.0, 5);
    ASSERT_EQ(v.size(), 5u);
    EXPECT_EQ(v.front(), 1.0);
    EXPECT_EQ(v.back(), 2.0);
    EXPECT_NEAR(v[1], 1.25, 1e-15);
    EXPECT_EQ(linspace(3.0, 4.0, 1), std::vector<double>{3.0});
}

TEST(Domains, PeakSeparationRatio) {
    EXPECT_NEAR(peak_separation_ratio(1.5).ratio, 5.9001057003, 1e-8);
    EXPECT_NEAR(peak_separation_ratio(2.0).ratio, 5.7505596226, 1e-8);
    EXPECT_NEAR(peak_separation_ratio(3.0).ratio, 5.6305639289, 1e-8);
    EXPECT_TRUE(peak_separation_ratio(0.8).advisory);
    EXPECT_FALSE(peak_separation_ratio(2.0).advisory);
    EXPECT_THROW(peak_separation_ratio(0.0), DomainError);
}

}  // namespace
}  // namespace nt
