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

#include "noisetransfer/quadrature.h"

namespace nt {
namespace {

TEST(Quadrature, GaussianMoments) {
    auto f = [](double x) {
        const double g = std::exp(-0.5 * x * x);
        return Vec<3>{g, x * g, x * x * g};
    };
    const Vec<3> r = adaptive_simpson<3>(f, -12.0, 12.0, 1e-13, Vec<3>{1, 1, 1});
    const double norm = std::sqrt(2.0 * 3.14159265358979323846);
    EXPECT_NEAR(r[0], norm, 1e-11);
    EXPECT_NEAR(r[1], 0.0, 1e-11);
    EXPECT_NEAR(r[2], norm, 1e-11);
}

TEST(Quadrature, PanelsResolveNarrowFeatures) {
    // A spike far narrower than the interval is missed by the first three samples.
    auto f = [](double x) { return Vec<1>{std::exp(-(x - 3.3) * (x - 3.3) / (2e-4))}; };
    const double exact = std::sqrt(2.0 * 3.14159265358979323846 * 1e-4);
    const Vec<1> r = adaptive_simpson_panels<1>(f, -10.0, 10.0, 0.01, 1e-14, Vec<1>{1});
    EXPECT_NEAR(r[0], exact, 1e-11);
}

TEST(Quadrature, EmptyInterval) {
    auto f = [](double) { return Vec<1>{1.0}; };
    EXPECT_EQ(adaptive_simpson_panels<1>(f, 1.0, 1.0, 0.1, 1e-12, Vec<1>{1})[0], 0.0);
}

TEST(Quadrature, PolynomialExact) {
    auto f = [](double x) { return Vec<1>{x * x * x - 2 * x + 1}; };
    EXPECT_NEAR(adaptive_simpson<1>(f, 0.0, 2.0, 1e-12, Vec<1>{1})[0], 2.0, 1e-14);
}

}  // namespace
}  // namespace nt
