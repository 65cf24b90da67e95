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

#include "noisetransfer/rng.h"

namespace nt {
namespace {

// Known-answer vectors published with Random123 (philox4x32, 10 rounds).
TEST(Philox, KnownAnswers) {
    using C = Philox4x32::Counter;
    EXPECT_EQ(Philox4x32::apply(C{0, 0, 0, 0}, {0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::apply(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::apply(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(TrialStream, Reproducible) {
    TrialStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    for (int i = 0; i < 20; ++i) {
        const double x = a.normal();
        EXPECT_EQ(x, b.normal());
        EXPECT_NE(x, c.normal());
        EXPECT_NE(x, d.normal());
    }
}

TEST(TrialStream, UniformMoments) {
    TrialStream s(1, 0);
    double sum = 0.0, sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sum2 / n, 1.0 / 3, 0.003);
}

TEST(TrialStream, NormalMoments) {
    double sum = 0.0, sum2 = 0.0, tail = 0.0;
    const int n = 400000;
    for (int t = 0; t < n / 4; ++t) {
        TrialStream s(9, static_cast<std::uint64_t>(t));
        for (int i = 0; i < 4; ++i) {
            const double x = s.normal();
            sum += x;
            sum2 += x * x;
            tail += std::abs(x) > 2.0;
        }
    }
    EXPECT_NEAR(sum / n, 0.0, 5 / std::sqrt(n));
    EXPECT_NEAR(sum2 / n, 1.0, 5 * std::sqrt(2.0 / n));
    const double p = std::erfc(2.0 / std::sqrt(2.0));
    EXPECT_NEAR(tail / n, p, 5 * std::sqrt(p * (1 - p) / n));
}

}  // namespace
}  // namespace nt
