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

#include "noisetransfer/errors.h"
#include "noisetransfer/exceptions.h"
#include "noisetransfer/states.h"

namespace nt {
namespace {

// Reference values from scipy.special.erf (tests/oracles/frozen_values.py).
TEST(Errors, ConfinementProbability) {
    EXPECT_NEAR(confinement_probability(0.2, kSqrt2Pi), 9.949291093168930e-01, 1e-15);
    EXPECT_EQ(confinement_probability(0.0, kSqrt2Pi), 1.0);
    EXPECT_NEAR(confinement_probability(0.8, 2 * kSqrt2Pi), confinement_probability(0.2, kSqrt2Pi), 1e-15);
    EXPECT_LT(confinement_probability(1e6, kSqrt2Pi), 0.002);
    EXPECT_THROW(confinement_probability(-1.0, kSqrt2Pi), DomainError);
    EXPECT_THROW(confinement_probability(0.1, 0.0), DomainError);
}

TEST(Errors, LadderValues) {
    const ErrorLadder l = build_ladder(0.5, kSqrt2Pi);
    ASSERT_GE(l.probs.size(), 4u);
    EXPECT_NEAR(l.probs[0], 9.236807505429453e-01, 1e-14);
    EXPECT_NEAR(l.probs[1], 7.592649886876845e-02, 1e-14);
    EXPECT_NEAR(l.probs[2], 3.926453055498325e-04, 1e-14);
    EXPECT_NEAR(l.probs[3], 1.052813934920849e-07, 1e-16);
    EXPECT_NEAR(l.p_odd(), 7.592660415016195e-02, 1e-14);
}

TEST(Errors, LadderNormalizedAndTruncated) {
    for (double v : {0.01, 0.05, 0.2, 0.5, 2.0}) {
        const ErrorLadder l = build_ladder(v, kSqrt2Pi);
        double total = 0.0;
        for (double p : l.probs) total += p;
        EXPECT_NEAR(total, 1.0, 1e-12) << v;
        EXPECT_EQ(l.n_max() + 1, static_cast<int>(l.probs.size()));
    }
    EXPECT_EQ(build_ladder(0.05, kSqrt2Pi).n_max(), 1);
    EXPECT_EQ(build_ladder(0.5, kSqrt2Pi, 1).probs.size(), 2u);
}

TEST(Errors, LadderMonotoneInVariance) {
    double last = 1.0;
    for (double v = 0.05; v < 3.0; v += 0.05) {
        const double p0 = build_ladder(v, kSqrt2Pi).probs[0];
        EXPECT_LT(p0, last);
        last = p0;
    }
}

std::map<std::int64_t, ErrorLadder> two_ladders() {
    return {{1, build_ladder(0.3, kSqrt2Pi)}, {2, build_ladder(0.6, kSqrt2Pi)}};
}

TEST(Errors, SingleErrorInMomentumIsPhaseFlip) {
    const auto ladders = two_ladders();
    const OperatorExpr p = OperatorExpr::of(Symbol::err_shift(1), -1.0);
    const LogicalErrorReport r = classify_logical(OperatorExpr{}, p, ladders);
    EXPECT_NEAR(r.p_phase_flip, ladders.at(1).p_odd(), 1e-15);
    EXPECT_EQ(r.p_bit_flip, 0.0);
    EXPECT_EQ(r.p_both, 0.0);
}

TEST(Errors, IndependentParitiesConvolve) {
    const auto ladders = two_ladders();
    const OperatorExpr q = OperatorExpr::of(Symbol::err_shift(2), -1.0);
    const OperatorExpr p = OperatorExpr::of(Symbol::err_shift(1), -1.0);
    const LogicalErrorReport r = classify_logical(q, p, ladders);
    const double a = ladders.at(1).p_odd();
    const double b = ladders.at(2).p_odd();
    EXPECT_NEAR(r.p_both, a * b, 1e-15);
    EXPECT_NEAR(r.p_bit_flip, b * (1 - a), 1e-15);
    EXPECT_NEAR(r.p_none + r.p_bit_flip + r.p_phase_flip + r.p_both, 1.0, 1e-12);
}

TEST(Errors, EvenCoefficientsNeverFlip) {
    const auto ladders = two_ladders();
    const OperatorExpr q = OperatorExpr::of(Symbol::err_shift(1), 2.0);
    const LogicalErrorReport r = classify_logical(q, OperatorExpr{}, ladders);
    EXPECT_EQ(r.p_bit_flip, 0.0);
    EXPECT_NEAR(r.p_none, 1.0, 1e-15);
}

TEST(Errors, SharedErrorSymbolCorrelatesFlips) {
    const auto ladders = two_ladders();
    const OperatorExpr q = OperatorExpr::of(Symbol::err_shift(1));
    const OperatorExpr p = OperatorExpr::of(Symbol::err_shift(1)) + OperatorExpr::of(Symbol::err_shift(2));
    const LogicalErrorReport r = classify_logical(q, p, ladders);
    const LogicalErrorReport e = classify_logical_enumerated(q, p, ladders);
    EXPECT_NEAR(r.p_bit_flip, e.p_bit_flip, 1e-14);
    EXPECT_NEAR(r.p_phase_flip, e.p_phase_flip, 1e-14);
    EXPECT_NEAR(r.p_both, e.p_both, 1e-14);
}

TEST(Errors, MatchesEnumerationOnThreeLadders) {
    std::map<std::int64_t, ErrorLadder> ladders{
        {1, build_ladder(0.25, kSqrt2Pi)}, {2, build_ladder(0.5, kSqrt2Pi)}, {3, build_ladder(0.9, kSqrt2Pi)}};
    const OperatorExpr q = OperatorExpr::of(Symbol::err_shift(1)) - OperatorExpr::of(Symbol::err_shift(3), 3.0);
    const OperatorExpr p = OperatorExpr::of(Symbol::err_shift(2), -1.0) + OperatorExpr::of(Symbol::err_shift(3));
    const LogicalErrorReport r = classify_logical(q, p, ladders);
    const LogicalErrorReport e = classify_logical_enumerated(q, p, ladders);
    EXPECT_NEAR(r.p_none, e.p_none, 1e-13);
    EXPECT_NEAR(r.p_bit_flip, e.p_bit_flip, 1e-13);
    EXPECT_NEAR(r.p_phase_flip, e.p_phase_flip, 1e-13);
    EXPECT_NEAR(r.p_both, e.p_both, 1e-13);
}

TEST(Errors, ClassificationPreconditions) {
    const auto ladders = two_ladders();
    EXPECT_THROW(classify_logical(OperatorExpr::of(Symbol::err_shift(7)), OperatorExpr{}, ladders), UnboundSymbol);
    EXPECT_THROW(classify_logical(OperatorExpr::of(Symbol::err_shift(1), 0.5), OperatorExpr{}, ladders),
                 UnbalancedCircuit);
}

}  // namespace
}  // namespace nt
