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

#ifndef NOISETRANSFER_ERRORS_H
#define NOISETRANSFER_ERRORS_H

#include <cstdint>
#include <map>
#include <vector>

#include "noisetransfer/expr.h"

namespace nt {

/// Probability that a Gaussian of variance V lands in its own domain of width D:
/// erf(D / (2 sqrt(2 V))). V = 0 gives 1.
double confinement_probability(double variance, double period);

/// Distribution of lattice-shift mistakes made when binning a value with
/// Gaussian noise of variance V.
///
/// probs[0] = erf(a) and probs[n] = erf((n + 1) a) - erf(n a) for n >= 1, with
/// a = D / (2 sqrt(2 V)). probs[n >= 1] covers both signs, split evenly.
struct ErrorLadder {
    double period = 0.0;
    double variance = 0.0;
    std::vector<double> probs;

    /// Probability of an odd shift.
    double p_odd() const;
    std::size_t n_max() const { return probs.empty() ? 0 : probs.size() - 1; }
};

/// Ladder entries are kept until the remaining tail drops below this; the
/// kept entries are then renormalized.
inline constexpr double kLadderTail = 1e-15;

/// `n_max` < 0 selects the tail cutoff; otherwise the ladder stops at n_max.
ErrorLadder build_ladder(double variance, double period, int n_max = -1);

struct LogicalErrorReport {
    double p_none = 1.0;
    double p_bit_flip = 0.0;
    double p_phase_flip = 0.0;
    double p_both = 0.0;
};

/// Logical outcome of the error symbols in the output quadratures. An odd
/// total lattice shift of q is a bit flip, of p a phase flip. Every ErrShift
/// symbol must have an integer coefficient and a ladder.
LogicalErrorReport classify_logical(const OperatorExpr& q_out, const OperatorExpr& p_out,
                                    const std::map<std::int64_t, ErrorLadder>& ladders);

/// Exhaustive enumeration over all shift tuples (sign included) with
/// probability above `cutoff`. Exponential in the number of ladders.
LogicalErrorReport classify_logical_enumerated(const OperatorExpr& q_out, const OperatorExpr& p_out,
                                               const std::map<std::int64_t, ErrorLadder>& ladders,
                                               double cutoff = 1e-15);

}  // namespace nt

#endif
