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

#include "noisetransfer/errors.h"

#include <array>
#include <cmath>
#include <functional>
#include <set>

#include "noisetransfer/exceptions.h"

namespace nt {

double confinement_probability(double variance, double period) {
    if (!(period > 0.0)) throw DomainError("domain width must be positive");
    if (!(variance >= 0.0)) throw DomainError("variance must be >= 0");
    if (variance == 0.0) return 1.0;
    return std::erf(period / (2.0 * std::sqrt(2.0 * variance)));
}

double ErrorLadder::p_odd() const {
    double s = 0.0;
    for (std::size_t n = 1; n < probs.size(); n += 2) s += probs[n];
    return s;
}

ErrorLadder build_ladder(double variance, double period, int n_max) {
    ErrorLadder ladder;
    ladder.period = period;
    ladder.variance = variance;
    ladder.probs.push_back(confinement_probability(variance, period));
    if (variance == 0.0) return ladder;

    const double a = period / (2.0 * std::sqrt(2.0 * variance));
    for (int n = 1;; ++n) {
        if (n_max >= 0 && n > n_max) break;
        // Tail beyond the band of index n - 1.
        if (n_max < 0 && std::erfc(n * a) < kLadderTail) break;
        // erfc differences keep precision where erf saturates.
        ladder.probs.push_back(std::erfc(n * a) - std::erfc((n + 1) * a));
    }
    double total = 0.0;
    for (double p : ladder.probs) total += p;
    for (double& p : ladder.probs) p /= total;
    return ladder;
}

namespace {

struct ErrorTerm {
    const ErrorLadder* ladder;
    long long q_coeff;
    long long p_coeff;
};

long long integer_coefficient(double c, const Symbol& s) {
    double r = std::round(c);
    if (std::abs(c - r) > 1e-9) {
        throw UnbalancedCircuit("error symbol " + s.name() + " has non-integer coefficient");
    }
    return static_cast<long long>(r);
}

std::vector<ErrorTerm> collect(const OperatorExpr& q_out, const OperatorExpr& p_out,
                               const std::map<std::int64_t, ErrorLadder>& ladders) {
    std::set<std::int64_t> ids;
    for (const auto* e : {&q_out, &p_out}) {
        for (const auto& [s, c] : e->terms()) {
            if (s.kind == SymbolKind::ErrShift) ids.insert(s.id);
        }
    }
    std::vector<ErrorTerm> out;
    for (std::int64_t id : ids) {
        auto it = ladders.find(id);
        Symbol s = Symbol::err_shift(id);
        if (it == ladders.end()) throw UnboundSymbol("no ladder for " + s.name());
        out.push_back({&it->second, integer_coefficient(q_out.coefficient(s), s),
                       integer_coefficient(p_out.coefficient(s), s)});
    }
    return out;
}

LogicalErrorReport from_parity(const std::array<double, 4>& dist) {
    // Index bit 0: q parity (bit flip), bit 1: p parity (phase flip).
    return {dist[0], dist[1], dist[2], dist[3]};
}

}  // namespace

LogicalErrorReport classify_logical(const OperatorExpr& q_out, const OperatorExpr& p_out,
                                    const std::map<std::int64_t, ErrorLadder>& ladders) {
    std::array<double, 4> dist{1.0, 0.0, 0.0, 0.0};
    for (const ErrorTerm& t : collect(q_out, p_out, ladders)) {
        const int flip = static_cast<int>(t.q_coeff & 1) | (static_cast<int>(t.p_coeff & 1) << 1);
        const double odd = t.ladder->p_odd();
        std::array<double, 4> next{};
        for (int k = 0; k < 4; ++k) {
            next[k] += (1.0 - odd) * dist[k];
            next[k ^ flip] += odd * dist[k];
        }
        dist = next;
    }
    return from_parity(dist);
}

LogicalErrorReport classify_logical_enumerated(const OperatorExpr& q_out, const OperatorExpr& p_out,
                                               const std::map<std::int64_t, ErrorLadder>& ladders,
                                               double cutoff) {
    const std::vector<ErrorTerm> terms = collect(q_out, p_out, ladders);
    std::array<double, 4> dist{};
    std::function<void(std::size_t, double, long long, long long)> walk = [&](std::size_t i, double prob,
                                                                             long long q_shift, long long p_shift) {
        if (i == terms.size()) {
            int k = static_cast<int>(((q_shift % 2) + 2) % 2) | (static_cast<int>(((p_shift % 2) + 2) % 2) << 1);
            dist[k] += prob;
            return;
        }
        const auto& probs = terms[i].ladder->probs;
        for (std::size_t n = 0; n < probs.size(); ++n) {
            for (int sign : {1, -1}) {
                if (n == 0 && sign < 0) continue;
                double p = n == 0 ? probs[0] : 0.5 * probs[n];
                if (p * prob < cutoff) continue;
                long long shift = sign * static_cast<long long>(n);
                walk(i + 1, prob * p, q_shift + shift * terms[i].q_coeff, p_shift + shift * terms[i].p_coeff);
            }
        }
    };
    walk(0, 1.0, 0, 0);
    return from_parity(dist);
}

}  // namespace nt
