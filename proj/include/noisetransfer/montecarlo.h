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

#ifndef NOISETRANSFER_MONTECARLO_H
#define NOISETRANSFER_MONTECARLO_H

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "noisetransfer/circuits.h"

namespace nt {

/// How a mode's quadrature value is split into spike and noise.
/// Gaussian: domain n drawn with its probability P_n, spike n D, noise
/// N(0, V) with V the domain variance. ExactMarginal: value drawn from |psi|^2
/// by inverse CDF, spike = centre of its domain.
enum class SpikeModel { Gaussian, ExactMarginal };

struct TrialConfig {
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    bool lossy = false;
    LossConfig loss;
    double delta2 = 0.1;
    /// Logical value of the input GKP state.
    int mu = 0;
    SpikeModel spikes = SpikeModel::Gaussian;
    /// Replaces the balanced gains (fault injection).
    std::optional<Gains> gains;

    /// Throws ConfigError or DomainError on invalid settings.
    void validate() const;
    LossConfig effective_loss() const { return lossy ? loss : LossConfig{}; }
};

struct TrialOutcome {
    std::int64_t trials = 0;
    LossConfig loss;
    double delta2 = 0.0;
    /// none, bit flip, phase flip, both.
    std::array<std::int64_t, 4> counts{};

    double rate(int k) const { return trials ? static_cast<double>(counts[k]) / static_cast<double>(trials) : 0.0; }
    /// Binomial standard error of rate(k).
    double std_error(int k) const;
};

/// Per-trial detail for property tests.
struct TrialRecord {
    /// Rescaled readout minus its ideal integer signal, before rounding.
    double residue1 = 0.0;
    double residue2 = 0.0;
    /// Lattice shifts made by the two binnings.
    long long shift1 = 0;
    long long shift2 = 0;
    bool bit_flip = false;
    bool phase_flip = false;
};

/// The analytic circuit matching a trial configuration: input GKP(mu) and
/// "+" resources with fluctuation variances taken from their domain statistics.
CircuitReport analytic_report(const TrialConfig& cfg);

/// Numerical evaluation of the circuit trace of analytic_report(cfg).
class TrialSimulator {
   public:
    explicit TrialSimulator(const TrialConfig& cfg);
    ~TrialSimulator();
    TrialSimulator(const TrialSimulator&) = delete;
    TrialSimulator& operator=(const TrialSimulator&) = delete;

    TrialRecord run(std::uint64_t trial) const;
    const CircuitReport& report() const;

   private:
    struct Plan;
    std::unique_ptr<Plan> plan_;
};

/// Trials in parallel (OpenMP); counts are independent of the thread count.
TrialOutcome run_trials(const TrialConfig& cfg);
/// Serial reference for run_trials.
TrialOutcome run_trials_serial(const TrialConfig& cfg);

struct Comparison {
    bool pass = false;
    double threshold = 3.0;
    /// Bit flip, phase flip, both.
    std::array<double, 3> z{};
    std::array<double, 3> predicted{};
    std::array<double, 3> observed{};
};

/// z-score per logical class against the report's prediction; passes iff
/// every |z| <= threshold.
Comparison compare_with_analytic(const TrialOutcome& outcome, const CircuitReport& report, double threshold = 3.0);

}  // namespace nt

#endif
