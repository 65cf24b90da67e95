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

#ifndef NOISETRANSFER_CIRCUITS_H
#define NOISETRANSFER_CIRCUITS_H

#include <cstdint>
#include <optional>
#include <vector>

#include "noisetransfer/heisenberg.h"

namespace nt {

/// Beamsplitter transmissions of the teleportation round: state preparation
/// (eta), gates (eta_g), detectors (eta_m) and displacements (eta_d).
struct LossConfig {
    double eta = 1.0;
    double eta_g = 1.0;
    double eta_m = 1.0;
    double eta_d = 1.0;

    bool ideal() const { return eta == 1.0 && eta_g == 1.0 && eta_m == 1.0 && eta_d == 1.0; }
    /// Throws DomainError unless every transmission lies in (0, 1].
    void validate() const;
};

/// Feedforward gains g1 (mode 1 readout onto p3), g2 (mode 2 readout onto q3)
/// and the mode-3 amplifier gain g.
struct Gains {
    double g1 = -1.0;
    double g2 = -1.0;
    double g = 1.0;
};

/// g1 = -1/sqrt(eta eta_g eta_m), g2 = -1/sqrt(eta eta_g^2 eta_m),
/// g = 1/sqrt(eta eta_g^2 eta_d).
Gains balanced_gains(const LossConfig& loss);

struct ModeNoise {
    double v_q = 0.0;
    double v_p = 0.0;
};

struct FeedforwardTrace {
    std::int64_t measured_mode = 0;
    /// Readout expression before rescaling.
    OperatorExpr measured;
    double rescale = 1.0;
    /// Sign of the gain applied with the binned value.
    double sign = -1.0;
    std::int64_t target_mode = 0;
    Quadrature target = Quadrature::P;
    BinResult bin;
};

struct CircuitReport {
    ModeNoise input_noise;
    ModeNoise resource_noise;
    LossConfig loss;
    Gains gains;

    std::int64_t input_mode = 0;
    std::int64_t resource_modes[2] = {0, 0};
    std::int64_t output_mode = 0;
    /// Fresh ids of the amplifier idler and displacement-loss vacua (0 if absent).
    std::int64_t amplifier_vac = 0;
    std::int64_t displacement_vac = 0;

    /// Output quadratures before and after the two displacements.
    OperatorExpr q_pre;
    OperatorExpr p_pre;
    OperatorExpr q_out;
    OperatorExpr p_out;
    FeedforwardTrace ff1;
    FeedforwardTrace ff2;

    double v1 = 0.0;
    double v2 = 0.0;
    double v_q_out = 0.0;
    double v_p_out = 0.0;
    /// Ladders of ff1 and ff2.
    std::vector<ErrorLadder> ladders;
    /// Classification of every error symbol carried by the output.
    LogicalErrorReport logical;
};

/// One teleportation round on `input_mode` of an existing engine: two fresh
/// resources, two CZ gates, two binned p readouts feeding mode 3.
CircuitReport run_round(Engine& engine, std::int64_t input_mode, const ModeNoise& resource,
                        const LossConfig& loss, const Gains& gains);

/// Fresh engine, one round.
CircuitReport run_circuit(const ModeNoise& input, const ModeNoise& resource, const LossConfig& loss,
                          const std::optional<Gains>& gains = std::nullopt);

CircuitReport run_ideal(double delta2_input, double delta2_resource);
CircuitReport run_lossy(double delta2, const LossConfig& loss);

/// `rounds` chained rounds; the output mode of each becomes the next input.
/// The first input carries `input` noise, or delta2 on both quadratures.
std::vector<CircuitReport> iterate(int rounds, double delta2, const LossConfig& loss,
                                   const std::optional<ModeNoise>& input = std::nullopt);

/// Same, on a caller-owned engine.
std::vector<CircuitReport> iterate(Engine& engine, int rounds, double delta2, const LossConfig& loss,
                                   const std::optional<ModeNoise>& input = std::nullopt);

}  // namespace nt

#endif
