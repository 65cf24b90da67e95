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

#include "noisetransfer/circuits.h"

#include <cmath>

#include "noisetransfer/exceptions.h"

namespace nt {

void LossConfig::validate() const {
    for (double t : {eta, eta_g, eta_m, eta_d}) {
        if (!(t > 0.0 && t <= 1.0)) throw DomainError("loss transmissions must lie in (0, 1]");
    }
}

Gains balanced_gains(const LossConfig& loss) {
    loss.validate();
    const double g2sq = loss.eta_g * loss.eta_g;
    return {
        -1.0 / std::sqrt(loss.eta * loss.eta_g * loss.eta_m),
        -1.0 / std::sqrt(loss.eta * g2sq * loss.eta_m),
        1.0 / std::sqrt(loss.eta * g2sq * loss.eta_d),
    };
}

namespace {

FeedforwardTrace feed_forward(Engine& engine, std::int64_t from, const OperatorExpr& measured, double gain,
                              std::int64_t to, Quadrature target) {
    if (gain == 0.0 || !std::isfinite(gain)) throw DomainError("feedforward gain must be finite and nonzero");
    FeedforwardTrace t;
    t.measured_mode = from;
    t.measured = measured;
    t.rescale = std::abs(gain);
    t.sign = gain < 0 ? -1.0 : 1.0;
    t.target_mode = to;
    t.target = target;
    t.bin = engine.bin_correct(measured, t.rescale, DomainPartition::lattice(kSqrt2Pi));
    return t;
}

void apply_feed(Engine& engine, const FeedforwardTrace& t) {
    OperatorExpr shift = t.bin.signal;
    shift.add(t.bin.err, 1.0);
    engine.apply_displacement(t.target_mode, t.target, t.sign * shift);
}

}  // namespace

CircuitReport run_round(Engine& engine, std::int64_t input_mode, const ModeNoise& resource,
                        const LossConfig& loss, const Gains& gains) {
    loss.validate();
    CircuitReport r;
    r.loss = loss;
    r.gains = gains;
    r.resource_noise = resource;
    r.input_mode = input_mode;
    const auto m1 = input_mode;
    engine.rebase_lineage(m1);
    const auto m2 = engine.new_mode(resource.v_q, resource.v_p);
    const auto m3 = engine.new_mode(resource.v_q, resource.v_p);
    r.resource_modes[0] = m2;
    r.resource_modes[1] = m3;
    r.output_mode = m3;

    for (auto m : {m1, m2, m3}) engine.apply_loss(m, loss.eta);
    // Balancing beamsplitter on the third rail.
    engine.apply_loss(m3, loss.eta_g);

    engine.apply_cz(m1, m2);
    engine.apply_lineage_loss(m1, loss.eta_g);
    engine.apply_lineage_loss(m2, loss.eta_g);
    const OperatorExpr p1o = engine.measure(m1, Quadrature::P, loss.eta_m);

    engine.apply_cz(m2, m3);
    engine.apply_lineage_loss(m2, loss.eta_g);
    engine.apply_lineage_loss(m3, loss.eta_g);
    const OperatorExpr p2o = engine.measure(m2, Quadrature::P, loss.eta_m);

    engine.apply_amplifier(m3, gains.g);
    if (gains.g != 1.0) r.amplifier_vac = engine.last_fresh_id();
    if (loss.eta_d != 1.0) {
        engine.apply_loss(m3, loss.eta_d);
        r.displacement_vac = engine.last_fresh_id();
    }
    r.q_pre = engine.q(m3);
    r.p_pre = engine.p(m3);

    r.ff1 = feed_forward(engine, m1, p1o, gains.g1, m3, Quadrature::P);
    r.ff2 = feed_forward(engine, m2, p2o, gains.g2, m3, Quadrature::Q);
    apply_feed(engine, r.ff1);
    apply_feed(engine, r.ff2);

    r.q_out = engine.q(m3);
    r.p_out = engine.p(m3);
    r.v1 = r.ff1.bin.noise_variance;
    r.v2 = r.ff2.bin.noise_variance;
    r.v_q_out = variance_of(r.q_out, engine.bindings());
    r.v_p_out = variance_of(r.p_out, engine.bindings());
    r.ladders = {r.ff1.bin.ladder, r.ff2.bin.ladder};
    r.logical = classify_logical(r.q_out, r.p_out, engine.ladders());
    return r;
}

CircuitReport run_circuit(const ModeNoise& input, const ModeNoise& resource, const LossConfig& loss,
                          const std::optional<Gains>& gains) {
    Engine engine;
    const auto m1 = engine.new_mode(input.v_q, input.v_p);
    CircuitReport r = run_round(engine, m1, resource, loss, gains ? *gains : balanced_gains(loss));
    r.input_noise = input;
    return r;
}

CircuitReport run_ideal(double delta2_input, double delta2_resource) {
    if (!(delta2_input > 0.0) || !(delta2_resource > 0.0)) throw DomainError("variances must be positive");
    return run_circuit({delta2_input, delta2_input}, {delta2_resource, delta2_resource}, LossConfig{});
}

CircuitReport run_lossy(double delta2, const LossConfig& loss) {
    if (!(delta2 > 0.0)) throw DomainError("delta2 must be positive");
    return run_circuit({delta2, delta2}, {delta2, delta2}, loss);
}

std::vector<CircuitReport> iterate(Engine& engine, int rounds, double delta2, const LossConfig& loss,
                                   const std::optional<ModeNoise>& input) {
    if (rounds < 1) throw DomainError("iterate needs at least one round");
    if (!(delta2 > 0.0)) throw DomainError("delta2 must be positive");
    const ModeNoise first = input ? *input : ModeNoise{delta2, delta2};
    const ModeNoise resource{delta2, delta2};
    const Gains gains = balanced_gains(loss);
    std::vector<CircuitReport> out;
    std::int64_t mode = engine.new_mode(first.v_q, first.v_p);
    for (int k = 0; k < rounds; ++k) {
        ModeNoise in{variance_of(engine.q(mode), engine.bindings()), variance_of(engine.p(mode), engine.bindings())};
        CircuitReport r = run_round(engine, mode, resource, loss, gains);
        r.input_noise = in;
        mode = r.output_mode;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CircuitReport> iterate(int rounds, double delta2, const LossConfig& loss,
                                   const std::optional<ModeNoise>& input) {
    Engine engine;
    return iterate(engine, rounds, delta2, loss, input);
}

}  // namespace nt
