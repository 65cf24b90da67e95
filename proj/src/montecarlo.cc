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

#include "noisetransfer/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "noisetransfer/exceptions.h"
#include "noisetransfer/rng.h"

namespace nt {

namespace {

constexpr double kD = kSqrt2Pi;

// Exact marginals are tabulated at this fraction of the state's feature scale.
constexpr double kMarginalResolution = 1.0 / 64.0;

struct QuadSampler {
    bool exact = false;
    // Gaussian model
    std::vector<double> cumulative;
    std::vector<double> spikes;
    double sd = 0.0;
    // Exact model
    double x0 = 0.0;
    double h = 0.0;
    std::vector<double> cdf;

    std::pair<double, double> sample(TrialStream& rng) const {
        if (!exact) {
            const double u = rng.uniform() * cumulative.back();
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            const std::size_t i = std::min<std::size_t>(it - cumulative.begin(), spikes.size() - 1);
            return {spikes[i], sd * rng.normal()};
        }
        const double t = rng.uniform() * cdf.back();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), t);
        std::size_t i = it == cdf.begin() ? 0 : static_cast<std::size_t>(it - cdf.begin()) - 1;
        i = std::min(i, cdf.size() - 2);
        const double width = cdf[i + 1] - cdf[i];
        const double frac = width > 0.0 ? (t - cdf[i]) / width : 0.5;
        const double x = x0 + h * (static_cast<double>(i) + frac);
        const double spike = kD * static_cast<double>(std::floor(x / kD + 0.5));
        return {spike, x - spike};
    }
};

QuadSampler make_sampler(const StateModel& state, Quadrature quad, SpikeModel model, const DomainStats& stats) {
    QuadSampler s;
    if (model == SpikeModel::Gaussian) {
        double acc = 0.0;
        for (const auto& d : stats.domains) {
            acc += d.prob;
            s.cumulative.push_back(acc);
            s.spikes.push_back(kD * static_cast<double>(d.n));
        }
        s.sd = std::sqrt(stats.variance);
        return s;
    }
    s.exact = true;
    const Wavefunction wf(state);
    const auto [lo, hi] = wf.support(quad);
    s.h = wf.feature_scale(quad) * kMarginalResolution;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / s.h)) + 1;
    s.x0 = lo;
    s.cdf.resize(n);
    double prev = wf.density(quad, lo);
    s.cdf[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double f = wf.density(quad, lo + s.h * static_cast<double>(i));
        s.cdf[i] = s.cdf[i - 1] + 0.5 * s.h * (prev + f);
        prev = f;
    }
    return s;
}

struct Linear {
    std::vector<std::pair<std::size_t, double>> terms;
    double constant = 0.0;

    double eval(const std::vector<double>& v) const {
        double x = constant;
        for (const auto& [i, c] : terms) x += c * v[i];
        return x;
    }
};

struct Sources {
    StateModel input;
    StateModel plus;
    // q and p statistics of input and "+" resource
    DomainStats stats[2][2];
};

Sources make_sources(const TrialConfig& cfg) {
    Sources s;
    s.input = StateModel::gkp(cfg.mu, cfg.delta2);
    s.plus = StateModel::gkp(0, cfg.delta2).rotated90();
    const auto lattice = DomainPartition::lattice(kD);
    const StateModel* states[2] = {&s.input, &s.plus};
    for (int k = 0; k < 2; ++k) {
        s.stats[k][0] = domain_stats(*states[k], Quadrature::Q, lattice);
        s.stats[k][1] = domain_stats(*states[k], Quadrature::P, lattice);
    }
    return s;
}

CircuitReport report_for(const TrialConfig& cfg, const Sources& s) {
    const ModeNoise input{s.stats[0][0].variance, s.stats[0][1].variance};
    const ModeNoise plus{s.stats[1][0].variance, s.stats[1][1].variance};
    return run_circuit(input, plus, cfg.effective_loss(), cfg.gains);
}

bool odd_shift(double diff) { return (std::llabs(std::llround(diff / kD)) & 1) != 0; }

}  // namespace

void TrialConfig::validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (mu != 0 && mu != 1) throw DomainError("mu must be 0 or 1");
    if (!(delta2 > 0.0 && delta2 < 1.0)) throw DomainError("delta2 must lie in (0, 1)");
    if (lossy) loss.validate();
}

double TrialOutcome::std_error(int k) const {
    if (trials <= 0) return 0.0;
    const double p = rate(k);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

CircuitReport analytic_report(const TrialConfig& cfg) {
    if (!(cfg.delta2 > 0.0 && cfg.delta2 < 1.0)) throw DomainError("delta2 must lie in (0, 1)");
    return report_for(cfg, make_sources(cfg));
}

struct TrialSimulator::Plan {
    CircuitReport report;
    std::uint64_t seed = 0;
    std::size_t n_values = 0;
    // Input, first and second resource; q then p.
    QuadSampler samplers[3][2];
    long signal_index[3][2];
    long fluc_index[3][2];
    std::vector<std::size_t> noise_indices;
    std::size_t err_index[2] = {0, 0};
    Linear measured[2];
    Linear ideal[2];
    Linear q_pre_signal;
    Linear p_pre_signal;
    Linear q_expected;
    Linear p_expected;
};

TrialSimulator::TrialSimulator(const TrialConfig& cfg) : plan_(std::make_unique<Plan>()) {
    cfg.validate();
    const Sources src = make_sources(cfg);
    Plan& plan = *plan_;
    plan.seed = cfg.seed;
    plan.report = report_for(cfg, src);
    const CircuitReport& r = plan.report;

    std::map<Symbol, std::size_t> index;
    auto collect = [&](const OperatorExpr& e) {
        for (const auto& [s, c] : e.terms()) index.emplace(s, 0);
    };
    for (const auto* e : {&r.ff1.measured, &r.ff2.measured, &r.q_pre, &r.p_pre, &r.q_out, &r.p_out}) collect(*e);
    for (const auto* t : {&r.ff1, &r.ff2}) {
        collect(t->bin.signal);
        index.emplace(t->bin.err, 0);
    }
    std::size_t next = 0;
    for (auto& [s, i] : index) {
        i = next++;
        if (s.is_noise() && s.category() != 1) plan.noise_indices.push_back(i);
    }
    plan.n_values = next;

    auto compile = [&](const OperatorExpr& e) {
        Linear l;
        l.constant = e.constant();
        for (const auto& [s, c] : e.terms()) l.terms.emplace_back(index.at(s), c);
        return l;
    };
    const std::int64_t modes[3] = {r.input_mode, r.resource_modes[0], r.resource_modes[1]};
    const StateModel* states[3] = {&src.input, &src.plus, &src.plus};
    for (int m = 0; m < 3; ++m) {
        for (int q = 0; q < 2; ++q) {
            const Quadrature quad = q == 0 ? Quadrature::Q : Quadrature::P;
            plan.samplers[m][q] = make_sampler(*states[m], quad, cfg.spikes, src.stats[m == 0 ? 0 : 1][q]);
            auto si = index.find(Symbol::signal(quad, modes[m]));
            auto fi = index.find(Symbol::fluc(quad, modes[m]));
            plan.signal_index[m][q] = si == index.end() ? -1 : static_cast<long>(si->second);
            plan.fluc_index[m][q] = fi == index.end() ? -1 : static_cast<long>(fi->second);
        }
    }
    const FeedforwardTrace* ffs[2] = {&r.ff1, &r.ff2};
    for (int k = 0; k < 2; ++k) {
        plan.err_index[k] = index.at(ffs[k]->bin.err);
        plan.measured[k] = compile(ffs[k]->rescale * ffs[k]->measured);
        plan.ideal[k] = compile(ffs[k]->bin.signal);
    }
    plan.q_pre_signal = compile(r.q_pre.signal_part());
    plan.p_pre_signal = compile(r.p_pre.signal_part());
    plan.q_expected = compile(r.q_out.signal_part());
    plan.p_expected = compile(r.p_out.signal_part());
}

TrialSimulator::~TrialSimulator() = default;

const CircuitReport& TrialSimulator::report() const { return plan_->report; }

TrialRecord TrialSimulator::run(std::uint64_t trial) const {
    const Plan& plan = *plan_;
    TrialStream rng(plan.seed, trial);
    std::vector<double> v(plan.n_values, 0.0);
    for (int m = 0; m < 3; ++m) {
        for (int q = 0; q < 2; ++q) {
            const auto [spike, noise] = plan.samplers[m][q].sample(rng);
            if (plan.signal_index[m][q] >= 0) v[plan.signal_index[m][q]] = spike;
            if (plan.fluc_index[m][q] >= 0) v[plan.fluc_index[m][q]] = noise;
        }
    }
    for (std::size_t i : plan.noise_indices) v[i] = rng.normal();

    TrialRecord rec;
    double rounded[2];
    for (int k = 0; k < 2; ++k) {
        const double raw = plan.measured[k].eval(v);
        const double ideal = plan.ideal[k].eval(v);
        rounded[k] = kD * std::round(raw / kD);
        const long long shift = std::llround((rounded[k] - ideal) / kD);
        v[plan.err_index[k]] = kD * static_cast<double>(shift);
        (k == 0 ? rec.residue1 : rec.residue2) = raw - ideal;
        (k == 0 ? rec.shift1 : rec.shift2) = shift;
    }
    const CircuitReport& r = plan.report;
    const double p_final = plan.p_pre_signal.eval(v) + r.ff1.sign * rounded[0];
    const double q_final = plan.q_pre_signal.eval(v) + r.ff2.sign * rounded[1];
    rec.phase_flip = odd_shift(p_final - plan.p_expected.eval(v));
    rec.bit_flip = odd_shift(q_final - plan.q_expected.eval(v));
    return rec;
}

namespace {

int outcome_class(const TrialRecord& r) { return (r.bit_flip ? 1 : 0) | (r.phase_flip ? 2 : 0); }

TrialOutcome empty_outcome(const TrialConfig& cfg) {
    TrialOutcome out;
    out.trials = cfg.trials;
    out.loss = cfg.effective_loss();
    out.delta2 = cfg.delta2;
    return out;
}

}  // namespace

TrialOutcome run_trials_serial(const TrialConfig& cfg) {
    const TrialSimulator sim(cfg);
    TrialOutcome out = empty_outcome(cfg);
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        ++out.counts[outcome_class(sim.run(static_cast<std::uint64_t>(t)))];
    }
    return out;
}

TrialOutcome run_trials(const TrialConfig& cfg) {
    const TrialSimulator sim(cfg);
    TrialOutcome out = empty_outcome(cfg);
    std::int64_t none = 0, bit = 0, phase = 0, both = 0;
#pragma omp parallel for schedule(static) reduction(+ : none, bit, phase, both)
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        switch (outcome_class(sim.run(static_cast<std::uint64_t>(t)))) {
            case 0:
                ++none;
                break;
            case 1:
                ++bit;
                break;
            case 2:
                ++phase;
                break;
            default:
                ++both;
                break;
        }
    }
    out.counts = {none, bit, phase, both};
    return out;
}

Comparison compare_with_analytic(const TrialOutcome& outcome, const CircuitReport& report, double threshold) {
    if (outcome.trials <= 0) throw ConfigError("cannot compare an outcome with zero trials");
    const LossConfig& a = outcome.loss;
    const LossConfig& b = report.loss;
    if (a.eta != b.eta || a.eta_g != b.eta_g || a.eta_m != b.eta_m || a.eta_d != b.eta_d) {
        throw ConfigError("outcome and report were produced with different loss settings");
    }
    Comparison c;
    c.threshold = threshold;
    c.predicted = {report.logical.p_bit_flip, report.logical.p_phase_flip, report.logical.p_both};
    const double n = static_cast<double>(outcome.trials);
    c.pass = true;
    for (int k = 0; k < 3; ++k) {
        c.observed[k] = outcome.rate(k + 1);
        const double p = c.predicted[k];
        const double diff = c.observed[k] - p;
        if (p > 0.0 && p < 1.0) {
            c.z[k] = diff / std::sqrt(p * (1.0 - p) / n);
        } else {
            c.z[k] = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
        }
        if (!(std::abs(c.z[k]) <= threshold)) c.pass = false;
    }
    return c;
}

}  // namespace nt
