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

#include "noisetransfer/heisenberg.h"

#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "noisetransfer/exceptions.h"

namespace nt {

namespace {

void check_fraction(double eta, const char* what) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0, 1]");
    }
}

std::string describe_op(const char* op, std::int64_t mode, double value) {
    std::ostringstream out;
    out.precision(17);
    out << op << "(mode=" << mode << ",value=" << value << ")";
    return out.str();
}

}  // namespace

std::int64_t Engine::new_mode(double v_q, double v_p) {
    if (!(v_q >= 0.0) || !(v_p >= 0.0) || !std::isfinite(v_q) || !std::isfinite(v_p)) {
        throw DomainError("mode variances must be finite and >= 0");
    }
    const std::int64_t m = next_mode_++;
    ModeState s;
    s.q = OperatorExpr::of(Symbol::signal(Quadrature::Q, m)) + OperatorExpr::of(Symbol::fluc(Quadrature::Q, m));
    s.p = OperatorExpr::of(Symbol::signal(Quadrature::P, m)) + OperatorExpr::of(Symbol::fluc(Quadrature::P, m));
    bindings_.bind(Symbol::fluc(Quadrature::Q, m), v_q);
    bindings_.bind(Symbol::fluc(Quadrature::P, m), v_p);
    modes_.emplace(m, std::move(s));
    std::ostringstream out;
    out.precision(17);
    out << "new_mode(mode=" << m << ",v_q=" << v_q << ",v_p=" << v_p << ")";
    log_.push_back(out.str());
    return m;
}

bool Engine::is_live(std::int64_t mode) const {
    auto it = modes_.find(mode);
    return it != modes_.end() && it->second.live;
}

Engine::ModeState& Engine::live_mode(std::int64_t mode, const char* op) {
    auto it = modes_.find(mode);
    if (it == modes_.end()) throw ConsumedMode(std::string(op) + ": unknown mode " + std::to_string(mode));
    if (!it->second.live) throw ConsumedMode(std::string(op) + ": mode " + std::to_string(mode) + " was measured");
    return it->second;
}

const OperatorExpr& Engine::expr(std::int64_t mode, Quadrature quadrature) const {
    auto it = modes_.find(mode);
    if (it == modes_.end() || !it->second.live) {
        throw ConsumedMode("mode " + std::to_string(mode) + " is not live");
    }
    return quadrature == Quadrature::Q ? it->second.q : it->second.p;
}

std::optional<Lineage> Engine::lineage(const Symbol& symbol) const {
    if (auto it = rebased_.find(symbol); it != rebased_.end()) return it->second;
    switch (symbol.category()) {
        case 0:
        case 1:
            return Lineage{symbol.id, symbol.quadrature()};
        case 2: {
            auto it = vac_lineage_.find(symbol);
            if (it == vac_lineage_.end()) return std::nullopt;
            return it->second;
        }
        default:
            return std::nullopt;
    }
}

void Engine::apply_loss(std::int64_t mode, double eta) {
    check_fraction(eta, "loss transmission");
    ModeState& m = live_mode(mode, "apply_loss");
    log_.push_back(describe_op("loss", mode, eta));
    if (eta == 1.0) return;
    const std::int64_t id = fresh_id();
    for (Quadrature quad : {Quadrature::Q, Quadrature::P}) {
        OperatorExpr& x = quad == Quadrature::Q ? m.q : m.p;
        // A vacuum entering a single-lineage quadrature joins that lineage.
        std::set<Lineage> found;
        bool untracked = false;
        for (const auto& [s, c] : x.terms()) {
            if (s.kind == SymbolKind::ErrShift) continue;
            auto l = lineage(s);
            if (l) {
                found.insert(*l);
            } else {
                untracked = true;
            }
        }
        const Symbol v = Symbol::vac(quad, id);
        if (found.size() == 1 && !untracked) vac_lineage_[v] = *found.begin();
        x *= std::sqrt(eta);
        x.add(v, std::sqrt(1.0 - eta));
    }
}

OperatorExpr Engine::lineage_loss(const OperatorExpr& x, Quadrature quadrature, double eta) {
    std::set<Lineage> groups;
    bool untracked = false;
    for (const auto& [s, c] : x.terms()) {
        if (s.kind == SymbolKind::ErrShift) continue;
        auto l = lineage(s);
        if (l) {
            groups.insert(*l);
        } else {
            untracked = true;
        }
    }
    OperatorExpr out = std::sqrt(eta) * x;
    const double w = std::sqrt(1.0 - eta);
    for (const Lineage& l : groups) {
        const Symbol v = Symbol::vac(l.quadrature, fresh_id());
        vac_lineage_[v] = l;
        out.add(v, w);
    }
    if (untracked) out.add(Symbol::vac(quadrature, fresh_id()), w);
    return out;
}

void Engine::rebase_lineage(std::int64_t mode) {
    ModeState& m = live_mode(mode, "rebase_lineage");
    for (Quadrature quad : {Quadrature::Q, Quadrature::P}) {
        for (const auto& [s, c] : (quad == Quadrature::Q ? m.q : m.p).terms()) {
            if (s.category() <= 2) rebased_[s] = Lineage{mode, quad};
        }
    }
}

void Engine::apply_lineage_loss(std::int64_t mode, double eta) {
    check_fraction(eta, "loss transmission");
    ModeState& m = live_mode(mode, "apply_lineage_loss");
    log_.push_back(describe_op("lineage_loss", mode, eta));
    if (eta == 1.0) return;
    m.q = lineage_loss(m.q, Quadrature::Q, eta);
    m.p = lineage_loss(m.p, Quadrature::P, eta);
}

void Engine::apply_cz(std::int64_t a, std::int64_t b) {
    if (a == b) throw DomainError("CZ needs two distinct modes");
    ModeState& ma = live_mode(a, "apply_cz");
    ModeState& mb = live_mode(b, "apply_cz");
    const OperatorExpr qa = ma.q;
    const OperatorExpr qb = mb.q;
    ma.p += qb;
    mb.p += qa;
    std::ostringstream out;
    out << "cz(a=" << a << ",b=" << b << ")";
    log_.push_back(out.str());
}

void Engine::apply_amplifier(std::int64_t mode, double gain) {
    if (!(gain >= 1.0) || !std::isfinite(gain)) throw DomainError("amplifier gain must be >= 1");
    ModeState& m = live_mode(mode, "apply_amplifier");
    log_.push_back(describe_op("amplifier", mode, gain));
    if (gain == 1.0) return;
    const std::int64_t id = fresh_id();
    const double idler = std::sqrt(gain * gain - 1.0);
    m.q *= gain;
    m.q.add(Symbol::vac(Quadrature::Q, id), idler);
    m.p *= gain;
    m.p.add(Symbol::vac(Quadrature::P, id), -idler);
}

void Engine::apply_rotation90(std::int64_t mode) {
    ModeState& m = live_mode(mode, "apply_rotation90");
    OperatorExpr q = m.p;
    OperatorExpr p = -m.q;
    m.q = std::move(q);
    m.p = std::move(p);
    log_.push_back("rotation90(mode=" + std::to_string(mode) + ")");
}

void Engine::apply_displacement(std::int64_t mode, Quadrature quadrature, const OperatorExpr& shift) {
    ModeState& m = live_mode(mode, "apply_displacement");
    (quadrature == Quadrature::Q ? m.q : m.p) += shift;
    log_.push_back("displace(mode=" + std::to_string(mode) + "," + to_char(quadrature) + " += " + shift.to_string() +
                   ")");
}

void Engine::apply_displacement(std::int64_t mode, Quadrature quadrature, double shift) {
    apply_displacement(mode, quadrature, OperatorExpr(shift));
}

OperatorExpr Engine::measure(std::int64_t mode, Quadrature quadrature, double efficiency) {
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw DomainError("detector efficiency must lie in (0, 1]");
    ModeState& m = live_mode(mode, "measure");
    OperatorExpr out = quadrature == Quadrature::Q ? m.q : m.p;
    if (efficiency < 1.0) {
        out *= std::sqrt(efficiency);
        out.add(Symbol::meas_noise(fresh_id()), std::sqrt(1.0 - efficiency));
    }
    m.live = false;
    std::ostringstream log;
    log.precision(17);
    log << "measure(mode=" << mode << "," << to_char(quadrature) << ",efficiency=" << efficiency << ")";
    log_.push_back(log.str());
    return out;
}

BinResult Engine::bin_correct(const OperatorExpr& expr, double rescale, const DomainPartition& lattice) {
    if (lattice.kind() != DomainPartition::Kind::Lattice) throw DomainError("binning needs a lattice partition");
    if (!(rescale > 0.0) || !std::isfinite(rescale)) throw DomainError("binning rescale must be positive");
    const OperatorExpr scaled = rescale * expr;
    BinResult r;
    for (const auto& [s, c] : scaled.terms()) {
        if (!s.is_signal() && s.kind != SymbolKind::ErrShift) continue;
        const double k = std::round(c);
        if (std::abs(c - k) > 1e-9) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "unbalanced circuit: " << s.name() << " has coefficient " << c << " after rescaling by " << rescale;
            throw UnbalancedCircuit(msg.str());
        }
        r.signal.add(s, k);
    }
    const double D = lattice.period();
    const double cells = (scaled.constant() - lattice.offset()) / D;
    if (std::abs(cells - std::round(cells)) > 1e-9) {
        throw UnbalancedCircuit("unbalanced circuit: constant displacement is off the lattice");
    }
    r.signal.add_constant(lattice.offset() + std::round(cells) * D);
    r.err = Symbol::err_shift(fresh_id());
    r.noise_variance = variance_of(scaled, bindings_);
    r.ladder = build_ladder(r.noise_variance, D);
    ladders_[r.err.id] = r.ladder;
    std::ostringstream log;
    log.precision(17);
    log << "bin(rescale=" << rescale << ",period=" << D << ",variance=" << r.noise_variance << ",err=" << r.err.name()
        << ")";
    log_.push_back(log.str());
    return r;
}

OperatorExpr Engine::lumped(const OperatorExpr& expr) const {
    struct Group {
        Symbol rep;
        double sign = 1.0;
        double sumsq = 0.0;
    };
    std::map<Lineage, Group> groups;
    OperatorExpr out(expr.constant());
    for (const auto& [s, c] : expr.terms()) {
        auto l = s.category() == 2 ? lineage(s) : std::nullopt;
        if (!l) {
            out.add(s, c);
            continue;
        }
        auto [it, inserted] = groups.try_emplace(*l, Group{s, c < 0 ? -1.0 : 1.0, 0.0});
        it->second.sumsq += c * c;
    }
    for (const auto& [l, g] : groups) out.add(g.rep, g.sign * std::sqrt(g.sumsq));
    return out;
}

std::map<std::string, double> Engine::lineage_view(const OperatorExpr& expr) const {
    std::map<std::string, double> out;
    const OperatorExpr merged = lumped(expr);
    for (const auto& [s, c] : merged.terms()) {
        auto l = s.category() == 2 ? lineage(s) : std::nullopt;
        if (l) {
            out["vac[" + std::string(1, to_char(l->quadrature)) + std::to_string(l->mode) + "]"] = c;
        } else {
            out[s.name()] = c;
        }
    }
    if (merged.constant() != 0.0) out["const"] = merged.constant();
    return out;
}

double Engine::symplectic_form(std::int64_t mode) const {
    const OperatorExpr& q = expr(mode, Quadrature::Q);
    const OperatorExpr& p = expr(mode, Quadrature::P);
    // Pair key: (0, mode) for fluctuations, (1, id) for vacua.
    std::map<std::pair<int, std::int64_t>, std::array<double, 4>> pairs;  // aq, ap, bq, bp
    auto collect = [&](const OperatorExpr& x, int offset) {
        for (const auto& [s, c] : x.terms()) {
            if (s.category() != 1 && s.category() != 2) continue;
            auto& slot = pairs[{s.category() - 1, s.id}];
            slot[offset + (s.quadrature() == Quadrature::Q ? 0 : 1)] += c;
        }
    };
    collect(q, 0);
    collect(p, 2);
    double omega = 0.0;
    for (const auto& [key, v] : pairs) omega += v[0] * v[3] - v[1] * v[2];
    return omega;
}

}  // namespace nt
