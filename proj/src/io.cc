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

#include "noisetransfer/io.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include "noisetransfer/exceptions.h"

namespace nt {

namespace {

const char* kind_name(StateKind kind) {
    switch (kind) {
        case StateKind::Vacuum:
            return "vacuum";
        case StateKind::Coherent:
            return "coherent";
        case StateKind::Squeezed:
            return "squeezed";
        case StateKind::Cat:
            return "cat";
        case StateKind::Gkp:
            return "gkp";
    }
    return "unknown";
}

std::ostringstream csv_stream() {
    std::ostringstream out;
    out << std::setprecision(17);
    return out;
}

}  // namespace

Json to_json(const StateModel& state) {
    Json j{{"kind", kind_name(state.kind)}, {"rotated", state.rotated}};
    switch (state.kind) {
        case StateKind::Coherent:
        case StateKind::Cat:
            j["alpha"] = state.alpha;
            break;
        case StateKind::Squeezed:
            j["delta2"] = state.delta2;
            break;
        case StateKind::Gkp:
            j["mu"] = state.mu;
            j["delta2"] = state.delta2;
            break;
        case StateKind::Vacuum:
            break;
    }
    return j;
}

Json to_json(const DomainPartition& partition) { return partition.describe(); }

Json to_json(const DomainStats& stats) {
    Json domains = Json::array();
    for (const auto& d : stats.domains) domains.push_back({{"n", d.n}, {"mean", d.mean}, {"prob", d.prob}});
    return {{"domains", domains},
            {"V", stats.variance},
            {"second_moment", stats.second_moment},
            {"clipped_fraction", stats.clipped_fraction},
            {"mass", stats.mass}};
}

Json to_json(const DensityGrid& grid) {
    return {{"quadrature", std::string(1, to_char(grid.quadrature))},
            {"x_min", grid.x_min},
            {"spacing", grid.spacing},
            {"density", grid.density}};
}

Json to_json(const OperatorExpr& expr) {
    // Array of pairs keeps the canonical symbol order.
    Json terms = Json::array();
    for (const auto& [s, c] : expr.terms()) terms.push_back({s.name(), c});
    return {{"terms", terms}, {"constant", expr.constant()}, {"text", expr.to_string()}};
}

OperatorExpr expr_from_json(const Json& j) {
    OperatorExpr e(j.value("constant", 0.0));
    for (const auto& t : j.at("terms")) e.add(Symbol::parse(t.at(0).get<std::string>()), t.at(1).get<double>());
    return e;
}

Json to_json(const NoiseBindings& bindings) {
    Json j = Json::object();
    for (const auto& [s, v] : bindings.explicit_bindings()) j[s.name()] = v;
    return j;
}

Json to_json(const ErrorLadder& ladder) {
    return {{"D", ladder.period}, {"V", ladder.variance}, {"probs", ladder.probs}, {"p_odd", ladder.p_odd()}};
}

Json to_json(const LogicalErrorReport& r) {
    return {{"p_none", r.p_none}, {"p_bit_flip", r.p_bit_flip}, {"p_phase_flip", r.p_phase_flip}, {"p_both", r.p_both}};
}

Json to_json(const LossConfig& loss) {
    return {{"eta", loss.eta}, {"eta_g", loss.eta_g}, {"eta_m", loss.eta_m}, {"eta_d", loss.eta_d}};
}

Json to_json(const Gains& gains) { return {{"g1", gains.g1}, {"g2", gains.g2}, {"g", gains.g}}; }

Json to_json(const CircuitReport& r) {
    Json ladders = Json::array();
    for (const auto& l : r.ladders) ladders.push_back(to_json(l));
    return {{"v1", r.v1},
            {"v2", r.v2},
            {"v_q_out", r.v_q_out},
            {"v_p_out", r.v_p_out},
            {"gains", to_json(r.gains)},
            {"loss", to_json(r.loss)},
            {"input_noise", {{"v_q", r.input_noise.v_q}, {"v_p", r.input_noise.v_p}}},
            {"resource_noise", {{"v_q", r.resource_noise.v_q}, {"v_p", r.resource_noise.v_p}}},
            {"modes", {{"input", r.input_mode}, {"resources", {r.resource_modes[0], r.resource_modes[1]}},
                       {"output", r.output_mode}}},
            {"q_out", to_json(r.q_out)},
            {"p_out", to_json(r.p_out)},
            {"feedforward",
             {{{"measured", to_json(r.ff1.measured)}, {"rescale", r.ff1.rescale}, {"binned", to_json(r.ff1.bin.signal)},
               {"err", r.ff1.bin.err.name()}},
              {{"measured", to_json(r.ff2.measured)}, {"rescale", r.ff2.rescale}, {"binned", to_json(r.ff2.bin.signal)},
               {"err", r.ff2.bin.err.name()}}}},
            {"ladders", ladders},
            {"logical", to_json(r.logical)}};
}

Json to_json(const TrialOutcome& o) {
    return {{"trials", o.trials},
            {"delta2", o.delta2},
            {"loss", to_json(o.loss)},
            {"counts", {{"none", o.counts[0]}, {"bit_flip", o.counts[1]}, {"phase_flip", o.counts[2]}, {"both", o.counts[3]}}},
            {"rates", {{"none", o.rate(0)}, {"bit_flip", o.rate(1)}, {"phase_flip", o.rate(2)}, {"both", o.rate(3)}}},
            {"std_errors",
             {{"none", o.std_error(0)}, {"bit_flip", o.std_error(1)}, {"phase_flip", o.std_error(2)}, {"both", o.std_error(3)}}}};
}

Json to_json(const Comparison& c) {
    auto z = [](double v) { return std::isfinite(v) ? Json(v) : Json(v > 0 ? "inf" : "-inf"); };
    return {{"pass", c.pass},
            {"threshold", c.threshold},
            {"z", {{"bit_flip", z(c.z[0])}, {"phase_flip", z(c.z[1])}, {"both", z(c.z[2])}}},
            {"predicted", {{"bit_flip", c.predicted[0]}, {"phase_flip", c.predicted[1]}, {"both", c.predicted[2]}}},
            {"observed", {{"bit_flip", c.observed[0]}, {"phase_flip", c.observed[1]}, {"both", c.observed[2]}}}};
}

Json to_json(const TransferCheck& c) {
    return {{"oracle_V", c.oracle_v},   {"formula_V", c.formula_v},
            {"rel_err", c.rel_err},     {"oracle_second_moment", c.oracle_m2},
            {"formula_second_moment", c.formula_m2}, {"clipped_fraction", c.clipped_fraction},
            {"clipped_regime", c.clipped_regime}};
}

Json to_json(const SweepPoint& p) {
    return {{"param", p.param}, {"V_q", p.v_q}, {"V_p", p.v_p}, {"clipped_fraction", p.clipped_fraction}};
}

std::string stats_csv(const DomainStats& stats) {
    auto out = csv_stream();
    out << "n,mean,prob\n";
    for (const auto& d : stats.domains) out << d.n << "," << d.mean << "," << d.prob << "\n";
    out << "# V=" << stats.variance << "\n";
    out << "# clipped_fraction=" << stats.clipped_fraction << "\n";
    return out.str();
}

std::string grid_csv(const DensityGrid& grid) {
    auto out = csv_stream();
    out << "x,density\n";
    for (std::size_t i = 0; i < grid.size(); ++i) out << grid.x(i) << "," << grid.density[i] << "\n";
    return out.str();
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    auto out = csv_stream();
    out << "param,V_q,V_p,clipped_fraction\n";
    for (const auto& p : points) out << p.param << "," << p.v_q << "," << p.v_p << "," << p.clipped_fraction << "\n";
    return out.str();
}

std::string ladder_csv(const ErrorLadder& ladder) {
    auto out = csv_stream();
    out << "n,prob\n";
    for (std::size_t n = 0; n < ladder.probs.size(); ++n) out << n << "," << ladder.probs[n] << "\n";
    return out.str();
}

std::string outcome_csv(const TrialOutcome& o, const Comparison& c) {
    auto out = csv_stream();
    out << "class,count,rate,std_error,predicted,z\n";
    const char* names[4] = {"none", "bit_flip", "phase_flip", "both"};
    for (int k = 0; k < 4; ++k) {
        out << names[k] << "," << o.counts[k] << "," << o.rate(k) << "," << o.std_error(k) << ",";
        if (k == 0) {
            out << ",\n";
        } else {
            out << c.predicted[k - 1] << "," << c.z[k - 1] << "\n";
        }
    }
    return out.str();
}

std::string config_hash(const Json& config) {
    const std::string text = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = dir / ("." + target.filename().string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) throw ConfigError("failed writing " + tmp.string());
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigError("cannot move output into place at " + target.string());
    }
}

}  // namespace nt
