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

#include "noisetransfer/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "noisetransfer/exceptions.h"
#include "noisetransfer/io.h"

namespace nt {

namespace {

struct Options {
    std::string config;
    std::string path;
    std::string out;

    std::string state = "vacuum";
    double alpha = 0.0;
    double delta2 = 0.1;
    int mu = 0;
    bool rotated = false;
    std::string quadrature = "q";
    std::string domains = "auto";
    std::size_t points = 2001;

    std::string param = "alpha";
    double from = 0.0;
    double to = 1.0;
    std::size_t steps = 0;
    bool serial = false;

    std::string model = "ideal";
    double eta = 1.0;
    double eta_g = 1.0;
    double eta_m = 1.0;
    double eta_d = 1.0;
    int rounds = 1;
    double g1_scale = 1.0;
    double g2_scale = 1.0;

    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::string spikes = "gaussian";
    double threshold = 3.0;

    double gain = 1.0;
};

class StatisticalFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

void add_state_options(CLI::App* sub, Options& o) {
    sub->add_option("--state", o.state, "State family")
        ->check(CLI::IsMember({"vacuum", "coherent", "squeezed", "cat", "gkp"}));
    sub->add_option("--alpha", o.alpha, "Cat or coherent amplitude");
    sub->add_option("--mu", o.mu, "GKP logical value")->check(CLI::IsMember({0, 1}));
    sub->add_option("--delta2", o.delta2, "GKP or squeezed variance");
    sub->add_flag("--rotated", o.rotated, "Apply the quarter-period rotation");
}

void add_loss_options(CLI::App* sub, Options& o) {
    sub->add_option("--model", o.model, "Circuit model")->check(CLI::IsMember({"ideal", "lossy"}));
    sub->add_option("--eta", o.eta, "State-preparation transmission");
    sub->add_option("--eta-g", o.eta_g, "Gate transmission");
    sub->add_option("--eta-m", o.eta_m, "Detector efficiency");
    sub->add_option("--eta-d", o.eta_d, "Displacement transmission");
    sub->add_option("--g1-scale", o.g1_scale, "Multiplier on the first feedforward gain");
    sub->add_option("--g2-scale", o.g2_scale, "Multiplier on the second feedforward gain");
}

void add_common(CLI::App* sub, Options& o, const std::string& default_out, std::vector<std::string> formats) {
    o.out = default_out;
    sub->add_option("--config", o.config, "JSON file of option values");
    sub->add_option("--path", o.path, "Output file");
    sub->add_option("--out", o.out, "Output format")->check(CLI::IsMember(formats));
}

StateModel build_state(const Options& o) {
    StateModel s;
    if (o.state == "vacuum") {
        s = StateModel::vacuum();
    } else if (o.state == "coherent") {
        s = StateModel::coherent(o.alpha);
    } else if (o.state == "squeezed") {
        s = StateModel::squeezed(o.delta2);
    } else if (o.state == "cat") {
        s = StateModel::cat(o.alpha);
    } else {
        s = StateModel::gkp(o.mu, o.delta2);
    }
    if (o.rotated) s = s.rotated90();
    s.validate();
    return s;
}

Quadrature build_quadrature(const Options& o) { return o.quadrature == "p" ? Quadrature::P : Quadrature::Q; }

DomainPartition build_partition(const Options& o, const StateModel& s, Quadrature q) {
    if (o.domains == "auto") return default_partition(s, q);
    return DomainPartition::parse(o.domains);
}

LossConfig build_loss(const Options& o) {
    LossConfig loss{o.eta, o.eta_g, o.eta_m, o.eta_d};
    if (o.model == "ideal") {
        if (!loss.ideal()) throw ConfigError("loss flags require --model lossy");
        return LossConfig{};
    }
    loss.validate();
    return loss;
}

std::optional<Gains> build_gains(const Options& o, const LossConfig& loss) {
    if (o.g1_scale == 1.0 && o.g2_scale == 1.0) return std::nullopt;
    Gains g = balanced_gains(loss);
    g.g1 *= o.g1_scale;
    g.g2 *= o.g2_scale;
    return g;
}

Json scalar_value(const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    try {
        std::size_t used = 0;
        const long long i = std::stoll(text, &used);
        if (used == text.size()) return i;
        double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    return text;
}

/// Effective option values of a subcommand, keyed by long flag name.
Json effective_config(CLI::App* sub) {
    Json cfg = Json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const auto& names = opt->get_lnames();
        if (names.empty()) continue;
        const std::string& name = names.front();
        if (name == "help" || name == "config" || name == "path") continue;
        if (opt->get_expected_min() == 0) {
            cfg[name] = opt->count() > 0;
        } else if (opt->count() > 0) {
            cfg[name] = scalar_value(opt->results().back());
        } else if (!opt->get_default_str().empty()) {
            cfg[name] = scalar_value(opt->get_default_str());
        }
    }
    return cfg;
}

/// Splices the key/value pairs of a --config file in front of the
/// command-line flags, which take precedence.
std::vector<std::string> expand_config(CLI::App& app, const std::vector<std::string>& args) {
    if (args.empty()) return args;
    std::string config_path;
    std::vector<std::string> rest;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (config_path.empty()) return args;

    CLI::App* sub = app.get_subcommand_no_throw(args[0]);
    if (sub == nullptr) throw ConfigError("--config needs a subcommand");
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file " + config_path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");

    std::vector<std::string> out{args[0]};
    for (const auto& [key, value] : j.items()) {
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr || key == "help" || key == "config") throw ConfigError("unknown config key: " + key);
        if (opt->get_expected_min() == 0) {
            if (!value.is_boolean()) throw ConfigError("config key " + key + " must be true or false");
            if (value.get<bool>()) out.push_back("--" + key);
            continue;
        }
        out.push_back("--" + key);
        if (value.is_string()) {
            out.push_back(value.get<std::string>());
        } else if (value.is_number_integer() || value.is_number_unsigned()) {
            out.push_back(value.dump());
        } else if (value.is_number()) {
            std::ostringstream s;
            s.precision(17);
            s << value.get<double>();
            out.push_back(s.str());
        } else {
            throw ConfigError("config key " + key + " must be a string or number");
        }
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

struct Output {
    std::string command;
    Json config;
    std::string hash;
    std::string path;
};

std::string default_path(const std::string& command, const std::string& ext) {
    const char* dir = std::getenv(kOutputDirEnv);
    std::filesystem::path base = (dir != nullptr && *dir != '\0') ? std::filesystem::path(dir) : std::filesystem::path(".");
    return (base / (command + "." + ext)).string();
}

void write_json(const Output& o, Json result) {
    Json doc{{"command", o.command}, {"config", o.config}, {"config_hash", o.hash}, {"result", std::move(result)}};
    atomic_write(o.path, doc.dump(2) + "\n");
    atomic_write(o.path + ".config.json", o.config.dump(2) + "\n");
}

void write_csv(const Output& o, const std::string& body, const std::string& path) {
    atomic_write(path, body + "# config_hash=" + o.hash + "\n");
}

std::string sibling(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    p.replace_extension(suffix);
    return p.string();
}

void cmd_state_stats(const Options& o, const Output& out, std::ostream& log) {
    const StateModel s = build_state(o);
    const Quadrature q = build_quadrature(o);
    const DomainPartition part = build_partition(o, s, q);
    if (o.points < 2) throw ConfigError("--points must be >= 2");
    const DomainStats stats = domain_stats(s, q, part);
    const DensityGrid grid = density_grid(s, q, o.points);
    if (o.out == "csv") {
        write_csv(out, stats_csv(stats), out.path);
        write_csv(out, grid_csv(grid), sibling(out.path, ".grid.csv"));
        atomic_write(out.path + ".config.json", out.config.dump(2) + "\n");
    } else {
        write_json(out, {{"state", to_json(s)},
                         {"quadrature", std::string(1, to_char(q))},
                         {"partition", to_json(part)},
                         {"stats", to_json(stats)},
                         {"grid", to_json(grid)}});
    }
    log << "partition=" << part.describe() << " V=" << stats.variance << " clipped_fraction=" << stats.clipped_fraction
        << " -> " << out.path << "\n";
}

void cmd_sweep(const Options& o, const Output& out, std::ostream& log) {
    const StateModel base = build_state(o);
    if (o.steps == 0) throw ConfigError("--steps must be >= 1");
    if (o.steps > 1 && o.from == o.to) throw ConfigError("--from and --to must differ");
    const bool by_alpha = o.param == "alpha";
    if (by_alpha && base.kind != StateKind::Cat && base.kind != StateKind::Coherent && base.kind != StateKind::Vacuum) {
        throw ConfigError("--param alpha needs a cat, coherent or vacuum state");
    }
    if (!by_alpha && base.kind != StateKind::Gkp && base.kind != StateKind::Squeezed && base.kind != StateKind::Vacuum) {
        throw ConfigError("--param delta2 needs a gkp, squeezed or vacuum state");
    }
    StateFamily family = [base, by_alpha](double x) {
        StateModel s = base;
        (by_alpha ? s.alpha : s.delta2) = x;
        return s;
    };
    const std::vector<double> params = linspace(o.from, o.to, o.steps);
    const auto points = o.serial ? sweep_variance_serial(family, params) : sweep_variance(family, params);
    if (o.out == "csv") {
        write_csv(out, sweep_csv(points), out.path);
        atomic_write(out.path + ".config.json", out.config.dump(2) + "\n");
    } else {
        Json rows = Json::array();
        for (const auto& p : points) rows.push_back(to_json(p));
        write_json(out, {{"state", to_json(base)}, {"param", o.param}, {"points", rows}});
    }
    log << points.size() << " points -> " << out.path << "\n";
}

void cmd_circuit(const Options& o, const Output& out, std::ostream& log) {
    if (o.rounds < 1) throw ConfigError("--rounds must be >= 1");
    if (!(o.delta2 > 0.0)) throw ConfigError("--delta2 must be positive");
    const LossConfig loss = build_loss(o);
    const auto gains = build_gains(o, loss);
    Json result;
    if (o.rounds == 1) {
        const CircuitReport r = run_circuit({o.delta2, o.delta2}, {o.delta2, o.delta2}, loss, gains);
        result = to_json(r);
        log << "v1=" << r.v1 << " v2=" << r.v2 << " v_q_out=" << r.v_q_out << " v_p_out=" << r.v_p_out << "\n";
    } else {
        if (gains) throw ConfigError("gain scaling is only supported with --rounds 1");
        const auto reports = iterate(o.rounds, o.delta2, loss);
        Json rounds = Json::array();
        for (std::size_t k = 0; k < reports.size(); ++k) {
            const auto& r = reports[k];
            rounds.push_back(to_json(r));
            log << "round " << k + 1 << ": v1=" << r.v1 << " v2=" << r.v2 << " v_q_out=" << r.v_q_out
                << " v_p_out=" << r.v_p_out << "\n";
        }
        result = {{"rounds", rounds}};
    }
    write_json(out, result);
    log << "-> " << out.path << "\n";
}

void cmd_mc(const Options& o, const Output& out, std::ostream& log) {
    TrialConfig cfg;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.delta2 = o.delta2;
    cfg.mu = o.mu;
    cfg.lossy = o.model == "lossy";
    cfg.loss = build_loss(o);
    cfg.gains = build_gains(o, cfg.loss);
    cfg.spikes = o.spikes == "exact" ? SpikeModel::ExactMarginal : SpikeModel::Gaussian;
    cfg.validate();
    const TrialOutcome outcome = o.serial ? run_trials_serial(cfg) : run_trials(cfg);
    const CircuitReport report = analytic_report(cfg);
    const Comparison cmp = compare_with_analytic(outcome, report, o.threshold);
    if (o.out == "csv") {
        write_csv(out, outcome_csv(outcome, cmp), out.path);
        atomic_write(out.path + ".config.json", out.config.dump(2) + "\n");
    } else {
        write_json(out, {{"outcome", to_json(outcome)},
                         {"comparison", to_json(cmp)},
                         {"analytic", {{"v1", report.v1}, {"v2", report.v2}, {"logical", to_json(report.logical)}}}});
    }
    log << "bit_flip=" << outcome.rate(1) << " (z=" << cmp.z[0] << ") phase_flip=" << outcome.rate(2)
        << " (z=" << cmp.z[1] << ") both=" << outcome.rate(3) << " (z=" << cmp.z[2] << ") "
        << (cmp.pass ? "PASS" : "FAIL") << " -> " << out.path << "\n";
    if (!cmp.pass) throw StatisticalFailure("Monte Carlo rates disagree with the analytic prediction");
}

void cmd_loss_oracle(const Options& o, const Output& out, std::ostream& log, bool amplify) {
    const StateModel s = build_state(o);
    const Quadrature q = build_quadrature(o);
    const DomainPartition part = build_partition(o, s, q);
    const ChannelSpec spec = amplify ? ChannelSpec::amp(o.gain) : ChannelSpec::loss(o.eta);
    const TransferCheck check = validate_transfer(s, q, spec, part);
    if (o.out == "csv") {
        const double h = oracle_spacing(s, q, spec);
        const auto [lo, hi] = Wavefunction(s).support(q);
        const auto n = oracle_points(lo, hi, h);
        const DensityGrid pushed = push_marginal(density_grid(s, q, lo, lo + h * static_cast<double>(n - 1), n), spec);
        write_csv(out, grid_csv(pushed), out.path);
        atomic_write(out.path + ".config.json", out.config.dump(2) + "\n");
    } else {
        write_json(out, {{"state", to_json(s)},
                         {"quadrature", std::string(1, to_char(q))},
                         {"channel", spec.describe()},
                         {"partition", to_json(part)},
                         {"check", to_json(check)}});
    }
    log << "oracle_V=" << check.oracle_v << " formula_V=" << check.formula_v << " rel_err=" << check.rel_err
        << (check.clipped_regime ? " (clipped regime)" : "") << " -> " << out.path << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Noise-transfer analysis of bosonic qubits", "nt"};
    app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    Options o;

    auto* stats = app.add_subcommand("state-stats", "Domain statistics and density grid of one quadrature");
    add_state_options(stats, o);
    stats->add_option("--quadrature", o.quadrature)->check(CLI::IsMember({"q", "p"}));
    stats->add_option("--domains", o.domains, "auto, sign, single, lattice:P[:O] or explicit:b0,b1,...");
    stats->add_option("--points", o.points, "Density grid points");

    auto* sweep = app.add_subcommand("sweep", "Domain variances over a parameter range");
    add_state_options(sweep, o);
    sweep->add_option("--param", o.param)->check(CLI::IsMember({"alpha", "delta2"}));
    sweep->add_option("--from", o.from);
    sweep->add_option("--to", o.to);
    sweep->add_option("--steps", o.steps, "Number of parameter points")->required();
    sweep->add_flag("--serial", o.serial, "Use the serial reference loop");

    auto* circuit = app.add_subcommand("circuit", "Symbolic report of the teleportation round");
    circuit->add_option("--delta2", o.delta2, "Resource and input variance");
    add_loss_options(circuit, o);
    circuit->add_option("--rounds", o.rounds, "Number of chained rounds");

    auto* mc = app.add_subcommand("mc", "Monte Carlo logical error rates against the analytic ladders");
    mc->add_option("--trials", o.trials)->required();
    mc->add_option("--seed", o.seed);
    mc->add_option("--delta2", o.delta2);
    mc->add_option("--mu", o.mu)->check(CLI::IsMember({0, 1}));
    add_loss_options(mc, o);
    mc->add_option("--spikes", o.spikes)->check(CLI::IsMember({"gaussian", "exact"}));
    mc->add_option("--threshold", o.threshold, "Largest accepted |z|");
    mc->add_flag("--serial", o.serial, "Use the serial reference loop");

    auto* oracle = app.add_subcommand("loss-oracle", "Convolution check of the loss transfer formula");
    add_state_options(oracle, o);
    oracle->add_option("--quadrature", o.quadrature)->check(CLI::IsMember({"q", "p"}));
    oracle->add_option("--domains", o.domains);
    auto* eta_opt = oracle->add_option("--eta", o.eta, "Loss transmission");
    auto* gain_opt = oracle->add_option("--gain", o.gain, "Amplifier gain");
    eta_opt->excludes(gain_opt);

    const std::string command = raw_args.empty() ? "" : raw_args.front();
    const std::map<std::string, std::pair<std::string, std::vector<std::string>>> formats{
        {"state-stats", {"csv", {"csv", "json"}}}, {"sweep", {"csv", {"csv", "json"}}},
        {"circuit", {"json", {"json"}}},           {"mc", {"json", {"json", "csv"}}},
        {"loss-oracle", {"json", {"json", "csv"}}},
    };
    for (const auto& [name, f] : formats) add_common(app.get_subcommand(name), o, f.first, f.second);
    if (auto it = formats.find(command); it != formats.end()) o.out = it->second.first;

    try {
        std::vector<std::string> args = expand_config(app, raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    CLI::App* sub = app.get_subcommands().front();
    Output output;
    output.command = sub->get_name();
    output.config = effective_config(sub);
    output.hash = config_hash(output.config);
    output.path = o.path.empty() ? default_path(output.command, o.out) : o.path;

    try {
        if (sub == stats) {
            cmd_state_stats(o, output, out);
        } else if (sub == sweep) {
            cmd_sweep(o, output, out);
        } else if (sub == circuit) {
            cmd_circuit(o, output, out);
        } else if (sub == mc) {
            cmd_mc(o, output, out);
        } else {
            cmd_loss_oracle(o, output, out, gain_opt->count() > 0);
        }
    } catch (const StatisticalFailure& e) {
        err << "error: " << e.what() << "\n";
        return kExitDisagreement;
    } catch (const UnbalancedCircuit& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnbalanced;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace nt
