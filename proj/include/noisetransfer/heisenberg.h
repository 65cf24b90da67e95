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

#ifndef NOISETRANSFER_HEISENBERG_H
#define NOISETRANSFER_HEISENBERG_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "noisetransfer/domains.h"
#include "noisetransfer/errors.h"
#include "noisetransfer/expr.h"

namespace nt {

/// Source quadrature a term descends from. Signal and fluctuation symbols
/// carry the lineage of their own mode and quadrature; vacuum symbols inherit
/// one when they are created for a single-lineage expression.
struct Lineage {
    std::int64_t mode = 0;
    Quadrature quadrature = Quadrature::Q;

    friend auto operator<=>(const Lineage&, const Lineage&) = default;
};

struct BinResult {
    /// Integer combination of the signal and earlier error symbols, plus the
    /// rescaled constant.
    OperatorExpr signal;
    /// Fresh error symbol for the lattice shift made by this binning.
    Symbol err;
    double noise_variance = 0.0;
    ErrorLadder ladder;
};

/// Heisenberg-picture state of a set of modes. Each live mode holds its q and
/// p quadratures as linear expressions; every element rewrites them.
class Engine {
   public:
    /// Registers a mode with Q = qc + dq and P = pc + dp, binding the
    /// fluctuation variances.
    std::int64_t new_mode(double v_q, double v_p);

    bool is_live(std::int64_t mode) const;
    const OperatorExpr& q(std::int64_t mode) const { return expr(mode, Quadrature::Q); }
    const OperatorExpr& p(std::int64_t mode) const { return expr(mode, Quadrature::P); }
    const OperatorExpr& expr(std::int64_t mode, Quadrature quadrature) const;

    /// Beamsplitter loss with one fresh vacuum pair: X -> sqrt(eta) X + sqrt(1 - eta) Xv.
    void apply_loss(std::int64_t mode, double eta);
    /// Loss that completes every source quadrature separately: each lineage
    /// group of terms gets its own fresh vacuum of weight sqrt(1 - eta), and
    /// terms without lineage share one more.
    void apply_lineage_loss(std::int64_t mode, double eta);
    /// P_a += Q_b, P_b += Q_a.
    void apply_cz(std::int64_t a, std::int64_t b);
    /// Phase-insensitive gain: Q -> g Q + sqrt(g^2 - 1) qv, P -> g P - sqrt(g^2 - 1) pv.
    void apply_amplifier(std::int64_t mode, double gain);
    /// (Q, P) -> (P, -Q).
    void apply_rotation90(std::int64_t mode);
    void apply_displacement(std::int64_t mode, Quadrature quadrature, const OperatorExpr& shift);
    void apply_displacement(std::int64_t mode, Quadrature quadrature, double shift);

    /// Homodyne readout: sqrt(eff) X + sqrt(1 - eff) pm(fresh). Consumes the mode.
    OperatorExpr measure(std::int64_t mode, Quadrature quadrature, double efficiency = 1.0);

    /// Rounds rescale * expr onto the lattice. Throws UnbalancedCircuit unless
    /// every signal and error coefficient is an integer after rescaling (to
    /// 1e-9) and the rescaled constant lies on the lattice. The new error
    /// symbol's ladder is stored on the engine.
    BinResult bin_correct(const OperatorExpr& expr, double rescale, const DomainPartition& lattice);

    /// Vacuum terms of each lineage merged into one representative symbol
    /// (the lowest id) with the root-sum-square coefficient, carrying the sign
    /// of that representative. Terms without lineage are kept as they are.
    OperatorExpr lumped(const OperatorExpr& expr) const;
    /// Lumped coefficients keyed by name: symbol names for non-vacuum and
    /// untracked vacuum terms, "vac[q2]" style keys for lineage groups and
    /// "const" for a nonzero constant.
    std::map<std::string, double> lineage_view(const OperatorExpr& expr) const;

    /// Makes the mode a fresh source: every term of its q (p) expression is
    /// attributed to lineage (mode, Q) ((mode, P)) from now on.
    void rebase_lineage(std::int64_t mode);

    /// q-p symplectic form of a mode's current pair:
    /// sum over conjugate pairs k of (a_k^q b_k^p - a_k^p b_k^q).
    double symplectic_form(std::int64_t mode) const;

    std::optional<Lineage> lineage(const Symbol& symbol) const;
    const NoiseBindings& bindings() const { return bindings_; }
    const std::map<std::int64_t, ErrorLadder>& ladders() const { return ladders_; }
    const std::vector<std::string>& log() const { return log_; }
    /// Most recently issued fresh id (0 before any).
    std::int64_t last_fresh_id() const { return next_id_ - 1; }

   private:
    struct ModeState {
        OperatorExpr q;
        OperatorExpr p;
        bool live = true;
    };

    ModeState& live_mode(std::int64_t mode, const char* op);
    std::int64_t fresh_id() { return next_id_++; }
    OperatorExpr lineage_loss(const OperatorExpr& x, Quadrature quadrature, double eta);

    std::map<std::int64_t, ModeState> modes_;
    NoiseBindings bindings_;
    std::map<Symbol, Lineage> vac_lineage_;
    std::map<Symbol, Lineage> rebased_;
    std::map<std::int64_t, ErrorLadder> ladders_;
    std::vector<std::string> log_;
    std::int64_t next_mode_ = 1;
    std::int64_t next_id_ = 1;
};

}  // namespace nt

#endif
