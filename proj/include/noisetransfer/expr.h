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

#ifndef NOISETRANSFER_EXPR_H
#define NOISETRANSFER_EXPR_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "noisetransfer/states.h"

namespace nt {

enum class SymbolKind { SignalQ, SignalP, FlucQ, FlucP, VacQ, VacP, MeasNoise, ErrShift };

/// A symbolic operator. Signal and fluctuation symbols are indexed by mode id;
/// vacuum, detector-noise and error symbols by a fresh id unique per engine.
struct Symbol {
    SymbolKind kind = SymbolKind::SignalQ;
    std::int64_t id = 0;

    static Symbol signal(Quadrature quadrature, std::int64_t mode);
    static Symbol fluc(Quadrature quadrature, std::int64_t mode);
    static Symbol vac(Quadrature quadrature, std::int64_t id);
    static Symbol meas_noise(std::int64_t id);
    static Symbol err_shift(std::int64_t id);

    /// 0 signal, 1 fluctuation, 2 vacuum, 3 detector noise, 4 error.
    int category() const;
    /// Quadrature carried by the symbol; detector noise and errors report P.
    Quadrature quadrature() const;
    bool is_signal() const { return category() == 0; }
    bool is_noise() const { return category() == 1 || category() == 2 || category() == 3; }

    /// Short printable name such as "qc1", "dp2", "qv7", "pm3", "e4".
    std::string name() const;
    /// Inverse of name(); throws ConfigError on malformed input.
    static Symbol parse(const std::string& name);

    /// Canonical order: category, then id, then Q before P.
    friend bool operator<(const Symbol& a, const Symbol& b);
    friend bool operator==(const Symbol& a, const Symbol& b) { return a.kind == b.kind && a.id == b.id; }
};

/// Coefficients below this magnitude are removed after every operation.
inline constexpr double kCoefficientFloor = 1e-13;

/// Real linear combination of symbols plus a constant.
class OperatorExpr {
   public:
    OperatorExpr() = default;
    explicit OperatorExpr(double constant) : constant_(constant) {}
    static OperatorExpr of(const Symbol& symbol, double coefficient = 1.0);

    const std::map<Symbol, double>& terms() const { return terms_; }
    double constant() const { return constant_; }
    double coefficient(const Symbol& symbol) const;
    bool empty() const { return terms_.empty() && constant_ == 0.0; }

    void add(const Symbol& symbol, double coefficient);
    void add_constant(double value) { constant_ += value; }

    OperatorExpr& operator+=(const OperatorExpr& other);
    OperatorExpr& operator-=(const OperatorExpr& other);
    OperatorExpr& operator*=(double factor);
    friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
    friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
    friend OperatorExpr operator*(double k, OperatorExpr a) { return a *= k; }
    friend OperatorExpr operator-(OperatorExpr a) { return a *= -1.0; }

    /// Terms whose symbol satisfies the predicate (constant dropped).
    template <class Pred>
    OperatorExpr filter(Pred pred) const {
        OperatorExpr out;
        for (const auto& [s, c] : terms_) {
            if (pred(s)) out.terms_.emplace(s, c);
        }
        return out;
    }
    OperatorExpr signal_part() const;
    OperatorExpr noise_part() const;
    OperatorExpr error_part() const;

    /// Largest coefficient difference, constants included.
    double max_abs_diff(const OperatorExpr& other) const;

    /// Canonical text form, e.g. "qc1 - pc2 + 0.5*dq3 + 1.25".
    std::string to_string(int precision = 12) const;

   private:
    std::map<Symbol, double> terms_;
    double constant_ = 0.0;
};

/// Variances of noise symbols. Vacuum and detector-noise symbols default to 1;
/// fluctuation symbols must be bound explicitly.
class NoiseBindings {
   public:
    void bind(const Symbol& symbol, double variance);
    /// Throws UnboundSymbol for an unbound fluctuation symbol and returns 0 for
    /// signal and error symbols.
    double variance(const Symbol& symbol) const;
    bool contains(const Symbol& symbol) const { return values_.count(symbol) != 0; }
    const std::map<Symbol, double>& explicit_bindings() const { return values_; }

   private:
    std::map<Symbol, double> values_;
};

/// Sum of coeff^2 * variance over the noise symbols of `expr`.
double variance_of(const OperatorExpr& expr, const NoiseBindings& bindings);

}  // namespace nt

#endif
