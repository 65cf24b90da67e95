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

#include "noisetransfer/expr.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "noisetransfer/exceptions.h"

namespace nt {

Symbol Symbol::signal(Quadrature quadrature, std::int64_t mode) {
    return {quadrature == Quadrature::Q ? SymbolKind::SignalQ : SymbolKind::SignalP, mode};
}

Symbol Symbol::fluc(Quadrature quadrature, std::int64_t mode) {
    return {quadrature == Quadrature::Q ? SymbolKind::FlucQ : SymbolKind::FlucP, mode};
}

Symbol Symbol::vac(Quadrature quadrature, std::int64_t id) {
    return {quadrature == Quadrature::Q ? SymbolKind::VacQ : SymbolKind::VacP, id};
}

Symbol Symbol::meas_noise(std::int64_t id) { return {SymbolKind::MeasNoise, id}; }

Symbol Symbol::err_shift(std::int64_t id) { return {SymbolKind::ErrShift, id}; }

int Symbol::category() const {
    switch (kind) {
        case SymbolKind::SignalQ:
        case SymbolKind::SignalP:
            return 0;
        case SymbolKind::FlucQ:
        case SymbolKind::FlucP:
            return 1;
        case SymbolKind::VacQ:
        case SymbolKind::VacP:
            return 2;
        case SymbolKind::MeasNoise:
            return 3;
        case SymbolKind::ErrShift:
            return 4;
    }
    return 4;
}

Quadrature Symbol::quadrature() const {
    switch (kind) {
        case SymbolKind::SignalQ:
        case SymbolKind::FlucQ:
        case SymbolKind::VacQ:
            return Quadrature::Q;
        default:
            return Quadrature::P;
    }
}

std::string Symbol::name() const {
    const char q = to_char(quadrature());
    std::string prefix;
    switch (category()) {
        case 0:
            prefix = std::string(1, q) + "c";
            break;
        case 1:
            prefix = std::string("d") + q;
            break;
        case 2:
            prefix = std::string(1, q) + "v";
            break;
        case 3:
            prefix = "pm";
            break;
        default:
            prefix = "e";
            break;
    }
    return prefix + std::to_string(id);
}

Symbol Symbol::parse(const std::string& name) {
    static const std::pair<const char*, SymbolKind> kPrefixes[] = {
        {"qc", SymbolKind::SignalQ}, {"pc", SymbolKind::SignalP}, {"dq", SymbolKind::FlucQ},
        {"dp", SymbolKind::FlucP},   {"qv", SymbolKind::VacQ},    {"pv", SymbolKind::VacP},
        {"pm", SymbolKind::MeasNoise}, {"e", SymbolKind::ErrShift},
    };
    for (const auto& [prefix, kind] : kPrefixes) {
        std::string p(prefix);
        if (name.rfind(p, 0) != 0 || name.size() == p.size()) continue;
        std::string digits = name.substr(p.size());
        if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
        return {kind, std::stoll(digits)};
    }
    throw ConfigError("unknown symbol name: " + name);
}

bool operator<(const Symbol& a, const Symbol& b) {
    auto key = [](const Symbol& s) {
        return std::make_tuple(s.category(), s.id, s.quadrature() == Quadrature::Q ? 0 : 1);
    };
    return key(a) < key(b);
}

OperatorExpr OperatorExpr::of(const Symbol& symbol, double coefficient) {
    OperatorExpr e;
    e.add(symbol, coefficient);
    return e;
}

double OperatorExpr::coefficient(const Symbol& symbol) const {
    auto it = terms_.find(symbol);
    return it == terms_.end() ? 0.0 : it->second;
}

void OperatorExpr::add(const Symbol& symbol, double coefficient) {
    if (!std::isfinite(coefficient)) throw NumericError("non-finite coefficient for " + symbol.name());
    double& c = terms_[symbol];
    c += coefficient;
    if (std::abs(c) < kCoefficientFloor) terms_.erase(symbol);
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& other) {
    for (const auto& [s, c] : other.terms_) add(s, c);
    constant_ += other.constant_;
    return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& other) {
    for (const auto& [s, c] : other.terms_) add(s, -c);
    constant_ -= other.constant_;
    return *this;
}

OperatorExpr& OperatorExpr::operator*=(double factor) {
    if (!std::isfinite(factor)) throw NumericError("non-finite scale factor");
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= factor;
        if (std::abs(it->second) < kCoefficientFloor) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    constant_ *= factor;
    return *this;
}

OperatorExpr OperatorExpr::signal_part() const {
    return filter([](const Symbol& s) { return s.is_signal(); });
}

OperatorExpr OperatorExpr::noise_part() const {
    return filter([](const Symbol& s) { return s.is_noise(); });
}

OperatorExpr OperatorExpr::error_part() const {
    return filter([](const Symbol& s) { return s.kind == SymbolKind::ErrShift; });
}

double OperatorExpr::max_abs_diff(const OperatorExpr& other) const {
    double worst = std::abs(constant_ - other.constant_);
    for (const auto& [s, c] : terms_) worst = std::max(worst, std::abs(c - other.coefficient(s)));
    for (const auto& [s, c] : other.terms_) worst = std::max(worst, std::abs(c - coefficient(s)));
    return worst;
}

std::string OperatorExpr::to_string(int precision) const {
    std::ostringstream out;
    out.precision(precision);
    bool first = true;
    auto emit = [&](double c, const std::string& name) {
        double mag = std::abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (name.empty()) {
            out << mag;
        } else if (mag == 1.0) {
            out << name;
        } else {
            out << mag << "*" << name;
        }
    };
    for (const auto& [s, c] : terms_) emit(c, s.name());
    if (constant_ != 0.0 || first) {
        if (first && constant_ == 0.0) {
            out << "0";
        } else {
            emit(constant_, "");
        }
    }
    return out.str();
}

void NoiseBindings::bind(const Symbol& symbol, double variance) {
    if (!(variance >= 0.0) || !std::isfinite(variance)) {
        throw DomainError("variance binding for " + symbol.name() + " must be finite and >= 0");
    }
    if (!symbol.is_noise()) throw DomainError("only noise symbols carry a variance: " + symbol.name());
    values_[symbol] = variance;
}

double NoiseBindings::variance(const Symbol& symbol) const {
    if (!symbol.is_noise()) return 0.0;
    auto it = values_.find(symbol);
    if (it != values_.end()) return it->second;
    if (symbol.category() == 1) throw UnboundSymbol("no variance bound for " + symbol.name());
    return 1.0;
}

double variance_of(const OperatorExpr& expr, const NoiseBindings& bindings) {
    double v = 0.0;
    for (const auto& [s, c] : expr.terms()) {
        if (s.is_noise()) v += c * c * bindings.variance(s);
    }
    return v;
}

}  // namespace nt
