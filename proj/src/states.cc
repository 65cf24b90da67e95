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

#include "noisetransfer/states.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "noisetransfer/exceptions.h"

namespace nt {

namespace {

// exp(-x^2/2) < 1e-16 * peak beyond this many standard deviations
constexpr double kTailSigmas = 9.0;

}  // namespace

Quadrature conjugate(Quadrature quadrature) {
    return quadrature == Quadrature::Q ? Quadrature::P : Quadrature::Q;
}

char to_char(Quadrature quadrature) { return quadrature == Quadrature::Q ? 'q' : 'p'; }

StateModel StateModel::vacuum() { return {}; }

StateModel StateModel::coherent(double alpha) {
    StateModel s;
    s.kind = StateKind::Coherent;
    s.alpha = alpha;
    return s;
}

StateModel StateModel::squeezed(double delta2) {
    StateModel s;
    s.kind = StateKind::Squeezed;
    s.delta2 = delta2;
    return s;
}

StateModel StateModel::cat(double alpha) {
    StateModel s;
    s.kind = StateKind::Cat;
    s.alpha = alpha;
    return s;
}

StateModel StateModel::gkp(int mu, double delta2) {
    StateModel s;
    s.kind = StateKind::Gkp;
    s.mu = mu;
    s.delta2 = delta2;
    return s;
}

StateModel StateModel::rotated90() const {
    StateModel s = *this;
    s.rotated = !s.rotated;
    return s;
}

void StateModel::validate() const {
    switch (kind) {
        case StateKind::Vacuum:
            return;
        case StateKind::Coherent:
            if (!std::isfinite(alpha)) {
                throw DomainError("coherent displacement must be finite");
            }
            return;
        case StateKind::Squeezed:
            if (!(delta2 > 0.0 && delta2 <= 1.0)) {
                throw DomainError("squeezed variance must lie in (0, 1]");
            }
            return;
        case StateKind::Cat:
            if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
                throw DomainError("cat amplitude must be a finite alpha >= 0");
            }
            return;
        case StateKind::Gkp:
            if (mu != 0 && mu != 1) {
                throw DomainError("GKP logical value mu must be 0 or 1");
            }
            if (!(delta2 > 0.0 && delta2 < 1.0)) {
                throw DomainError("GKP squeezing delta2 must lie in (0, 1)");
            }
            return;
    }
}

std::string StateModel::describe() const {
    std::ostringstream out;
    switch (kind) {
        case StateKind::Vacuum:
            out << "vacuum";
            break;
        case StateKind::Coherent:
            out << "coherent(alpha=" << alpha << ")";
            break;
        case StateKind::Squeezed:
            out << "squeezed(delta2=" << delta2 << ")";
            break;
        case StateKind::Cat:
            out << "cat(alpha=" << alpha << ")";
            break;
        case StateKind::Gkp:
            out << "gkp(mu=" << mu << ",delta2=" << delta2 << ")";
            break;
    }
    if (rotated) {
        out << "+rot90";
    }
    return out.str();
}

double cat_normalization(double alpha) { return 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * alpha * alpha)); }

GaussianComb expand(const StateModel& state) {
    state.validate();
    GaussianComb comb;
    switch (state.kind) {
        case StateKind::Vacuum:
            comb.centers = {0.0};
            comb.weights = {1.0};
            comb.variance = 1.0;
            break;
        case StateKind::Coherent:
            // D(alpha) with real alpha shifts q by 2 alpha.
            comb.centers = {2.0 * state.alpha};
            comb.weights = {1.0};
            comb.variance = 1.0;
            break;
        case StateKind::Squeezed:
            comb.centers = {0.0};
            comb.weights = {1.0};
            comb.variance = state.delta2;
            break;
        case StateKind::Cat:
            if (state.alpha == 0.0) {
                comb.centers = {0.0};
                comb.weights = {1.0};
            } else {
                comb.centers = {-2.0 * state.alpha, 2.0 * state.alpha};
                comb.weights = {1.0, 1.0};
            }
            comb.variance = 1.0;
            break;
        case StateKind::Gkp: {
            const double d2 = state.delta2;
            const double shrink = std::sqrt(1.0 - d2 * d2);
            // Terms m = 2n + mu, walked outward until the envelope drops below the cutoff.
            std::vector<std::pair<double, double>> terms;
            for (int m = state.mu;; m += 2) {
                double w = std::exp(-0.5 * kPi * d2 * m * m);
                if (w < kGkpTermCutoff) break;
                terms.emplace_back(kSqrt2Pi * m * shrink, w);
            }
            for (int m = state.mu - 2;; m -= 2) {
                double w = std::exp(-0.5 * kPi * d2 * m * m);
                if (w < kGkpTermCutoff) break;
                terms.emplace_back(kSqrt2Pi * m * shrink, w);
            }
            std::sort(terms.begin(), terms.end());
            for (const auto& [c, w] : terms) {
                comb.centers.push_back(c);
                comb.weights.push_back(w);
            }
            comb.variance = d2;
            break;
        }
    }

    // Overlap of two equal-width components is exp(-(s_j - s_k)^2 / (8 v)).
    double norm2 = 0.0;
    const std::size_t n = comb.centers.size();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            double ds = comb.centers[j] - comb.centers[k];
            norm2 += comb.weights[j] * comb.weights[k] * std::exp(-ds * ds / (8.0 * comb.variance));
        }
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& w : comb.weights) {
        w *= scale;
    }
    return comb;
}

Wavefunction::Wavefunction(const StateModel& state)
    : state_(state),
      comb_(expand(state)),
      q_prefactor_(std::pow(2.0 * kPi * comb_.variance, -0.25)),
      p_prefactor_(std::pow(2.0 * kPi * comb_.variance, -0.25) * std::sqrt(comb_.variance)) {}

std::complex<double> Wavefunction::raw_q(double q) const {
    const double inv4v = 1.0 / (4.0 * comb_.variance);
    double sum = 0.0;
    for (std::size_t k = 0; k < comb_.centers.size(); ++k) {
        double d = q - comb_.centers[k];
        sum += comb_.weights[k] * std::exp(-d * d * inv4v);
    }
    return {q_prefactor_ * sum, 0.0};
}

std::complex<double> Wavefunction::raw_p(double p) const {
    // Each displaced Gaussian maps to sqrt(v) exp(-v p^2 / 4) exp(-i s p / 2).
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < comb_.centers.size(); ++k) {
        sum += comb_.weights[k] * std::polar(1.0, -0.5 * comb_.centers[k] * p);
    }
    return p_prefactor_ * std::exp(-0.25 * comb_.variance * p * p) * sum;
}

std::complex<double> Wavefunction::amplitude(Quadrature quadrature, double x) const {
    if (!state_.rotated) {
        return quadrature == Quadrature::Q ? raw_q(x) : raw_p(x);
    }
    // Rotated: new q is old p, new p is -(old q).
    return quadrature == Quadrature::Q ? raw_p(x) : raw_q(-x);
}

double Wavefunction::density(Quadrature quadrature, double x) const { return std::norm(amplitude(quadrature, x)); }

std::pair<double, double> Wavefunction::support(Quadrature quadrature) const {
    bool position = (quadrature == Quadrature::Q) != state_.rotated;
    if (position) {
        auto [lo, hi] = std::minmax_element(comb_.centers.begin(), comb_.centers.end());
        double pad = kTailSigmas * std::sqrt(comb_.variance);
        double a = *lo - pad;
        double b = *hi + pad;
        if (state_.rotated) {
            return {-b, -a};
        }
        return {a, b};
    }
    double half = kTailSigmas / std::sqrt(comb_.variance);
    return {-half, half};
}

double Wavefunction::feature_scale(Quadrature quadrature) const {
    bool position = (quadrature == Quadrature::Q) != state_.rotated;
    if (position) {
        return std::sqrt(comb_.variance);
    }
    double scale = 1.0 / std::sqrt(comb_.variance);
    double span = comb_.centers.back() - comb_.centers.front();
    if (span > 0.0) {
        scale = std::min(scale, 2.0 * kPi / span);
    }
    return scale;
}

std::complex<double> psi_q(const StateModel& state, double q) {
    return Wavefunction(state).amplitude(Quadrature::Q, q);
}

std::complex<double> psi_p(const StateModel& state, double p) {
    return Wavefunction(state).amplitude(Quadrature::P, p);
}

double DensityGrid::mass() const { return moment(0); }

double DensityGrid::moment(int k) const {
    if (density.size() < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        double w = (i == 0 || i + 1 == density.size()) ? 0.5 : 1.0;
        sum += w * density[i] * std::pow(x(i), k);
    }
    return sum * spacing;
}

DensityGrid density_grid(const StateModel& state, Quadrature quadrature, double x_min, double x_max,
                         std::size_t n_points) {
    if (n_points < 2 || !(x_min < x_max)) {
        throw DomainError("density grid needs n_points >= 2 and x_min < x_max");
    }
    Wavefunction wf(state);
    DensityGrid grid;
    grid.quadrature = quadrature;
    grid.x_min = x_min;
    grid.spacing = (x_max - x_min) / static_cast<double>(n_points - 1);
    grid.density.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        grid.density[i] = wf.density(quadrature, grid.x(i));
    }
    return grid;
}

DensityGrid density_grid(const StateModel& state, Quadrature quadrature, std::size_t n_points) {
    auto [lo, hi] = Wavefunction(state).support(quadrature);
    return density_grid(state, quadrature, lo, hi, n_points);
}

}  // namespace nt
