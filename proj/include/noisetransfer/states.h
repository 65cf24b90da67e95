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

#ifndef NOISETRANSFER_STATES_H
#define NOISETRANSFER_STATES_H

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace nt {

/// Mode convention: a = (q + i p) / 2, so the vacuum has <q^2> = <p^2> = 1.
/// Momentum amplitudes use the kernel exp(-i q p / 2) / sqrt(4 pi).
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;  // GKP lattice period

enum class Quadrature { Q, P };

Quadrature conjugate(Quadrature quadrature);
char to_char(Quadrature quadrature);

enum class StateKind { Vacuum, Coherent, Squeezed, Cat, Gkp };

/// Parametric single-mode pure state. `rotated` applies a quarter-period
/// phase rotation (q -> p, p -> -q), i.e. the logical Hadamard for GKP.
struct StateModel {
    StateKind kind = StateKind::Vacuum;
    double alpha = 0.0;   // Coherent, Cat: real displacement amplitude
    double delta2 = 1.0;  // Squeezed, Gkp: squeezed q-variance
    int mu = 0;           // Gkp: logical value
    bool rotated = false;

    static StateModel vacuum();
    static StateModel coherent(double alpha);
    static StateModel squeezed(double delta2);
    static StateModel cat(double alpha);
    static StateModel gkp(int mu, double delta2);

    StateModel rotated90() const;
    /// Throws DomainError when a parameter is out of range.
    void validate() const;
    std::string describe() const;
};

/// Normalized position-representation expansion of the unrotated state as a
/// sum of equal-width Gaussians: psi(q) = sum_k w_k (2 pi v)^{-1/4} exp(-(q - s_k)^2 / (4 v)).
struct GaussianComb {
    std::vector<double> centers;
    std::vector<double> weights;  // includes the normalization constant
    double variance = 1.0;
};

/// Envelope weight below which GKP terms are dropped.
inline constexpr double kGkpTermCutoff = 1e-12;

GaussianComb expand(const StateModel& state);

/// Cat normalization (2 + 2 exp(-2 alpha^2))^{-1/2}.
double cat_normalization(double alpha);

/// Cached evaluator for a validated state.
class Wavefunction {
   public:
    explicit Wavefunction(const StateModel& state);

    std::complex<double> amplitude(Quadrature quadrature, double x) const;
    double density(Quadrature quadrature, double x) const;

    /// Interval outside which the density is below 1e-16 of its peak.
    std::pair<double, double> support(Quadrature quadrature) const;
    /// Smallest length scale of structure in the density.
    double feature_scale(Quadrature quadrature) const;

    const StateModel& state() const { return state_; }
    const GaussianComb& comb() const { return comb_; }

   private:
    std::complex<double> raw_q(double q) const;
    std::complex<double> raw_p(double p) const;

    StateModel state_;
    GaussianComb comb_;
    double q_prefactor_;
    double p_prefactor_;
};

std::complex<double> psi_q(const StateModel& state, double q);
std::complex<double> psi_p(const StateModel& state, double p);

/// Uniformly tabulated probability density of one quadrature.
struct DensityGrid {
    Quadrature quadrature = Quadrature::Q;
    double x_min = 0.0;
    double spacing = 1.0;
    std::vector<double> density;

    std::size_t size() const { return density.size(); }
    double x(std::size_t i) const { return x_min + spacing * static_cast<double>(i); }
    double x_max() const { return x(size() - 1); }
    /// Trapezoidal integral of the density.
    double mass() const;
    /// Trapezoidal k-th raw moment.
    double moment(int k) const;
};

DensityGrid density_grid(const StateModel& state, Quadrature quadrature, double x_min, double x_max,
                         std::size_t n_points);
/// Auto-bounds variant covering the state's support.
DensityGrid density_grid(const StateModel& state, Quadrature quadrature, std::size_t n_points);

}  // namespace nt

#endif
