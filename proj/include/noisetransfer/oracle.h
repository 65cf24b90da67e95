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

#ifndef NOISETRANSFER_ORACLE_H
#define NOISETRANSFER_ORACLE_H

#include <optional>
#include <string>

#include "noisetransfer/domains.h"

namespace nt {

/// Single-mode Gaussian channel acting on one quadrature marginal:
/// Loss(eta): Y = sqrt(eta) X + sqrt(1 - eta) Z; Amp(g): Y = g X + sqrt(g^2 - 1) Z.
struct ChannelSpec {
    enum class Kind { Loss, Amp };
    Kind kind = Kind::Loss;
    double value = 1.0;

    static ChannelSpec loss(double eta);
    static ChannelSpec amp(double gain);

    void validate() const;
    /// Abscissa scale factor (sqrt(eta) or g).
    double scale() const;
    /// Variance of the added Gaussian (1 - eta or g^2 - 1).
    double added_variance() const;
    /// Map of a variance through the channel: scale^2 V + added.
    double transfer(double variance) const { return scale() * scale() * variance + added_variance(); }
    std::string describe() const;
};

/// Padding of the convolution on each side, in kernel standard deviations.
inline constexpr double kOraclePadSigmas = 8.0;

/// Marginal after the channel: abscissa scaled, then convolved (FFT) with the
/// added Gaussian and renormalized. Throws NumericError when the scaled grid
/// spacing exceeds a quarter of the kernel standard deviation.
DensityGrid push_marginal(const DensityGrid& grid, const ChannelSpec& spec);

struct TransferCheck {
    double oracle_v = 0.0;
    double formula_v = 0.0;
    double rel_err = 0.0;
    /// Second moment of the pushed grid and its transfer-formula value.
    double oracle_m2 = 0.0;
    double formula_m2 = 0.0;
    /// Clipped fraction of the pushed marginal under the scaled partition.
    double clipped_fraction = 0.0;
    /// Set when clipped_fraction >= 0.05; agreement is then not expected.
    bool clipped_regime = false;
};

/// Grid spacing used by validate_transfer for a given state and channel.
/// Upper bound on oracle grid sizes; channels this close to the identity
/// are rejected with NumericError.
inline constexpr std::size_t kOracleMaxPoints = std::size_t{1} << 22;

/// Points covering [lo, hi] at `spacing`; throws NumericError above kOracleMaxPoints.
std::size_t oracle_points(double lo, double hi, double spacing);

double oracle_spacing(const StateModel& state, Quadrature quadrature, const ChannelSpec& spec);

/// Domain variance of the pushed marginal (partition scaled by the channel)
/// against the transfer formula applied to the unpushed domain variance.
/// The partition defaults to default_partition(state, quadrature).
TransferCheck validate_transfer(const StateModel& state, Quadrature quadrature, const ChannelSpec& spec,
                                const std::optional<DomainPartition>& partition = std::nullopt);

}  // namespace nt

#endif
