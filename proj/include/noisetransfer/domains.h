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

#ifndef NOISETRANSFER_DOMAINS_H
#define NOISETRANSFER_DOMAINS_H

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noisetransfer/states.h"

namespace nt {

/// Rule assigning every real quadrature value to exactly one domain.
///
/// Lattice domain n spans [offset + (n - 1/2) D, offset + (n + 1/2) D).
/// SignSplit uses the indices 1 for (-inf, 0) and 2 for [0, inf).
/// Explicit domains are numbered 0..k for k sorted boundaries; an empty
/// boundary list is the single-domain partition.
/// Boundary points belong to the right-hand domain.
class DomainPartition {
   public:
    enum class Kind { Lattice, SignSplit, Explicit };

    static DomainPartition lattice(double period, double offset = 0.0);
    static DomainPartition sign_split();
    static DomainPartition explicit_boundaries(std::vector<double> boundaries);
    static DomainPartition single();

    /// Parses "sign", "single", "lattice:PERIOD[:OFFSET]" or "explicit:b0,b1,...".
    static DomainPartition parse(const std::string& text);

    Kind kind() const { return kind_; }
    double period() const { return period_; }
    double offset() const { return offset_; }
    const std::vector<double>& boundaries() const { return boundaries_; }

    std::int64_t index(double x) const;
    /// Closed-open interval of domain n; unbounded ends are +-infinity.
    std::pair<double, double> bounds(std::int64_t n) const;
    /// Indices of all domains that intersect [lo, hi], in increasing order.
    std::vector<std::int64_t> indices_overlapping(double lo, double hi) const;
    /// Finite boundaries lying inside [lo, hi].
    std::vector<double> boundaries_within(double lo, double hi) const;
    /// Half-width of the clipping band around each boundary (D / 4).
    double clip_band() const;
    /// Same partition with every coordinate multiplied by `factor` > 0.
    DomainPartition scaled(double factor) const;

    std::string describe() const;

   private:
    Kind kind_ = Kind::Explicit;
    double period_ = 0.0;
    double offset_ = 0.0;
    std::vector<double> boundaries_;
};

/// Default partition per state and quadrature ("auto"): GKP lattice sqrt(2 pi),
/// cat sign split in q and lattice pi / alpha in p, single domain otherwise.
DomainPartition default_partition(const StateModel& state, Quadrature quadrature);

std::int64_t domain_index(const DomainPartition& partition, double x);

struct DomainRecord {
    std::int64_t n = 0;
    double mean = 0.0;
    double prob = 0.0;
};

struct DomainStats {
    std::vector<DomainRecord> domains;
    /// <x^2> - sum_n mean_n^2 P_n.
    double variance = 0.0;
    /// <x^2> over the full support, including dropped domains.
    double second_moment = 0.0;
    /// Probability mass within clip_band() of a domain boundary.
    double clipped_fraction = 0.0;
    /// Integrated mass before renormalization.
    double mass = 0.0;
};

/// Domains whose probability falls below this are dropped.
inline constexpr double kMinDomainProbability = 1e-12;
/// Relative accuracy requested from the per-domain integration.
inline constexpr double kDomainRelTol = 1e-10;

DomainStats domain_stats(const StateModel& state, Quadrature quadrature, const DomainPartition& partition);
/// Grid variant (trapezoid, linear interpolation at boundaries).
DomainStats domain_stats(const DensityGrid& grid, const DomainPartition& partition);

using StateFamily = std::function<StateModel(double)>;

struct SweepPoint {
    double param = 0.0;
    double v_q = 0.0;
    double v_p = 0.0;
    /// Larger of the two quadratures' clipped fractions.
    double clipped_fraction = 0.0;
};

/// Domain variances of both quadratures (default partitions) over a parameter
/// grid, parallelized over points with OpenMP.
std::vector<SweepPoint> sweep_variance(const StateFamily& family, std::span<const double> params);
/// Serial reference for sweep_variance.
std::vector<SweepPoint> sweep_variance_serial(const StateFamily& family, std::span<const double> params);

std::vector<double> linspace(double from, double to, std::size_t count);

struct RatioResult {
    double ratio = 0.0;
    double domain_width = 0.0;
    double v_p = 0.0;
    /// Set when alpha < 1, where the peak decomposition degrades.
    bool advisory = false;
};

/// Momentum domain width over sqrt(V_p) for the cat state.
RatioResult peak_separation_ratio(double alpha);

}  // namespace nt

#endif
