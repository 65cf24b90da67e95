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

#include "noisetransfer/domains.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <sstream>

#include "noisetransfer/exceptions.h"
#include "noisetransfer/quadrature.h"

namespace nt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Partitions without a finite domain width use D = 4 (one vacuum standard
// deviation either side of the boundary).
constexpr double kDefaultClipBand = 1.0;

std::vector<double> split_numbers(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = std::stod(item, &used);
        if (used != item.size()) {
            throw DomainError("bad number in partition spec: " + item);
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

DomainPartition DomainPartition::lattice(double period, double offset) {
    if (!(period > 0.0) || !std::isfinite(period) || !std::isfinite(offset)) {
        throw DomainError("lattice period must be finite and positive");
    }
    DomainPartition p;
    p.kind_ = Kind::Lattice;
    p.period_ = period;
    p.offset_ = offset;
    return p;
}

DomainPartition DomainPartition::sign_split() {
    DomainPartition p;
    p.kind_ = Kind::SignSplit;
    p.boundaries_ = {0.0};
    return p;
}

DomainPartition DomainPartition::explicit_boundaries(std::vector<double> boundaries) {
    for (double b : boundaries) {
        if (!std::isfinite(b)) throw DomainError("partition boundaries must be finite");
    }
    if (std::adjacent_find(boundaries.begin(), boundaries.end(), std::greater_equal<>()) != boundaries.end()) {
        throw DomainError("partition boundaries must be strictly increasing");
    }
    DomainPartition p;
    p.kind_ = Kind::Explicit;
    p.boundaries_ = std::move(boundaries);
    return p;
}

DomainPartition DomainPartition::single() { return explicit_boundaries({}); }

DomainPartition DomainPartition::parse(const std::string& text) {
    try {
        if (text == "sign") return sign_split();
        if (text == "single") return single();
        if (text.rfind("lattice:", 0) == 0) {
            auto nums = split_numbers(text.substr(8), ':');
            if (nums.empty() || nums.size() > 2) throw DomainError("lattice spec is lattice:PERIOD[:OFFSET]");
            return lattice(nums[0], nums.size() == 2 ? nums[1] : 0.0);
        }
        if (text.rfind("explicit:", 0) == 0) {
            return explicit_boundaries(split_numbers(text.substr(9), ','));
        }
    } catch (const std::invalid_argument&) {
        throw DomainError("unparseable partition spec: " + text);
    } catch (const std::out_of_range&) {
        throw DomainError("unparseable partition spec: " + text);
    }
    throw DomainError("unknown partition spec: " + text);
}

std::int64_t DomainPartition::index(double x) const {
    switch (kind_) {
        case Kind::Lattice:
            return static_cast<std::int64_t>(std::floor((x - offset_) / period_ + 0.5));
        case Kind::SignSplit:
            return x < 0.0 ? 1 : 2;
        case Kind::Explicit:
            return std::upper_bound(boundaries_.begin(), boundaries_.end(), x) - boundaries_.begin();
    }
    return 0;
}

std::pair<double, double> DomainPartition::bounds(std::int64_t n) const {
    switch (kind_) {
        case Kind::Lattice: {
            double c = offset_ + period_ * static_cast<double>(n);
            return {c - 0.5 * period_, c + 0.5 * period_};
        }
        case Kind::SignSplit:
            return n == 1 ? std::pair{-kInf, 0.0} : std::pair{0.0, kInf};
        case Kind::Explicit: {
            auto k = static_cast<std::int64_t>(boundaries_.size());
            double lo = n == 0 ? -kInf : boundaries_[n - 1];
            double hi = n == k ? kInf : boundaries_[n];
            return {lo, hi};
        }
    }
    return {-kInf, kInf};
}

std::vector<std::int64_t> DomainPartition::indices_overlapping(double lo, double hi) const {
    std::vector<std::int64_t> out;
    if (kind_ == Kind::SignSplit) {
        if (lo < 0.0) out.push_back(1);
        if (hi >= 0.0) out.push_back(2);
        return out;
    }
    for (std::int64_t n = index(lo); n <= index(hi); ++n) {
        out.push_back(n);
    }
    return out;
}

std::vector<double> DomainPartition::boundaries_within(double lo, double hi) const {
    std::vector<double> out;
    if (kind_ == Kind::Lattice) {
        auto first = static_cast<std::int64_t>(std::ceil((lo - offset_) / period_ - 0.5));
        auto last = static_cast<std::int64_t>(std::floor((hi - offset_) / period_ - 0.5));
        for (std::int64_t n = first; n <= last; ++n) {
            out.push_back(offset_ + (static_cast<double>(n) + 0.5) * period_);
        }
        return out;
    }
    for (double b : boundaries_) {
        if (b >= lo && b <= hi) out.push_back(b);
    }
    return out;
}

double DomainPartition::clip_band() const {
    if (kind_ == Kind::Lattice) return 0.25 * period_;
    if (boundaries_.size() >= 2) {
        double gap = kInf;
        for (std::size_t i = 1; i < boundaries_.size(); ++i) {
            gap = std::min(gap, boundaries_[i] - boundaries_[i - 1]);
        }
        return 0.25 * gap;
    }
    return kDefaultClipBand;
}

DomainPartition DomainPartition::scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("partition scale factor must be positive");
    switch (kind_) {
        case Kind::Lattice:
            return lattice(period_ * factor, offset_ * factor);
        case Kind::SignSplit:
            return sign_split();
        case Kind::Explicit: {
            std::vector<double> b = boundaries_;
            for (double& v : b) v *= factor;
            return explicit_boundaries(std::move(b));
        }
    }
    return *this;
}

std::string DomainPartition::describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
        case Kind::Lattice:
            out << "lattice:" << period_ << ":" << offset_;
            break;
        case Kind::SignSplit:
            out << "sign";
            break;
        case Kind::Explicit:
            if (boundaries_.empty()) {
                out << "single";
            } else {
                out << "explicit:";
                for (std::size_t i = 0; i < boundaries_.size(); ++i) {
                    out << (i ? "," : "") << boundaries_[i];
                }
            }
            break;
    }
    return out.str();
}

DomainPartition default_partition(const StateModel& state, Quadrature quadrature) {
    state.validate();
    const bool position = (quadrature == Quadrature::Q) != state.rotated;
    switch (state.kind) {
        case StateKind::Gkp:
            return DomainPartition::lattice(kSqrt2Pi);
        case StateKind::Cat:
            if (position) return DomainPartition::sign_split();
            if (state.alpha == 0.0) return DomainPartition::single();
            return DomainPartition::lattice(kPi / state.alpha);
        default:
            return DomainPartition::single();
    }
}

std::int64_t domain_index(const DomainPartition& partition, double x) { return partition.index(x); }

namespace {

struct RawMoments {
    std::int64_t n = 0;
    double center = 0.0;
    double m0 = 0.0;
    double m1 = 0.0;  // about center
    double m2 = 0.0;  // about center
};

DomainStats assemble(const std::vector<RawMoments>& raw, double clipped_mass) {
    DomainStats stats;
    double total = 0.0;
    for (const auto& r : raw) total += r.m0;
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw NumericError("density has no finite positive mass");
    }
    stats.mass = total;

    double second = 0.0;
    double kept = 0.0;
    for (const auto& r : raw) {
        second += r.m2 + 2.0 * r.center * r.m1 + r.center * r.center * r.m0;
        if (r.m0 / total >= kMinDomainProbability) kept += r.m0;
    }
    stats.second_moment = second / total;

    double variance = 0.0;
    for (const auto& r : raw) {
        if (r.m0 / total < kMinDomainProbability) continue;
        double shift = r.m1 / r.m0;
        double within = std::max(0.0, r.m2 / r.m0 - shift * shift);
        double prob = r.m0 / kept;
        stats.domains.push_back({r.n, r.center + shift, prob});
        variance += prob * within;
    }
    stats.variance = variance;
    stats.clipped_fraction = std::clamp(clipped_mass / total, 0.0, 1.0);
    return stats;
}

}  // namespace

DomainStats domain_stats(const StateModel& state, Quadrature quadrature, const DomainPartition& partition) {
    const Wavefunction wf(state);
    const auto [lo, hi] = wf.support(quadrature);
    const double scale = wf.feature_scale(quadrature);
    const double panel = 0.5 * scale;

    std::vector<RawMoments> raw;
    for (std::int64_t n : partition.indices_overlapping(lo, hi)) {
        auto [a, b] = partition.bounds(n);
        a = std::max(a, lo);
        b = std::min(b, hi);
        if (!(b > a)) continue;
        const double c = 0.5 * (a + b);
        const double ell = std::max(0.5 * (b - a), scale);
        auto f = [&](double x) {
            double d = wf.density(quadrature, x);
            double u = x - c;
            return Vec<3>{d, d * u, d * u * u};
        };
        // Coarse mass sets the absolute target for the adaptive pass.
        auto coarse = adaptive_simpson_panels<3>(f, a, b, panel, 1e300, {1.0, 0.0, 0.0});
        double eps = kDomainRelTol * std::max(coarse[0], 1e-16);
        auto m = adaptive_simpson_panels<3>(f, a, b, panel, eps, {1.0, 1.0 / ell, 1.0 / (ell * ell)});
        raw.push_back({n, c, m[0], m[1], m[2]});
    }

    double clipped = 0.0;
    const double band = partition.clip_band();
    for (double boundary : partition.boundaries_within(lo - band, hi + band)) {
        double a = std::max(boundary - band, lo);
        double b = std::min(boundary + band, hi);
        if (!(b > a)) continue;
        auto f = [&](double x) { return Vec<1>{wf.density(quadrature, x)}; };
        clipped += adaptive_simpson_panels<1>(f, a, b, panel, 1e-13, {1.0})[0];
    }

    DomainStats stats = assemble(raw, clipped);
    if (std::abs(stats.mass - 1.0) > 1e-6) {
        throw NumericError("state density integrates to " + std::to_string(stats.mass));
    }
    return stats;
}

DomainStats domain_stats(const DensityGrid& grid, const DomainPartition& partition) {
    if (grid.size() < 2 || !(grid.spacing > 0.0)) {
        throw NumericError("density grid needs at least two points and positive spacing");
    }
    const double lo = grid.x_min;
    const double hi = grid.x_max();
    const double band = partition.clip_band();

    std::map<std::int64_t, RawMoments> acc;
    double clipped = 0.0;

    auto center_of = [&](std::int64_t n) {
        auto [a, b] = partition.bounds(n);
        return 0.5 * (std::max(a, lo) + std::min(b, hi));
    };
    auto add_piece = [&](double u, double w, double fu, double fw) {
        if (!(w > u)) return;
        const double mid = 0.5 * (u + w);
        const std::int64_t n = partition.index(mid);
        auto it = acc.find(n);
        if (it == acc.end()) {
            it = acc.emplace(n, RawMoments{n, center_of(n), 0.0, 0.0, 0.0}).first;
        }
        RawMoments& r = it->second;
        const double h = w - u;
        const double du = u - r.center;
        const double dw = w - r.center;
        const double piece = 0.5 * h * (fu + fw);
        r.m0 += piece;
        r.m1 += 0.5 * h * (fu * du + fw * dw);
        r.m2 += 0.5 * h * (fu * du * du + fw * dw * dw);

        auto [a, b] = partition.bounds(n);
        double dist = std::min(mid - a, b - mid);
        if (dist < band) clipped += piece;
    };

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double xa = grid.x(i);
        const double xb = grid.x(i + 1);
        const double fa = grid.density[i];
        const double fb = grid.density[i + 1];
        std::vector<double> cuts;
        for (double b : partition.boundaries_within(xa, xb)) {
            for (double c : {b - band, b, b + band}) {
                if (c > xa && c < xb) cuts.push_back(c);
            }
        }
        for (double b : partition.boundaries_within(xa - band, xb + band)) {
            for (double c : {b - band, b + band}) {
                if (c > xa && c < xb) cuts.push_back(c);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        double u = xa;
        double fu = fa;
        for (double c : cuts) {
            double fc = fa + (fb - fa) * (c - xa) / (xb - xa);
            add_piece(u, c, fu, fc);
            u = c;
            fu = fc;
        }
        add_piece(u, xb, fu, fb);
    }

    std::vector<RawMoments> raw;
    raw.reserve(acc.size());
    for (auto& [n, r] : acc) raw.push_back(r);
    return assemble(raw, clipped);
}

std::vector<double> linspace(double from, double to, std::size_t count) {
    std::vector<double> out;
    if (count == 0) return out;
    if (count == 1) return {from};
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return out;
}

namespace {

SweepPoint sweep_point(const StateFamily& family, double param) {
    StateModel s = family(param);
    DomainStats q = domain_stats(s, Quadrature::Q, default_partition(s, Quadrature::Q));
    DomainStats p = domain_stats(s, Quadrature::P, default_partition(s, Quadrature::P));
    return {param, q.variance, p.variance, std::max(q.clipped_fraction, p.clipped_fraction)};
}

}  // namespace

std::vector<SweepPoint> sweep_variance_serial(const StateFamily& family, std::span<const double> params) {
    std::vector<SweepPoint> out;
    out.reserve(params.size());
    for (double x : params) out.push_back(sweep_point(family, x));
    return out;
}

std::vector<SweepPoint> sweep_variance(const StateFamily& family, std::span<const double> params) {
    std::vector<SweepPoint> out(params.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::int64_t>(params.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[i] = sweep_point(family, params[i]);
        } catch (...) {
#pragma omp critical(nt_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

RatioResult peak_separation_ratio(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("peak separation ratio needs alpha > 0");
    RatioResult r;
    r.domain_width = kPi / alpha;
    r.v_p = domain_stats(StateModel::cat(alpha), Quadrature::P, DomainPartition::lattice(r.domain_width)).variance;
    r.ratio = r.domain_width / std::sqrt(r.v_p);
    r.advisory = alpha < 1.0;
    return r;
}

}  // namespace nt
