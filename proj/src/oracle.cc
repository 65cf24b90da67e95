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

#include "noisetransfer/oracle.h"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <sstream>

#include "noisetransfer/exceptions.h"

namespace nt {

namespace {

// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Linear convolution of `signal` with `kernel` (full length n + k - 1).
std::vector<double> fft_convolve(const std::vector<double>& signal, const std::vector<double>& kernel) {
    const std::size_t n = signal.size() + kernel.size() - 1;
    const std::size_t nc = n / 2 + 1;
    double* a = fftw_alloc_real(n);
    double* b = fftw_alloc_real(n);
    fftw_complex* fa = fftw_alloc_complex(nc);
    fftw_complex* fb = fftw_alloc_complex(nc);
    fftw_plan pa, pb, inv;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        const int size = static_cast<int>(n);
        pa = fftw_plan_dft_r2c_1d(size, a, fa, FFTW_ESTIMATE);
        pb = fftw_plan_dft_r2c_1d(size, b, fb, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(size, fa, a, FFTW_ESTIMATE);
    }
    std::fill(a, a + n, 0.0);
    std::fill(b, b + n, 0.0);
    std::copy(signal.begin(), signal.end(), a);
    std::copy(kernel.begin(), kernel.end(), b);
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t i = 0; i < nc; ++i) {
        const std::complex<double> x(fa[i][0], fa[i][1]);
        const std::complex<double> y(fb[i][0], fb[i][1]);
        const std::complex<double> z = x * y;
        fa[i][0] = z.real();
        fa[i][1] = z.imag();
    }
    fftw_execute(inv);
    std::vector<double> out(a, a + n);
    for (double& v : out) v /= static_cast<double>(n);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(pa);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(inv);
    }
    fftw_free(a);
    fftw_free(b);
    fftw_free(fa);
    fftw_free(fb);
    return out;
}

void normalize(DensityGrid& g) {
    for (double& v : g.density) v = std::max(v, 0.0);
    const double mass = g.mass();
    if (!(mass > 0.0) || !std::isfinite(mass)) throw NumericError("pushed marginal has no positive mass");
    for (double& v : g.density) v /= mass;
}

}  // namespace

ChannelSpec ChannelSpec::loss(double eta) {
    ChannelSpec s{Kind::Loss, eta};
    s.validate();
    return s;
}

ChannelSpec ChannelSpec::amp(double gain) {
    ChannelSpec s{Kind::Amp, gain};
    s.validate();
    return s;
}

void ChannelSpec::validate() const {
    if (kind == Kind::Loss && !(value > 0.0 && value <= 1.0)) throw DomainError("loss transmission must lie in (0, 1]");
    if (kind == Kind::Amp && !(value >= 1.0 && std::isfinite(value))) throw DomainError("amplifier gain must be >= 1");
}

double ChannelSpec::scale() const { return kind == Kind::Loss ? std::sqrt(value) : value; }

double ChannelSpec::added_variance() const { return kind == Kind::Loss ? 1.0 - value : value * value - 1.0; }

std::string ChannelSpec::describe() const {
    std::ostringstream out;
    out << (kind == Kind::Loss ? "loss(eta=" : "amp(g=") << value << ")";
    return out.str();
}

DensityGrid push_marginal(const DensityGrid& grid, const ChannelSpec& spec) {
    spec.validate();
    if (grid.size() < 2 || !(grid.spacing > 0.0)) throw NumericError("density grid needs two points and positive spacing");
    const double s = spec.scale();
    const double sigma = std::sqrt(spec.added_variance());

    DensityGrid out;
    out.quadrature = grid.quadrature;
    out.spacing = grid.spacing * s;
    out.x_min = grid.x_min * s;
    out.density.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out.density[i] = grid.density[i] / s;
    if (sigma == 0.0) {
        normalize(out);
        return out;
    }
    if (out.spacing > 0.25 * sigma) {
        std::ostringstream msg;
        msg << "grid too coarse for " << spec.describe() << ": scaled spacing " << out.spacing
            << " exceeds sigma/4 = " << 0.25 * sigma;
        throw NumericError(msg.str());
    }

    const auto pad = static_cast<std::size_t>(std::ceil(kOraclePadSigmas * sigma / out.spacing));
    std::vector<double> kernel(2 * pad + 1);
    double ksum = 0.0;
    for (std::size_t j = 0; j < kernel.size(); ++j) {
        const double x = (static_cast<double>(j) - static_cast<double>(pad)) * out.spacing;
        kernel[j] = std::exp(-0.5 * x * x / (sigma * sigma));
        ksum += kernel[j];
    }
    for (double& k : kernel) k /= ksum;

    out.density = fft_convolve(out.density, kernel);
    out.x_min -= static_cast<double>(pad) * out.spacing;
    normalize(out);
    return out;
}

std::size_t oracle_points(double lo, double hi, double spacing) {
    const double n = std::ceil((hi - lo) / spacing) + 1.0;
    if (!(n <= static_cast<double>(kOracleMaxPoints))) {
        std::ostringstream msg;
        msg << "oracle grid would need " << n << " points (limit " << kOracleMaxPoints << ")";
        throw NumericError(msg.str());
    }
    return static_cast<std::size_t>(n);
}

double oracle_spacing(const StateModel& state, Quadrature quadrature, const ChannelSpec& spec) {
    const Wavefunction wf(state);
    double h = wf.feature_scale(quadrature) / 32.0;
    const double sigma = std::sqrt(spec.added_variance());
    if (sigma > 0.0) h = std::min(h, 0.2 * sigma / spec.scale());
    return h;
}

TransferCheck validate_transfer(const StateModel& state, Quadrature quadrature, const ChannelSpec& spec,
                                const std::optional<DomainPartition>& partition) {
    spec.validate();
    const DomainPartition part = partition ? *partition : default_partition(state, quadrature);
    const DomainStats before = domain_stats(state, quadrature, part);

    const Wavefunction wf(state);
    const auto [lo, hi] = wf.support(quadrature);
    const double h = oracle_spacing(state, quadrature, spec);
    const auto n = oracle_points(lo, hi, h);
    const DensityGrid grid = density_grid(state, quadrature, lo, lo + h * static_cast<double>(n - 1), n);
    const DensityGrid pushed = push_marginal(grid, spec);
    const DomainStats after = domain_stats(pushed, part.scaled(spec.scale()));

    TransferCheck c;
    c.formula_v = spec.transfer(before.variance);
    c.oracle_v = after.variance;
    c.rel_err = std::abs(c.oracle_v - c.formula_v) / c.formula_v;
    c.formula_m2 = spec.transfer(before.second_moment);
    c.oracle_m2 = pushed.moment(2) / pushed.mass();
    c.clipped_fraction = after.clipped_fraction;
    c.clipped_regime = c.clipped_fraction >= 0.05;
    return c;
}

}  // namespace nt
