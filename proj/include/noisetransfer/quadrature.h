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

#ifndef NOISETRANSFER_QUADRATURE_H
#define NOISETRANSFER_QUADRATURE_H

#include <array>
#include <cmath>
#include <cstddef>

namespace nt {

template <std::size_t N>
using Vec = std::array<double, N>;

namespace detail {

template <std::size_t N>
Vec<N> simpson(double h, const Vec<N>& fa, const Vec<N>& fm, const Vec<N>& fb) {
    Vec<N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = h / 6.0 * (fa[i] + 4.0 * fm[i] + fb[i]);
    }
    return out;
}

template <std::size_t N, class F>
Vec<N> adaptive_step(F& f, double a, double b, const Vec<N>& fa, const Vec<N>& fm, const Vec<N>& fb,
                     const Vec<N>& whole, double eps, const Vec<N>& weights, int depth) {
    const double m = 0.5 * (a + b);
    const Vec<N> flm = f(0.5 * (a + m));
    const Vec<N> frm = f(0.5 * (m + b));
    const Vec<N> left = simpson<N>(m - a, fa, flm, fm);
    const Vec<N> right = simpson<N>(b - m, fm, frm, fb);
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        err += weights[i] * std::abs(left[i] + right[i] - whole[i]);
    }
    if (depth <= 0 || err <= 15.0 * eps) {
        Vec<N> out;
        for (std::size_t i = 0; i < N; ++i) {
            double s = left[i] + right[i];
            out[i] = s + (s - whole[i]) / 15.0;
        }
        return out;
    }
    Vec<N> l = adaptive_step<N>(f, a, m, fa, flm, fm, left, 0.5 * eps, weights, depth - 1);
    Vec<N> r = adaptive_step<N>(f, m, b, fm, frm, fb, right, 0.5 * eps, weights, depth - 1);
    for (std::size_t i = 0; i < N; ++i) {
        l[i] += r[i];
    }
    return l;
}

}  // namespace detail

/// Adaptive Simpson quadrature of a vector-valued integrand. Convergence is
/// judged on the weighted sum of component errors against `abs_eps`.
template <std::size_t N, class F>
Vec<N> adaptive_simpson(F f, double a, double b, double abs_eps, const Vec<N>& weights, int max_depth = 40) {
    const double m = 0.5 * (a + b);
    const Vec<N> fa = f(a);
    const Vec<N> fm = f(m);
    const Vec<N> fb = f(b);
    const Vec<N> whole = detail::simpson<N>(b - a, fa, fm, fb);
    return detail::adaptive_step<N>(f, a, b, fa, fm, fb, whole, abs_eps, weights, max_depth);
}

/// Splits [a, b] into panels no wider than `panel` before refining, so that
/// features narrower than the interval are not stepped over.
template <std::size_t N, class F>
Vec<N> adaptive_simpson_panels(F f, double a, double b, double panel, double abs_eps, const Vec<N>& weights) {
    Vec<N> total{};
    if (!(b > a)) return total;
    const auto count = static_cast<std::size_t>(std::ceil((b - a) / panel));
    const std::size_t n = count == 0 ? 1 : count;
    const double h = (b - a) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lo = a + h * static_cast<double>(k);
        double hi = (k + 1 == n) ? b : lo + h;
        Vec<N> part = adaptive_simpson<N>(f, lo, hi, abs_eps / static_cast<double>(n), weights);
        for (std::size_t i = 0; i < N; ++i) {
            total[i] += part[i];
        }
    }
    return total;
}

}  // namespace nt

#endif
