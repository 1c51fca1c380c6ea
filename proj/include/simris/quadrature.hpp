// SPDX-License-Identifier: Apache-2.0
//
// simris: link-level simulator for RIS-assisted mmWave channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SIMRIS_QUADRATURE_HPP
#define SIMRIS_QUADRATURE_HPP

#include <cmath>
#include <complex>

namespace simris {

namespace detail {

inline double quad_norm(double v) { return std::abs(v); }
inline double quad_norm(const std::complex<double> &v) { return std::abs(v); }

template <class T, class F>
T adaptive_simpson_impl(const F &f, double a, double b, T fa, T fm, T fb, T whole, double tol,
                        int depth, bool &ok) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const T flm = f(lm);
    const T frm = f(rm);
    const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const T delta = left + right - whole;
    if (quad_norm(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0) {
        ok = false;
        return left + right;
    }
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, ok) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, ok);
}

} // namespace detail

/// Adaptive Simpson quadrature with an absolute tolerance. Works for real and
/// complex integrands; `ok` is cleared when the recursion depth ran out before
/// the tolerance was met.
template <class T, class F>
T adaptive_simpson(const F &f, double a, double b, double tol, int max_depth, bool &ok) {
    ok = true;
    if (a == b)
        return T{};
    const double m = 0.5 * (a + b);
    const T fa = f(a);
    const T fm = f(m);
    const T fb = f(b);
    const T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, max_depth, ok);
}

} // namespace simris

#endif // SIMRIS_QUADRATURE_HPP
