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

#ifndef SIMRIS_RIS_HPP
#define SIMRIS_RIS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "simris/errors.hpp"
#include "simris/rng.hpp"

namespace simris {

enum class PhaseMode { Ideal, Quantized, Noisy, QuantizedNoisy };

/// Per-element reflection response: magnitude alpha_n in (0, 1] and phase
/// phi_n in [0, 2pi). The response matrix is diag(alpha_n e^{j phi_n}).
struct RisPhaseConfig {
    std::vector<double> magnitude;
    std::vector<double> phase;

    static RisPhaseConfig unit(std::size_t n) {
        RisPhaseConfig cfg;
        cfg.magnitude.assign(n, 1.0);
        cfg.phase.assign(n, 0.0);
        return cfg;
    }
};

inline double wrap_two_pi(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0)
        phi += two_pi;
    return phi;
}

/// Phases that rotate every reflected term onto the direct path's phase,
/// phi_n = arg(h_siso) - arg(g_n) - arg(h_n). With these the cascade
/// amplitude reaches sum |g_n||h_n| + |h_siso|, the achievable maximum. When
/// there is no direct path the common reference phase is zero.
inline RisPhaseConfig optimal_phases(std::span<const std::complex<double>> h,
                                     std::span<const std::complex<double>> g,
                                     std::complex<double> h_siso) {
    if (h.size() != g.size())
        throw DimensionMismatch("h and g must have equal length");
    const double ref = h_siso == std::complex<double>{} ? 0.0 : std::arg(h_siso);
    RisPhaseConfig cfg = RisPhaseConfig::unit(h.size());
    for (std::size_t n = 0; n < h.size(); ++n)
        cfg.phase[n] = wrap_two_pi(ref - std::arg(g[n]) - std::arg(h[n]));
    return cfg;
}

/// Snap every phase to the nearest of the 2^q uniformly spaced levels
/// {2 pi m / 2^q}. Exact ties round to the lower level so results stay
/// deterministic. Per-element error magnitude is at most pi / 2^q.
inline RisPhaseConfig quantize_phases(RisPhaseConfig cfg, int q_bits) {
    if (q_bits < 1)
        throw std::invalid_argument("quantizer needs at least one control bit");
    const std::uint64_t levels = std::uint64_t(1) << q_bits;
    const double step = 2.0 * std::numbers::pi / double(levels);
    for (auto &phi : cfg.phase) {
        const double pos = wrap_two_pi(phi) / step;
        auto idx = std::uint64_t(pos); // floor
        const double frac = pos - double(idx);
        if (frac > 0.5)
            ++idx;
        phi = double(idx % levels) * step;
    }
    return cfg;
}

/// Add i.i.d. zero-mean von Mises phase estimation errors of concentration
/// kappa to every element.
inline RisPhaseConfig perturb_phases(RisPhaseConfig cfg, double kappa, RngStream &rng) {
    if (kappa < 0.0)
        throw std::invalid_argument("concentration must be nonnegative");
    for (auto &phi : cfg.phase)
        phi = wrap_two_pi(phi + rng.von_mises(kappa));
    return cfg;
}

/// Cascade composition g^T diag(alpha e^{j phi}) h + h_siso.
inline std::complex<double> compose(std::span<const std::complex<double>> h,
                                    std::span<const std::complex<double>> g,
                                    const RisPhaseConfig &cfg, std::complex<double> h_siso) {
    if (h.size() != g.size() || h.size() != cfg.phase.size() ||
        cfg.phase.size() != cfg.magnitude.size())
        throw DimensionMismatch("channel vectors and phase config sizes disagree");
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t n = 0; n < h.size(); ++n)
        acc += g[n] * std::polar(cfg.magnitude[n], cfg.phase[n]) * h[n];
    return acc + h_siso;
}

/// Phase-control configuration of a run: ideal alignment, optionally
/// perturbed by estimation error, optionally quantized (errors are applied
/// before the quantizer in the combined mode).
struct PhaseControl {
    PhaseMode mode = PhaseMode::Ideal;
    int q_bits = 1;
    double kappa = 0.0;
};

inline RisPhaseConfig realize_phases(std::span<const std::complex<double>> h,
                                     std::span<const std::complex<double>> g,
                                     std::complex<double> h_siso, const PhaseControl &ctrl,
                                     RngStream &rng) {
    RisPhaseConfig cfg = optimal_phases(h, g, h_siso);
    if (ctrl.mode == PhaseMode::Noisy || ctrl.mode == PhaseMode::QuantizedNoisy)
        cfg = perturb_phases(std::move(cfg), ctrl.kappa, rng);
    if (ctrl.mode == PhaseMode::Quantized || ctrl.mode == PhaseMode::QuantizedNoisy)
        cfg = quantize_phases(std::move(cfg), ctrl.q_bits);
    return cfg;
}

} // namespace simris

#endif // SIMRIS_RIS_HPP
