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

#ifndef SIMRIS_PROPAGATION_HPP
#define SIMRIS_PROPAGATION_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "simris/errors.hpp"
#include "simris/geometry.hpp"
#include "simris/rng.hpp"

namespace simris {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

inline double wavelength_for(double freq_hz) { return kSpeedOfLight / freq_hz; }
inline double wavenumber_for(double freq_hz) {
    return 2.0 * std::numbers::pi / wavelength_for(freq_hz);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// cos^q element radiation pattern, G(theta) = 2(2q+1) cos^{2q}(theta).
/// The default exponent makes the boresight gain exactly pi (5 dBi), the
/// value matching a half-wavelength-square element aperture.
struct ElementPattern {
    double q = default_q();

    static constexpr double default_q() { return std::numbers::pi / 4.0 - 0.5; }

    double boresight_gain() const { return 2.0 * (2.0 * q + 1.0); }
};

/// Element gain at an elevation off broadside; zero outside (-pi/2, pi/2).
inline double element_gain(const ElementPattern &pattern, double theta) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (theta <= -half_pi || theta >= half_pi)
        return 0.0;
    return pattern.boresight_gain() * std::pow(std::cos(theta), 2.0 * pattern.q);
}

/// Close-in reference distance path loss parameters (dB model):
///   L = -20 log10(4 pi / lambda) - 10 n (1 + b (f - f0)/f0) log10(d) - X_sigma
struct PathLossParams {
    double n = 2.0;         // path loss exponent
    double sigma_db = 0.0;  // shadow fading std in dB
    double b = 0.0;         // frequency dependence coefficient
    double f0_hz = 24.2e9;  // reference frequency

    friend bool operator==(const PathLossParams &, const PathLossParams &) = default;
};

// Built-in profiles: InH Indoor Office and UMi Street Canyon, LOS/NLOS.
inline PathLossParams inh_nlos_profile() { return PathLossParams{3.19, 8.29, 0.06, 24.2e9}; }
inline PathLossParams inh_los_profile() { return PathLossParams{1.73, 3.02, 0.0, 24.2e9}; }
inline PathLossParams umi_nlos_profile() { return PathLossParams{3.19, 8.2, 0.0, 24.2e9}; }
inline PathLossParams umi_los_profile() { return PathLossParams{1.98, 3.1, 0.0, 24.2e9}; }

inline PathLossParams path_loss_profile(Environment env, bool los) {
    if (env == Environment::Indoor)
        return los ? inh_los_profile() : inh_nlos_profile();
    return los ? umi_los_profile() : umi_nlos_profile();
}

inline PathLossParams path_loss_profile_by_name(const std::string &name) {
    if (name == "InH-LOS")
        return inh_los_profile();
    if (name == "InH-NLOS")
        return inh_nlos_profile();
    if (name == "UMi-LOS")
        return umi_los_profile();
    if (name == "UMi-NLOS")
        return umi_nlos_profile();
    throw ConfigError("profile", "unknown path loss profile '" + name + "'");
}

inline double effective_exponent(const PathLossParams &p, double f_hz) {
    return p.n * (1.0 + p.b * (f_hz - p.f0_hz) / p.f0_hz);
}

inline double path_loss_db(const PathLossParams &p, double f_hz, double d_m, double shadow_db) {
    if (d_m < 1.0)
        throw BelowReferenceDistance("path loss model needs d >= 1 m, got d = " +
                                     std::to_string(d_m));
    const double lambda = wavelength_for(f_hz);
    return -20.0 * std::log10(4.0 * std::numbers::pi / lambda) -
           10.0 * effective_exponent(p, f_hz) * std::log10(d_m) - shadow_db;
}

/// Linear-scale attenuation 10^(L_dB/10).
inline double path_loss(const PathLossParams &p, double f_hz, double d_m, double shadow_db) {
    return db_to_linear(path_loss_db(p, f_hz, d_m, shadow_db));
}

/// Distance-dependent LOS probability. Indoor follows the three-branch InH
/// office model, outdoor the UMi street-canyon model
///   p = min(20/d, 1)(1 - e^{-d/39}) + e^{-d/39}.
inline double los_probability(Environment env, double d_m) {
    if (env == Environment::Indoor) {
        if (d_m <= 1.2)
            return 1.0;
        if (d_m <= 6.5)
            return std::exp(-(d_m - 1.2) / 4.7);
        return 0.32 * std::exp(-(d_m - 6.5) / 32.6);
    }
    const double decay = std::exp(-d_m / 39.0);
    return std::min(20.0 / d_m, 1.0) * (1.0 - decay) + decay;
}

/// Bernoulli LOS draw. A panel mounted at or above the transmitter height is
/// assumed to always see it (indoor Tx-RIS link only).
inline bool los_indicator(Environment env, double d_m, bool ris_above_tx, RngStream &rng) {
    if (env == Environment::Indoor && ris_above_tx)
        return true;
    return rng.bernoulli(los_probability(env, d_m));
}

/// Square reflecting panel with sqrt(N) x sqrt(N) elements on a uniform grid.
/// The reference element sits at `position`; flattened element n maps to grid
/// indices (x, y) = (n mod sqrt(N), n div sqrt(N)).
struct RisPanel {
    std::size_t n_elements = 256;
    double spacing = 0.0; // meters; callers default this to lambda/2
    ElementPattern pattern{};
    MountingScenario scenario = MountingScenario::SideWall;
    Point3 position{};

    std::size_t side() const {
        const auto s = static_cast<std::size_t>(std::llround(std::sqrt(double(n_elements))));
        if (s * s != n_elements)
            throw NotSquare("element count " + std::to_string(n_elements) +
                            " is not a perfect square");
        return s;
    }
};

/// Far-field usability check, d > N lambda / 2.
inline bool far_field_ok(const RisPanel &panel, double d_m, double lambda) {
    return d_m > double(panel.n_elements) * lambda / 2.0;
}

/// Array response vector for a plane wave at (azimuth phi, elevation theta):
///   entry(x, y) = exp(j k d (x sin(theta) + y sin(phi) cos(theta)))
/// flattened with x fastest. The first entry is always 1.
inline std::vector<std::complex<double>> array_response(const RisPanel &panel,
                                                        const AnglePair &angles,
                                                        double wavenumber) {
    const std::size_t side = panel.side();
    const double kd = wavenumber * panel.spacing;
    const double px = kd * std::sin(angles.elevation);
    const double py = kd * std::sin(angles.azimuth) * std::cos(angles.elevation);

    std::vector<std::complex<double>> vx(side), vy(side);
    for (std::size_t i = 0; i < side; ++i) {
        vx[i] = std::polar(1.0, px * double(i));
        vy[i] = std::polar(1.0, py * double(i));
    }

    std::vector<std::complex<double>> out(panel.n_elements);
    std::size_t n = 0;
    for (std::size_t y = 0; y < side; ++y)
        for (std::size_t x = 0; x < side; ++x, ++n)
            out[n] = vx[x] * vy[y];
    return out;
}

/// Radar-range path gains for one interacting object: the Tx-IO-RIS path and
/// the RIS-Rx LOS path. The received power via element n is their product.
struct RadarPathGains {
    double ris_path = 0.0; // G lambda^2 sigma_rcs / ((4 pi)^3 a^2 b^2)
    double los_path = 0.0; // G lambda^2 / (4 pi c)^2
};

inline RadarPathGains radar_path_gains(double a_m, double b_mn, double c_n, double sigma_rcs,
                                       double element_gain_linear, double lambda) {
    if (a_m <= 0.0 || b_mn <= 0.0 || c_n <= 0.0)
        throw DegenerateGeometry("radar path gains need strictly positive distances");
    if (sigma_rcs < 0.0)
        throw std::invalid_argument("radar cross section cannot be negative");
    constexpr double four_pi = 4.0 * std::numbers::pi;
    RadarPathGains g;
    g.los_path = element_gain_linear * lambda * lambda / (four_pi * c_n * four_pi * c_n);
    g.ris_path = element_gain_linear * lambda * lambda * sigma_rcs /
                 (four_pi * four_pi * four_pi * a_m * a_m * b_mn * b_mn);
    return g;
}

} // namespace simris

#endif // SIMRIS_PROPAGATION_HPP
