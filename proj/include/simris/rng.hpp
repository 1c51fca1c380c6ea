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

#ifndef SIMRIS_RNG_HPP
#define SIMRIS_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace simris {

/// Keyed, splittable random stream built on the splitmix64 mixer.
///
/// Every draw site forks its own substream from a (seed, key...) path, so the
/// value of any draw depends only on the seed and the key path, never on how
/// many draws happened elsewhere or on which worker executed them. That is
/// what makes Monte Carlo runs bit-reproducible under any worker count.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(mix(seed + kGamma)) {}

    /// Derive an independent substream for the given key path.
    RngStream fork(std::initializer_list<std::uint64_t> key) const {
        std::uint64_t s = state_;
        for (std::uint64_t k : key)
            s = mix(s ^ mix(k + kGamma));
        return RngStream(raw_state{}, s);
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Unbiased integer in [0, n). Rejection on the incomplete top block.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t min = (-n) % n; // 2^64 mod n
        std::uint64_t r = next_u64();
        while (r < min)
            r = next_u64();
        return r % n;
    }

    /// Inclusive integer range.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        return lo + bounded(hi - lo + 1);
    }

    bool bernoulli(double p) { return next_unit() < p; }

    /// Standard normal via Box-Muller (always consumes two uniforms).
    double normal() {
        const double u1 = 1.0 - next_unit(); // (0, 1]
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Circularly symmetric complex Gaussian with unit total variance,
    /// i.e. real and imaginary parts are each N(0, 1/2).
    std::complex<double> complex_gaussian() {
        const double u1 = 1.0 - next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-std::log(u1));
        return std::polar(r, 2.0 * std::numbers::pi * u2);
    }

    /// Laplacian with location mu and scale b (std = b*sqrt(2)).
    double laplacian(double mu, double scale) {
        const double u = next_unit() - 0.5;
        return mu - scale * sign(u) * std::log(1.0 - 2.0 * std::abs(u));
    }

    /// Poisson via Knuth's product method; fine for the small means used here.
    std::uint64_t poisson(double lambda) {
        if (lambda <= 0.0)
            return 0;
        const double threshold = std::exp(-lambda);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_unit();
        } while (p > threshold);
        return k - 1;
    }

    /// Zero-mean von Mises sample on (-pi, pi] with concentration kappa,
    /// using the Best-Fisher rejection scheme. kappa = 0 degenerates to the
    /// circular uniform distribution.
    double von_mises(double kappa) {
        constexpr double pi = std::numbers::pi;
        if (kappa <= 0.0)
            return uniform(-pi, pi);

        const double a = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double b = (a - std::sqrt(2.0 * a)) / (2.0 * kappa);
        const double r = (1.0 + b * b) / (2.0 * b);

        for (;;) {
            const double u1 = next_unit();
            const double z = std::cos(pi * u1);
            const double f = (1.0 + r * z) / (r + z);
            const double c = kappa * (r - f);
            const double u2 = next_unit();
            if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
                const double u3 = next_unit();
                const double angle = std::acos(std::clamp(f, -1.0, 1.0));
                return u3 < 0.5 ? -angle : angle;
            }
        }
    }

  private:
    struct raw_state {};
    RngStream(raw_state, std::uint64_t state) : state_(state) {}

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static double sign(double v) { return v < 0.0 ? -1.0 : 1.0; }

    std::uint64_t state_;
};

} // namespace simris

#endif // SIMRIS_RNG_HPP
