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

#ifndef SIMRIS_METRICS_HPP
#define SIMRIS_METRICS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "simris/channel.hpp"
#include "simris/ris.hpp"
#include "simris/runner.hpp"

namespace simris {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// Transmit and noise power of the link, kept in dBm externally and converted
/// to linear watts for all internal math.
struct LinkBudget {
    double pt_dbm = 30.0;
    double pn_dbm = -100.0;

    double pt_watts() const { return dbm_to_watts(pt_dbm); }
    double pn_watts() const { return dbm_to_watts(pn_dbm); }
};

/// Instantaneous SNR, |composite|^2 Pt / Pn (linear).
inline double snr(std::complex<double> composite, const LinkBudget &budget) {
    return std::norm(composite) * budget.pt_watts() / budget.pn_watts();
}

struct RateResult {
    double axis_value = 0.0;
    double mean_rate = 0.0;    // E[log2(1 + rho)] in bits/s/Hz
    double std_error = 0.0;
    double mean_rate_no_ris = 0.0;
    double std_error_no_ris = 0.0;
    std::size_t realizations = 0;
};

/// Composite cascade amplitudes of one realization under a phase-control
/// mode, with the direct-only baseline from the same draws.
struct CompositePair {
    double with_ris = 0.0; // |g^T Theta h + h_siso|
    double no_ris = 0.0;   // |h_siso|
};

inline CompositePair composite_amplitudes(const ChannelRealization &r, const PhaseControl &ctrl,
                                          RngStream phase_rng) {
    const RisPhaseConfig cfg = realize_phases(r.h, r.g, r.h_siso, ctrl, phase_rng);
    CompositePair out;
    out.with_ris = std::abs(compose(r.h, r.g, cfg, r.h_siso));
    out.no_ris = std::abs(r.h_siso);
    return out;
}

/// Composite amplitudes for `count` seeded realizations, in index order. The
/// per-index substreams make the result independent of the worker count.
inline std::vector<CompositePair> collect_composites(const ChannelModel &m,
                                                     const PhaseControl &ctrl, std::size_t count,
                                                     std::uint64_t seed, int workers = 1) {
    std::vector<CompositePair> out(count);
    parallel_for_indices(count, workers, [&](std::size_t i) {
        const ChannelRealization r = generate_realization(m, seed, i);
        out[i] = composite_amplitudes(r, ctrl, phase_rng_for(seed, i));
    });
    return out;
}

inline double rate_from_amplitude(double amplitude, const LinkBudget &budget) {
    const double rho = amplitude * amplitude * budget.pt_watts() / budget.pn_watts();
    return std::log2(1.0 + rho);
}

namespace detail {

struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
};

inline MeanStderr mean_stderr(const std::vector<double> &xs) {
    MeanStderr out;
    const double n = double(xs.size());
    if (xs.empty())
        return out;
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    out.mean = sum / n;
    if (xs.size() < 2)
        return out;
    double ss = 0.0;
    for (double x : xs)
        ss += (x - out.mean) * (x - out.mean);
    out.std_error = std::sqrt(ss / (n - 1.0) / n);
    return out;
}

} // namespace detail

/// Ergodic achievable rate over amplitudes already collected (used by sweeps
/// so one set of channel draws can serve every power grid point).
inline RateResult rate_from_composites(const std::vector<CompositePair> &amps,
                                       const LinkBudget &budget, double axis_value) {
    std::vector<double> with(amps.size()), without(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        with[i] = rate_from_amplitude(amps[i].with_ris, budget);
        without[i] = rate_from_amplitude(amps[i].no_ris, budget);
    }
    const auto w = detail::mean_stderr(with);
    const auto wo = detail::mean_stderr(without);
    RateResult out;
    out.axis_value = axis_value;
    out.mean_rate = w.mean;
    out.std_error = w.std_error;
    out.mean_rate_no_ris = wo.mean;
    out.std_error_no_ris = wo.std_error;
    out.realizations = amps.size();
    return out;
}

/// Ergodic achievable rate E[log2(1 + rho)] with the configured phase mode,
/// plus the direct-only baseline from the same realizations (common random
/// numbers keep the with/without comparison low-variance).
inline RateResult achievable_rate(const ChannelModel &m, const PhaseControl &ctrl,
                                  const LinkBudget &budget, std::size_t count, std::uint64_t seed,
                                  int workers = 1) {
    const auto amps = collect_composites(m, ctrl, count, seed, workers);
    return rate_from_composites(amps, budget, budget.pt_dbm);
}

enum class SweepAxis { TransmitPower, RxPosition, RisPosition, ElementCount };

/// Transmit-power sweep. Channels do not depend on Pt, so a single set of
/// realizations feeds every grid point.
inline std::vector<RateResult> sweep_power(const ChannelModel &m, const PhaseControl &ctrl,
                                           LinkBudget budget, const std::vector<double> &pt_dbm,
                                           std::size_t count, std::uint64_t seed,
                                           int workers = 1) {
    const auto amps = collect_composites(m, ctrl, count, seed, workers);
    std::vector<RateResult> out;
    out.reserve(pt_dbm.size());
    for (double pt : pt_dbm) {
        budget.pt_dbm = pt;
        out.push_back(rate_from_composites(amps, budget, pt));
    }
    return out;
}

/// Shared body of the scene sweeps: every grid point reruns the Monte Carlo
/// with the same seed, so all points share one set of substream draws.
/// A grid point whose scene is invalid produces a NaN row instead of
/// aborting the sweep.
template <class Mutate>
inline std::vector<RateResult> sweep_scene(const ChannelModel &base, const PhaseControl &ctrl,
                                           const LinkBudget &budget,
                                           const std::vector<double> &grid, Mutate &&mutate,
                                           std::size_t count, std::uint64_t seed, int workers = 1,
                                           std::vector<std::string> *errors = nullptr) {
    std::vector<RateResult> out;
    out.reserve(grid.size());
    for (double value : grid) {
        ChannelModel m = base;
        try {
            mutate(m, value);
            out.push_back(rate_from_composites(collect_composites(m, ctrl, count, seed, workers),
                                               budget, value));
        } catch (const std::exception &e) {
            RateResult bad;
            bad.axis_value = value;
            bad.mean_rate = bad.std_error = bad.mean_rate_no_ris = bad.std_error_no_ris =
                std::numeric_limits<double>::quiet_NaN();
            bad.realizations = 0;
            out.push_back(bad);
            if (errors)
                errors->push_back("grid point " + std::to_string(value) + ": " + e.what());
        }
    }
    return out;
}

inline std::vector<RateResult>
sweep_element_count(const ChannelModel &base, const PhaseControl &ctrl, const LinkBudget &budget,
                    const std::vector<std::size_t> &n_grid, std::size_t count, std::uint64_t seed,
                    int workers = 1, std::vector<std::string> *errors = nullptr) {
    std::vector<double> grid(n_grid.begin(), n_grid.end());
    return sweep_scene(
        base, ctrl, budget, grid,
        [](ChannelModel &m, double value) {
            m.panel.n_elements = std::size_t(value);
            (void)m.panel.side(); // validates squareness
        },
        count, seed, workers, errors);
}

} // namespace simris

#endif // SIMRIS_METRICS_HPP
