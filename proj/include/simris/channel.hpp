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

#ifndef SIMRIS_CHANNEL_HPP
#define SIMRIS_CHANNEL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "simris/errors.hpp"
#include "simris/geometry.hpp"
#include "simris/propagation.hpp"
#include "simris/rng.hpp"

namespace simris {

using cplx = std::complex<double>;

/// One retained sub-ray: departure geometry at the cluster origin terminal,
/// resulting position, range to the panel reference element and complex gain.
struct Scatterer {
    int cluster = 0;
    int subray = 0;
    AnglePair departure{};
    Point3 position{};
    double dist_to_panel = 0.0; // b_{c,s}
    cplx gain{};                // beta_{c,s}
};

struct Cluster {
    AnglePair mean{};
    double range = 0.0; // a_c before per-sub-ray clipping
    std::vector<Scatterer> subrays;
};

/// Cluster/sub-ray geometry of one link realization. gamma normalizes the
/// clustered sum so gamma^2 * (number of retained sub-rays) = 1.
struct ClusterSet {
    std::vector<Cluster> clusters;
    double gamma = 1.0;

    std::size_t total_subrays() const {
        std::size_t n = 0;
        for (const auto &c : clusters)
            n += c.subrays.size();
        return n;
    }
};

/// Which link of the cascade a substream belongs to.
enum class LinkTag : std::uint64_t { TxRis = 1, RisRx = 2, TxRx = 3, RisPhase = 4 };

namespace draw {
// Draw-site tags inside one link substream.
inline constexpr std::uint64_t kLosIndicator = 1;
inline constexpr std::uint64_t kLosPhase = 2;
inline constexpr std::uint64_t kShadow = 3;
inline constexpr std::uint64_t kClusterSet = 4;
inline constexpr std::uint64_t kClusterCount = 5;
inline constexpr std::uint64_t kCluster = 6;
inline constexpr std::uint64_t kSubray = 7;
} // namespace draw

/// Poisson cluster count clamped to at least one cluster.
inline std::uint64_t sample_cluster_count(double lambda_p, RngStream &rng) {
    return std::max<std::uint64_t>(1, rng.poisson(lambda_p));
}

/// Sub-rays per cluster, integer uniform on {1, ..., 30}.
inline std::uint64_t sample_subray_count(RngStream &rng) { return rng.uniform_int(1, 30); }

/// LOS/NLOS attenuation profile pair for one environment.
struct LinkProfiles {
    PathLossParams nlos{};
    PathLossParams los{};
};

/// Resolved simulation scene: panel, terminals, environment and frequency
/// dependent constants. Built once per run (see make_channel_model).
struct ChannelModel {
    RisPanel panel{};
    Point3 tx{};
    Point3 rx{};
    Environment env = Environment::Indoor;
    RoomBounds bounds{};
    double freq_hz = 28e9;
    double wavelength = wavelength_for(28e9);
    double wavenumber = wavenumber_for(28e9);
    double lambda_p = 1.8;
    LinkProfiles profiles{path_loss_profile(Environment::Indoor, false),
                          path_loss_profile(Environment::Indoor, true)};
    bool include_direct = true;
    double angular_spread_deg = 5.0; // Laplacian angular spread of sub-rays

    double mean_azimuth_halfwidth(bool panel_side) const {
        // The azimuth interval of cluster means is halved on the panel side of
        // a link so no scatterer lands behind the reflecting surface.
        return panel_side ? std::numbers::pi / 4.0 : std::numbers::pi / 2.0;
    }
};

/// One Monte Carlo draw of the cascaded channel.
struct ChannelRealization {
    std::vector<cplx> h;     // Tx-RIS vector, length N
    std::vector<cplx> g;     // RIS-Rx vector, length N
    std::vector<cplx> h_los; // LOS part of h (zero vector when blocked)
    std::vector<cplx> g_los; // LOS part of g
    cplx h_siso{};           // direct Tx-Rx channel
    bool los_tx_ris = false;
    bool los_ris_rx = false;
    bool los_tx_rx = false;
    double shadow_tx_ris = 0.0; // standard-normal shadow draws, scaled by the
    double shadow_ris_rx = 0.0; // profile sigma where they enter the path loss
    double shadow_tx_rx = 0.0;
    ClusterSet tx_ris_clusters;
    ClusterSet ris_rx_clusters; // empty for indoor runs (pure LOS g)
};

namespace detail {

inline double clamp_azimuth(double a) {
    return std::clamp(a, -std::numbers::pi, std::numbers::pi);
}
inline double clamp_elevation(double e) {
    return std::clamp(e, -std::numbers::pi / 2.0, std::numbers::pi / 2.0);
}

/// Sample the clustered geometry of one link. The origin is the terminal the
/// departure angles refer to: the Tx for the Tx-RIS link, the panel itself for
/// the outdoor RIS-Rx link (panel_frame = true). Sub-rays whose clipped range
/// falls under 1 m are dropped; if everything is dropped the whole set is
/// redrawn, up to a bounded number of attempts.
inline ClusterSet sample_link_clusters(const ChannelModel &m, const Point3 &origin,
                                       double link_distance, bool panel_frame,
                                       const RngStream &link_rng) {
    constexpr int kMaxAttempts = 100;
    const double mean_az_hw = m.mean_azimuth_halfwidth(panel_frame);
    const double mean_el_hw = std::numbers::pi / 4.0;
    const double spread_scale =
        (m.angular_spread_deg * std::numbers::pi / 180.0) / std::numbers::sqrt2;

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const RngStream set_rng = link_rng.fork({draw::kClusterSet, std::uint64_t(attempt)});
        RngStream count_rng = set_rng.fork({draw::kClusterCount});
        const std::uint64_t n_clusters = sample_cluster_count(m.lambda_p, count_rng);

        ClusterSet set;
        set.clusters.reserve(n_clusters);
        for (std::uint64_t c = 0; c < n_clusters; ++c) {
            RngStream crng = set_rng.fork({draw::kCluster, c});
            const auto n_subrays = sample_subray_count(crng);
            Cluster cluster;
            cluster.mean.azimuth = crng.uniform(-mean_az_hw, mean_az_hw);
            cluster.mean.elevation = crng.uniform(-mean_el_hw, mean_el_hw);
            cluster.range = crng.uniform(1.0, link_distance);
            cluster.subrays.reserve(n_subrays);

            for (std::uint64_t s = 0; s < n_subrays; ++s) {
                RngStream srng = set_rng.fork({draw::kSubray, c, s});
                AnglePair ang;
                ang.azimuth = clamp_azimuth(srng.laplacian(cluster.mean.azimuth, spread_scale));
                ang.elevation =
                    clamp_elevation(srng.laplacian(cluster.mean.elevation, spread_scale));
                const cplx beta = srng.complex_gaussian();

                const auto range = panel_frame
                                       ? clip_from_ris(origin, ang, cluster.range, m.bounds,
                                                       m.env, m.panel.scenario)
                                       : clip_cluster_distance(origin, ang, cluster.range,
                                                               m.bounds, m.env);
                if (!range)
                    continue;

                Scatterer sc;
                sc.cluster = int(c);
                sc.subray = int(s);
                sc.departure = ang;
                sc.position = panel_frame
                                  ? point_from_ris_angles(origin, ang, *range, m.panel.scenario)
                                  : scatterer_position(origin, *range, ang);
                sc.dist_to_panel = distance(sc.position, m.panel.position);
                sc.gain = beta;
                cluster.subrays.push_back(sc);
            }
            set.clusters.push_back(std::move(cluster));
        }

        const std::size_t total = set.total_subrays();
        if (total > 0) {
            set.gamma = 1.0 / std::sqrt(double(total));
            return set;
        }
    }
    throw std::runtime_error("cluster sampling discarded every sub-ray in " +
                             std::to_string(kMaxAttempts) + " attempts");
}

/// NLOS part of a panel-side vector channel: the clustered sum of
/// gamma * beta * sqrt(G_e * L) * a(angles at the panel), with the panel-side
/// angles recomputed from the stored scatterer positions.
inline std::vector<cplx> assemble_panel_vector(const ChannelModel &m, const ClusterSet &set,
                                               double nlos_loss_linear) {
    std::vector<cplx> v(m.panel.n_elements, cplx{0.0, 0.0});
    for (const auto &cluster : set.clusters) {
        for (const auto &sc : cluster.subrays) {
            const AnglePair at_panel = ris_arrival_angles(m.panel.position, sc.position,
                                                          sc.dist_to_panel, m.panel.scenario);
            const double amp =
                std::sqrt(element_gain(m.panel.pattern, at_panel.elevation) * nlos_loss_linear);
            const cplx coeff = set.gamma * sc.gain * amp;
            const auto steer = array_response(m.panel, at_panel, m.wavenumber);
            for (std::size_t n = 0; n < v.size(); ++n)
                v[n] += coeff * steer[n];
        }
    }
    return v;
}

/// LOS component of a panel-side vector channel toward `target`.
inline std::vector<cplx> panel_los_component(const ChannelModel &m, const Point3 &target,
                                             double d, double los_loss_linear, double eta) {
    const AnglePair ang = detail::panel_angles_to_point(m.panel.position, target, d,
                                                        m.panel.scenario);
    const double amp = std::sqrt(element_gain(m.panel.pattern, ang.elevation) * los_loss_linear);
    auto v = array_response(m.panel, ang, m.wavenumber);
    const cplx scale = std::polar(amp, eta);
    for (auto &e : v)
        e *= scale;
    return v;
}

} // namespace detail

struct TxRisChannel {
    std::vector<cplx> h;
    std::vector<cplx> h_los;
    ClusterSet clusters;
    bool los = false;
    double shadow_z = 0.0;
};

/// Tx-RIS channel: clustered NLOS sum plus a probability-gated LOS term. The
/// arrival angles at the panel are deterministic functions of the scatterer
/// positions, never drawn. A panel at or above the Tx height (indoors) is
/// treated as always having a LOS path.
inline TxRisChannel generate_tx_ris(const ChannelModel &m, const RngStream &link_rng) {
    TxRisChannel out;
    const double d = distance(m.tx, m.panel.position);
    if (d < 1.0)
        throw BelowReferenceDistance("Tx-RIS distance must be at least 1 m");

    RngStream shadow_rng = link_rng.fork({draw::kShadow});
    out.shadow_z = shadow_rng.normal();

    const bool ris_above_tx = m.env == Environment::Indoor && m.panel.position.z >= m.tx.z;
    RngStream los_rng = link_rng.fork({draw::kLosIndicator});
    out.los = los_indicator(m.env, d, ris_above_tx, los_rng);

    out.clusters = detail::sample_link_clusters(m, m.tx, d, /*panel_frame=*/false, link_rng);

    const double nlos_loss =
        path_loss(m.profiles.nlos, m.freq_hz, d, out.shadow_z * m.profiles.nlos.sigma_db);
    out.h = detail::assemble_panel_vector(m, out.clusters, nlos_loss);

    out.h_los.assign(m.panel.n_elements, cplx{0.0, 0.0});
    if (out.los) {
        const double los_loss =
            path_loss(m.profiles.los, m.freq_hz, d, out.shadow_z * m.profiles.los.sigma_db);
        const double eta =
            link_rng.fork({draw::kLosPhase}).uniform(0.0, 2.0 * std::numbers::pi);
        out.h_los = detail::panel_los_component(m, m.tx, d, los_loss, eta);
        for (std::size_t n = 0; n < out.h.size(); ++n)
            out.h[n] += out.h_los[n];
    }
    return out;
}

struct RisRxChannel {
    std::vector<cplx> g;
    std::vector<cplx> g_los;
    ClusterSet clusters; // empty indoors
    bool los = false;
    double shadow_z = 0.0;
};

/// Indoor RIS-Rx channel: pure LOS, all entries share one magnitude and the
/// steering-vector phase profile toward the Rx.
inline RisRxChannel generate_ris_rx_indoor(const ChannelModel &m, const RngStream &link_rng) {
    RisRxChannel out;
    const double d = distance(m.panel.position, m.rx);
    if (d <= 0.0)
        throw DegenerateGeometry("panel and receiver coincide");
    if (d < 1.0)
        throw BelowReferenceDistance("RIS-Rx distance must be at least 1 m");

    out.shadow_z = link_rng.fork({draw::kShadow}).normal();
    out.los = true;
    const double los_loss =
        path_loss(m.profiles.los, m.freq_hz, d, out.shadow_z * m.profiles.los.sigma_db);
    const double eta = link_rng.fork({draw::kLosPhase}).uniform(0.0, 2.0 * std::numbers::pi);
    out.g = detail::panel_los_component(m, m.rx, d, los_loss, eta);
    out.g_los = out.g;
    return out;
}

/// Outdoor RIS-Rx channel: its own cluster set (independent of the Tx-RIS
/// link), departure angles drawn at the panel with the halved azimuth
/// interval, and a distance-gated LOS term.
inline RisRxChannel generate_ris_rx_outdoor(const ChannelModel &m, const RngStream &link_rng) {
    RisRxChannel out;
    const double d = distance(m.panel.position, m.rx);
    if (d < 1.0)
        throw BelowReferenceDistance("RIS-Rx distance must be at least 1 m");

    out.shadow_z = link_rng.fork({draw::kShadow}).normal();
    RngStream los_rng = link_rng.fork({draw::kLosIndicator});
    out.los = los_indicator(m.env, d, /*ris_above_tx=*/false, los_rng);

    out.clusters =
        detail::sample_link_clusters(m, m.panel.position, d, /*panel_frame=*/true, link_rng);
    const double nlos_loss =
        path_loss(m.profiles.nlos, m.freq_hz, d, out.shadow_z * m.profiles.nlos.sigma_db);
    out.g = detail::assemble_panel_vector(m, out.clusters, nlos_loss);

    out.g_los.assign(m.panel.n_elements, cplx{0.0, 0.0});
    if (out.los) {
        const double los_loss =
            path_loss(m.profiles.los, m.freq_hz, d, out.shadow_z * m.profiles.los.sigma_db);
        const double eta =
            link_rng.fork({draw::kLosPhase}).uniform(0.0, 2.0 * std::numbers::pi);
        out.g_los = detail::panel_los_component(m, m.rx, d, los_loss, eta);
        for (std::size_t n = 0; n < out.g.size(); ++n)
            out.g[n] += out.g_los[n];
    }
    return out;
}

struct SisoChannel {
    cplx value{};
    bool los = false;
    double shadow_z = 0.0;
};

/// Indoor direct channel. Reuses the Tx-RIS cluster set (same gamma, gains and
/// counts); each sub-ray carries the excess phase k(b - b_tilde) between its
/// panel and Rx ranges. The shadow draw is shared with the Tx-RIS link, and so
/// is the LOS state unless the panel sits above the Tx, in which case the
/// direct link draws its own.
inline SisoChannel generate_siso_indoor(const ChannelModel &m, const ClusterSet &shared,
                                        bool tx_ris_los, bool ris_above_tx, double shared_shadow_z,
                                        const RngStream &link_rng) {
    SisoChannel out;
    const double d = distance(m.tx, m.rx);
    if (d < 1.0)
        throw BelowReferenceDistance("Tx-Rx distance must be at least 1 m");

    out.shadow_z = shared_shadow_z;
    const double nlos_loss =
        path_loss(m.profiles.nlos, m.freq_hz, d, out.shadow_z * m.profiles.nlos.sigma_db);
    const double amp = std::sqrt(nlos_loss);

    cplx sum{0.0, 0.0};
    for (const auto &cluster : shared.clusters) {
        for (const auto &sc : cluster.subrays) {
            const double b_tilde = distance(sc.position, m.rx);
            const double eta_e = m.wavenumber * (sc.dist_to_panel - b_tilde);
            sum += sc.gain * std::polar(amp, eta_e);
        }
    }
    out.value = shared.gamma * sum;

    if (ris_above_tx) {
        RngStream los_rng = link_rng.fork({draw::kLosIndicator});
        out.los = los_rng.bernoulli(los_probability(m.env, d));
    } else {
        out.los = tx_ris_los;
    }
    if (out.los) {
        const double los_loss =
            path_loss(m.profiles.los, m.freq_hz, d, out.shadow_z * m.profiles.los.sigma_db);
        const double eta =
            link_rng.fork({draw::kLosPhase}).uniform(0.0, 2.0 * std::numbers::pi);
        out.value += std::polar(std::sqrt(los_loss), eta);
    }
    return out;
}

/// Outdoor direct channel: fresh cluster counts and gains, no angular
/// structure at all, independent shadow and LOS draws.
inline SisoChannel generate_siso_outdoor(const ChannelModel &m, const RngStream &link_rng) {
    SisoChannel out;
    const double d = distance(m.tx, m.rx);
    if (d < 1.0)
        throw BelowReferenceDistance("Tx-Rx distance must be at least 1 m");

    out.shadow_z = link_rng.fork({draw::kShadow}).normal();
    RngStream los_rng = link_rng.fork({draw::kLosIndicator});
    out.los = los_indicator(m.env, d, /*ris_above_tx=*/false, los_rng);

    const RngStream set_rng = link_rng.fork({draw::kClusterSet, 0});
    RngStream count_rng = set_rng.fork({draw::kClusterCount});
    const std::uint64_t n_clusters = sample_cluster_count(m.lambda_p, count_rng);

    const double nlos_loss =
        path_loss(m.profiles.nlos, m.freq_hz, d, out.shadow_z * m.profiles.nlos.sigma_db);
    const double amp = std::sqrt(nlos_loss);

    cplx sum{0.0, 0.0};
    std::size_t total = 0;
    for (std::uint64_t c = 0; c < n_clusters; ++c) {
        RngStream crng = set_rng.fork({draw::kCluster, c});
        const auto n_subrays = sample_subray_count(crng);
        total += n_subrays;
        for (std::uint64_t s = 0; s < n_subrays; ++s) {
            RngStream srng = set_rng.fork({draw::kSubray, c, s});
            sum += srng.complex_gaussian() * amp;
        }
    }
    out.value = sum / std::sqrt(double(total));

    if (out.los) {
        const double los_loss =
            path_loss(m.profiles.los, m.freq_hz, d, out.shadow_z * m.profiles.los.sigma_db);
        const double eta =
            link_rng.fork({draw::kLosPhase}).uniform(0.0, 2.0 * std::numbers::pi);
        out.value += std::polar(std::sqrt(los_loss), eta);
    }
    return out;
}

/// One full channel realization, steps 1 through 8 of the generation recipe
/// (the panel response matrix is applied separately). Deterministic in
/// (model, seed, index) regardless of execution order.
inline ChannelRealization generate_realization(const ChannelModel &m, std::uint64_t seed,
                                               std::uint64_t index) {
    const RngStream root(seed);
    const RngStream realization_rng = root.fork({index});

    ChannelRealization out;
    auto txris =
        generate_tx_ris(m, realization_rng.fork({std::uint64_t(LinkTag::TxRis)}));
    out.h = std::move(txris.h);
    out.h_los = std::move(txris.h_los);
    out.los_tx_ris = txris.los;
    out.shadow_tx_ris = txris.shadow_z;
    out.tx_ris_clusters = std::move(txris.clusters);

    const RngStream risrx_rng = realization_rng.fork({std::uint64_t(LinkTag::RisRx)});
    auto risrx = m.env == Environment::Indoor ? generate_ris_rx_indoor(m, risrx_rng)
                                              : generate_ris_rx_outdoor(m, risrx_rng);
    out.g = std::move(risrx.g);
    out.g_los = std::move(risrx.g_los);
    out.los_ris_rx = risrx.los;
    out.shadow_ris_rx = risrx.shadow_z;
    out.ris_rx_clusters = std::move(risrx.clusters);

    if (m.include_direct) {
        const RngStream siso_rng = realization_rng.fork({std::uint64_t(LinkTag::TxRx)});
        const bool ris_above_tx =
            m.env == Environment::Indoor && m.panel.position.z >= m.tx.z;
        auto siso = m.env == Environment::Indoor
                        ? generate_siso_indoor(m, out.tx_ris_clusters, out.los_tx_ris,
                                               ris_above_tx, out.shadow_tx_ris, siso_rng)
                        : generate_siso_outdoor(m, siso_rng);
        out.h_siso = siso.value;
        out.los_tx_rx = siso.los;
        out.shadow_tx_rx = siso.shadow_z;
    }
    return out;
}

/// Substream for the panel phase-error draws of one realization.
inline RngStream phase_rng_for(std::uint64_t seed, std::uint64_t index) {
    return RngStream(seed).fork({index}).fork({std::uint64_t(LinkTag::RisPhase)});
}

} // namespace simris

#endif // SIMRIS_CHANNEL_HPP
