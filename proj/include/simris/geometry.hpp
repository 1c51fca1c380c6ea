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

#ifndef SIMRIS_GEOMETRY_HPP
#define SIMRIS_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <optional>

#include "simris/errors.hpp"

namespace simris {

/// Cartesian coordinates in meters. The floor is the z = 0 plane.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3 &a, const Point3 &b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

/// Wall the reflecting surface is mounted on. SideWall puts the panel in an
/// xz plane facing -y; OppositeWall puts it in a yz plane facing -x.
enum class MountingScenario { SideWall, OppositeWall };

enum class Environment { Indoor, Outdoor };

/// Axis-aligned room box [0,x_max] x [0,y_max] x [0,z_max]. Outdoor runs use
/// only the floor plane; the side walls and ceiling are ignored there.
struct RoomBounds {
    double x_max = 75.0;
    double y_max = 50.0;
    double z_max = 3.5;
};

/// Azimuth/elevation in radians, measured against the relevant broadside.
/// Elevation stays in [-pi/2, pi/2], azimuth in [-pi, pi].
struct AnglePair {
    double azimuth = 0.0;
    double elevation = 0.0;
};

// sgn with sgn(0) = +1; whenever the numerator is zero the angle is zero
// anyway, so the convention never shows.
inline double sign_or_one(double v) { return v < 0.0 ? -1.0 : 1.0; }

inline double distance(const Point3 &p, const Point3 &q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    const double dz = p.z - q.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Position of a scatterer seen from the transmitter at departure angles
/// (azimuth phi, elevation theta) and range a_c:
///   x = x_tx + a_c cos(theta) cos(phi)
///   y = y_tx - a_c cos(theta) sin(phi)
///   z = z_tx + a_c sin(theta)
inline Point3 scatterer_position(const Point3 &tx, double a_c, const AnglePair &angles) {
    const double ct = std::cos(angles.elevation);
    return Point3{tx.x + a_c * ct * std::cos(angles.azimuth),
                  tx.y - a_c * ct * std::sin(angles.azimuth),
                  tx.z + a_c * std::sin(angles.elevation)};
}

namespace detail {

// Azimuth/elevation of point p relative to the panel broadside. The same
// sign-indicator expressions hold for arrival (p = scatterer) and departure
// (p = receiver) directions.
inline AnglePair panel_angles_to_point(const Point3 &ris, const Point3 &p, double dist,
                                       MountingScenario scenario) {
    if (dist <= 0.0)
        throw DegenerateGeometry("panel and target point coincide");

    const double dz = p.z - ris.z;
    double ratio = std::abs(dz) / dist;
    ratio = std::min(ratio, 1.0); // guard asin against rounding when |dz| == dist
    const double elevation = sign_or_one(dz) * std::asin(ratio);

    double azimuth;
    if (scenario == MountingScenario::SideWall) {
        const double num = std::abs(ris.x - p.x);
        const double den = std::abs(ris.y - p.y);
        azimuth = sign_or_one(ris.x - p.x) * std::atan2(num, den);
    } else {
        const double num = std::abs(ris.y - p.y);
        const double den = std::abs(ris.x - p.x);
        azimuth = sign_or_one(p.y - ris.y) * std::atan2(num, den);
    }
    return AnglePair{azimuth, elevation};
}

} // namespace detail

/// Arrival angles at the panel for a scatterer at distance b.
inline AnglePair ris_arrival_angles(const Point3 &ris, const Point3 &scat, double b,
                                    MountingScenario scenario) {
    if (b <= 0.0)
        throw DegenerateGeometry("scatterer coincides with the panel reference element");
    return detail::panel_angles_to_point(ris, scat, b, scenario);
}

/// Departure angles from the panel toward the receiver.
inline AnglePair ris_departure_angles_to_rx(const Point3 &ris, const Point3 &rx,
                                            MountingScenario scenario) {
    const double d = distance(ris, rx);
    if (d <= 0.0)
        throw DegenerateGeometry("panel and receiver coincide");
    return detail::panel_angles_to_point(ris, rx, d, scenario);
}

/// Inverse of the angle formulas: place a point at range dist along (azimuth,
/// elevation) in the panel's local frame, on the broadside (front) side.
inline Point3 point_from_ris_angles(const Point3 &ris, const AnglePair &angles, double dist,
                                    MountingScenario scenario) {
    const double horiz = dist * std::cos(angles.elevation);
    const double dz = dist * std::sin(angles.elevation);
    if (scenario == MountingScenario::SideWall)
        return Point3{ris.x - horiz * std::sin(angles.azimuth),
                      ris.y - horiz * std::cos(angles.azimuth), ris.z + dz};
    return Point3{ris.x - horiz * std::cos(angles.azimuth),
                  ris.y + horiz * std::sin(angles.azimuth), ris.z + dz};
}

inline bool inside_bounds(const Point3 &p, const RoomBounds &bounds, Environment env,
                          double slack = 1e-9) {
    if (p.z < -slack)
        return false;
    if (env == Environment::Outdoor)
        return true;
    return p.x >= -slack && p.x <= bounds.x_max + slack && p.y >= -slack &&
           p.y <= bounds.y_max + slack && p.z <= bounds.z_max + slack;
}

namespace detail {

// Largest travel distance <= a_c along `dir` from `origin` that stays inside
// the environment. Indoor checks the full box, outdoor only the floor.
inline std::optional<double> clip_ray(const Point3 &origin, double dir_x, double dir_y,
                                      double dir_z, double a_c, const RoomBounds &bounds,
                                      Environment env) {
    constexpr double kMinRange = 1.0; // below the lower cluster-distance bound the sub-ray is dropped
    constexpr double kEps = 1e-15;

    double limit = a_c;
    auto cap = [&limit](double boundary, double coord, double dir) {
        if (std::abs(dir) <= kEps)
            return;
        const double t = (boundary - coord) / dir;
        if (t >= 0.0)
            limit = std::min(limit, t);
        else
            limit = std::min(limit, 0.0); // already past the wall
    };

    if (dir_z < -kEps)
        cap(0.0, origin.z, dir_z);
    if (env == Environment::Indoor) {
        if (dir_x > kEps)
            cap(bounds.x_max, origin.x, dir_x);
        if (dir_x < -kEps)
            cap(0.0, origin.x, dir_x);
        if (dir_y > kEps)
            cap(bounds.y_max, origin.y, dir_y);
        if (dir_y < -kEps)
            cap(0.0, origin.y, dir_y);
        if (dir_z > kEps)
            cap(bounds.z_max, origin.z, dir_z);
    }

    if (limit < kMinRange)
        return std::nullopt;
    return limit;
}

} // namespace detail

/// Reduce a cluster range so the scatterer stays inside the environment;
/// scatterers are allowed to sit on a wall. Returns nullopt (discard) when no
/// range of at least 1 m keeps the point inside.
inline std::optional<double> clip_cluster_distance(const Point3 &tx, const AnglePair &angles,
                                                   double a_c, const RoomBounds &bounds,
                                                   Environment env) {
    const double ct = std::cos(angles.elevation);
    return detail::clip_ray(tx, ct * std::cos(angles.azimuth), -ct * std::sin(angles.azimuth),
                            std::sin(angles.elevation), a_c, bounds, env);
}

/// Same clipping for rays leaving the panel in its local frame (used when the
/// panel side of a link carries the clusters).
inline std::optional<double> clip_from_ris(const Point3 &ris, const AnglePair &angles, double a_c,
                                           const RoomBounds &bounds, Environment env,
                                           MountingScenario scenario) {
    const double ct = std::cos(angles.elevation);
    const double st = std::sin(angles.elevation);
    if (scenario == MountingScenario::SideWall)
        return detail::clip_ray(ris, -ct * std::sin(angles.azimuth), -ct * std::cos(angles.azimuth),
                                st, a_c, bounds, env);
    return detail::clip_ray(ris, -ct * std::cos(angles.azimuth), ct * std::sin(angles.azimuth), st,
                            a_c, bounds, env);
}

} // namespace simris

#endif // SIMRIS_GEOMETRY_HPP
