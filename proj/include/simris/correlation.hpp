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

#ifndef SIMRIS_CORRELATION_HPP
#define SIMRIS_CORRELATION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "simris/channel.hpp"
#include "simris/errors.hpp"
#include "simris/propagation.hpp"
#include "simris/quadrature.hpp"
#include "simris/rng.hpp"

namespace simris {

/// Hermitian spatial correlation estimate across panel elements, unit
/// diagonal by normalization.
struct CorrelationMatrix {
    std::size_t n = 0;
    std::vector<std::complex<double>> entries; // row-major n x n

    std::complex<double> &at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    const std::complex<double> &at(std::size_t i, std::size_t j) const {
        return entries[i * n + j];
    }
};

/// Distance between two flattened panel elements on the element grid.
inline double element_pair_distance(std::size_t side, double spacing, std::size_t i,
                                    std::size_t j) {
    const double dx = double(i % side) - double(j % side);
    const double dy = double(i / side) - double(j / side);
    return spacing * std::hypot(dx, dy);
}

/// Sample correlation (1/T) sum h_n h_m^*, normalized by the measured
/// diagonal so R_nn is exactly one.
inline CorrelationMatrix empirical_correlation(const std::vector<std::vector<std::complex<double>>> &samples) {
    if (samples.size() < 2)
        throw InsufficientSamples("need at least two channel samples");
    const std::size_t n = samples.front().size();
    for (const auto &s : samples)
        if (s.size() != n)
            throw DimensionMismatch("channel samples have inconsistent length");

    CorrelationMatrix out;
    out.n = n;
    out.entries.assign(n * n, {0.0, 0.0});
    for (const auto &s : samples)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out.at(i, j) += s[i] * std::conj(s[j]);

    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = out.at(i, i).real();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.at(i, j) /= std::sqrt(diag[i] * diag[j]);
    return out;
}

/// Semi-analytic correlation coefficient: the sample mean of unit phasors
/// exp(j k d sin(theta_i)) over elevation samples.
inline std::complex<double> semi_analytic_correlation(std::span<const double> theta_samples,
                                                      double d_nm, double wavenumber) {
    if (theta_samples.empty())
        throw InsufficientSamples("need at least one elevation sample");
    std::complex<double> acc{0.0, 0.0};
    for (double theta : theta_samples)
        acc += std::polar(1.0, wavenumber * d_nm * std::sin(theta));
    return acc / double(theta_samples.size());
}

/// Fitted elevation densities at the panel, parameterized in degrees and
/// truncated to [-delta_theta, delta_theta]. The outdoor fit is a zero-mean
/// Laplacian with 11 degree spread; the indoor fit is a two-piece asymmetric
/// Laplacian with pieces (tau, eps, zeta) = (-2.3, 2.5, 0.7) above zero and
/// (1.7, 3.5, 1.4) below. The printed indoor pieces do not integrate to one,
/// so every use renormalizes numerically over the truncation window.
struct ElevationPdf {
    enum class Kind { OutdoorLaplacian, IndoorAsymmetric };

    Kind kind = Kind::OutdoorLaplacian;
    double delta_theta_deg = 90.0;

    static ElevationPdf outdoor(double delta_theta_deg = 90.0) {
        return ElevationPdf{Kind::OutdoorLaplacian, delta_theta_deg};
    }
    static ElevationPdf indoor(double delta_theta_deg = 90.0) {
        return ElevationPdf{Kind::IndoorAsymmetric, delta_theta_deg};
    }

    // branch formulas without the interval bookkeeping; the indoor pieces
    // jump at zero, so integration must use the branch matching its half
    double branch_above(double theta_deg) const {
        if (kind == Kind::OutdoorLaplacian)
            return (1.0 / 22.0) * std::exp(-std::abs(theta_deg) / 11.0);
        const double xi = theta_deg - (-2.3) < 0.0 ? -1.0 : 1.0;
        return 2.5 / (1.7 / 0.7) * std::exp(-(theta_deg + 2.3) * 2.5 * xi * std::pow(0.7, xi));
    }
    double branch_below(double theta_deg) const {
        if (kind == Kind::OutdoorLaplacian)
            return (1.0 / 22.0) * std::exp(-std::abs(theta_deg) / 11.0);
        const double xi = theta_deg - 1.7 < 0.0 ? -1.0 : 1.0;
        return 3.5 / (2.4 / 1.4) * std::exp(-(theta_deg - 1.7) * 3.5 * xi * std::pow(1.4, xi));
    }

    double density_unnormalized(double theta_deg) const {
        if (theta_deg < -delta_theta_deg || theta_deg > delta_theta_deg)
            return 0.0;
        return theta_deg > 0.0 ? branch_above(theta_deg) : branch_below(theta_deg);
    }

    double normalization() const {
        bool ok = true;
        const double total =
            adaptive_simpson<double>([this](double t) { return branch_below(t); },
                                     -delta_theta_deg, 0.0, 1e-12, 48, ok) +
            adaptive_simpson<double>([this](double t) { return branch_above(t); }, 0.0,
                                     delta_theta_deg, 1e-12, 48, ok);
        if (!ok || total <= 0.0)
            throw QuadratureFailure("elevation pdf normalization did not converge");
        return total;
    }
};

/// Analytic correlation coefficient, the quadrature of
/// exp(j k d sin(theta)) f(theta) over the truncation window.
inline std::complex<double> analytic_correlation(const ElevationPdf &pdf, double d_nm,
                                                 double wavenumber) {
    const double norm = pdf.normalization();
    auto phasor = [&](double theta_deg) {
        return std::polar(1.0, wavenumber * d_nm * std::sin(theta_deg * std::numbers::pi / 180.0));
    };
    bool ok = true;
    const double tol = 1e-9 * norm;
    const std::complex<double> integral =
        adaptive_simpson<std::complex<double>>(
            [&](double t) { return phasor(t) * pdf.branch_below(t); }, -pdf.delta_theta_deg, 0.0,
            tol, 48, ok) +
        adaptive_simpson<std::complex<double>>(
            [&](double t) { return phasor(t) * pdf.branch_above(t); }, 0.0, pdf.delta_theta_deg,
            tol, 48, ok);
    if (!ok)
        throw QuadratureFailure("correlation integral did not reach tolerance");
    return integral / norm;
}

/// Draw elevation samples (radians) from a fitted pdf. The outdoor Laplacian
/// uses its closed-form truncated inverse CDF; the indoor two-piece shape is
/// rejection sampled under a flat envelope.
inline std::vector<double> sample_elevation_pdf(const ElevationPdf &pdf, std::size_t count,
                                                RngStream &rng) {
    std::vector<double> out;
    out.reserve(count);
    constexpr double deg = std::numbers::pi / 180.0;
    if (pdf.kind == ElevationPdf::Kind::OutdoorLaplacian) {
        const double tail = 1.0 - std::exp(-pdf.delta_theta_deg / 11.0);
        while (out.size() < count) {
            const double mag = -11.0 * std::log(1.0 - tail * rng.next_unit());
            const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
            out.push_back(sign * mag * deg);
        }
        return out;
    }
    double peak = 0.0;
    for (double t = -pdf.delta_theta_deg; t <= pdf.delta_theta_deg; t += 0.01)
        peak = std::max(peak, pdf.density_unnormalized(t));
    peak *= 1.0001;
    while (out.size() < count) {
        const double t = rng.uniform(-pdf.delta_theta_deg, pdf.delta_theta_deg);
        if (rng.next_unit() * peak <= pdf.density_unnormalized(t))
            out.push_back(t * deg);
    }
    return out;
}

/// Build an n x n Hermitian correlation matrix from a coefficient function of
/// the element pair distance. The upper triangle takes fn(d) directly, the
/// lower triangle its conjugate.
template <class Fn>
inline CorrelationMatrix correlation_matrix_from_function(std::size_t n_elements, double spacing,
                                                          Fn &&fn) {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(n_elements))));
    if (side * side != n_elements)
        throw NotSquare("element count is not a perfect square");
    CorrelationMatrix out;
    out.n = n_elements;
    out.entries.assign(n_elements * n_elements, {0.0, 0.0});
    for (std::size_t i = 0; i < n_elements; ++i) {
        out.at(i, i) = {1.0, 0.0};
        for (std::size_t j = i + 1; j < n_elements; ++j) {
            const std::complex<double> r = fn(element_pair_distance(side, spacing, i, j));
            out.at(i, j) = r;
            out.at(j, i) = std::conj(r);
        }
    }
    return out;
}

/// Eigenvalues of a Hermitian correlation matrix, sorted descending.
/// Round-off negatives down to -1e-8 are clamped to zero; the sum equals the
/// trace (= n for a unit diagonal).
inline std::vector<double> eigenvalue_spread(const CorrelationMatrix &r) {
    const std::size_t n = r.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(r.at(i, j) - std::conj(r.at(j, i))) > 1e-9)
                throw NotHermitian("correlation matrix is not Hermitian");

    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(Eigen::Index(i), Eigen::Index(j)) = r.at(i, j);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue decomposition failed");

    std::vector<double> eigs(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    for (double &v : eigs)
        if (v < 0.0 && v >= -1e-8)
            v = 0.0;
    std::sort(eigs.begin(), eigs.end(), std::greater<>());
    return eigs;
}

/// Mean cluster arrival elevations at the panel, the elevation samples the
/// semi-analytic estimator consumes. One value per cluster, averaging its
/// retained sub-rays.
inline std::vector<double> cluster_mean_elevations(const ClusterSet &set, const Point3 &ris,
                                                   MountingScenario scenario) {
    std::vector<double> out;
    out.reserve(set.clusters.size());
    for (const auto &cluster : set.clusters) {
        if (cluster.subrays.empty())
            continue;
        double acc = 0.0;
        for (const auto &sc : cluster.subrays)
            acc +=
                ris_arrival_angles(ris, sc.position, sc.dist_to_panel, scenario).elevation;
        out.push_back(acc / double(cluster.subrays.size()));
    }
    return out;
}

} // namespace simris

#endif // SIMRIS_CORRELATION_HPP
