#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "saflow/filament.hpp"
#include "saflow/loop.hpp"

namespace saflow {

inline double wrap_angle(double a) {
    a = std::fmod(a + std::numbers::pi_v<double>, two_pi);
    if (a <= 0.0) a += two_pi;
    return a - std::numbers::pi_v<double>;
}

/// Parallel orthonormal frame {e, Je} along a loop, solved on the cut circle.
/// `holonomy_angle` is the rotation mismatch between the frame transported to
/// x = 2pi and the starting frame, in (-pi, pi]. On the unit sphere it equals
/// the enclosed spherical area mod 2pi.
struct FrameField {
    LoopField e;
    double holonomy_angle = 0.0;
};

namespace detail {

/// Midpoint samples of a loop's chart/ambient coordinates and of a derivative
/// field, by trigonometric interpolation (sphere points get renormalized).
struct TransportSamples {
    std::vector<double> p_mid;   // m * dim
    std::vector<double> ux_mid;  // m * dim
};

inline TransportSamples transport_midpoints(const LoopMap& u, const std::vector<double>& ux) {
    const std::size_t m = u.nodes();
    const std::size_t dim = u.dim();
    TransportSamples s;
    s.p_mid.resize(m * dim);
    s.ux_mid.resize(m * dim);
    const double half = 0.5 * u.grid().dx();
    std::vector<double> comp(m);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t j = 0; j < m; ++j) comp[j] = u.point(j)[c];
        std::vector<double> shifted = spectral_shift(comp, half);
        for (std::size_t j = 0; j < m; ++j) s.p_mid[j * dim + c] = shifted[j];
        for (std::size_t j = 0; j < m; ++j) comp[j] = ux[j * dim + c];
        shifted = spectral_shift(comp, half);
        for (std::size_t j = 0; j < m; ++j) s.ux_mid[j * dim + c] = shifted[j];
    }
    if (u.geometry().kind() == TargetKind::sphere2) {
        for (std::size_t j = 0; j < m; ++j) {
            double* p = s.p_mid.data() + j * dim;
            const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            for (std::size_t i = 0; i < dim; ++i) p[i] /= n;
        }
    }
    return s;
}

/// d e / dx for parallel transport: the normal completion on the sphere,
/// minus the Christoffel correction on conformal charts, zero on the torus.
inline void transport_rate(const TargetGeometry& g, std::span<const double> p,
                           std::span<const double> ux, std::span<const double> e,
                           std::span<double> out) {
    switch (g.kind()) {
        case TargetKind::sphere2: {
            const double c = -(e[0] * ux[0] + e[1] * ux[1] + e[2] * ux[2]);
            for (std::size_t i = 0; i < 3; ++i) out[i] = c * p[i];
            return;
        }
        case TargetKind::flat_torus2:
            out[0] = 0.0;
            out[1] = 0.0;
            return;
        case TargetKind::poincare_disk: {
            out[0] = 0.0;
            out[1] = 0.0;
            conformal_covariant_correction(ux, e, disk_log_gradient(p[0], p[1]), out);
            out[0] = -out[0];
            out[1] = -out[1];
            return;
        }
        default:
            throw Error("parallel transport: unsupported geometry");
    }
}

}  // namespace detail

/// Deterministic unit frame seed at node 0: the first coordinate direction
/// projected onto the tangent space (second direction as fallback), normalized
/// in the metric, then rotated by `gauge_angle` within the tangent plane.
inline std::vector<double> frame_seed(const LoopMap& u, double gauge_angle) {
    const TargetGeometry& g = u.geometry();
    const std::size_t dim = u.dim();
    const auto p0 = u.point(0);
    std::vector<double> e0(dim, 0.0), axis(dim, 0.0);
    axis[0] = 1.0;
    project_tangent_at(g, p0, axis, e0);
    if (norm(e0) < 1e-8) {
        axis[0] = 0.0;
        axis[1] = 1.0;
        project_tangent_at(g, p0, axis, e0);
    }
    const double n = metric_norm_at(g, p0, e0);
    for (auto& v : e0) v /= n;
    if (gauge_angle != 0.0) {
        std::vector<double> je0(dim);
        apply_complex_structure(g, p0, e0, je0);
        const double cg = std::cos(gauge_angle);
        const double sg = std::sin(gauge_angle);
        for (std::size_t i = 0; i < dim; ++i) e0[i] = cg * e0[i] + sg * je0[i];
    }
    return e0;
}

/// Solves nabla_x e = 0 from node 0 with per-interval RK4 (midpoint data by
/// trigonometric interpolation), renormalizing at each node. Non-periodicity
/// of the transport shows up as the holonomy angle.
inline FrameField parallel_frame(const LoopMap& u, double gauge_angle = 0.0) {
    const TargetGeometry& g = u.geometry();
    const std::size_t m = u.nodes();
    const std::size_t dim = u.dim();
    const double h = u.grid().dx();

    const std::vector<double> ux = map_derivative(u);
    const detail::TransportSamples mid = detail::transport_midpoints(u, ux);

    FrameField out{LoopField(g, u.grid()), 0.0};
    std::vector<double> e = frame_seed(u, gauge_angle);
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    const auto node_span = [&](const std::vector<double>& v, std::size_t j) {
        return std::span<const double>(v.data() + j * dim, dim);
    };

    for (std::size_t i = 0; i < dim; ++i) out.e.at(0)[i] = e[i];
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t jn = (j + 1) % m;
        const auto p0 = u.point(j);
        const auto ux0 = node_span(ux, j);
        const auto pm = node_span(mid.p_mid, j);
        const auto uxm = node_span(mid.ux_mid, j);
        const auto p1 = u.point(jn);
        const auto ux1 = node_span(ux, jn);

        detail::transport_rate(g, p0, ux0, e, k1);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = e[i] + 0.5 * h * k1[i];
        detail::transport_rate(g, pm, uxm, tmp, k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = e[i] + 0.5 * h * k2[i];
        detail::transport_rate(g, pm, uxm, tmp, k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = e[i] + h * k3[i];
        detail::transport_rate(g, p1, ux1, tmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            e[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        // clean up: tangency (sphere) and unit metric norm at the arrival point
        if (g.kind() == TargetKind::sphere2) {
            const double c = dot(e, p1) / dot(p1, p1);
            for (std::size_t i = 0; i < 3; ++i) e[i] -= c * p1[i];
        }
        const double n = metric_norm_at(g, p1, e);
        for (auto& v : e) v /= n;

        if (jn != 0) {
            for (std::size_t i = 0; i < dim; ++i) out.e.at(jn)[i] = e[i];
        } else {
            // e now holds the frame transported to x = 2pi; compare with the seed
            const auto e0 = out.e.at(0);
            std::vector<double> je0(dim);
            apply_complex_structure(g, u.point(0), e0, je0);
            out.holonomy_angle = std::atan2(metric_at(g, u.point(0), e, je0),
                                            metric_at(g, u.point(0), e, e0));
        }
    }
    return out;
}

/// Frame coordinates of u_x: q = <u_x, e> + i <u_x, Je>. |q| = |u_x| by
/// orthonormality of the frame.
inline ComplexLoop extract_q(const LoopMap& u, const FrameField& f) {
    const TargetGeometry& g = u.geometry();
    const std::size_t dim = u.dim();
    const LoopField ux = tangent_derivative(u);
    ComplexLoop q(u.grid());
    std::vector<double> je(dim);
    for (std::size_t j = 0; j < u.nodes(); ++j) {
        const auto p = u.point(j);
        const auto e = f.e.at(j);
        apply_complex_structure(g, p, e, je);
        q.values[j] = Complex(metric_at(g, p, ux.at(j), e), metric_at(g, p, ux.at(j), je));
    }
    return q;
}

/// Hasimoto wavefunctions along a trajectory, frame rebuilt per snapshot. Only
/// the modulus |q| is gauge-invariant across time; the per-snapshot holonomy is
/// reported alongside as metadata.
struct HasimotoSeries {
    std::vector<ComplexLoop> q;
    std::vector<double> holonomy;
};

inline HasimotoSeries hasimoto_series(std::span<const LoopMap> snapshots) {
    HasimotoSeries out;
    out.q.reserve(snapshots.size());
    out.holonomy.reserve(snapshots.size());
    for (const LoopMap& u : snapshots) {
        const FrameField f = parallel_frame(u);
        out.q.push_back(extract_q(u, f));
        out.holonomy.push_back(f.holonomy_angle);
    }
    return out;
}

inline constexpr double kHasimotoCurvatureFloor = 1e-8;

/// Classic Hasimoto transform of a filament: Psi = k exp(i int^s tau ds'),
/// cumulative trapezoid phase from node 0. Nodes with |u_ss| below the floor
/// are flagged and set to zero.
struct ClassicHasimoto {
    ComplexLoop psi;
    std::vector<std::uint8_t> degenerate;
};

inline ClassicHasimoto classic_hasimoto(const FilamentCurve& c) {
    const std::size_t m = c.grid.m;
    const FrenetData f = frenet(c);
    ClassicHasimoto out{ComplexLoop(c.grid), std::vector<std::uint8_t>(m, 0)};
    double phase = 0.0;
    double prev_tau = f.torsion[0];
    const double h = c.grid.dx();
    for (std::size_t j = 0; j < m; ++j) {
        if (j > 0) {
            phase += 0.5 * h * (prev_tau + f.torsion[j]);
            prev_tau = f.torsion[j];
        }
        if (f.curvature[j] <= kHasimotoCurvatureFloor) {
            out.degenerate[j] = 1;
            out.psi.values[j] = Complex(0.0, 0.0);
        } else {
            out.psi.values[j] = f.curvature[j] * Complex(std::cos(phase), std::sin(phase));
        }
    }
    return out;
}

}  // namespace saflow
