#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "saflow/flow.hpp"
#include "saflow/loop.hpp"

namespace saflow {

inline constexpr double kArclengthTol = 1e-6;
inline constexpr double kFrenetCurvatureFloor = 1e-6;

/// A vortex filament curve in R^3 sampled on a uniform arclength grid over
/// [0, 2pi). `closure` is the displacement over one period (zero for closed
/// filaments); the stored points are the continuous representative, so a
/// winding filament is points = closure * s/(2pi) + periodic part.
struct FilamentCurve {
    GridSpec grid;
    std::vector<double> points;  // m * 3, interleaved
    std::array<double, 3> closure{0.0, 0.0, 0.0};

    FilamentCurve() = default;
    FilamentCurve(GridSpec g, std::vector<double> pts, std::array<double, 3> closure_vec = {})
        : grid(g), points(std::move(pts)), closure(closure_vec) {
        if (points.size() != 3 * grid.m)
            throw std::invalid_argument("FilamentCurve: point count does not match grid");
    }

    std::span<double> node(std::size_t j) { return {points.data() + 3 * j, 3}; }
    std::span<const double> node(std::size_t j) const { return {points.data() + 3 * j, 3}; }

    /// Planar unit circle in the xy-plane (the only arclength circle on [0,2pi)).
    static FilamentCurve unit_circle(GridSpec g) {
        std::vector<double> pts(3 * g.m);
        for (std::size_t j = 0; j < g.m; ++j) {
            const double s = g.node(j);
            pts[3 * j] = std::cos(s);
            pts[3 * j + 1] = std::sin(s);
            pts[3 * j + 2] = 0.0;
        }
        return FilamentCurve(g, std::move(pts));
    }

    /// Arclength helix winding `w` times with transverse radius `a`; the pitch
    /// is fixed by |u_s| = 1, which needs a < 1/w. Curvature a*w^2, torsion
    /// w*sqrt(1 - a^2 w^2).
    static FilamentCurve helix(GridSpec g, int w, double a) {
        if (w < 1) throw std::invalid_argument("helix: winding must be >= 1");
        const double aw = a * static_cast<double>(w);
        if (a <= 0.0 || aw >= 1.0)
            throw std::invalid_argument("helix: need 0 < a < 1/winding for arclength");
        const double b = std::sqrt(1.0 / (static_cast<double>(w) * static_cast<double>(w)) - a * a);
        std::vector<double> pts(3 * g.m);
        for (std::size_t j = 0; j < g.m; ++j) {
            const double s = g.node(j);
            pts[3 * j] = a * std::cos(w * s);
            pts[3 * j + 1] = a * std::sin(w * s);
            pts[3 * j + 2] = b * static_cast<double>(w) * s;
        }
        return FilamentCurve(g, std::move(pts), {0.0, 0.0, two_pi * b * static_cast<double>(w)});
    }

    /// Straight filament through `base` with unit direction `dir`.
    static FilamentCurve straight(GridSpec g, std::array<double, 3> base,
                                  std::array<double, 3> dir) {
        const double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
        std::vector<double> pts(3 * g.m);
        for (std::size_t j = 0; j < g.m; ++j) {
            const double s = g.node(j);
            for (std::size_t c = 0; c < 3; ++c) pts[3 * j + c] = base[c] + s * dir[c] / n;
        }
        return FilamentCurve(g, std::move(pts),
                             {two_pi * dir[0] / n, two_pi * dir[1] / n, two_pi * dir[2] / n});
    }

    double max_arclength_deviation() const;
};

/// Order-th s-derivative of the curve; the linear closure part contributes only
/// to the first derivative.
inline std::vector<double> filament_derivative(const FilamentCurve& c, int order = 1) {
    const std::size_t m = c.grid.m;
    std::vector<double> out(3 * m);
    std::vector<double> periodic(m);
    for (std::size_t comp = 0; comp < 3; ++comp) {
        const double slope = c.closure[comp] / two_pi;
        for (std::size_t j = 0; j < m; ++j)
            periodic[j] = c.points[3 * j + comp] - slope * c.grid.node(j);
        std::vector<double> d = spectral_derivative(periodic, order);
        const double lin = order == 1 ? slope : 0.0;
        for (std::size_t j = 0; j < m; ++j) out[3 * j + comp] = d[j] + lin;
    }
    return out;
}

inline double FilamentCurve::max_arclength_deviation() const {
    const std::vector<double> us = filament_derivative(*this, 1);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.m; ++j) {
        const double n = std::sqrt(us[3 * j] * us[3 * j] + us[3 * j + 1] * us[3 * j + 1] +
                                   us[3 * j + 2] * us[3 * j + 2]);
        worst = std::max(worst, std::abs(n - 1.0));
    }
    return worst;
}

namespace detail {

inline void cross3(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    out[0] = a[1] * b[2] - a[2] * b[1];
    out[1] = a[2] * b[0] - a[0] * b[2];
    out[2] = a[0] * b[1] - a[1] * b[0];
}

}  // namespace detail

/// Filament velocity u_t = alpha u_s x u_ss + beta [u_sss + (3/2) u_ss x (u_s x u_ss)].
inline std::vector<double> filament_velocity(const FilamentCurve& c, double alpha, double beta) {
    const std::size_t m = c.grid.m;
    const std::vector<double> us = filament_derivative(c, 1);
    const std::vector<double> uss = filament_derivative(c, 2);
    const std::vector<double> usss = filament_derivative(c, 3);
    std::vector<double> out(3 * m, 0.0);
    double t1[3], t2[3];
    for (std::size_t j = 0; j < m; ++j) {
        const std::span<const double> s1(us.data() + 3 * j, 3);
        const std::span<const double> s2(uss.data() + 3 * j, 3);
        const std::span<const double> s3(usss.data() + 3 * j, 3);
        detail::cross3(s1, s2, t1);  // u_s x u_ss
        for (std::size_t i = 0; i < 3; ++i) out[3 * j + i] = alpha * t1[i];
        if (beta != 0.0) {
            detail::cross3(s2, t1, t2);  // u_ss x (u_s x u_ss)
            for (std::size_t i = 0; i < 3; ++i)
                out[3 * j + i] += beta * (s3[i] + 1.5 * t2[i]);
        }
    }
    return out;
}

/// Tangent indicatrix: u_s renormalized onto the unit sphere as a LoopMap.
inline LoopMap tangent_field(const FilamentCurve& c) {
    LoopMap u(TargetGeometry::sphere2(), c.grid);
    const std::vector<double> us = filament_derivative(c, 1);
    for (std::size_t j = 0; j < c.grid.m; ++j) {
        const double* v = us.data() + 3 * j;
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        auto p = u.point(j);
        for (std::size_t i = 0; i < 3; ++i) p[i] = v[i] / n;
    }
    return u;
}

/// Inverse of tangent_field: cumulative spectral antiderivative anchored at
/// `base`. The mean mode becomes the closure vector; the curve is closed iff
/// the closure is (numerically) zero.
inline FilamentCurve reconstruct(const LoopMap& u, std::array<double, 3> base) {
    if (u.geometry().kind() != TargetKind::sphere2)
        throw std::invalid_argument("reconstruct: loop must live on the unit sphere");
    const std::size_t m = u.nodes();
    std::vector<double> pts(3 * m);
    std::array<double, 3> closure{};
    std::vector<double> comp(m);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t j = 0; j < m; ++j) comp[j] = u.point(j)[c];
        const double mean = periodic_mean(comp);
        closure[c] = two_pi * mean;
        std::vector<double> anti = spectral_antiderivative(comp);
        const double at0 = anti[0];
        for (std::size_t j = 0; j < m; ++j)
            pts[3 * j + c] = base[c] + (anti[j] - at0) + mean * u.grid().node(j);
    }
    return FilamentCurve(u.grid(), std::move(pts), closure);
}

/// Per-node Frenet data; nodes with curvature below the floor are flagged and
/// get zero normal/binormal/torsion.
struct FrenetData {
    std::vector<double> curvature;  // k = |u_ss|
    std::vector<double> torsion;    // tau = det(u_s, u_ss, u_sss) / k^2
    std::vector<double> tangent;    // m * 3
    std::vector<double> normal;     // m * 3
    std::vector<double> binormal;   // m * 3
    std::vector<std::uint8_t> degenerate;
};

inline FrenetData frenet(const FilamentCurve& c) {
    const std::size_t m = c.grid.m;
    const std::vector<double> us = filament_derivative(c, 1);
    const std::vector<double> uss = filament_derivative(c, 2);
    const std::vector<double> usss = filament_derivative(c, 3);
    FrenetData f;
    f.curvature.resize(m);
    f.torsion.assign(m, 0.0);
    f.tangent = us;
    f.normal.assign(3 * m, 0.0);
    f.binormal.assign(3 * m, 0.0);
    f.degenerate.assign(m, 0);
    double cr[3];
    for (std::size_t j = 0; j < m; ++j) {
        const std::span<const double> s1(us.data() + 3 * j, 3);
        const std::span<const double> s2(uss.data() + 3 * j, 3);
        const std::span<const double> s3(usss.data() + 3 * j, 3);
        const double k = std::sqrt(dot(s2, s2));
        f.curvature[j] = k;
        if (k <= kFrenetCurvatureFloor) {
            f.degenerate[j] = 1;
            continue;
        }
        for (std::size_t i = 0; i < 3; ++i) f.normal[3 * j + i] = s2[i] / k;
        detail::cross3(s1, std::span<const double>(f.normal.data() + 3 * j, 3),
                       std::span<double>(f.binormal.data() + 3 * j, 3));
        detail::cross3(s1, s2, cr);
        f.torsion[j] = (cr[0] * s3[0] + cr[1] * s3[1] + cr[2] * s3[2]) / (k * k);
    }
    return f;
}

struct FilamentEvolveResult {
    FilamentCurve final_state;
    double t = 0.0;
    std::size_t steps = 0;
    double dt = 0.0;
    double max_arclength_drift = 0.0;
    bool blew_up = false;
    std::string blowup_reason;
};

/// One RK4 step of the filament motion (plain ambient RK4; arclength is
/// monitored, not re-imposed, so the tangent-flow cross-check stays coupled).
inline FilamentCurve filament_step(const FilamentCurve& c, double alpha, double beta, double dt) {
    const std::size_t n = c.points.size();
    const auto offset = [&](double w, const std::vector<double>& v) {
        FilamentCurve out = c;
        for (std::size_t i = 0; i < n; ++i) out.points[i] = c.points[i] + w * v[i];
        return out;
    };
    const std::vector<double> k1 = filament_velocity(c, alpha, beta);
    const std::vector<double> k2 = filament_velocity(offset(0.5 * dt, k1), alpha, beta);
    const std::vector<double> k3 = filament_velocity(offset(0.5 * dt, k2), alpha, beta);
    const std::vector<double> k4 = filament_velocity(offset(dt, k3), alpha, beta);
    FilamentCurve out = c;
    for (std::size_t i = 0; i < n; ++i)
        out.points[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

inline FilamentEvolveResult evolve_filament(
    const FilamentCurve& c0, double alpha, double beta, const StepperConfig& cfg,
    const std::function<void(double, std::size_t, const FilamentCurve&)>& on_snapshot = {}) {
    FlowParams p;
    p.alpha = alpha;
    p.beta = beta;
    const double dt_stable = stability_dt(p, c0.grid);
    double dt = cfg.dt > 0.0 ? cfg.dt : dt_stable;
    if (dt > dt_stable * (1.0 + 1e-12) && !cfg.allow_unstable_dt)
        throw std::invalid_argument("evolve_filament: dt exceeds the stability heuristic");

    FilamentEvolveResult res{c0, 0.0, 0, dt, c0.max_arclength_deviation(), false, {}};
    if (on_snapshot) on_snapshot(0.0, 0, res.final_state);
    const std::size_t n_full = static_cast<std::size_t>(std::floor(cfg.t_end / dt + 1e-9));
    const double remainder = cfg.t_end - static_cast<double>(n_full) * dt;
    const std::size_t n_total = n_full + (remainder > dt * 1e-9 ? 1 : 0);

    for (std::size_t k = 0; k < n_total; ++k) {
        const double h = k < n_full ? dt : remainder;
        FilamentCurve next = filament_step(res.final_state, alpha, beta, h);
        for (std::size_t i = 0; i < next.points.size(); ++i) {
            if (!std::isfinite(next.points[i]) || std::abs(next.points[i]) > kBlowupCoordinateLimit) {
                res.blew_up = true;
                res.blowup_reason = "filament blow-up, last valid time t = " + std::to_string(res.t);
                return res;
            }
        }
        res.final_state = std::move(next);
        res.t += h;
        res.steps = k + 1;
        res.max_arclength_drift =
            std::max(res.max_arclength_drift, res.final_state.max_arclength_deviation());
        if (on_snapshot && cfg.snapshot_stride > 0 && res.steps % cfg.snapshot_stride == 0)
            on_snapshot(res.t, res.steps, res.final_state);
    }
    if (on_snapshot && !(cfg.snapshot_stride > 0 && res.steps % cfg.snapshot_stride == 0))
        on_snapshot(res.t, res.steps, res.final_state);
    return res;
}

}  // namespace saflow
