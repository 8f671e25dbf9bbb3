#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "saflow/filament.hpp"
#include "saflow/loop.hpp"

namespace saflow {

/// Smooth periodic bump profile centered at x = pi: exp(-(2 sin((x-pi)/2)/width)^2).
/// Tails at the cut x = 0 are exp(-4/width^2), i.e. negligible for width <~ 0.6.
inline double bump_profile(double x, double width) {
    const double s = 2.0 * std::sin(0.5 * (x - std::numbers::pi_v<double>)) / width;
    return std::exp(-s * s);
}

inline LoopMap make_great_circle(GridSpec grid) {
    LoopMap u(TargetGeometry::sphere2(), grid);
    for (std::size_t j = 0; j < grid.m; ++j) {
        const double x = grid.node(j);
        auto p = u.point(j);
        p[0] = std::cos(x);
        p[1] = std::sin(x);
        p[2] = 0.0;
    }
    return u;
}

inline LoopMap make_latitude(GridSpec grid, double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("latitude: radius must lie in (0, 1)");
    const double z0 = std::sqrt(1.0 - r * r);
    LoopMap u(TargetGeometry::sphere2(), grid);
    for (std::size_t j = 0; j < grid.m; ++j) {
        const double x = grid.node(j);
        auto p = u.point(j);
        p[0] = r * std::cos(x);
        p[1] = r * std::sin(x);
        p[2] = z0;
    }
    return u;
}

/// Latitude circle displaced by amp*sin(mode*x) along the poleward unit normal
/// within the sphere, re-retracted onto the sphere.
inline LoopMap make_perturbed_latitude(GridSpec grid, double r, double amp, int mode) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("perturbed-latitude: radius must lie in (0, 1)");
    if (std::abs(amp) >= 0.5)
        throw std::invalid_argument("perturbed-latitude: |amp| must be < 0.5 to retract");
    if (mode < 0) throw std::invalid_argument("perturbed-latitude: mode must be >= 0");
    const double z0 = std::sqrt(1.0 - r * r);
    LoopMap u(TargetGeometry::sphere2(), grid);
    for (std::size_t j = 0; j < grid.m; ++j) {
        const double x = grid.node(j);
        const double s = amp * std::sin(mode * x);
        // poleward unit tangent at the latitude point: (-z0 cos x, -z0 sin x, r)
        double p[3] = {r * std::cos(x) - s * z0 * std::cos(x),
                       r * std::sin(x) - s * z0 * std::sin(x), z0 + s * r};
        const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        auto q = u.point(j);
        for (int i = 0; i < 3; ++i) q[i] = p[i] / n;
    }
    return u;
}

/// Localized perturbation of a constant loop. Sphere: geodesic displacement by
/// amp*bump from the north pole toward +x. Charts: displacement of the chart
/// point along the first coordinate.
inline LoopMap make_bump_loop(const TargetGeometry& g, GridSpec grid, double amp, double width) {
    if (!(width > 0.05 && width <= std::numbers::pi_v<double>))
        throw std::invalid_argument("bump: width must lie in (0.05, pi]");
    LoopMap u(g, grid);
    switch (g.kind()) {
        case TargetKind::sphere2: {
            if (std::abs(amp) >= std::numbers::pi_v<double>)
                throw std::invalid_argument("bump: |amp| must be < pi on the sphere");
            for (std::size_t j = 0; j < grid.m; ++j) {
                const double phi = amp * bump_profile(grid.node(j), width);
                auto p = u.point(j);
                p[0] = std::sin(phi);
                p[1] = 0.0;
                p[2] = std::cos(phi);
            }
            return u;
        }
        case TargetKind::flat_torus2: {
            for (std::size_t j = 0; j < grid.m; ++j) {
                const double phi = amp * bump_profile(grid.node(j), width);
                auto p = u.point(j);
                p[0] = wrap_to_torus(std::numbers::pi_v<double> + phi);
                p[1] = std::numbers::pi_v<double>;
            }
            return u;
        }
        case TargetKind::poincare_disk: {
            if (std::abs(amp) > 0.9)
                throw std::invalid_argument("bump: |amp| must be <= 0.9 on the disk");
            for (std::size_t j = 0; j < grid.m; ++j) {
                const double phi = amp * bump_profile(grid.node(j), width);
                auto p = u.point(j);
                p[0] = phi;
                p[1] = 0.0;
            }
            return u;
        }
        default:
            throw std::invalid_argument("bump: geometry does not support loops");
    }
}

inline ComplexLoop make_plane_wave(GridSpec grid, double amplitude, long long k) {
    ComplexLoop psi(grid);
    for (std::size_t j = 0; j < grid.m; ++j) {
        const double x = grid.node(j);
        psi.values[j] = amplitude * Complex(std::cos(k * x), std::sin(k * x));
    }
    return psi;
}

inline ComplexLoop make_gauss_packet(GridSpec grid, double amplitude, double width,
                                     long long k0) {
    if (!(width > 0.05 && width <= std::numbers::pi_v<double>))
        throw std::invalid_argument("gauss-packet: width must lie in (0.05, pi]");
    ComplexLoop psi(grid);
    for (std::size_t j = 0; j < grid.m; ++j) {
        const double x = grid.node(j);
        const double a = amplitude * bump_profile(x, width);
        psi.values[j] = a * Complex(std::cos(k0 * x), std::sin(k0 * x));
    }
    return psi;
}

// ---------------------------------------------------------------------------
// Name-based dispatch for the run configuration. Parameter maps are validated
// strictly: a key a family does not take is an error.
// ---------------------------------------------------------------------------

using ParamMap = std::map<std::string, double>;

namespace detail {

inline double take_param(ParamMap& params, const std::string& key, double fallback,
                         bool required = false) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (required) throw std::invalid_argument("initial data: missing parameter '" + key + "'");
        return fallback;
    }
    const double v = it->second;
    params.erase(it);
    return v;
}

inline void reject_leftovers(const ParamMap& params, const std::string& family) {
    if (!params.empty())
        throw std::invalid_argument("initial data: family '" + family +
                                    "' does not take parameter '" + params.begin()->first + "'");
}

}  // namespace detail

inline LoopMap make_initial_loop(const std::string& family, ParamMap params,
                                 const TargetGeometry& g, GridSpec grid) {
    if (family == "great-circle") {
        if (g.kind() != TargetKind::sphere2)
            throw std::invalid_argument("great-circle initial data needs the sphere target");
        detail::reject_leftovers(params, family);
        return make_great_circle(grid);
    }
    if (family == "latitude") {
        if (g.kind() != TargetKind::sphere2)
            throw std::invalid_argument("latitude initial data needs the sphere target");
        const double r = detail::take_param(params, "r", 0.8);
        detail::reject_leftovers(params, family);
        return make_latitude(grid, r);
    }
    if (family == "perturbed-latitude") {
        if (g.kind() != TargetKind::sphere2)
            throw std::invalid_argument("perturbed-latitude initial data needs the sphere target");
        const double r = detail::take_param(params, "r", 0.8);
        const double amp = detail::take_param(params, "amp", 0.05);
        const double mode = detail::take_param(params, "mode", 3.0);
        detail::reject_leftovers(params, family);
        return make_perturbed_latitude(grid, r, amp, static_cast<int>(mode));
    }
    if (family == "bump") {
        const double amp = detail::take_param(params, "amp", 0.1);
        const double width = detail::take_param(params, "width", 0.5);
        detail::reject_leftovers(params, family);
        return make_bump_loop(g, grid, amp, width);
    }
    throw std::invalid_argument("unknown loop initial-data family '" + family + "'");
}

inline ComplexLoop make_initial_complex(const std::string& family, ParamMap params,
                                        GridSpec grid) {
    if (family == "plane-wave") {
        const double a = detail::take_param(params, "amp", 1.0);
        const double k = detail::take_param(params, "k", 1.0);
        detail::reject_leftovers(params, family);
        return make_plane_wave(grid, a, static_cast<long long>(k));
    }
    if (family == "gauss-packet") {
        const double a = detail::take_param(params, "amp", 1.0);
        const double width = detail::take_param(params, "width", 0.5);
        const double k0 = detail::take_param(params, "k0", 1.0);
        detail::reject_leftovers(params, family);
        return make_gauss_packet(grid, a, width, static_cast<long long>(k0));
    }
    throw std::invalid_argument("unknown scalar initial-data family '" + family + "'");
}

inline FilamentCurve make_initial_filament(const std::string& family, ParamMap params,
                                           GridSpec grid) {
    if (family == "circle") {
        detail::reject_leftovers(params, family);
        return FilamentCurve::unit_circle(grid);
    }
    if (family == "helix") {
        const double w = detail::take_param(params, "winding", 2.0);
        const double a = detail::take_param(params, "a", 0.2);
        detail::reject_leftovers(params, family);
        return FilamentCurve::helix(grid, static_cast<int>(w), a);
    }
    if (family == "straight") {
        detail::reject_leftovers(params, family);
        return FilamentCurve::straight(grid, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0});
    }
    throw std::invalid_argument("unknown filament initial-data family '" + family + "'");
}

}  // namespace saflow
