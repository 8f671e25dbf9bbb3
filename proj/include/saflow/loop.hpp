#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "saflow/fft.hpp"
#include "saflow/geometry.hpp"

namespace saflow {

/// Uniform periodic grid on [0, 2pi): m nodes x_j = j * dx, m a power of two.
struct GridSpec {
    std::size_t m = 0;

    GridSpec() = default;
    explicit GridSpec(std::size_t points) : m(points) {
        if (!is_power_of_two(m) || m < 16)
            throw std::invalid_argument("GridSpec: node count must be a power of two >= 16");
    }

    double dx() const { return two_pi / static_cast<double>(m); }
    double node(std::size_t j) const { return static_cast<double>(j) * dx(); }

    friend bool operator==(const GridSpec& a, const GridSpec& b) { return a.m == b.m; }
};

/// A sampled periodic map u : S^1 -> N. Node coordinates are stored interleaved
/// (node j occupies [j*dim, (j+1)*dim)); periodicity is index arithmetic mod m.
class LoopMap {
public:
    LoopMap(TargetGeometry geom, GridSpec grid)
        : geom_(geom), grid_(grid), data_(grid.m * geom.ambient_dim(), 0.0) {
        if (!geom.supports_flow())
            throw std::invalid_argument("LoopMap: geometry supports curvature algebra only");
    }

    const TargetGeometry& geometry() const { return geom_; }
    const GridSpec& grid() const { return grid_; }
    std::size_t dim() const { return geom_.ambient_dim(); }
    std::size_t nodes() const { return grid_.m; }

    std::span<double> point(std::size_t j) { return {data_.data() + j * dim(), dim()}; }
    std::span<const double> point(std::size_t j) const { return {data_.data() + j * dim(), dim()}; }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    /// Checks every node against its SurfacePoint invariant.
    void validate() const {
        for (std::size_t j = 0; j < nodes(); ++j) {
            const auto p = point(j);
            switch (geom_.kind()) {
                case TargetKind::sphere2:
                    if (std::abs(norm(p) - 1.0) > kSphereUnitTol)
                        throw std::invalid_argument("LoopMap: node " + std::to_string(j) +
                                                    " is off the unit sphere");
                    break;
                case TargetKind::poincare_disk:
                    if (norm(p) > kDiskGuardRadius) throw ChartBlowupError(norm(p));
                    break;
                default:
                    break;
            }
        }
    }

private:
    TargetGeometry geom_;
    GridSpec grid_;
    std::vector<double> data_;
};

/// A section of the pull-back tangent bundle along a LoopMap, same layout.
class LoopField {
public:
    LoopField(TargetGeometry geom, GridSpec grid)
        : geom_(geom), grid_(grid), data_(grid.m * geom.ambient_dim(), 0.0) {}

    const TargetGeometry& geometry() const { return geom_; }
    const GridSpec& grid() const { return grid_; }
    std::size_t dim() const { return geom_.ambient_dim(); }
    std::size_t nodes() const { return grid_.m; }

    std::span<double> at(std::size_t j) { return {data_.data() + j * dim(), dim()}; }
    std::span<const double> at(std::size_t j) const { return {data_.data() + j * dim(), dim()}; }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

private:
    TargetGeometry geom_;
    GridSpec grid_;
    std::vector<double> data_;
};

/// Trapezoid rule on the uniform periodic grid (spectrally accurate there).
inline double loop_integral(std::span<const double> f, const GridSpec& grid) {
    double s = 0.0;
    for (double v : f) s += v;
    return s * grid.dx();
}

namespace detail {

/// Continuous lift of flat-torus samples: removes wrap jumps and splits off the
/// integer winding so each component becomes (winding * x + periodic part).
inline void unwrap_torus_component(std::span<const double> data, std::size_t m, std::size_t dim,
                                   std::size_t comp, std::vector<double>& lifted,
                                   long long& winding) {
    lifted.resize(m);
    lifted[0] = data[comp];
    for (std::size_t j = 1; j < m; ++j) {
        double d = data[j * dim + comp] - data[(j - 1) * dim + comp];
        d -= two_pi * std::round(d / two_pi);
        lifted[j] = lifted[j - 1] + d;
    }
    double closing = data[comp] - data[(m - 1) * dim + comp];
    closing -= two_pi * std::round(closing / two_pi);
    const double total = (lifted[m - 1] + closing) - lifted[0];
    winding = std::llround(total / two_pi);
}

}  // namespace detail

/// Fourier derivative of the point map, one ambient/chart vector per node.
/// Flat-torus loops are lifted to a continuous representative first so winding
/// loops differentiate correctly.
inline std::vector<double> map_derivative(const LoopMap& u) {
    const std::size_t m = u.nodes();
    const std::size_t dim = u.dim();
    std::vector<double> out(m * dim);
    std::vector<Complex> scratch;
    if (u.geometry().kind() == TargetKind::flat_torus2) {
        std::vector<double> lifted;
        for (std::size_t c = 0; c < dim; ++c) {
            long long winding = 0;
            detail::unwrap_torus_component(u.raw(), m, dim, c, lifted, winding);
            const double slope = static_cast<double>(winding);
            for (std::size_t j = 0; j < m; ++j) lifted[j] -= slope * u.grid().node(j);
            std::vector<double> d = spectral_derivative(lifted);
            for (std::size_t j = 0; j < m; ++j) out[j * dim + c] = d[j] + slope;
        }
        return out;
    }
    for (std::size_t c = 0; c < dim; ++c)
        spectral_derivative_strided(u.raw(), out, m, dim, c, scratch);
    return out;
}

/// Fourier derivative of a tangent field, component-wise (tangent components
/// are genuinely periodic, no lifting involved).
inline std::vector<double> field_derivative(const LoopField& x) {
    const std::size_t m = x.nodes();
    const std::size_t dim = x.dim();
    std::vector<double> out(m * dim);
    std::vector<Complex> scratch;
    for (std::size_t c = 0; c < dim; ++c)
        spectral_derivative_strided(x.raw(), out, m, dim, c, scratch);
    return out;
}

/// u_x as a LoopField: derivative of the map projected onto the tangent spaces.
inline LoopField tangent_derivative(const LoopMap& u) {
    LoopField out(u.geometry(), u.grid());
    std::vector<double> d = map_derivative(u);
    const std::size_t dim = u.dim();
    for (std::size_t j = 0; j < u.nodes(); ++j) {
        project_tangent_at(u.geometry(), u.point(j),
                           std::span<const double>(d.data() + j * dim, dim), out.at(j));
    }
    return out;
}

/// Gradient of log lambda for a conformal chart metric lambda^2 (dx^2 + dy^2).
using ConformalLogGradient = std::function<std::array<double, 2>(double, double)>;

inline std::array<double, 2> disk_log_gradient(double x, double y) {
    const double denom = 1.0 - (x * x + y * y);
    return {2.0 * x / denom, 2.0 * y / denom};
}

/// Node-wise Christoffel correction for a conformal chart:
/// (nabla_x X)^a = dX^a/dx + Gamma^a_{bc} u_x^b X^c with
/// Gamma^k_{ij} = d_i phi delta_{jk} + d_j phi delta_{ik} - d_k phi delta_{ij},
/// phi = log lambda.
inline void conformal_covariant_correction(std::span<const double> ux, std::span<const double> x,
                                           const std::array<double, 2>& glog,
                                           std::span<double> inout) {
    const double a = glog[0];
    const double b = glog[1];
    inout[0] += a * ux[0] * x[0] + b * (ux[0] * x[1] + ux[1] * x[0]) - a * ux[1] * x[1];
    inout[1] += -b * ux[0] * x[0] + a * (ux[0] * x[1] + ux[1] * x[0]) + b * ux[1] * x[1];
}

/// Covariant derivative of a chart field given the chart loop samples, the
/// chart velocity u_x and a conformal factor gradient. Shared by the Poincare
/// disk and by chart-consistency checks with other conformal factors.
inline LoopField conformal_covariant_derivative(const LoopMap& u, const LoopField& x,
                                                const std::vector<double>& ux,
                                                const ConformalLogGradient& glog_fn) {
    LoopField out(x.geometry(), x.grid());
    out.raw() = field_derivative(x);
    for (std::size_t j = 0; j < u.nodes(); ++j) {
        const auto p = u.point(j);
        const auto glog = glog_fn(p[0], p[1]);
        conformal_covariant_correction(std::span<const double>(ux.data() + 2 * j, 2), x.at(j),
                                       glog, out.at(j));
    }
    return out;
}

/// nabla_x X along u. Sphere: projection of the ambient derivative. Disk:
/// conformal Christoffel symbols. Flat torus: the plain derivative.
inline LoopField covariant_derivative(const LoopMap& u, const LoopField& x) {
    if (!(u.grid() == x.grid()) || !(u.geometry() == x.geometry()))
        throw std::invalid_argument("covariant_derivative: field is not based on this loop");
    switch (u.geometry().kind()) {
        case TargetKind::sphere2: {
            LoopField out(u.geometry(), u.grid());
            std::vector<double> d = field_derivative(x);
            for (std::size_t j = 0; j < u.nodes(); ++j) {
                project_tangent_at(u.geometry(), u.point(j),
                                   std::span<const double>(d.data() + j * 3, 3), out.at(j));
            }
            return out;
        }
        case TargetKind::flat_torus2: {
            LoopField out(u.geometry(), u.grid());
            out.raw() = field_derivative(x);
            return out;
        }
        case TargetKind::poincare_disk: {
            const std::vector<double> ux = map_derivative(u);
            return conformal_covariant_derivative(u, x, ux, disk_log_gradient);
        }
        case TargetKind::holomorphic_space_form:
            throw Error("covariant_derivative: geometry supports curvature algebra only");
    }
    throw std::logic_error("covariant_derivative: unreachable");
}

/// Node-wise metric pairing of two fields, as plain samples ready to integrate.
inline std::vector<double> pointwise_metric(const LoopMap& u, const LoopField& x,
                                            const LoopField& y) {
    std::vector<double> out(u.nodes());
    for (std::size_t j = 0; j < u.nodes(); ++j)
        out[j] = metric_at(u.geometry(), u.point(j), x.at(j), y.at(j));
    return out;
}

/// A periodic complex-valued field (Hasimoto output or scalar-PDE state).
struct ComplexLoop {
    GridSpec grid;
    std::vector<Complex> values;

    ComplexLoop() = default;
    explicit ComplexLoop(GridSpec g) : grid(g), values(g.m, Complex(0.0, 0.0)) {}
    ComplexLoop(GridSpec g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.m)
            throw std::invalid_argument("ComplexLoop: value count does not match grid");
    }
};

}  // namespace saflow
