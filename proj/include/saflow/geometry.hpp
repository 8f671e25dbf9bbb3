#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "saflow/errors.hpp"
#include "saflow/fft.hpp"

namespace saflow {

enum class TargetKind { sphere2, flat_torus2, poincare_disk, holomorphic_space_form };

inline constexpr double kSphereUnitTol = 1e-12;
inline constexpr double kDiskGuardRadius = 1.0 - 1e-6;
inline constexpr double kTangencyTol = 1e-10;
inline constexpr double kBaseMatchTol = 1e-12;

/// Target-geometry descriptor. Sphere2, FlatTorus2 and PoincareDisk support the
/// full flow machinery; HolomorphicSpaceForm(n, c) is a model tangent space
/// R^{2n} used for curvature algebra only. Immutable after construction.
class TargetGeometry {
public:
    static TargetGeometry sphere2() { return TargetGeometry(TargetKind::sphere2, 1, 0.0); }
    static TargetGeometry flat_torus2() { return TargetGeometry(TargetKind::flat_torus2, 1, 0.0); }
    static TargetGeometry poincare_disk() { return TargetGeometry(TargetKind::poincare_disk, 1, 0.0); }
    static TargetGeometry holomorphic_space_form(int complex_dim, double hol_curvature) {
        if (complex_dim < 1)
            throw std::invalid_argument("holomorphic space form: complex dimension must be >= 1");
        return TargetGeometry(TargetKind::holomorphic_space_form, complex_dim, hol_curvature);
    }

    TargetKind kind() const { return kind_; }
    int complex_dim() const { return complex_dim_; }
    double hol_curvature() const { return hol_curvature_; }

    std::size_t ambient_dim() const {
        switch (kind_) {
            case TargetKind::sphere2: return 3;
            case TargetKind::flat_torus2:
            case TargetKind::poincare_disk: return 2;
            case TargetKind::holomorphic_space_form: return 2 * static_cast<std::size_t>(complex_dim_);
        }
        return 0;
    }

    bool supports_flow() const { return kind_ != TargetKind::holomorphic_space_form; }

    /// Gaussian curvature of the two-dimensional targets.
    double gaussian_curvature() const {
        switch (kind_) {
            case TargetKind::sphere2: return 1.0;
            case TargetKind::flat_torus2: return 0.0;
            case TargetKind::poincare_disk: return -1.0;
            case TargetKind::holomorphic_space_form:
                throw std::logic_error("gaussian_curvature: not a real surface target");
        }
        return 0.0;
    }

    std::string name() const {
        switch (kind_) {
            case TargetKind::sphere2: return "sphere2";
            case TargetKind::flat_torus2: return "flat-torus2";
            case TargetKind::poincare_disk: return "poincare-disk";
            case TargetKind::holomorphic_space_form:
                return "holomorphic-space-form(n=" + std::to_string(complex_dim_) +
                       ", c=" + std::to_string(hol_curvature_) + ")";
        }
        return "?";
    }

    friend bool operator==(const TargetGeometry& a, const TargetGeometry& b) {
        return a.kind_ == b.kind_ && a.complex_dim_ == b.complex_dim_ &&
               a.hol_curvature_ == b.hol_curvature_;
    }

private:
    TargetGeometry(TargetKind kind, int complex_dim, double hol_curvature)
        : kind_(kind), complex_dim_(complex_dim), hol_curvature_(hol_curvature) {}

    TargetKind kind_;
    int complex_dim_;
    double hol_curvature_;
};

// ---------------------------------------------------------------------------
// Span-based kernels. These are the workhorses used by the loop/flow modules;
// all vectors are coordinate tuples of geometry.ambient_dim() doubles.
// ---------------------------------------------------------------------------

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Conformal factor of the Poincare disk chart, lambda(z) = 2 / (1 - |z|^2).
/// Throws past the guard radius so the factor can never silently explode.
inline double disk_conformal_factor(std::span<const double> z) {
    const double r2 = z[0] * z[0] + z[1] * z[1];
    if (r2 > kDiskGuardRadius * kDiskGuardRadius) throw ChartBlowupError(std::sqrt(r2));
    return 2.0 / (1.0 - r2);
}

/// Metric h(X, Y) for tangent tuples at point p.
inline double metric_at(const TargetGeometry& g, std::span<const double> p,
                        std::span<const double> x, std::span<const double> y) {
    switch (g.kind()) {
        case TargetKind::sphere2:
        case TargetKind::flat_torus2:
        case TargetKind::holomorphic_space_form:
            return dot(x, y);
        case TargetKind::poincare_disk: {
            const double lam = disk_conformal_factor(p);
            return lam * lam * dot(x, y);
        }
    }
    return 0.0;
}

inline double metric_norm_at(const TargetGeometry& g, std::span<const double> p,
                             std::span<const double> x) {
    return std::sqrt(metric_at(g, p, x, x));
}

/// J_p X. Sphere: p x X. Charts: 90-degree rotation. Space form: block rotation
/// pairing coordinates (x_i, y_i) -> (-y_i, x_i).
inline void apply_complex_structure(const TargetGeometry& g, std::span<const double> p,
                                    std::span<const double> x, std::span<double> out) {
    switch (g.kind()) {
        case TargetKind::sphere2:
            out[0] = p[1] * x[2] - p[2] * x[1];
            out[1] = p[2] * x[0] - p[0] * x[2];
            out[2] = p[0] * x[1] - p[1] * x[0];
            return;
        case TargetKind::flat_torus2:
        case TargetKind::poincare_disk: {
            const double a = x[0];
            out[0] = -x[1];
            out[1] = a;
            return;
        }
        case TargetKind::holomorphic_space_form:
            for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
                const double a = x[i];
                out[i] = -x[i + 1];
                out[i + 1] = a;
            }
            return;
    }
}

/// R(X, Y)Z. Real surfaces use the space-form tensor K(h(Y,Z)X - h(X,Z)Y); the
/// holomorphic space form uses the constant-holomorphic-curvature tensor
/// (c/4)(<Y,Z>X - <X,Z>Y + <JY,Z>JX - <JX,Z>JY + 2<JY,X>JZ). The sign is fixed
/// so that on the unit sphere R(X, JX)JX = |X|^2 X.
inline void curvature_at(const TargetGeometry& g, std::span<const double> p,
                         std::span<const double> x, std::span<const double> y,
                         std::span<const double> z, std::span<double> out) {
    const std::size_t n = g.ambient_dim();
    if (g.kind() == TargetKind::holomorphic_space_form) {
        const double c4 = g.hol_curvature() / 4.0;
        std::vector<double> jx(n), jy(n), jz(n);
        apply_complex_structure(g, p, x, jx);
        apply_complex_structure(g, p, y, jy);
        apply_complex_structure(g, p, z, jz);
        const double yz = dot(y, z);
        const double xz = dot(x, z);
        const double jyz = dot(jy, z);
        const double jxz = dot(jx, z);
        const double jyx = dot(jy, x);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = c4 * (yz * x[i] - xz * y[i] + jyz * jx[i] - jxz * jy[i] + 2.0 * jyx * jz[i]);
        }
        return;
    }
    const double K = g.gaussian_curvature();
    if (K == 0.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    const double hyz = metric_at(g, p, y, z);
    const double hxz = metric_at(g, p, x, z);
    for (std::size_t i = 0; i < n; ++i) out[i] = K * (hyz * x[i] - hxz * y[i]);
}

/// Orthogonal projection of an ambient vector onto the tangent space at p.
/// Chart targets and the model space form are their own tangent spaces.
inline void project_tangent_at(const TargetGeometry& g, std::span<const double> p,
                               std::span<const double> v, std::span<double> out) {
    if (g.kind() == TargetKind::sphere2) {
        const double vp = dot(v, p);
        const double pp = dot(p, p);  // tolerate slightly off-sphere stage states
        const double c = vp / pp;
        for (std::size_t i = 0; i < 3; ++i) out[i] = v[i] - c * p[i];
        return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
}

inline double wrap_to_torus(double a) {
    double w = std::fmod(a, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

/// First-order retraction: sphere renormalizes p+V, charts add (torus wraps,
/// disk enforces the guard radius).
inline void retract_at(const TargetGeometry& g, std::span<const double> p,
                       std::span<const double> v, std::span<double> out) {
    switch (g.kind()) {
        case TargetKind::sphere2: {
            double s[3] = {p[0] + v[0], p[1] + v[1], p[2] + v[2]};
            const double n = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
            out[0] = s[0] / n;
            out[1] = s[1] / n;
            out[2] = s[2] / n;
            return;
        }
        case TargetKind::flat_torus2:
            out[0] = wrap_to_torus(p[0] + v[0]);
            out[1] = wrap_to_torus(p[1] + v[1]);
            return;
        case TargetKind::poincare_disk: {
            const double a = p[0] + v[0];
            const double b = p[1] + v[1];
            const double r = std::sqrt(a * a + b * b);
            if (r > kDiskGuardRadius) throw ChartBlowupError(r);
            out[0] = a;
            out[1] = b;
            return;
        }
        case TargetKind::holomorphic_space_form:
            throw Error("retract: holomorphic space form supports curvature algebra only");
    }
}

// ---------------------------------------------------------------------------
// Point/vector value types. Thin, checked wrappers over the kernels above for
// single-point work (tests, the identity checker, frame seeding).
// ---------------------------------------------------------------------------

/// A point of the target manifold in ambient (sphere) or chart coordinates.
struct SurfacePoint {
    TargetGeometry geom;
    std::vector<double> coords;

    SurfacePoint(TargetGeometry g, std::vector<double> c) : geom(g), coords(std::move(c)) {
        if (coords.size() != geom.ambient_dim())
            throw std::invalid_argument("SurfacePoint: wrong coordinate count for geometry");
        validate();
    }

    void validate() const {
        switch (geom.kind()) {
            case TargetKind::sphere2: {
                const double n = norm(coords);
                if (std::abs(n - 1.0) > kSphereUnitTol)
                    throw std::invalid_argument("SurfacePoint: sphere point not unit length");
                return;
            }
            case TargetKind::poincare_disk: {
                const double r = norm(coords);
                if (r > kDiskGuardRadius) throw ChartBlowupError(r);
                return;
            }
            default:
                return;
        }
    }

    /// Model origin of a curvature-algebra-only geometry.
    static SurfacePoint origin(TargetGeometry g) {
        return SurfacePoint(g, std::vector<double>(g.ambient_dim(), 0.0));
    }
};

/// A tangent vector attached to a SurfacePoint.
struct TangentVector {
    SurfacePoint base;
    std::vector<double> vec;

    TangentVector(SurfacePoint p, std::vector<double> v) : base(std::move(p)), vec(std::move(v)) {
        if (vec.size() != base.geom.ambient_dim())
            throw std::invalid_argument("TangentVector: wrong component count for geometry");
        if (base.geom.kind() == TargetKind::sphere2) {
            const double t = std::abs(dot(vec, base.coords));
            if (t > kTangencyTol * std::max(norm(vec), 1e-300))
                throw std::invalid_argument("TangentVector: not tangent to the sphere");
        }
    }
};

namespace detail {

inline void require_same_base(const TangentVector& a, const TangentVector& b) {
    if (!(a.base.geom == b.base.geom))
        throw std::invalid_argument("tangent vectors live on different geometries");
    for (std::size_t i = 0; i < a.base.coords.size(); ++i) {
        if (std::abs(a.base.coords[i] - b.base.coords[i]) > kBaseMatchTol)
            throw std::invalid_argument("tangent vectors have mismatched base points");
    }
}

}  // namespace detail

inline double metric(const TangentVector& x, const TangentVector& y) {
    detail::require_same_base(x, y);
    return metric_at(x.base.geom, x.base.coords, x.vec, y.vec);
}

inline TangentVector complex_structure(const TangentVector& x) {
    std::vector<double> out(x.vec.size());
    apply_complex_structure(x.base.geom, x.base.coords, x.vec, out);
    return TangentVector(x.base, std::move(out));
}

inline TangentVector curvature(const TangentVector& x, const TangentVector& y,
                               const TangentVector& z) {
    detail::require_same_base(x, y);
    detail::require_same_base(x, z);
    std::vector<double> out(x.vec.size());
    curvature_at(x.base.geom, x.base.coords, x.vec, y.vec, z.vec, out);
    return TangentVector(x.base, std::move(out));
}

inline TangentVector project_tangent(const SurfacePoint& p, std::span<const double> ambient) {
    std::vector<double> out(p.coords.size());
    project_tangent_at(p.geom, p.coords, ambient, out);
    return TangentVector(p, std::move(out));
}

inline SurfacePoint retract(const SurfacePoint& p, const TangentVector& v) {
    std::vector<double> out(p.coords.size());
    retract_at(p.geom, p.coords, v.vec, out);
    return SurfacePoint(p.geom, std::move(out));
}

/// h(R(Y,X)X, R(X,JX)JX). Identically zero on every supported geometry; the
/// returned residual is the machine-checkable witness.
inline double symmetric_identity_residual(const TangentVector& x, const TangentVector& y) {
    detail::require_same_base(x, y);
    const TangentVector jx = complex_structure(x);
    const TangentVector ryxx = curvature(y, x, x);
    const TangentVector rxjxjx = curvature(x, jx, jx);
    return metric(ryxx, rxjxjx);
}

}  // namespace saflow
