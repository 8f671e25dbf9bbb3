#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "saflow/loop.hpp"

namespace saflow {

/// The monitored functionals at one time instant.
struct EnergyReport {
    double t = 0.0;
    double e1 = 0.0;  // (1/2) int |u_x|^2
    double e2 = 0.0;  // int <nabla_x u_x, J u_x>           (pseudo-helicity)
    double e3 = 0.0;  // int |nabla_x u_x|^2 - (1/4) int <u_x, R(u_x,Ju_x)Ju_x>
    double e4 = 0.0;  // 2 int |nabla_x^2 u_x|^2 - 3 int <.,R(.,u_x)u_x> - 5 int <.,R(.,Ju_x)Ju_x>
};

/// Computes E1..E4 with the derivative chain evaluated once.
inline EnergyReport energy_report(const LoopMap& u, double t = 0.0) {
    const std::size_t m = u.nodes();
    const std::size_t dim = u.dim();
    const TargetGeometry& g = u.geometry();
    const LoopField ux = tangent_derivative(u);
    const LoopField d1 = covariant_derivative(u, ux);
    const LoopField d2 = covariant_derivative(u, d1);

    std::vector<double> f1(m), f2(m), f3a(m), f3b(m), f4a(m), f4b(m), f4c(m);
    std::vector<double> jux(dim), rw(dim);
    for (std::size_t j = 0; j < m; ++j) {
        const auto p = u.point(j);
        const auto x = ux.at(j);
        const auto v1 = d1.at(j);
        const auto v2 = d2.at(j);
        apply_complex_structure(g, p, x, jux);

        f1[j] = 0.5 * metric_at(g, p, x, x);
        f2[j] = metric_at(g, p, v1, jux);
        f3a[j] = metric_at(g, p, v1, v1);
        curvature_at(g, p, x, jux, jux, rw);  // R(u_x, Ju_x)Ju_x
        f3b[j] = metric_at(g, p, x, rw);
        f4a[j] = metric_at(g, p, v2, v2);
        curvature_at(g, p, v1, x, x, rw);  // R(d1, u_x)u_x
        f4b[j] = metric_at(g, p, v1, rw);
        curvature_at(g, p, v1, jux, jux, rw);  // R(d1, Ju_x)Ju_x
        f4c[j] = metric_at(g, p, v1, rw);
    }

    EnergyReport r;
    r.t = t;
    r.e1 = loop_integral(f1, u.grid());
    r.e2 = loop_integral(f2, u.grid());
    r.e3 = loop_integral(f3a, u.grid()) - 0.25 * loop_integral(f3b, u.grid());
    r.e4 = 2.0 * loop_integral(f4a, u.grid()) - 3.0 * loop_integral(f4b, u.grid()) -
           5.0 * loop_integral(f4c, u.grid());
    return r;
}

inline double e1(const LoopMap& u) { return energy_report(u).e1; }
inline double e2(const LoopMap& u) { return energy_report(u).e2; }
inline double e3(const LoopMap& u) { return energy_report(u).e3; }
inline double e4(const LoopMap& u) { return energy_report(u).e4; }

/// Right-hand side of dE3/dt: beta * int <R(nabla_x u_x, u_x)u_x, R(u_x, Ju_x)Ju_x>.
/// Vanishes identically on every supported target.
inline double e3_production_rate(const LoopMap& u, double beta) {
    const std::size_t m = u.nodes();
    const std::size_t dim = u.dim();
    const TargetGeometry& g = u.geometry();
    const LoopField ux = tangent_derivative(u);
    const LoopField d1 = covariant_derivative(u, ux);
    std::vector<double> f(m), jux(dim), ra(dim), rb(dim);
    for (std::size_t j = 0; j < m; ++j) {
        const auto p = u.point(j);
        apply_complex_structure(g, p, ux.at(j), jux);
        curvature_at(g, p, d1.at(j), ux.at(j), ux.at(j), ra);
        curvature_at(g, p, ux.at(j), jux, jux, rb);
        f[j] = metric_at(g, p, ra, rb);
    }
    return beta * loop_integral(f, u.grid());
}

/// Drift diagnostics for a series of energy reports. E1..E3 report the maximum
/// relative drift, normalized by max(|E(0)|, 1). E4 gets the semi-conservation
/// check E4(t) <= (E4(0) + shift) e^{Ct} - shift with shift = 1 - min(E4): the
/// growth rate C is fitted as the largest slope of y(t) = log(E4 + shift)
/// observed on the first half of the series, and the second half must stay
/// within 10% (of the fit-window range of y) of the extrapolated envelope.
/// The Gronwall constant is non-constructive, hence fit-and-extrapolate.
struct DriftSummary {
    double e1_drift = 0.0;
    double e2_drift = 0.0;
    double e3_drift = 0.0;
    double e4_growth_rate = 0.0;
    double e4_envelope_violation = 0.0;
    bool e4_bound_ok = true;
};

inline DriftSummary drift_series(std::span<const EnergyReport> reports) {
    DriftSummary out;
    if (reports.empty()) return out;
    const EnergyReport& first = reports.front();
    const double n1 = std::max(std::abs(first.e1), 1.0);
    const double n2 = std::max(std::abs(first.e2), 1.0);
    const double n3 = std::max(std::abs(first.e3), 1.0);
    double min_e4 = first.e4;
    for (const auto& r : reports) {
        out.e1_drift = std::max(out.e1_drift, std::abs(r.e1 - first.e1) / n1);
        out.e2_drift = std::max(out.e2_drift, std::abs(r.e2 - first.e2) / n2);
        out.e3_drift = std::max(out.e3_drift, std::abs(r.e3 - first.e3) / n3);
        min_e4 = std::min(min_e4, r.e4);
    }
    if (reports.size() < 4) return out;

    const double shift = 1.0 - min_e4;
    std::vector<double> ts, ys;
    ts.reserve(reports.size());
    ys.reserve(reports.size());
    for (const auto& r : reports) {
        ts.push_back(r.t);
        ys.push_back(std::log(r.e4 + shift));
    }
    const double t_mid = 0.5 * (ts.front() + ts.back());
    std::size_t split = 0;
    while (split < ts.size() && ts[split] <= t_mid) ++split;
    if (split < 2 || split >= ts.size()) return out;

    double rate = 0.0;  // the envelope never decays: Gronwall constants are >= 0
    double fit_lo = ys[0];
    double fit_hi = ys[0];
    for (std::size_t i = 1; i < split; ++i) {
        if (ts[i] > ts[0]) rate = std::max(rate, (ys[i] - ys[0]) / (ts[i] - ts[0]));
        fit_lo = std::min(fit_lo, ys[i]);
        fit_hi = std::max(fit_hi, ys[i]);
    }
    out.e4_growth_rate = rate;
    const double scale = std::max(fit_hi - fit_lo, 1.0);
    double violation = 0.0;
    for (std::size_t i = split; i < ts.size(); ++i)
        violation = std::max(violation, ys[i] - (ys[0] + rate * (ts[i] - ts[0])));
    out.e4_envelope_violation = violation / scale;
    out.e4_bound_ok = out.e4_envelope_violation <= 0.10;
    return out;
}

}  // namespace saflow
