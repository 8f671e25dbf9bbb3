#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "saflow/invariants.hpp"
#include "saflow/loop.hpp"

namespace saflow {

/// Coefficients of the loop evolution
///   u_t = -eps nabla_x^3 u_x + alpha J nabla_x u_x
///         + beta (nabla_x^2 u_x + (1/2) R(u_x, Ju_x)Ju_x) + gamma |u_x|^2 u_x.
struct FlowParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;

    void validate() const {
        if (epsilon < 0.0) throw std::invalid_argument("FlowParams: epsilon must be >= 0");
    }
    bool degenerate() const { return alpha == 0.0 && beta == 0.0 && gamma == 0.0; }
};

/// Time-stepping controls. dt <= 0 selects the stability heuristic.
struct StepperConfig {
    double dt = 0.0;
    double t_end = 0.0;
    std::size_t snapshot_stride = 0;  // 0 = only first/last
    std::size_t energy_stride = 1;
    bool allow_unstable_dt = false;
};

/// Explicit-RK4 step-size heuristic: the dispersive terms limit through
/// |beta| k^3 + |alpha| k^2, the parabolic regularization through eps k^4.
inline double stability_dt(const FlowParams& p, const GridSpec& grid) {
    const double kmax = static_cast<double>(grid.m) / 2.0;
    const double tiny = 1e-30;
    const double dispersive = 2.8 / (std::abs(p.beta) * kmax * kmax * kmax +
                                     std::abs(p.alpha) * kmax * kmax + tiny);
    const double parabolic = 2.0 / (p.epsilon * kmax * kmax * kmax * kmax + tiny);
    return 0.5 * std::min(dispersive, parabolic);
}

/// Assembles the flow right-hand side at every node. The result is tangent by
/// construction. Non-finite input coordinates or derivatives raise BlowupError
/// with the offending node.
inline LoopField flow_rhs(const LoopMap& u, const FlowParams& p, double t = 0.0) {
    const std::size_t m = u.nodes();
    const std::size_t dim = u.dim();
    const TargetGeometry& g = u.geometry();

    for (std::size_t j = 0; j < m; ++j) {
        for (double c : u.point(j)) {
            if (!std::isfinite(c)) throw BlowupError("field blow-up: non-finite state", j, t);
        }
    }

    const LoopField ux = tangent_derivative(u);
    const LoopField d1 = covariant_derivative(u, ux);
    const LoopField d2 = covariant_derivative(u, d1);
    LoopField d3(g, u.grid());
    if (p.epsilon != 0.0) d3 = covariant_derivative(u, d2);

    LoopField out(g, u.grid());
    std::vector<double> jv(dim), rw(dim);
    for (std::size_t j = 0; j < m; ++j) {
        const auto pt = u.point(j);
        const auto x = ux.at(j);
        auto o = out.at(j);
        apply_complex_structure(g, pt, d1.at(j), jv);  // J nabla_x u_x
        for (std::size_t i = 0; i < dim; ++i) o[i] = p.alpha * jv[i];
        if (p.beta != 0.0) {
            apply_complex_structure(g, pt, x, jv);  // J u_x
            curvature_at(g, pt, x, jv, jv, rw);     // R(u_x, Ju_x)Ju_x
            const auto v2 = d2.at(j);
            for (std::size_t i = 0; i < dim; ++i) o[i] += p.beta * (v2[i] + 0.5 * rw[i]);
        }
        if (p.gamma != 0.0) {
            const double s = metric_at(g, pt, x, x);
            for (std::size_t i = 0; i < dim; ++i) o[i] += p.gamma * s * x[i];
        }
        if (p.epsilon != 0.0) {
            const auto v3 = d3.at(j);
            for (std::size_t i = 0; i < dim; ++i) o[i] -= p.epsilon * v3[i];
        }
        for (std::size_t i = 0; i < dim; ++i) {
            if (!std::isfinite(o[i]))
                throw BlowupError("field blow-up: non-finite derivative", j, t);
        }
    }
    return out;
}

namespace detail {

inline LoopMap retract_loop(const LoopMap& u, double scale, const LoopField& v) {
    LoopMap out(u.geometry(), u.grid());
    const std::size_t dim = u.dim();
    std::vector<double> step(dim);
    for (std::size_t j = 0; j < u.nodes(); ++j) {
        const auto vj = v.at(j);
        for (std::size_t i = 0; i < dim; ++i) step[i] = scale * vj[i];
        retract_at(u.geometry(), u.point(j), step, out.point(j));
    }
    return out;
}

inline void accumulate(LoopField& acc, double w, const LoopField& v) {
    for (std::size_t i = 0; i < acc.raw().size(); ++i) acc.raw()[i] += w * v.raw()[i];
}

}  // namespace detail

/// One classical RK4 step. Stage states are pulled back onto the manifold with
/// the retraction, so the scheme is plain RK4 applied to a smooth extension of
/// the vector field and keeps its fourth order.
inline LoopMap step(const LoopMap& u, const FlowParams& p, double dt, double t = 0.0) {
    if (dt == 0.0) return u;
    const LoopField k1 = flow_rhs(u, p, t);
    const LoopMap u2 = detail::retract_loop(u, 0.5 * dt, k1);
    const LoopField k2 = flow_rhs(u2, p, t);
    const LoopMap u3 = detail::retract_loop(u, 0.5 * dt, k2);
    const LoopField k3 = flow_rhs(u3, p, t);
    const LoopMap u4 = detail::retract_loop(u, dt, k3);
    const LoopField k4 = flow_rhs(u4, p, t);

    LoopField incr(u.geometry(), u.grid());
    detail::accumulate(incr, dt / 6.0, k1);
    detail::accumulate(incr, dt / 3.0, k2);
    detail::accumulate(incr, dt / 3.0, k3);
    detail::accumulate(incr, dt / 6.0, k4);
    return detail::retract_loop(u, 1.0, incr);
}

inline constexpr double kBlowupCoordinateLimit = 1e8;

struct EvolveSinks {
    std::function<void(double t, std::size_t step, const LoopMap&)> on_snapshot;
    std::function<void(const EnergyReport&)> on_energy;
};

struct EvolveResult {
    LoopMap final_state;
    double t = 0.0;
    std::size_t steps = 0;
    double dt = 0.0;
    bool blew_up = false;
    std::string blowup_reason;
};

namespace detail {

inline bool state_out_of_range(const LoopMap& u, std::size_t& bad_node) {
    for (std::size_t j = 0; j < u.nodes(); ++j) {
        for (double c : u.point(j)) {
            if (!std::isfinite(c) || std::abs(c) > kBlowupCoordinateLimit) {
                bad_node = j;
                return true;
            }
        }
    }
    return false;
}

}  // namespace detail

/// Integrates the Cauchy problem from t = 0 to cfg.t_end, emitting snapshots
/// and energy reports at the configured strides (plus first and last states).
/// Blow-up aborts cleanly, returning the last valid state and time.
inline EvolveResult evolve(const LoopMap& u0, const FlowParams& p, const StepperConfig& cfg,
                           const EvolveSinks& sinks = {}) {
    p.validate();
    if (cfg.t_end < 0.0) throw std::invalid_argument("evolve: t_end must be >= 0");
    const double dt_stable = stability_dt(p, u0.grid());
    double dt = cfg.dt > 0.0 ? cfg.dt : dt_stable;
    if (dt > dt_stable * (1.0 + 1e-12) && !cfg.allow_unstable_dt)
        throw std::invalid_argument("evolve: dt exceeds the stability heuristic " +
                                    std::to_string(dt_stable) +
                                    "; set allow_unstable_dt to override");

    EvolveResult res{u0, 0.0, 0, dt, false, {}};
    const auto emit = [&](std::size_t k) {
        if (sinks.on_snapshot &&
            (k == 0 || (cfg.snapshot_stride > 0 && k % cfg.snapshot_stride == 0)))
            sinks.on_snapshot(res.t, k, res.final_state);
        if (sinks.on_energy && (k == 0 || (cfg.energy_stride > 0 && k % cfg.energy_stride == 0)))
            sinks.on_energy(energy_report(res.final_state, res.t));
    };
    emit(0);
    if (cfg.t_end == 0.0) return res;

    const std::size_t n_full = static_cast<std::size_t>(std::floor(cfg.t_end / dt + 1e-9));
    const double remainder = cfg.t_end - static_cast<double>(n_full) * dt;
    const std::size_t n_total = n_full + (remainder > dt * 1e-9 ? 1 : 0);

    for (std::size_t k = 0; k < n_total; ++k) {
        const double h = k < n_full ? dt : remainder;
        try {
            LoopMap next = step(res.final_state, p, h, res.t);
            std::size_t bad = 0;
            if (detail::state_out_of_range(next, bad)) {
                res.blew_up = true;
                res.blowup_reason = "state out of range at node " + std::to_string(bad) +
                                    ", last valid time t = " + std::to_string(res.t);
                break;
            }
            res.final_state = std::move(next);
        } catch (const Error& e) {
            res.blew_up = true;
            res.blowup_reason = std::string(e.what()) + ", last valid time t = " +
                                std::to_string(res.t);
            break;
        }
        res.t += h;
        res.steps = k + 1;
        emit(k + 1);
    }

    // final state always reaches the sinks, stride-aligned or not
    if (!res.blew_up && res.steps > 0) {
        if (sinks.on_snapshot && !(cfg.snapshot_stride > 0 && res.steps % cfg.snapshot_stride == 0))
            sinks.on_snapshot(res.t, res.steps, res.final_state);
        if (sinks.on_energy && !(cfg.energy_stride > 0 && res.steps % cfg.energy_stride == 0))
            sinks.on_energy(energy_report(res.final_state, res.t));
    }
    return res;
}

}  // namespace saflow
