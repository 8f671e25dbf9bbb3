#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "saflow/config.hpp"
#include "saflow/flow.hpp"
#include "saflow/hasimoto.hpp"
#include "saflow/initial_data.hpp"
#include "saflow/invariants.hpp"
#include "saflow/io.hpp"
#include "saflow/scalar_pde.hpp"

namespace saflow {

using Json = nlohmann::ordered_json;

struct Assertion {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double limit = 0.0;
};

struct RunOutcome {
    int exit_code = 0;
    Json summary;
    std::vector<std::string> warnings;
};

namespace detail {

inline Json config_json(const RunConfig& cfg) {
    Json j;
    for (const auto& [k, v] : cfg.resolved()) j[k] = v;
    return j;
}

inline Json assertions_json(const std::vector<Assertion>& as) {
    Json arr = Json::array();
    for (const auto& a : as) {
        Json e;
        e["name"] = a.name;
        e["pass"] = a.pass;
        e["value"] = a.value;
        e["limit"] = a.limit;
        arr.push_back(e);
    }
    return arr;
}

inline RunOutcome finalize(const RunConfig& cfg, Json results,
                           const std::vector<Assertion>& assertions,
                           std::vector<std::string> warnings) {
    RunOutcome out;
    bool pass = true;
    for (const auto& a : assertions) pass = pass && a.pass;
    out.summary["command"] = cfg.command;
    out.summary["pass"] = pass;
    out.summary["warnings"] = warnings;
    out.summary["config"] = config_json(cfg);
    out.summary["results"] = std::move(results);
    out.summary["assertions"] = assertions_json(assertions);
    out.exit_code = pass ? 0 : 1;
    out.warnings = std::move(warnings);
    const auto path = std::filesystem::path(cfg.out_dir) / "summary.json";
    write_text_file(path, out.summary.dump(2) + "\n");
    return out;
}

inline std::string default_loop_family(const TargetGeometry& g) {
    return g.kind() == TargetKind::sphere2 ? "great-circle" : "bump";
}

/// Max node distance between loops on the same target; torus differences are
/// compared modulo 2pi.
inline double loop_distance(const LoopMap& a, const LoopMap& b) {
    double worst = 0.0;
    const bool wrap = a.geometry().kind() == TargetKind::flat_torus2;
    for (std::size_t j = 0; j < a.nodes(); ++j) {
        const auto pa = a.point(j);
        const auto pb = b.point(j);
        double s = 0.0;
        for (std::size_t c = 0; c < pa.size(); ++c) {
            double d = pa[c] - pb[c];
            if (wrap) d -= two_pi * std::round(d / two_pi);
            s += d * d;
        }
        worst = std::max(worst, std::sqrt(s));
    }
    return worst;
}

inline double e1_dissipation_excess(std::span<const EnergyReport> reports) {
    double excess = 0.0;
    for (std::size_t k = 1; k < reports.size(); ++k)
        excess = std::max(excess, reports[k].e1 - reports[k - 1].e1);
    return excess;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// run-flow
// ---------------------------------------------------------------------------

inline RunOutcome run_flow(const RunConfig& cfg) {
    const TargetGeometry g = cfg.geometry();
    if (!g.supports_flow())
        throw ConfigError("geometry '" + cfg.geometry_kind + "' does not support flow evolution");
    const GridSpec grid(cfg.grid_m);
    const std::string family =
        cfg.initial_family.empty() ? detail::default_loop_family(g) : cfg.initial_family;
    const LoopMap u0 = make_initial_loop(family, cfg.initial_params, g, grid);

    std::vector<std::string> warnings;
    if (cfg.flow.degenerate())
        warnings.push_back("all of alpha, beta, gamma are zero; the flow is stationary");
    if (cfg.dt > 0.0) warnings.push_back("dt overridden by configuration");

    const ConfigHeader header = cfg.resolved();
    const std::filesystem::path out_dir(cfg.out_dir);
    std::vector<EnergyReport> reports;
    std::size_t snapshot_index = 0;

    EvolveSinks sinks;
    sinks.on_snapshot = [&](double, std::size_t, const LoopMap& u) {
        const LoopField ux = tangent_derivative(u);
        write_loop_csv(out_dir / "snapshots" / snapshot_name("snap", snapshot_index++), header, u,
                       &ux);
    };
    sinks.on_energy = [&](const EnergyReport& r) { reports.push_back(r); };

    const EvolveResult res = evolve(u0, cfg.flow, cfg.stepper(), sinks);
    write_energy_csv(out_dir / "energies.csv", header, reports);

    const DriftSummary drift = drift_series(reports);
    std::vector<Assertion> as;
    as.push_back({"no-blow-up", !res.blew_up, res.blew_up ? 1.0 : 0.0, 0.0});

    const bool conservative = cfg.flow.epsilon == 0.0 && cfg.flow.gamma == 0.0;
    if (conservative && !res.blew_up) {
        as.push_back({"e1-drift", drift.e1_drift <= cfg.study.drift_tol, drift.e1_drift,
                      cfg.study.drift_tol});
        as.push_back({"e2-drift", drift.e2_drift <= cfg.study.drift_tol, drift.e2_drift,
                      cfg.study.drift_tol});
        as.push_back({"e3-drift", drift.e3_drift <= cfg.study.drift_tol, drift.e3_drift,
                      cfg.study.drift_tol});
        as.push_back({"e4-envelope", drift.e4_bound_ok, drift.e4_envelope_violation, 0.10});
    }
    if (cfg.flow.epsilon > 0.0 && !res.blew_up && !reports.empty()) {
        const double slack = 1e-8 * std::max(1.0, std::abs(reports.front().e1));
        const double excess = detail::e1_dissipation_excess(reports);
        as.push_back({"e1-dissipation", excess <= slack, excess, slack});
    }
    double wave_error = -1.0;
    if (family == "great-circle" && conservative && !res.blew_up) {
        const double phase = 0.5 * cfg.flow.beta * res.t;
        LoopMap exact(g, grid);
        for (std::size_t j = 0; j < grid.m; ++j) {
            const double x = grid.node(j) + phase;
            auto p = exact.point(j);
            p[0] = std::cos(x);
            p[1] = std::sin(x);
            p[2] = 0.0;
        }
        wave_error = detail::loop_distance(res.final_state, exact);
        as.push_back({"traveling-wave", wave_error <= cfg.study.traveling_wave_tol, wave_error,
                      cfg.study.traveling_wave_tol});
    }

    Json results;
    results["initial_family"] = family;
    results["dt"] = res.dt;
    results["steps"] = res.steps;
    results["t_final"] = res.t;
    results["blew_up"] = res.blew_up;
    if (res.blew_up) results["blowup_reason"] = res.blowup_reason;
    results["drift"] = {{"e1", drift.e1_drift},
                        {"e2", drift.e2_drift},
                        {"e3", drift.e3_drift},
                        {"e4_growth_rate", drift.e4_growth_rate},
                        {"e4_envelope_violation", drift.e4_envelope_violation}};
    if (!reports.empty()) {
        results["energies_initial"] = {{"e1", reports.front().e1},
                                       {"e2", reports.front().e2},
                                       {"e3", reports.front().e3},
                                       {"e4", reports.front().e4}};
        results["energies_final"] = {{"e1", reports.back().e1},
                                     {"e2", reports.back().e2},
                                     {"e3", reports.back().e3},
                                     {"e4", reports.back().e4}};
    }
    if (wave_error >= 0.0) results["traveling_wave_error"] = wave_error;
    return detail::finalize(cfg, std::move(results), as, std::move(warnings));
}

// ---------------------------------------------------------------------------
// run-scalar
// ---------------------------------------------------------------------------

inline RunOutcome run_scalar(const RunConfig& cfg) {
    const GridSpec grid(cfg.grid_m);
    const std::string family = cfg.initial_family.empty() ? "plane-wave" : cfg.initial_family;
    const ComplexLoop psi0 = make_initial_complex(family, cfg.initial_params, grid);

    const ConfigHeader header = cfg.resolved();
    const std::filesystem::path out_dir(cfg.out_dir);
    std::vector<std::pair<double, double>> mass_series;
    std::size_t snapshot_index = 0;

    const auto sink = [&](double t, std::size_t, const ComplexLoop& psi) {
        write_complex_csv(out_dir / "psi" / snapshot_name("psi", snapshot_index++), header, psi);
        mass_series.emplace_back(t, mass(psi));
    };
    const ScalarEvolveResult res = evolve_scalar(psi0, cfg.scalar, cfg.stepper(), sink);
    write_mass_csv(out_dir / "mass.csv", header, mass_series);

    double drift = 0.0;
    const double m0 = mass_series.front().second;
    for (const auto& [t, m] : mass_series)
        drift = std::max(drift, std::abs(m - m0) / std::max(std::abs(m0), 1.0));

    std::vector<Assertion> as;
    as.push_back({"no-blow-up", !res.blew_up, res.blew_up ? 1.0 : 0.0, 0.0});
    as.push_back({"mass-drift", drift <= cfg.study.mass_drift_tol, drift,
                  cfg.study.mass_drift_tol});

    Json results;
    results["initial_family"] = family;
    results["dt"] = res.dt;
    results["steps"] = res.steps;
    results["t_final"] = res.t;
    results["blew_up"] = res.blew_up;
    if (res.blew_up) results["blowup_reason"] = res.blowup_reason;
    results["mass_initial"] = m0;
    results["mass_final"] = mass_series.back().second;
    results["mass_drift"] = drift;
    return detail::finalize(cfg, std::move(results), as, {});
}

// ---------------------------------------------------------------------------
// run-filament
// ---------------------------------------------------------------------------

inline RunOutcome run_filament(const RunConfig& cfg) {
    const GridSpec grid(cfg.grid_m);
    const std::string family = cfg.initial_family.empty() ? "circle" : cfg.initial_family;
    const FilamentCurve c0 = make_initial_filament(family, cfg.initial_params, grid);

    const ConfigHeader header = cfg.resolved();
    const std::filesystem::path out_dir(cfg.out_dir);
    std::size_t snapshot_index = 0;
    const auto sink = [&](double, std::size_t, const FilamentCurve& c) {
        write_filament_csv(out_dir / "filament" / snapshot_name("filament", snapshot_index++),
                           header, c, frenet(c));
    };
    const FilamentEvolveResult res =
        evolve_filament(c0, cfg.flow.alpha, cfg.flow.beta, cfg.stepper(), sink);

    // classic Hasimoto wavefunction of the final filament, flags in a side file
    const ClassicHasimoto psi = classic_hasimoto(res.final_state);
    write_complex_csv(out_dir / "psi_classic.csv", header, psi.psi);
    {
        Json meta;
        std::size_t flagged = 0;
        Json flags = Json::array();
        for (const auto f : psi.degenerate) {
            flags.push_back(static_cast<int>(f));
            flagged += f;
        }
        meta["degenerate_nodes"] = flags;
        meta["degenerate_count"] = flagged;
        write_text_file(out_dir / "filament_meta.json", meta.dump(2) + "\n");
    }

    std::vector<Assertion> as;
    as.push_back({"no-blow-up", !res.blew_up, res.blew_up ? 1.0 : 0.0, 0.0});
    as.push_back({"arclength-drift", res.max_arclength_drift <= cfg.study.arclength_tol,
                  res.max_arclength_drift, cfg.study.arclength_tol});

    Json results;
    results["initial_family"] = family;
    results["dt"] = res.dt;
    results["steps"] = res.steps;
    results["t_final"] = res.t;
    results["blew_up"] = res.blew_up;
    if (res.blew_up) results["blowup_reason"] = res.blowup_reason;
    results["max_arclength_drift"] = res.max_arclength_drift;
    return detail::finalize(cfg, std::move(results), as, {});
}

// ---------------------------------------------------------------------------
// hasimoto-compare
// ---------------------------------------------------------------------------

inline RunOutcome run_hasimoto_compare(const RunConfig& cfg) {
    const TargetGeometry g = cfg.geometry();
    if (!g.supports_flow())
        throw ConfigError("hasimoto-compare needs a flow-capable geometry");
    const GridSpec grid(cfg.grid_m);
    const std::string family = cfg.initial_family.empty() ? "bump" : cfg.initial_family;
    const LoopMap u0 = make_initial_loop(family, cfg.initial_params, g, grid);

    // choose a snapshot stride giving about 20 comparison times
    StepperConfig stepper = cfg.stepper();
    const double dt = stepper.dt > 0.0 ? stepper.dt : stability_dt(cfg.flow, grid);
    if (stepper.snapshot_stride == 0) {
        const auto n_steps = static_cast<std::size_t>(std::ceil(stepper.t_end / dt));
        stepper.snapshot_stride = std::max<std::size_t>(1, n_steps / 20);
    }

    std::vector<double> times;
    std::vector<LoopMap> snapshots;
    EvolveSinks sinks;
    sinks.on_snapshot = [&](double t, std::size_t, const LoopMap& u) {
        times.push_back(t);
        snapshots.push_back(u);
    };
    const EvolveResult res = evolve(u0, cfg.flow, stepper, sinks);

    const HasimotoSeries series = hasimoto_series(snapshots);

    // matched scalar run: same coefficients, K = Gaussian curvature of the target
    ScalarParams sp;
    sp.alpha = cfg.flow.alpha;
    sp.beta = cfg.flow.beta;
    sp.gamma = cfg.flow.gamma;
    sp.K = g.gaussian_curvature();

    const ConfigHeader header = cfg.resolved();
    const std::filesystem::path out_dir(cfg.out_dir);

    double sup_mismatch = 0.0;
    bool scalar_blew_up = false;
    ComplexLoop psi = series.q.front();
    Json per_time = Json::array();
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        if (k > 0) {
            StepperConfig seg;
            seg.t_end = times[k] - times[k - 1];
            seg.dt = std::min(kScalarDefaultDt, seg.t_end);
            const ScalarEvolveResult sres = evolve_scalar(psi, sp, seg);
            scalar_blew_up = scalar_blew_up || sres.blew_up;
            if (sres.blew_up) break;
            psi = sres.final_state;
        }
        double mismatch = 0.0;
        for (std::size_t j = 0; j < grid.m; ++j) {
            mismatch = std::max(mismatch, std::abs(std::abs(series.q[k].values[j]) -
                                                   std::abs(psi.values[j])));
        }
        sup_mismatch = std::max(sup_mismatch, mismatch);
        write_complex_csv(out_dir / "hasimoto" / snapshot_name("q", k), header, series.q[k]);
        write_complex_csv(out_dir / "hasimoto" / snapshot_name("psi", k), header, psi);
        Json e;
        e["t"] = times[k];
        e["mismatch"] = mismatch;
        e["holonomy"] = series.holonomy[k];
        per_time.push_back(e);
    }

    Json meta;
    meta["times"] = per_time;
    meta["K"] = sp.K;
    write_text_file(out_dir / "hasimoto_meta.json", meta.dump(2) + "\n");

    std::vector<Assertion> as;
    as.push_back({"no-blow-up", !res.blew_up && !scalar_blew_up,
                  (res.blew_up || scalar_blew_up) ? 1.0 : 0.0, 0.0});
    as.push_back({"hasimoto-match", sup_mismatch <= cfg.study.hasimoto_tol, sup_mismatch,
                  cfg.study.hasimoto_tol});

    Json results;
    results["initial_family"] = family;
    results["dt"] = res.dt;
    results["snapshots"] = snapshots.size();
    results["t_final"] = res.t;
    results["K"] = sp.K;
    results["sup_mismatch"] = sup_mismatch;
    results["holonomy_initial"] = series.holonomy.front();
    return detail::finalize(cfg, std::move(results), as, {});
}

// ---------------------------------------------------------------------------
// epsilon-study
// ---------------------------------------------------------------------------

inline RunOutcome run_epsilon_study(const RunConfig& cfg) {
    const TargetGeometry g = cfg.geometry();
    const GridSpec grid(cfg.grid_m);
    const std::string family =
        cfg.initial_family.empty() ? detail::default_loop_family(g) : cfg.initial_family;
    const LoopMap u0 = make_initial_loop(family, cfg.initial_params, g, grid);

    std::vector<double> epsilons = cfg.study.epsilons;
    std::sort(epsilons.begin(), epsilons.end(), std::greater<>());

    // one shared dt, stable for the stiffest (largest-epsilon) run
    double dt = cfg.dt;
    if (dt <= 0.0) {
        FlowParams worst = cfg.flow;
        worst.epsilon = epsilons.empty() ? 0.0 : epsilons.front();
        dt = stability_dt(worst, grid);
    }

    const ConfigHeader header = cfg.resolved();
    const std::filesystem::path out_dir(cfg.out_dir);

    const auto run_one = [&](double eps, const std::string& tag) {
        FlowParams p = cfg.flow;
        p.epsilon = eps;
        StepperConfig sc = cfg.stepper();
        sc.dt = dt;
        std::vector<EnergyReport> reports;
        EvolveSinks sinks;
        sinks.on_energy = [&](const EnergyReport& r) { reports.push_back(r); };
        const EvolveResult res = evolve(u0, p, sc, sinks);
        write_energy_csv(out_dir / tag / "energies.csv", header, reports);
        return std::make_pair(res, reports);
    };

    const auto [base_res, base_reports] = run_one(0.0, "eps_base");

    std::vector<Assertion> as;
    as.push_back({"no-blow-up-base", !base_res.blew_up, base_res.blew_up ? 1.0 : 0.0, 0.0});

    Json runs = Json::array();
    std::vector<double> distances;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const std::string tag = "eps_run_" + std::to_string(i);
        const auto [res, reports] = run_one(epsilons[i], tag);
        const double d = detail::loop_distance(res.final_state, base_res.final_state);
        distances.push_back(d);
        as.push_back({tag + "-no-blow-up", !res.blew_up, res.blew_up ? 1.0 : 0.0, 0.0});
        if (epsilons[i] > 0.0) {
            const double slack = 1e-8 * std::max(1.0, std::abs(reports.front().e1));
            const double excess = detail::e1_dissipation_excess(reports);
            as.push_back({tag + "-e1-dissipation", excess <= slack, excess, slack});
        }
        Json e;
        e["epsilon"] = epsilons[i];
        e["distance_to_base"] = d;
        e["e1_initial"] = reports.front().e1;
        e["e1_final"] = reports.back().e1;
        runs.push_back(e);
    }

    bool decreasing = true;
    for (std::size_t i = 1; i < distances.size(); ++i)
        decreasing = decreasing && distances[i] < distances[i - 1];
    as.push_back({"distance-decreasing", decreasing, decreasing ? 1.0 : 0.0, 1.0});

    Json results;
    results["initial_family"] = family;
    results["dt"] = dt;
    results["t_end"] = cfg.t_end;
    results["runs"] = runs;
    return detail::finalize(cfg, std::move(results), as, {});
}

// ---------------------------------------------------------------------------
// identity-check
// ---------------------------------------------------------------------------

inline RunOutcome run_identity_check(const RunConfig& cfg) {
    const TargetGeometry g = cfg.geometry();
    const std::size_t dim = g.ambient_dim();
    std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto sample_point = [&](std::vector<double>& p) {
        switch (g.kind()) {
            case TargetKind::sphere2: {
                double n = 0.0;
                do {
                    for (auto& c : p) c = gauss(rng);
                    n = norm(p);
                } while (n < 1e-6);
                for (auto& c : p) c /= n;
                return;
            }
            case TargetKind::flat_torus2:
                for (auto& c : p) c = unit(rng) * two_pi;
                return;
            case TargetKind::poincare_disk: {
                const double r = 0.9 * std::sqrt(unit(rng));
                const double th = unit(rng) * two_pi;
                p[0] = r * std::cos(th);
                p[1] = r * std::sin(th);
                return;
            }
            case TargetKind::holomorphic_space_form:
                for (auto& c : p) c = 0.0;
                return;
        }
    };
    const auto sample_tangent = [&](const std::vector<double>& p, std::vector<double>& v) {
        const double scale = std::pow(10.0, 2.0 * unit(rng) - 1.0);
        double n = 0.0;
        do {
            for (auto& c : v) c = gauss(rng) * scale;
            if (g.kind() == TargetKind::sphere2) {
                std::vector<double> t(dim);
                project_tangent_at(g, p, v, t);
                v = t;
            }
            n = norm(v);
        } while (n < 1e-8 * scale);
    };

    double max_normalized = 0.0;
    double max_absolute = 0.0;
    std::vector<double> p(dim), x(dim), y(dim), jx(dim), ryxx(dim), rxjxjx(dim);
    for (std::size_t s = 0; s < cfg.study.samples; ++s) {
        sample_point(p);
        sample_tangent(p, x);
        sample_tangent(p, y);
        apply_complex_structure(g, p, x, jx);
        curvature_at(g, p, y, x, x, ryxx);
        curvature_at(g, p, x, jx, jx, rxjxjx);
        const double res = std::abs(metric_at(g, p, ryxx, rxjxjx));
        const double nx = metric_norm_at(g, p, x);
        const double ny = metric_norm_at(g, p, y);
        const double scale = nx * nx * nx * nx * nx * ny;
        max_absolute = std::max(max_absolute, res);
        if (scale > 0.0) max_normalized = std::max(max_normalized, res / scale);
    }

    std::vector<Assertion> as;
    as.push_back({"identity-residual", max_normalized <= cfg.study.identity_tol, max_normalized,
                  cfg.study.identity_tol});

    Json results;
    results["geometry"] = g.name();
    results["samples"] = cfg.study.samples;
    results["max_residual_normalized"] = max_normalized;
    results["max_residual_absolute"] = max_absolute;
    return detail::finalize(cfg, std::move(results), as, {});
}

// ---------------------------------------------------------------------------
// convergence
// ---------------------------------------------------------------------------

inline RunOutcome run_convergence(const RunConfig& cfg) {
    const TargetGeometry g = cfg.geometry();
    const GridSpec grid(cfg.grid_m);
    const std::string family =
        cfg.initial_family.empty() ? "perturbed-latitude" : cfg.initial_family;
    const LoopMap u0 = make_initial_loop(family, cfg.initial_params, g, grid);

    const int levels = std::max(2, cfg.study.dt_levels);
    const double dt0 = cfg.dt > 0.0 ? cfg.dt : stability_dt(cfg.flow, grid);

    const auto run_at = [&](double dt) {
        StepperConfig sc = cfg.stepper();
        sc.dt = dt;
        sc.snapshot_stride = 0;
        sc.energy_stride = 0;
        return evolve(u0, cfg.flow, sc);
    };

    std::vector<double> dts;
    std::vector<LoopMap> finals;
    for (int l = 0; l < levels; ++l) {
        dts.push_back(dt0 / std::pow(2.0, l));
        finals.push_back(run_at(dts.back()).final_state);
    }
    const LoopMap reference = run_at(dt0 / std::pow(2.0, levels)).final_state;

    std::vector<double> errors;
    for (const auto& f : finals) errors.push_back(detail::loop_distance(f, reference));

    std::vector<Assertion> as;
    Json levels_json = Json::array();
    for (int l = 0; l < levels; ++l) {
        Json e;
        e["dt"] = dts[l];
        e["error"] = errors[l];
        if (l > 0 && errors[l] > 0.0) {
            const double ratio = errors[l - 1] / errors[l];
            e["ratio"] = ratio;
            e["observed_order"] = std::log2(ratio);
            as.push_back({"order-ratio-" + std::to_string(l), ratio >= 8.0 && ratio <= 32.0,
                          ratio, 16.0});
        }
        levels_json.push_back(e);
    }

    Json results;
    results["initial_family"] = family;
    results["dt0"] = dt0;
    results["t_end"] = cfg.t_end;
    results["levels"] = levels_json;
    return detail::finalize(cfg, std::move(results), as, {});
}

/// Dispatches a parsed configuration to its study.
inline RunOutcome run(const RunConfig& cfg) {
    if (cfg.command.empty())
        throw ConfigError("no command given (config 'command' key or CLI subcommand)");
    if (cfg.command == "run-flow") return run_flow(cfg);
    if (cfg.command == "run-scalar") return run_scalar(cfg);
    if (cfg.command == "run-filament") return run_filament(cfg);
    if (cfg.command == "hasimoto-compare") return run_hasimoto_compare(cfg);
    if (cfg.command == "epsilon-study") return run_epsilon_study(cfg);
    if (cfg.command == "identity-check") return run_identity_check(cfg);
    if (cfg.command == "convergence") return run_convergence(cfg);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace saflow
