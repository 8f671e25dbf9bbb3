#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "saflow/flow.hpp"
#include "saflow/initial_data.hpp"
#include "saflow/invariants.hpp"

using namespace saflow;

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

std::vector<EnergyReport> collect_energies(const LoopMap& u0, const FlowParams& p, double t_end,
                                           double dt = 0.0, std::size_t stride = 1) {
    StepperConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.energy_stride = stride;
    std::vector<EnergyReport> reports;
    EvolveSinks sinks;
    sinks.on_energy = [&](const EnergyReport& r) { reports.push_back(r); };
    const EvolveResult res = evolve(u0, p, cfg, sinks);
    REQUIRE(!res.blew_up);
    return reports;
}

}  // namespace

TEST_CASE("energies of the great circle") {
    const LoopMap u = make_great_circle(GridSpec(64));
    REQUIRE(e1(u) == Catch::Approx(kPi).margin(1e-12));
    REQUIRE(e2(u) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(e3(u) == Catch::Approx(-0.5 * kPi).margin(1e-12));
    REQUIRE(e4(u) == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("energies of the latitude circle r = 0.8") {
    const double r = 0.8;
    const double z0 = 0.6;
    const LoopMap u = make_latitude(GridSpec(64), r);
    REQUIRE(e1(u) == Catch::Approx(kPi * r * r).margin(1e-12));                    // 2.01062
    REQUIRE(e2(u) == Catch::Approx(two_pi * r * r * z0).margin(1e-12));            // 2.41274
    REQUIRE(e3(u) == Catch::Approx(two_pi * r * r * z0 * z0 - 0.5 * kPi * r * r * r * r)
                         .margin(1e-12));                                          // 0.80425
    // E4 closed form for a latitude: 4 pi r^2 z0^4 - 6 pi r^4 z0^2
    const double e4_exact = 4.0 * kPi * r * r * std::pow(z0, 4) - 6.0 * kPi * std::pow(r, 4) * z0 * z0;
    REQUIRE(e4(u) == Catch::Approx(e4_exact).margin(1e-10));
}

TEST_CASE("energies of a constant loop vanish") {
    LoopMap u(TargetGeometry::sphere2(), GridSpec(32));
    for (std::size_t j = 0; j < u.nodes(); ++j) u.point(j)[2] = 1.0;
    const EnergyReport r = energy_report(u);
    REQUIRE(r.e1 == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(r.e2 == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(r.e3 == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(r.e4 == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("latitude E4 agrees with a fine-grid evaluation") {
    const LoopMap coarse = make_latitude(GridSpec(64), 0.8);
    const LoopMap fine = make_latitude(GridSpec(4096), 0.8);
    REQUIRE(e4(coarse) == Catch::Approx(e4(fine)).margin(1e-10));
}

TEST_CASE("drift series: trivial examples") {
    std::vector<EnergyReport> constant{{0.0, 1.0, 2.0, 3.0, 4.0}};
    DriftSummary d = drift_series(constant);
    REQUIRE(d.e1_drift == 0.0);
    REQUIRE(d.e2_drift == 0.0);
    REQUIRE(d.e3_drift == 0.0);
    REQUIRE(d.e4_bound_ok);

    std::vector<EnergyReport> pair{{0.0, 1.0, 0.0, 0.0, 0.0}, {1.0, 1.0 + 1e-5, 0.0, 0.0, 0.0}};
    d = drift_series(pair);
    REQUIRE(d.e1_drift == Catch::Approx(1e-5));
}

TEST_CASE("drift series: E4 envelope flags runaway growth and accepts bounded growth") {
    std::vector<EnergyReport> ok;
    std::vector<EnergyReport> bad;
    for (int k = 0; k <= 40; ++k) {
        const double t = 0.005 * k;
        EnergyReport r;
        r.t = t;
        r.e4 = std::exp(0.3 * t) - 1.0;  // exactly the fitted exponential envelope
        ok.push_back(r);
        EnergyReport rb;
        rb.t = t;
        rb.e4 = t <= 0.1 ? 0.0 : std::exp(25.0 * (t - 0.1)) - 1.0;  // silent then explosive
        bad.push_back(rb);
    }
    REQUIRE(drift_series(ok).e4_bound_ok);
    REQUIRE_FALSE(drift_series(bad).e4_bound_ok);
}

TEST_CASE("conservation on the sphere over a short horizon") {
    const LoopMap u0 = make_perturbed_latitude(GridSpec(64), 0.8, 0.05, 3);
    FlowParams p;
    p.alpha = 1.0;
    p.beta = 1.0;
    const auto reports = collect_energies(u0, p, 0.05, 0.0, 10);
    const DriftSummary d = drift_series(reports);
    REQUIRE(d.e1_drift <= 1e-4);
    REQUIRE(d.e2_drift <= 1e-4);
    REQUIRE(d.e3_drift <= 1e-4);
    REQUIRE(d.e4_bound_ok);
}

TEST_CASE("conservation on the flat torus and the Poincare disk, with dt halving") {
    FlowParams p;
    p.alpha = 1.0;
    p.beta = 1.0;
    const GridSpec grid(64);
    const double dt = stability_dt(p, grid);
    for (const auto& g : {TargetGeometry::flat_torus2(), TargetGeometry::poincare_disk()}) {
        const LoopMap u0 = make_bump_loop(g, grid, 0.5, 0.4);
        const DriftSummary coarse = drift_series(collect_energies(u0, p, 0.05, dt, 50));
        const DriftSummary fine = drift_series(collect_energies(u0, p, 0.05, 0.5 * dt, 100));
        INFO(g.name());
        REQUIRE(coarse.e1_drift <= 1e-4);
        REQUIRE(coarse.e2_drift <= 1e-4);
        REQUIRE(coarse.e3_drift <= 1e-4);
        REQUIRE(coarse.e4_bound_ok);
        REQUIRE(coarse.e1_drift > 1e-13);  // above roundoff, the ratio is meaningful
        REQUIRE(fine.e1_drift <= coarse.e1_drift / 4.0);
        REQUIRE(fine.e2_drift <= coarse.e2_drift / 4.0);
        REQUIRE(fine.e3_drift <= coarse.e3_drift / 4.0);
    }
}

TEST_CASE("halving dt shrinks the drift by at least four") {
    const LoopMap u0 = make_perturbed_latitude(GridSpec(64), 0.8, 0.1, 4);
    FlowParams p;
    p.alpha = 1.0;
    p.beta = 1.0;
    const double dt = stability_dt(p, GridSpec(64));
    const double t_end = 0.02;
    const DriftSummary coarse = drift_series(collect_energies(u0, p, t_end, dt, 5));
    const DriftSummary fine = drift_series(collect_energies(u0, p, t_end, 0.5 * dt, 10));
    REQUIRE(coarse.e1_drift > 1e-14);  // above roundoff so the ratio is meaningful
    REQUIRE(fine.e1_drift <= coarse.e1_drift / 4.0);
    REQUIRE(fine.e3_drift <= coarse.e3_drift / 4.0);
}

TEST_CASE("dE3/dt matches the curvature production integral (which vanishes)") {
    const LoopMap u0 = make_perturbed_latitude(GridSpec(64), 0.8, 0.08, 3);
    FlowParams p;
    p.alpha = 1.0;
    p.beta = 1.0;

    // the integrand <R(nabla u_x, u_x)u_x, R(u_x, Ju_x)Ju_x> is pointwise zero
    // on space forms, so the production rate must vanish to rounding
    REQUIRE(std::abs(e3_production_rate(u0, p.beta)) <= 1e-12);

    // and the measured E3(t) matches E3(0) + integral of the (zero) rate
    StepperConfig cfg;
    cfg.t_end = 0.02;
    cfg.energy_stride = 20;
    std::vector<EnergyReport> reports;
    std::vector<double> rates;
    EvolveSinks sinks;
    sinks.on_energy = [&](const EnergyReport& r) { reports.push_back(r); };
    sinks.on_snapshot = [&](double, std::size_t, const LoopMap& u) {
        rates.push_back(e3_production_rate(u, p.beta));
    };
    cfg.snapshot_stride = 20;
    const EvolveResult res = evolve(u0, p, cfg, sinks);
    REQUIRE(!res.blew_up);
    double cumulative = 0.0;
    const double scale = std::max(std::abs(reports.front().e3), 1.0);
    for (std::size_t k = 1; k < reports.size(); ++k) {
        cumulative += 0.5 * (rates[k - 1] + rates[k]) * (reports[k].t - reports[k - 1].t);
        REQUIRE(std::abs(reports[k].e3 - reports.front().e3 - cumulative) <= 1e-4 * scale);
    }
}

TEST_CASE("E1 decays monotonically under the parabolic regularization") {
    const LoopMap u0 = make_perturbed_latitude(GridSpec(32), 0.8, 0.1, 3);
    FlowParams p;
    p.alpha = 1.0;
    p.beta = 1.0;
    p.epsilon = 1e-3;
    const auto reports = collect_energies(u0, p, 0.01, 0.0, 5);
    const double slack = 1e-8 * std::max(1.0, std::abs(reports.front().e1));
    for (std::size_t k = 1; k < reports.size(); ++k)
        REQUIRE(reports[k].e1 <= reports[k - 1].e1 + slack);
    // and it genuinely dissipates
    REQUIRE(reports.back().e1 < reports.front().e1);
}
