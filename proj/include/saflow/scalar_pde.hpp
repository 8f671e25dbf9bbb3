#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "saflow/flow.hpp"
#include "saflow/loop.hpp"

namespace saflow {

/// Coefficients of the constant-curvature reduced scalar equation
///   Psi_t = i alpha (Psi_xx + (K/2)|Psi|^2 Psi)
///           + beta (Psi_xxx + (3K/2)|Psi|^2 Psi_x) + gamma (|Psi|^2 Psi)_x.
struct ScalarParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double K = 0.0;
};

namespace detail {

/// Linear dispersion symbol per mode: L_k = -i (alpha k^2 + beta k^3); the
/// cubic part is zeroed at the Nyquist bin (odd-symbol convention).
inline std::vector<Complex> dispersion_symbol(const ScalarParams& p, std::size_t m) {
    std::vector<Complex> L(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double kap = static_cast<double>(fft_wavenumber(k, m));
        const double cubic = (m % 2 == 0 && k == m / 2) ? 0.0 : p.beta * kap * kap * kap;
        L[k] = Complex(0.0, -(p.alpha * kap * kap + cubic));
    }
    return L;
}

/// 2/3-rule mask: zero every mode with |k| > m/3.
inline void dealias(std::span<Complex> spec) {
    const std::size_t m = spec.size();
    const double cutoff = static_cast<double>(m) / 3.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (std::abs(static_cast<double>(fft_wavenumber(k, m))) > cutoff) spec[k] = 0.0;
    }
}

/// Spectrum of the dealiased nonlinear part
///   N = i alpha (K/2)|Psi|^2 Psi + beta (3K/2)|Psi|^2 Psi_x + gamma (|Psi|^2 Psi)_x
/// given the state spectrum v.
inline std::vector<Complex> nonlinear_spectrum(std::span<const Complex> v, const ScalarParams& p) {
    const std::size_t m = v.size();
    std::vector<Complex> psi(v.begin(), v.end());
    fft_inplace(psi, true);
    std::vector<Complex> psix(v.begin(), v.end());
    apply_derivative_symbol(psix, 1);
    fft_inplace(psix, true);

    std::vector<Complex> cubic(m), steep(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double w = std::norm(psi[j]);
        cubic[j] = w * psi[j];
        steep[j] = w * psix[j];
    }
    fft_inplace(cubic);
    dealias(cubic);
    fft_inplace(steep);
    dealias(steep);

    std::vector<Complex> out(m);
    const Complex ia(0.0, p.alpha);
    for (std::size_t k = 0; k < m; ++k)
        out[k] = ia * (0.5 * p.K) * cubic[k] + p.beta * (1.5 * p.K) * steep[k];
    if (p.gamma != 0.0) {
        apply_derivative_symbol(cubic, 1);  // gamma (|Psi|^2 Psi)_x from the masked product
        for (std::size_t k = 0; k < m; ++k) out[k] += p.gamma * cubic[k];
    }
    return out;
}

}  // namespace detail

/// Full right-hand side at the nodes (linear dispersion plus dealiased
/// nonlinearity); mainly a test surface, the stepper works in spectral space.
inline ComplexLoop scalar_rhs(const ComplexLoop& psi, const ScalarParams& p) {
    const std::size_t m = psi.grid.m;
    std::vector<Complex> v(psi.values);
    fft_inplace(v);
    std::vector<Complex> rhs = detail::nonlinear_spectrum(v, p);
    const std::vector<Complex> L = detail::dispersion_symbol(p, m);
    for (std::size_t k = 0; k < m; ++k) rhs[k] += L[k] * v[k];
    fft_inplace(rhs, true);
    return ComplexLoop(psi.grid, std::move(rhs));
}

/// L^2 mass, the solver health invariant of the whole family.
inline double mass(const ComplexLoop& psi) {
    double s = 0.0;
    for (const Complex& v : psi.values) s += std::norm(v);
    return s * psi.grid.dx();
}

/// Plane-wave frequency of Psi = A exp(i(kx - omega t)) under the reduced
/// equation. The measured phase slope of the solver equals -omega; the sign is
/// frozen by a plane-wave regression test.
inline double plane_wave_frequency(double A, double k, const ScalarParams& p) {
    const double A2 = A * A;
    return p.alpha * (k * k - 0.5 * p.K * A2) + p.beta * (k * k * k - 1.5 * p.K * A2 * k) -
           p.gamma * A2 * k;
}

inline constexpr double kScalarDefaultDt = 5e-4;

struct ScalarEvolveResult {
    ComplexLoop final_state;
    double t = 0.0;
    std::size_t steps = 0;
    double dt = 0.0;
    bool blew_up = false;
    std::string blowup_reason;
};

/// Integrating-factor RK4: the stiff dispersion is solved exactly per mode,
/// RK4 handles only the nonlinear remainder, so there is no k^3 step-size
/// limit. dt <= 0 selects the default.
inline ScalarEvolveResult evolve_scalar(
    const ComplexLoop& psi0, const ScalarParams& p, const StepperConfig& cfg,
    const std::function<void(double, std::size_t, const ComplexLoop&)>& on_snapshot = {}) {
    const std::size_t m = psi0.grid.m;
    const double dt_full = cfg.dt > 0.0 ? cfg.dt : kScalarDefaultDt;

    ScalarEvolveResult res{psi0, 0.0, 0, dt_full, false, {}};
    if (on_snapshot) on_snapshot(0.0, 0, res.final_state);
    if (cfg.t_end <= 0.0) return res;

    const std::size_t n_full = static_cast<std::size_t>(std::floor(cfg.t_end / dt_full + 1e-9));
    const double remainder = cfg.t_end - static_cast<double>(n_full) * dt_full;
    const std::size_t n_total = n_full + (remainder > dt_full * 1e-9 ? 1 : 0);

    std::vector<Complex> v(psi0.values);
    fft_inplace(v);
    const std::vector<Complex> L = detail::dispersion_symbol(p, m);

    std::vector<Complex> E(m), E2(m);
    double last_h = -1.0;
    const auto set_factors = [&](double h) {
        if (h == last_h) return;
        last_h = h;
        for (std::size_t k = 0; k < m; ++k) {
            E[k] = std::exp(L[k] * (0.5 * h));
            E2[k] = E[k] * E[k];
        }
    };

    std::vector<Complex> a(m), b(m), c(m), n1(m), n2(m), n3(m), n4(m);
    for (std::size_t step_i = 0; step_i < n_total; ++step_i) {
        const double h = step_i < n_full ? dt_full : remainder;
        set_factors(h);
        n1 = detail::nonlinear_spectrum(v, p);
        for (std::size_t k = 0; k < m; ++k) a[k] = E[k] * (v[k] + 0.5 * h * n1[k]);
        n2 = detail::nonlinear_spectrum(a, p);
        for (std::size_t k = 0; k < m; ++k) b[k] = E[k] * v[k] + 0.5 * h * n2[k];
        n3 = detail::nonlinear_spectrum(b, p);
        for (std::size_t k = 0; k < m; ++k) c[k] = E2[k] * v[k] + h * E[k] * n3[k];
        n4 = detail::nonlinear_spectrum(c, p);
        for (std::size_t k = 0; k < m; ++k) {
            v[k] = E2[k] * v[k] +
                   h / 6.0 * (E2[k] * n1[k] + 2.0 * E[k] * (n2[k] + n3[k]) + n4[k]);
        }

        res.t += h;
        res.steps = step_i + 1;
        std::vector<Complex> phys(v);
        fft_inplace(phys, true);
        for (std::size_t j = 0; j < m; ++j) {
            if (!std::isfinite(phys[j].real()) || !std::isfinite(phys[j].imag()) ||
                std::abs(phys[j]) > kBlowupCoordinateLimit) {
                res.blew_up = true;
                res.blowup_reason = "scalar blow-up at node " + std::to_string(j) +
                                    ", last valid time t = " +
                                    std::to_string(res.t - h);
                return res;
            }
        }
        res.final_state.values = std::move(phys);
        if (on_snapshot && cfg.snapshot_stride > 0 && res.steps % cfg.snapshot_stride == 0)
            on_snapshot(res.t, res.steps, res.final_state);
    }
    if (on_snapshot && !(cfg.snapshot_stride > 0 && res.steps % cfg.snapshot_stride == 0))
        on_snapshot(res.t, res.steps, res.final_state);
    return res;
}

/// Maps the five-coefficient Schrodinger-Airy form
///   u_t + i l1 u_xx + l2 u_xxx + i l3 |u|^2 u + l4 |u|^2 u_x + l5 u^2 conj(u)_x = 0
/// onto (alpha, beta, gamma, K) where representable; combinations outside the
/// constant-curvature family are rejected.
inline ScalarParams scalar_params_from_schrodinger_airy(double l1, double l2, double l3,
                                                        double l4, double l5) {
    ScalarParams p;
    p.alpha = -l1;
    p.beta = -l2;
    p.gamma = -l5;
    if (l1 != 0.0) {
        p.K = 2.0 * l3 / l1;
    } else if (l3 != 0.0) {
        throw std::invalid_argument(
            "schrodinger-airy coefficients not representable: cubic term without u_xx term");
    } else if (l2 != 0.0) {
        p.K = 2.0 * (l4 - 2.0 * l5) / (3.0 * l2);
    } else {
        p.K = 0.0;
    }
    // the |u|^2 u_x coefficient is slaved to (beta, gamma, K); reject mismatches
    const double expected_l4 = 1.5 * p.K * l2 + 2.0 * l5;
    const double scale = std::max({std::abs(l1), std::abs(l2), std::abs(l3), std::abs(l4),
                                   std::abs(l5), 1.0});
    if (std::abs(l4 - expected_l4) > 1e-12 * scale)
        throw std::invalid_argument(
            "schrodinger-airy coefficients not representable: |u|^2 u_x term inconsistent with "
            "the constant-curvature family");
    return p;
}

}  // namespace saflow
