#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace saflow {

using Complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

/// Twiddle factors and bit-reversal permutation for one transform size.
struct FftPlan {
    std::vector<Complex> twiddle;  // exp(-2*pi*i*k/m), k < m/2
    std::vector<std::size_t> bitrev;

    explicit FftPlan(std::size_t m) : twiddle(m / 2), bitrev(m) {
        for (std::size_t k = 0; k < m / 2; ++k) {
            const double phi = -two_pi * static_cast<double>(k) / static_cast<double>(m);
            twiddle[k] = Complex(std::cos(phi), std::sin(phi));
        }
        std::size_t log2m = 0;
        while ((std::size_t{1} << log2m) < m) ++log2m;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2m; ++b) {
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2m - 1 - b);
            }
            bitrev[i] = r;
        }
    }
};

inline const FftPlan& fft_plan(std::size_t m) {
    thread_local std::unordered_map<std::size_t, FftPlan> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, FftPlan(m)).first;
    return it->second;
}

}  // namespace detail

/// Iterative radix-2 FFT. Forward transform is unnormalized; the inverse
/// divides by the length. The length must be a power of two.
inline void fft_inplace(std::span<Complex> a, bool inverse = false) {
    const std::size_t m = a.size();
    if (!is_power_of_two(m)) throw std::invalid_argument("fft: length must be a power of two");
    if (m == 1) return;
    const auto& plan = detail::fft_plan(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = plan.bitrev[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t stride = m / len;
        for (std::size_t start = 0; start < m; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                Complex w = plan.twiddle[k * stride];
                if (inverse) w = std::conj(w);
                const Complex odd = a[start + k + half] * w;
                a[start + k + half] = a[start + k] - odd;
                a[start + k] += odd;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(m);
        for (auto& v : a) v *= scale;
    }
}

/// Signed wavenumber of FFT bin k (k <= m/2 maps to k, higher bins to k - m).
inline long long fft_wavenumber(std::size_t k, std::size_t m) {
    return k <= m / 2 ? static_cast<long long>(k)
                      : static_cast<long long>(k) - static_cast<long long>(m);
}

/// Multiplies a spectrum by (i*kappa)^order. The Nyquist bin is zeroed for odd
/// orders (standard convention for real odd derivatives; keeps output real and
/// avoids asymmetric aliasing).
inline void apply_derivative_symbol(std::span<Complex> spec, int order) {
    const std::size_t m = spec.size();
    for (std::size_t k = 0; k < m; ++k) {
        const double kappa = static_cast<double>(fft_wavenumber(k, m));
        if (m % 2 == 0 && k == m / 2 && order % 2 != 0) {
            spec[k] = 0.0;
            continue;
        }
        Complex factor = 1.0;
        const Complex ik(0.0, kappa);
        for (int p = 0; p < order; ++p) factor *= ik;
        spec[k] *= factor;
    }
}

/// Spectral derivative of real periodic samples on [0, 2pi). Exact for
/// band-limited input with highest mode < m/2.
inline std::vector<double> spectral_derivative(std::span<const double> f, int order = 1) {
    const std::size_t m = f.size();
    std::vector<Complex> spec(f.begin(), f.end());
    fft_inplace(spec);
    apply_derivative_symbol(spec, order);
    fft_inplace(spec, true);
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = spec[j].real();
    return out;
}

/// Derivative of one interleaved component (stride `dim`, offset `comp`) of a
/// real periodic multi-component field, written back with the same layout.
inline void spectral_derivative_strided(std::span<const double> data, std::span<double> out,
                                        std::size_t m, std::size_t dim, std::size_t comp,
                                        std::vector<Complex>& scratch, int order = 1) {
    scratch.resize(m);
    for (std::size_t j = 0; j < m; ++j) scratch[j] = data[j * dim + comp];
    fft_inplace(scratch);
    apply_derivative_symbol(scratch, order);
    fft_inplace(scratch, true);
    for (std::size_t j = 0; j < m; ++j) out[j * dim + comp] = scratch[j].real();
}

/// Trigonometric interpolation of real periodic samples at the shifted nodes
/// x_j + delta. The Nyquist bin picks up cos(kappa*delta) so the result stays real.
inline std::vector<double> spectral_shift(std::span<const double> f, double delta) {
    const std::size_t m = f.size();
    std::vector<Complex> spec(f.begin(), f.end());
    fft_inplace(spec);
    for (std::size_t k = 0; k < m; ++k) {
        const double kappa = static_cast<double>(fft_wavenumber(k, m));
        if (m % 2 == 0 && k == m / 2) {
            spec[k] *= std::cos(kappa * delta);
        } else {
            spec[k] *= Complex(std::cos(kappa * delta), std::sin(kappa * delta));
        }
    }
    fft_inplace(spec, true);
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = spec[j].real();
    return out;
}

/// Zero-mean periodic antiderivative of (f - mean f): divides nonzero modes by
/// i*kappa and drops the mean and Nyquist bins.
inline std::vector<double> spectral_antiderivative(std::span<const double> f) {
    const std::size_t m = f.size();
    std::vector<Complex> spec(f.begin(), f.end());
    fft_inplace(spec);
    spec[0] = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
        const double kappa = static_cast<double>(fft_wavenumber(k, m));
        if (m % 2 == 0 && k == m / 2) {
            spec[k] = 0.0;
        } else {
            spec[k] /= Complex(0.0, kappa);
        }
    }
    fft_inplace(spec, true);
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = spec[j].real();
    return out;
}

/// Mean of periodic samples (the zeroth Fourier coefficient).
inline double periodic_mean(std::span<const double> f) {
    double s = 0.0;
    for (double v : f) s += v;
    return s / static_cast<double>(f.size());
}

}  // namespace saflow
