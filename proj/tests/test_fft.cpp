#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "saflow/fft.hpp"

using namespace saflow;

namespace {

// Independent O(n^2) DFT oracle.
std::vector<Complex> naive_dft(const std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double phi = sign * two_pi * static_cast<double>(k * j) / static_cast<double>(n);
            out[k] += a[j] * Complex(std::cos(phi), std::sin(phi));
        }
        if (inverse) out[k] /= static_cast<double>(n);
    }
    return out;
}

}  // namespace

TEST_CASE("fft matches the naive DFT oracle") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t n : {16u, 64u, 256u}) {
        std::vector<Complex> a(n);
        for (auto& v : a) v = Complex(g(rng), g(rng));
        std::vector<Complex> expect = naive_dft(a, false);
        std::vector<Complex> got = a;
        fft_inplace(got);
        double scale = 0.0;
        for (const auto& v : expect) scale = std::max(scale, std::abs(v));
        for (std::size_t k = 0; k < n; ++k)
            REQUIRE(std::abs(got[k] - expect[k]) <= 1e-12 * scale);
    }
}

TEST_CASE("fft round trip is the identity") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> a(128);
    for (auto& v : a) v = Complex(g(rng), g(rng));
    std::vector<Complex> b = a;
    fft_inplace(b);
    fft_inplace(b, true);
    for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(std::abs(b[k] - a[k]) < 1e-13);
}

TEST_CASE("fft rejects non-power-of-two lengths") {
    std::vector<Complex> a(24);
    REQUIRE_THROWS_AS(fft_inplace(a), std::invalid_argument);
}

TEST_CASE("spectral derivative is exact for band-limited input") {
    const std::size_t m = 64;
    std::vector<double> f(m), expect(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = two_pi * static_cast<double>(j) / static_cast<double>(m);
        f[j] = std::sin(3.0 * x) + 0.5 * std::cos(7.0 * x);
        expect[j] = 3.0 * std::cos(3.0 * x) - 3.5 * std::sin(7.0 * x);
    }
    const std::vector<double> d = spectral_derivative(f);
    for (std::size_t j = 0; j < m; ++j) REQUIRE(d[j] == Catch::Approx(expect[j]).margin(1e-12));
}

TEST_CASE("derivative of a constant vanishes") {
    std::vector<double> f(32, 4.25);
    for (double v : spectral_derivative(f)) REQUIRE(std::abs(v) < 1e-13);
}

TEST_CASE("Nyquist mode is zeroed by odd derivatives") {
    const std::size_t m = 32;
    std::vector<double> f(m);
    for (std::size_t j = 0; j < m; ++j)
        f[j] = std::cos(static_cast<double>(m / 2) * two_pi * static_cast<double>(j) /
                        static_cast<double>(m));
    for (double v : spectral_derivative(f, 1)) REQUIRE(std::abs(v) < 1e-12);
    for (double v : spectral_derivative(f, 3)) REQUIRE(std::abs(v) < 1e-10);
    // even orders keep the mode
    const std::vector<double> d2 = spectral_derivative(f, 2);
    double biggest = 0.0;
    for (double v : d2) biggest = std::max(biggest, std::abs(v));
    REQUIRE(biggest > 1.0);
}

TEST_CASE("spectral shift interpolates trigonometric data") {
    const std::size_t m = 64;
    std::vector<double> f(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = two_pi * static_cast<double>(j) / static_cast<double>(m);
        f[j] = std::cos(2.0 * x) - 0.25 * std::sin(5.0 * x);
    }
    const double delta = 0.2137;
    const std::vector<double> s = spectral_shift(f, delta);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = two_pi * static_cast<double>(j) / static_cast<double>(m) + delta;
        REQUIRE(s[j] == Catch::Approx(std::cos(2.0 * x) - 0.25 * std::sin(5.0 * x)).margin(1e-12));
    }
}

TEST_CASE("antiderivative inverts the derivative on mean-free data") {
    const std::size_t m = 64;
    std::vector<double> f(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = two_pi * static_cast<double>(j) / static_cast<double>(m);
        f[j] = std::sin(x) + 0.3 * std::cos(4.0 * x);
    }
    const std::vector<double> a = spectral_antiderivative(f);
    const std::vector<double> d = spectral_derivative(a);
    for (std::size_t j = 0; j < m; ++j) REQUIRE(d[j] == Catch::Approx(f[j]).margin(1e-12));
}
