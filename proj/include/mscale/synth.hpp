// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mscale contributors

#ifndef MSCALE_SYNTH_HPP
#define MSCALE_SYNTH_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "mscale/util.hpp"

namespace mscale {
namespace detail {

// In-place iterative radix-2 FFT; length must be a power of two.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) throw structural_error("fft: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        for (auto& x : a) x /= static_cast<double>(n);
    }
}

}  // namespace detail

/// Fractional Gaussian noise autocovariance at lag k (unit variance).
inline double fgn_autocov(int k, double hurst) {
    const double ak = std::abs(static_cast<double>(k));
    const double h2 = 2.0 * hurst;
    return 0.5 * (std::pow(ak + 1.0, h2) - 2.0 * std::pow(ak, h2) + std::pow(std::abs(ak - 1.0), h2));
}

/// Exact fractional Brownian motion sample by Davies-Harte circulant
/// embedding.  Returns n values B(1), ..., B(n) on the unit-increment grid
/// (cumulative sum of fGn).  0 < hurst < 1.
inline std::vector<double> synth_fbm(std::size_t n, double hurst, std::uint64_t seed) {
    if (n == 0) throw config_error("synth_fbm: n must be positive");
    if (!(hurst > 0.0 && hurst < 1.0)) throw config_error("synth_fbm: hurst must be in (0, 1)");
    std::size_t m = 2;
    while (m < 2 * n) m <<= 1;  // embedding size, power of two

    std::vector<std::complex<double>> eig(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t lag = (k <= m / 2) ? k : m - k;
        eig[k] = fgn_autocov(static_cast<int>(lag), hurst);
    }
    detail::fft_pow2(eig, false);

    Rng rng = derive_rng(seed, 0x66626d);
    std::vector<std::complex<double>> v(m);
    for (std::size_t k = 0; k <= m / 2; ++k) {
        double lambda = eig[k].real();
        if (lambda < 0.0) {
            // The fGn embedding is provably nonnegative definite; tolerate
            // rounding-level negatives only.
            if (lambda < -1e-8 * std::abs(eig[0].real())) {
                throw estimation_error("synth_fbm: circulant embedding not nonnegative definite");
            }
            lambda = 0.0;
        }
        if (k == 0 || k == m / 2) {
            v[k] = std::sqrt(lambda) * rng.normal();
        } else {
            const double scale = std::sqrt(lambda / 2.0);
            v[k] = std::complex<double>(scale * rng.normal(), scale * rng.normal());
            v[m - k] = std::conj(v[k]);
        }
    }
    detail::fft_pow2(v, false);

    std::vector<double> path(n);
    double acc = 0.0;
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t i = 0; i < n; ++i) {
        acc += v[i].real() * norm;  // fGn increment
        path[i] = acc;
    }
    return path;
}

/// Deterministic binomial multiplicative cascade measure at dyadic
/// resolution `depth`: the 2^depth cell masses of the measure that splits
/// every interval's mass into fractions p (left child) and 1-p (right).
inline std::vector<double> cascade_masses(int depth, double p) {
    if (depth < 1 || depth > 26) throw config_error("cascade_masses: depth must be in 1..26");
    if (!(p > 0.0 && p < 1.0)) throw config_error("cascade_masses: p must be in (0, 1)");
    std::vector<double> mass{1.0};
    for (int d = 0; d < depth; ++d) {
        std::vector<double> next(mass.size() * 2);
        for (std::size_t i = 0; i < mass.size(); ++i) {
            next[2 * i] = mass[i] * p;
            next[2 * i + 1] = mass[i] * (1.0 - p);
        }
        mass = std::move(next);
    }
    return mass;
}

/// Closed-form partition function of the cascade increment signal analyzed
/// with the library pipeline (L1-normalized coefficients, mean-based moments,
/// canonical fine-increasing scale index):  T(q) = 1 - q - log2(p^q + (1-p)^q).
inline double cascade_partition_function(double q, double p) {
    return 1.0 - q - std::log2(std::pow(p, q) + std::pow(1.0 - p, q));
}

/// Local singularity strength alpha(q) = T'(q) of the same construction.
inline double cascade_alpha(double q, double p) {
    const double a = std::pow(p, q);
    const double b = std::pow(1.0 - p, q);
    return -1.0 - (a * std::log(p) + b * std::log(1.0 - p)) / ((a + b) * std::log(2.0));
}

/// Legendre spectrum value f(alpha(q)) = q * alpha(q) - T(q).
inline double cascade_spectrum(double q, double p) {
    return q * cascade_alpha(q, p) - cascade_partition_function(q, p);
}

/// Gaussian white noise, n iid N(0,1) samples.
inline std::vector<double> synth_noise(std::size_t n, std::uint64_t seed) {
    Rng rng = derive_rng(seed, 0x6e6f6973);
    std::vector<double> out(n);
    for (auto& x : out) x = rng.normal();
    return out;
}

}  // namespace mscale

#endif  // MSCALE_SYNTH_HPP
