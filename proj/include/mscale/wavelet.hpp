// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mscale contributors

#ifndef MSCALE_WAVELET_HPP
#define MSCALE_WAVELET_HPP

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "mscale/util.hpp"

namespace mscale {

enum class WaveletFamily { Haar, Daubechies };

enum class Normalization { L2, L1 };

/// Orthogonal analysis filter pair.  `low_pass` holds the scaling filter h
/// (sum = sqrt(2)), `high_pass` the quadrature mirror g_k = (-1)^k h_{L-1-k}.
struct FilterPair {
    WaveletFamily family = WaveletFamily::Haar;
    int order = 1;  // vanishing moments
    std::vector<double> low_pass;
    std::vector<double> high_pass;

    int taps() const { return static_cast<int>(low_pass.size()); }
    std::string name() const {
        return family == WaveletFamily::Haar ? "haar" : "db" + std::to_string(order);
    }
};

namespace detail {

// Roots of a complex-coefficient polynomial by Durand-Kerner iteration with a
// Newton polish.  Coefficients in ascending powers; leading coefficient must
// be nonzero.  Degrees here are tiny (<= 9 for db10).
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& raw) {
    using cd = std::complex<double>;
    const int deg = static_cast<int>(raw.size()) - 1;
    // Durand-Kerner needs a monic polynomial.
    std::vector<double> coeffs(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) coeffs[i] = raw[i] / raw.back();
    std::vector<cd> roots(deg);
    cd seed(0.4, 0.9);
    cd z(1.0, 0.0);
    for (int i = 0; i < deg; ++i) {
        z *= seed;
        roots[i] = z;
    }
    auto eval = [&](cd x) {
        cd v(0.0, 0.0);
        for (int k = deg; k >= 0; --k) v = v * x + coeffs[static_cast<std::size_t>(k)];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0.0;
        for (int i = 0; i < deg; ++i) {
            cd denom(1.0, 0.0);
            for (int j = 0; j < deg; ++j) {
                if (j != i) denom *= roots[i] - roots[j];
            }
            const cd delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-15) break;
    }
    // Newton refinement squeezes out the last couple of bits.
    auto deriv = [&](cd x) {
        cd v(0.0, 0.0);
        for (int k = deg; k >= 1; --k) v = v * x + coeffs[static_cast<std::size_t>(k)] * static_cast<double>(k);
        return v;
    };
    for (auto& r : roots) {
        for (int it = 0; it < 8; ++it) {
            const cd d = deriv(r);
            if (std::abs(d) == 0.0) break;
            r -= eval(r) / d;
        }
    }
    return roots;
}

// Minimal-phase Daubechies scaling filter with `p` vanishing moments via
// spectral factorization of the Daubechies polynomial
//   P(y) = sum_{k=0}^{p-1} C(p-1+k, k) y^k.
// Each root y of P maps to a quadratic z^2 + (4y-2) z + 1 = 0; the root with
// |z| < 1 is kept, which selects the minimal-phase factor.
inline std::vector<double> daubechies_taps(int p) {
    using cd = std::complex<double>;
    if (p == 1) {
        const double s = 1.0 / std::sqrt(2.0);
        return {s, s};
    }
    std::vector<double> poly(static_cast<std::size_t>(p), 0.0);
    double binom = 1.0;  // C(p-1+k, k), k = 0
    for (int k = 0; k < p; ++k) {
        poly[static_cast<std::size_t>(k)] = binom;
        binom = binom * static_cast<double>(p + k) / static_cast<double>(k + 1);
    }
    const auto y_roots = polynomial_roots(poly);

    std::vector<cd> q{cd(1.0, 0.0)};  // product of (z - z_i), ascending powers
    for (const cd& y : y_roots) {
        const cd b = 4.0 * y - 2.0;
        const cd disc = std::sqrt(b * b - 4.0);
        cd z1 = (-b + disc) / 2.0;
        cd z2 = (-b - disc) / 2.0;
        const cd zi = (std::abs(z1) < std::abs(z2)) ? z1 : z2;
        std::vector<cd> next(q.size() + 1, cd(0.0, 0.0));
        for (std::size_t i = 0; i < q.size(); ++i) {
            next[i] += q[i] * (-zi);
            next[i + 1] += q[i];
        }
        q = std::move(next);
    }

    // h(z) proportional to (1+z)^p * Q(z).
    std::vector<double> h(static_cast<std::size_t>(2 * p), 0.0);
    std::vector<double> bin(static_cast<std::size_t>(p) + 1, 0.0);
    bin[0] = 1.0;
    for (int k = 1; k <= p; ++k) bin[static_cast<std::size_t>(k)] = bin[static_cast<std::size_t>(k - 1)] * static_cast<double>(p - k + 1) / static_cast<double>(k);
    for (std::size_t i = 0; i < bin.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) {
            h[i + j] += bin[i] * q[j].real();
        }
    }
    double sum = 0.0;
    for (double v : h) sum += v;
    const double scale = std::sqrt(2.0) / sum;
    for (double& v : h) v *= scale;
    // Classical extremal-phase orientation: energy concentrated in the
    // leading taps (h[0] = (1+sqrt(3))/(4 sqrt(2)) for p = 2).
    std::reverse(h.begin(), h.end());
    return h;
}

}  // namespace detail

/// Build an orthonormal filter pair.  Haar ignores `order`; Daubechies
/// supports 1..10 vanishing moments (db1 == Haar).
inline FilterPair make_filter(WaveletFamily family, int order = 1) {
    FilterPair f;
    f.family = family;
    f.order = order;
    if (family == WaveletFamily::Haar) {
        f.order = 1;
        f.low_pass = detail::daubechies_taps(1);
    } else if (family == WaveletFamily::Daubechies) {
        if (order < 1 || order > 10) {
            throw config_error("unsupported wavelet: Daubechies order " + std::to_string(order) +
                               " (supported: 1..10)");
        }
        f.low_pass = detail::daubechies_taps(order);
    } else {
        throw config_error("unsupported wavelet family");
    }
    const int n = f.taps();
    f.high_pass.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        f.high_pass[static_cast<std::size_t>(k)] = sign * f.low_pass[static_cast<std::size_t>(n - 1 - k)];
    }
    return f;
}

/// Parse wavelet names of the form "haar", "db1".."db10".
inline FilterPair make_filter(const std::string& name) {
    if (name == "haar") return make_filter(WaveletFamily::Haar);
    if (name.size() > 2 && name.compare(0, 2, "db") == 0) {
        int order = 0;
        try {
            order = std::stoi(name.substr(2));
        } catch (const std::exception&) {
            throw config_error("unsupported wavelet: " + name);
        }
        return make_filter(WaveletFamily::Daubechies, order);
    }
    throw config_error("unsupported wavelet: " + name);
}

/// Multiresolution decomposition of a dyadic-length signal.
///
/// Scale indexing: level j = 1 is the coarsest detail (one coefficient for a
/// fully decomposed signal), level j = J = log2(n) is the finest; level j
/// holds 2^{j-1} coefficients.  A depth-D decomposition produces levels
/// J-D+1 .. J plus a smooth vector of length 2^{J-D}.
struct WaveletDecomposition {
    std::vector<double> smooth;
    std::map<int, std::vector<double>> details;  // canonical level -> coefficients
    std::size_t n = 0;                           // original signal length (2^J)
    FilterPair filter;
    Normalization normalization = Normalization::L2;

    int total_levels() const { return ilog2(n); }
    int coarsest_level() const { return details.empty() ? 0 : details.begin()->first; }
    int finest_level() const { return details.empty() ? 0 : details.rbegin()->first; }
    bool has_level(int j) const { return details.count(j) > 0; }

    double total_energy() const {
        double e = 0.0;
        for (double c : smooth) e += c * c;
        for (const auto& [j, d] : details) {
            (void)j;
            for (double c : d) e += c * c;
        }
        return e;
    }
};

namespace detail {

// One analysis stage with periodic (circular) boundary handling; n even.
inline void analysis_step(const std::vector<double>& c, const FilterPair& f,
                          std::vector<double>& smooth, std::vector<double>& det) {
    const std::size_t n = c.size();
    const std::size_t half = n / 2;
    const int taps = f.taps();
    smooth.assign(half, 0.0);
    det.assign(half, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
        double s = 0.0, d = 0.0;
        for (int m = 0; m < taps; ++m) {
            const double v = c[(2 * k + static_cast<std::size_t>(m)) % n];
            s += f.low_pass[static_cast<std::size_t>(m)] * v;
            d += f.high_pass[static_cast<std::size_t>(m)] * v;
        }
        smooth[k] = s;
        det[k] = d;
    }
}

// Adjoint of analysis_step; exact inverse because the transform is orthogonal.
inline std::vector<double> synthesis_step(const std::vector<double>& smooth,
                                          const std::vector<double>& det, const FilterPair& f) {
    const std::size_t half = smooth.size();
    const std::size_t n = 2 * half;
    const int taps = f.taps();
    std::vector<double> c(n, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
        for (int m = 0; m < taps; ++m) {
            const std::size_t idx = (2 * k + static_cast<std::size_t>(m)) % n;
            c[idx] += f.low_pass[static_cast<std::size_t>(m)] * smooth[k] +
                      f.high_pass[static_cast<std::size_t>(m)] * det[k];
        }
    }
    return c;
}

}  // namespace detail

/// Mallat pyramid decomposition.  `depth` = number of filtering stages;
/// depth <= 0 requests the full decomposition (J stages).
inline WaveletDecomposition dwt_forward(const std::vector<double>& signal, const FilterPair& filter,
                                        int depth = 0) {
    const std::size_t n = signal.size();
    if (!is_power_of_two(n) || n < 2) {
        throw structural_error("dwt_forward: signal length " + std::to_string(n) +
                               " is not a power of two >= 2; truncate to a dyadic length first");
    }
    const int levels = ilog2(n);
    if (depth <= 0) depth = levels;
    if (depth > levels) {
        throw config_error("dwt_forward: depth " + std::to_string(depth) + " exceeds log2(n) = " +
                           std::to_string(levels));
    }
    WaveletDecomposition out;
    out.n = n;
    out.filter = filter;
    out.normalization = Normalization::L2;
    std::vector<double> current(signal.begin(), signal.end());
    for (int stage = 1; stage <= depth; ++stage) {
        std::vector<double> smooth, det;
        detail::analysis_step(current, filter, smooth, det);
        out.details.emplace(levels - stage + 1, std::move(det));
        current = std::move(smooth);
    }
    out.smooth = std::move(current);
    return out;
}

/// Inverse transform; exact round trip for decompositions from dwt_forward.
inline std::vector<double> dwt_inverse(const WaveletDecomposition& decomp) {
    if (decomp.details.empty()) throw structural_error("dwt_inverse: empty decomposition");
    if (decomp.normalization != Normalization::L2) {
        throw structural_error("dwt_inverse: decomposition must be L2-normalized");
    }
    const int levels = ilog2(decomp.n);
    const int coarsest = decomp.coarsest_level();
    const int depth = levels - coarsest + 1;
    std::size_t expect = decomp.n >> depth;
    if (decomp.smooth.size() != expect) {
        throw structural_error("dwt_inverse: smooth length " + std::to_string(decomp.smooth.size()) +
                               " inconsistent with depth (expected " + std::to_string(expect) + ")");
    }
    std::vector<double> current = decomp.smooth;
    for (int j = coarsest; j <= levels; ++j) {
        const auto it = decomp.details.find(j);
        if (it == decomp.details.end()) {
            throw structural_error("dwt_inverse: missing detail level " + std::to_string(j));
        }
        if (it->second.size() != current.size()) {
            throw structural_error("dwt_inverse: level " + std::to_string(j) + " has " +
                                   std::to_string(it->second.size()) + " coefficients, expected " +
                                   std::to_string(current.size()));
        }
        current = detail::synthesis_step(current, it->second, decomp.filter);
    }
    return current;
}

/// Switch between L2 (orthonormal) and L1 coefficient normalizations.
///
/// Level-j details are multiplied by 2^{j/2} going L2 -> L1 (and divided
/// coming back); the smooth vector is left untouched.  The L1 convention is
/// the one under which a monofractal signal with Hurst exponent H has
/// |d_jk| ~ 2^{-jH}, so partition-function fits read T(q) = qH directly.
inline WaveletDecomposition rescale_normalization(const WaveletDecomposition& decomp,
                                                  Normalization target) {
    if (decomp.normalization == target) return decomp;
    WaveletDecomposition out = decomp;
    out.normalization = target;
    const double dir = (target == Normalization::L1) ? 0.5 : -0.5;
    for (auto& [j, d] : out.details) {
        const double factor = std::pow(2.0, dir * static_cast<double>(j));
        for (double& c : d) c *= factor;
    }
    return out;
}

}  // namespace mscale

#endif  // MSCALE_WAVELET_HPP
