// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mscale contributors

#ifndef MSCALE_MONOFRACTAL_HPP
#define MSCALE_MONOFRACTAL_HPP

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mscale/util.hpp"
#include "mscale/wavelet.hpp"

namespace mscale {

/// Wavelet (log-energy) spectrum: one point per decomposed level,
/// s_j = log2 of the mean squared detail coefficient at level j.
/// Levels whose details are identically zero are recorded as absent
/// rather than mapped to -infinity.
struct WaveletSpectrum {
    struct Point {
        int level = 0;
        double log_energy = 0.0;
        std::size_t n_coeffs = 0;
    };
    std::vector<Point> points;           // ascending level order
    std::vector<int> zero_levels;        // decomposed levels with all-zero details

    bool has_level(int j) const {
        for (const auto& p : points) {
            if (p.level == j) return true;
        }
        return false;
    }
    double log_energy_at(int j) const {
        for (const auto& p : points) {
            if (p.level == j) return p.log_energy;
        }
        throw structural_error("wavelet spectrum: level " + std::to_string(j) + " absent");
    }
};

/// OLS fit of log energies against scale indices over [j_min, j_max].
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    int j_min = 0;
    int j_max = 0;
    double r2 = 0.0;
    double hurst = 0.0;          // always -(slope + 1) / 2
    std::size_t points_used = 0;
    bool skipped_levels = false;  // absent levels inside [j_min, j_max]
};

enum class EntropyMode { WithinLevel, CrossScale };

struct EntropySummary {
    std::map<int, double> per_level;  // WithinLevel: WE(j) per selected level
    double cross_scale = 0.0;         // CrossScale: entropy of level energies
    EntropyMode mode = EntropyMode::CrossScale;
    std::size_t levels_used = 0;
};

inline WaveletSpectrum wavelet_spectrum(const WaveletDecomposition& decomp) {
    if (decomp.details.empty()) throw structural_error("wavelet_spectrum: empty decomposition");
    if (decomp.normalization != Normalization::L2) {
        throw structural_error("wavelet_spectrum: requires an L2-normalized decomposition");
    }
    WaveletSpectrum spec;
    for (const auto& [j, d] : decomp.details) {
        double energy = 0.0;
        for (double c : d) energy += c * c;
        if (energy == 0.0) {
            spec.zero_levels.push_back(j);
            continue;
        }
        WaveletSpectrum::Point p;
        p.level = j;
        p.n_coeffs = d.size();
        p.log_energy = std::log2(energy / static_cast<double>(d.size()));
        spec.points.push_back(p);
    }
    return spec;
}

/// Regress log energies on scale indices over the inclusive range
/// [j_min, j_max]; the Hurst estimate is H = -(slope + 1) / 2.
inline SlopeFit spectrum_slope(const WaveletSpectrum& spectrum, int j_min, int j_max) {
    if (j_min < 1 || j_min >= j_max) {
        throw config_error("spectrum_slope: need 1 <= j_min < j_max");
    }
    std::vector<double> xs, ys;
    bool skipped = false;
    for (int j = j_min; j <= j_max; ++j) {
        if (!spectrum.has_level(j)) {
            skipped = true;
            continue;
        }
        xs.push_back(static_cast<double>(j));
        ys.push_back(spectrum.log_energy_at(j));
    }
    if (xs.size() < 2) {
        throw estimation_error("spectrum_slope: fewer than 2 usable levels in [" +
                               std::to_string(j_min) + ", " + std::to_string(j_max) + "]");
    }
    const LineFit lf = fit_line(xs, ys);
    SlopeFit fit;
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.j_min = j_min;
    fit.j_max = j_max;
    fit.r2 = lf.r2;
    fit.hurst = -(lf.slope + 1.0) / 2.0;
    fit.points_used = xs.size();
    fit.skipped_levels = skipped;
    return fit;
}

namespace detail {

// Shannon entropy of the normalized mass vector; zero masses contribute 0.
inline double shannon_entropy(const std::vector<double>& masses, bool normalized_01) {
    double total = 0.0;
    std::size_t support = 0;
    for (double m : masses) {
        total += m;
        if (m > 0.0) ++support;
    }
    if (total <= 0.0) throw estimation_error("wavelet_entropy: all selected coefficients are zero");
    double we = 0.0;
    for (double m : masses) {
        if (m <= 0.0) continue;
        const double pr = m / total;
        we -= pr * std::log(pr);
    }
    if (we < 0.0) we = 0.0;  // guard against -0.0 style rounding
    if (normalized_01 && masses.size() > 1) {
        we /= std::log(static_cast<double>(masses.size()));
    }
    (void)support;
    return we;
}

}  // namespace detail

/// Normalized Shannon wavelet entropy.
///
/// WithinLevel: for each selected level j, WE(j) = -sum p_i ln p_i with
/// p_i = d_i^2 / sum d_i^2 over the coefficients of that level.
/// CrossScale: the same formula applied once to the level energies
/// E_j = sum_k d_jk^2, yielding a single scalar.
///
/// `normalized_01` additionally divides by the log of the number of masses,
/// mapping the result into [0, 1].
inline EntropySummary wavelet_entropy(const WaveletDecomposition& decomp,
                                      const std::set<int>& levels, EntropyMode mode,
                                      bool normalized_01 = false) {
    if (levels.empty()) throw config_error("wavelet_entropy: no levels selected");
    for (int j : levels) {
        if (!decomp.details.count(j)) {
            throw config_error("wavelet_entropy: level " + std::to_string(j) +
                               " not present in decomposition");
        }
    }
    EntropySummary summary;
    summary.mode = mode;
    summary.levels_used = levels.size();
    if (mode == EntropyMode::WithinLevel) {
        bool any_nonzero = false;
        for (int j : levels) {
            const auto& d = decomp.details.at(j);
            std::vector<double> masses(d.size());
            double total = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                masses[i] = d[i] * d[i];
                total += masses[i];
            }
            if (total == 0.0) continue;  // level carries no information
            any_nonzero = true;
            summary.per_level[j] = detail::shannon_entropy(masses, normalized_01);
        }
        if (!any_nonzero) throw estimation_error("wavelet_entropy: all selected coefficients are zero");
    } else {
        std::vector<double> energies;
        energies.reserve(levels.size());
        for (int j : levels) {
            const auto& d = decomp.details.at(j);
            double e = 0.0;
            for (double c : d) e += c * c;
            energies.push_back(e);
        }
        summary.cross_scale = detail::shannon_entropy(energies, normalized_01);
    }
    return summary;
}

/// Remove the straight line through the first and last samples.
///
/// Periodized transforms see the wrap-around mismatch y[n-1] - y[0] of a
/// nonstationary path as a step whose log-energy decays with slope -2
/// across scales; on self-similar paths scaling steeper than -2 that step
/// dominates the spectrum.  Subtracting the endpoint line removes the jump
/// while leaving every non-wrapping coefficient untouched (one vanishing
/// moment annihilates the line).
inline std::vector<double> detrend_endpoints(std::vector<double> y) {
    const std::size_t n = y.size();
    if (n < 2) return y;
    const double y0 = y.front();
    const double step = (y.back() - y0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) y[i] -= y0 + step * static_cast<double>(i);
    return y;
}

/// Hurst exponent of a self-similar path: endpoint detrend, wavelet
/// decomposition, OLS fit of the spectrum over [j_min, j_max].
inline SlopeFit hurst_estimate(const std::vector<double>& y, const FilterPair& filter, int j_min,
                               int j_max) {
    const auto detrended = detrend_endpoints(y);
    const auto decomp = dwt_forward(detrended, filter);
    return spectrum_slope(wavelet_spectrum(decomp), j_min, j_max);
}

/// CSV export of a spectrum: one "j,s_j,n_j" row per level.
inline std::string spectrum_to_csv(const WaveletSpectrum& spectrum) {
    std::string out = "j,s_j,n_j\n";
    char buf[96];
    for (const auto& p : spectrum.points) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%zu\n", p.level, p.log_energy, p.n_coeffs);
        out += buf;
    }
    return out;
}

}  // namespace mscale

#endif  // MSCALE_MONOFRACTAL_HPP
