// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mscale contributors

#ifndef MSCALE_MULTIFRACTAL_HPP
#define MSCALE_MULTIFRACTAL_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mscale/util.hpp"
#include "mscale/wavelet.hpp"

namespace mscale {

/// Moment orders for the partition function.
struct QGrid {
    std::vector<double> values;  // strictly ascending

    /// Default grid: q in [-2, 12] in steps of 0.5 (two-sided).
    static QGrid two_sided() { return uniform(-2.0, 12.0, 0.5); }
    /// Positive-only presets matching the ranges quoted for heart sounds.
    static QGrid positive_3_12() { return uniform(3.0, 12.0, 0.5); }
    static QGrid positive_3_10() { return uniform(3.0, 10.0, 0.5); }

    static QGrid uniform(double q_min, double q_max, double step) {
        if (!(step > 0.0) || !(q_max > q_min)) throw config_error("QGrid: invalid range");
        QGrid g;
        const int count = static_cast<int>(std::floor((q_max - q_min) / step + 1e-9)) + 1;
        g.values.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) g.values.push_back(q_min + step * i);
        return g;
    }

    static QGrid named(const std::string& preset) {
        if (preset == "two_sided") return two_sided();
        if (preset == "paper_3_12") return positive_3_12();
        if (preset == "paper_3_10") return positive_3_10();
        throw config_error("unknown q-grid preset: " + preset);
    }
};

/// log2 empirical moments log2 S_j(q) with per-entry stability flags.
struct MomentMatrix {
    std::vector<double> q_grid;
    std::vector<int> levels;                    // ascending canonical levels
    std::vector<std::vector<double>> log2_s;    // [q index][level index]
    std::vector<std::vector<bool>> stable;      // same shape
};

/// Scaling exponents from per-q OLS fits of log2 S_j(q) against j.
struct PartitionFunction {
    std::vector<double> q_grid;        // stable q values only
    std::vector<double> t;             // T(q) = -slope
    std::vector<double> fit_r2;
    std::vector<double> unstable_q;    // dropped moment orders
    int j_min = 0;
    int j_max = 0;
};

/// Sampled (alpha, f) curve from the Legendre transform of T(q).
struct MultifractalSpectrum {
    std::vector<double> q_of;
    std::vector<double> alpha;
    std::vector<double> f;
    std::size_t dropped_nonconcave = 0;  // points removed by concavity screening
};

/// Geometric descriptors of a multifractal spectrum (levels of f = level_a).
/// Missing sides are left unset; `effectively_monofractal` marks spectra
/// whose alpha support collapses to (numerically) a single point, in which
/// case tangents are reported as the largest representable slope.
struct SpectrumDescriptors {
    std::optional<double> spectral_mode;
    std::optional<double> broadness;
    std::optional<double> left_slope;
    std::optional<double> right_slope;
    std::optional<double> left_tangent;
    std::optional<double> right_tangent;
    std::optional<double> left_tangent_point;
    std::optional<double> right_tangent_point;
    double level_a = -0.2;
    bool effectively_monofractal = false;
};

// Mean-based empirical moments: S_j(q) = (1/n_j) sum_k |d_jk|^q, computed on
// an L1-normalized decomposition.  The mean (rather than the raw 1/2^j
// prefactor) makes T(0) = 0 and puts the spectrum peak at f = 0, matching the
// f = level_a crossing convention of the descriptors.
inline MomentMatrix empirical_moments(const WaveletDecomposition& decomp, const QGrid& q_grid,
                                      int j_min, int j_max) {
    if (decomp.normalization != Normalization::L1) {
        throw config_error("empirical_moments: decomposition must be rescaled to L1 normalization");
    }
    if (q_grid.values.empty()) throw config_error("empirical_moments: empty q grid");
    MomentMatrix mm;
    mm.q_grid = q_grid.values;
    for (const auto& [j, d] : decomp.details) {
        if (j < j_min || j > j_max) continue;
        if (d.size() < 4) continue;  // too few coefficients for a moment estimate
        mm.levels.push_back(j);
    }
    if (mm.levels.size() < 3) {
        throw config_error("empirical_moments: need >= 3 levels with >= 4 coefficients in [" +
                           std::to_string(j_min) + ", " + std::to_string(j_max) + "]");
    }
    const std::size_t nq = mm.q_grid.size();
    const std::size_t nl = mm.levels.size();
    mm.log2_s.assign(nq, std::vector<double>(nl, 0.0));
    mm.stable.assign(nq, std::vector<bool>(nl, false));
    for (std::size_t li = 0; li < nl; ++li) {
        const auto& d = decomp.details.at(mm.levels[li]);
        double max_abs = 0.0, min_abs = std::numeric_limits<double>::infinity();
        for (double c : d) {
            const double a = std::abs(c);
            max_abs = std::max(max_abs, a);
            min_abs = std::min(min_abs, a);
        }
        for (std::size_t qi = 0; qi < nq; ++qi) {
            const double q = mm.q_grid[qi];
            if (max_abs == 0.0) continue;  // all-zero level: unstable for every q
            if (q < 0.0 && min_abs == 0.0) continue;
            double s = 0.0;
            double largest_term = 0.0;
            for (double c : d) {
                const double term = std::pow(std::abs(c), q);
                s += term;
                largest_term = std::max(largest_term, term);
            }
            // Negative moments explode on near-zero coefficients: reject the
            // estimate when a single coefficient dominates the sum.
            if (q < 0.0 && largest_term > 0.2 * s) continue;
            s /= static_cast<double>(d.size());
            if (!std::isfinite(s) || s <= 0.0) continue;
            const double l2s = std::log2(s);
            if (!std::isfinite(l2s) || std::abs(l2s) > 960.0) continue;
            mm.log2_s[qi][li] = l2s;
            mm.stable[qi][li] = true;
        }
    }
    return mm;
}

/// Per-q OLS of log2 S_j(q) against the canonical scale index; T(q) = -slope,
/// so a monofractal signal with Hurst exponent H gives T(q) ~ qH.
inline PartitionFunction partition_function(const MomentMatrix& mm) {
    PartitionFunction pf;
    pf.j_min = mm.levels.front();
    pf.j_max = mm.levels.back();
    for (std::size_t qi = 0; qi < mm.q_grid.size(); ++qi) {
        std::vector<double> xs, ys;
        for (std::size_t li = 0; li < mm.levels.size(); ++li) {
            if (!mm.stable[qi][li]) continue;
            xs.push_back(static_cast<double>(mm.levels[li]));
            ys.push_back(mm.log2_s[qi][li]);
        }
        if (xs.size() < 3) {
            pf.unstable_q.push_back(mm.q_grid[qi]);
            continue;
        }
        const LineFit lf = fit_line(xs, ys);
        pf.q_grid.push_back(mm.q_grid[qi]);
        pf.t.push_back(-lf.slope);
        pf.fit_r2.push_back(lf.r2);
    }
    return pf;
}

inline MomentMatrix empirical_moments(const WaveletDecomposition& decomp, const QGrid& q_grid) {
    const int lo = decomp.coarsest_level();
    const int hi = decomp.finest_level();
    return empirical_moments(decomp, q_grid, lo, hi);
}

/// Legendre transform: alpha(q) = T'(q) by second-order central differences
/// on the (possibly irregular) q grid, one-sided at the ends;
/// f(alpha(q)) = q alpha(q) - T(q).  Points that break concavity of the
/// sampled (alpha, f) curve by more than `concavity_tol` are dropped.
inline MultifractalSpectrum legendre_spectrum(const PartitionFunction& pf,
                                              double concavity_tol = 1e-6) {
    const std::size_t n = pf.q_grid.size();
    if (n < 3) throw estimation_error("legendre_spectrum: need >= 3 stable q points");

    // Degenerate case: T convex everywhere (T'' >= 0 at every interior node).
    bool any_concave = false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = pf.q_grid[i] - pf.q_grid[i - 1];
        const double h2 = pf.q_grid[i + 1] - pf.q_grid[i];
        const double second = 2.0 * (h1 * pf.t[i + 1] - (h1 + h2) * pf.t[i] + h2 * pf.t[i - 1]) /
                              (h1 * h2 * (h1 + h2));
        if (second < 0.0) {
            any_concave = true;
            break;
        }
    }
    if (!any_concave) {
        throw estimation_error("legendre_spectrum: partition function is nowhere concave (T'' >= 0)");
    }

    MultifractalSpectrum ms;
    ms.q_of = pf.q_grid;
    ms.alpha.resize(n);
    ms.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double a;
        if (i == 0) {
            a = (pf.t[1] - pf.t[0]) / (pf.q_grid[1] - pf.q_grid[0]);
        } else if (i + 1 == n) {
            a = (pf.t[n - 1] - pf.t[n - 2]) / (pf.q_grid[n - 1] - pf.q_grid[n - 2]);
        } else {
            const double h1 = pf.q_grid[i] - pf.q_grid[i - 1];
            const double h2 = pf.q_grid[i + 1] - pf.q_grid[i];
            const double left = (pf.t[i] - pf.t[i - 1]) / h1;
            const double right = (pf.t[i + 1] - pf.t[i]) / h2;
            a = (left * h2 + right * h1) / (h1 + h2);
        }
        ms.alpha[i] = a;
        ms.f[i] = pf.q_grid[i] * a - pf.t[i];
    }

    // Concavity screening of the sampled curve.  A concave spectrum has every
    // interior point on or above the chord of its neighbours; a point sitting
    // below the chord (or breaking the monotone alpha ordering) violates
    // concavity and is dropped, worst first.
    for (;;) {
        double worst = concavity_tol;
        std::size_t worst_i = 0;
        bool found = false;
        for (std::size_t i = 1; i + 1 < ms.alpha.size(); ++i) {
            const double a0 = ms.alpha[i - 1], a1 = ms.alpha[i], a2 = ms.alpha[i + 1];
            const double span = a2 - a0;
            double deficit;
            if (std::abs(span) < 1e-15) {
                // collapsed abscissae: only a dip below both neighbours violates
                deficit = std::max(ms.f[i - 1], ms.f[i + 1]) - ms.f[i];
            } else {
                const double t = (a1 - a0) / span;
                if (t < -1e-9 || t > 1.0 + 1e-9) {
                    deficit = std::numeric_limits<double>::infinity();  // alpha not monotone
                } else {
                    const double chord = ms.f[i - 1] + (ms.f[i + 1] - ms.f[i - 1]) * t;
                    deficit = chord - ms.f[i];
                }
            }
            if (deficit > worst) {
                worst = deficit;
                worst_i = i;
                found = true;
            }
        }
        if (!found) break;
        ms.alpha.erase(ms.alpha.begin() + static_cast<std::ptrdiff_t>(worst_i));
        ms.f.erase(ms.f.begin() + static_cast<std::ptrdiff_t>(worst_i));
        ms.q_of.erase(ms.q_of.begin() + static_cast<std::ptrdiff_t>(worst_i));
        ++ms.dropped_nonconcave;
        if (ms.alpha.size() < 3) break;
    }
    return ms;
}

namespace detail {

struct Crossing {
    double alpha = 0.0;
    double tangent = 0.0;
    bool found = false;
};

// Walk from the peak outward looking for the first crossing of f = level.
// `dir` is -1 for the left branch, +1 for the right.  The crossing abscissa
// comes from linear interpolation; the tangent is the slope of the segment
// containing the crossing (central difference when it lands on a sample).
inline Crossing find_crossing(const std::vector<double>& alpha, const std::vector<double>& f,
                              std::size_t peak, int dir, double level) {
    Crossing c;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(alpha.size());
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(peak);
    for (;;) {
        const std::ptrdiff_t next = i + dir;
        if (next < 0 || next >= n) return c;
        const double f0 = f[static_cast<std::size_t>(i)];
        const double f1 = f[static_cast<std::size_t>(next)];
        if ((f0 - level) * (f1 - level) <= 0.0 && f0 != f1) {
            const double t = (level - f0) / (f1 - f0);
            const double a0 = alpha[static_cast<std::size_t>(i)];
            const double a1 = alpha[static_cast<std::size_t>(next)];
            c.alpha = a0 + t * (a1 - a0);
            c.found = true;
            const bool on_sample = (t < 1e-12) || (t > 1.0 - 1e-12);
            std::ptrdiff_t lo = i, hi = next;
            if (on_sample) {
                // crossing at a grid point: widen to the neighbours for a
                // central difference where possible
                const std::ptrdiff_t at = (t < 0.5) ? i : next;
                lo = std::max<std::ptrdiff_t>(0, at - 1);
                hi = std::min<std::ptrdiff_t>(n - 1, at + 1);
            }
            const double da = alpha[static_cast<std::size_t>(hi)] - alpha[static_cast<std::size_t>(lo)];
            if (std::abs(da) > 1e-15) {
                c.tangent = (f[static_cast<std::size_t>(hi)] - f[static_cast<std::size_t>(lo)]) / da;
            } else {
                c.tangent = std::numeric_limits<double>::max();
            }
            return c;
        }
        i = next;
    }
}

}  // namespace detail

/// Extract the eight geometric descriptors at reference level `level_a`.
///
/// spectral mode: abscissa of the peak (parabolic interpolation through the
/// top three samples); tangent points: the f = level_a crossings; broadness:
/// their distance; tangents: local finite-difference slopes at the crossings;
/// left/right slope: chords from the crossings to the mode point.
inline SpectrumDescriptors spectrum_descriptors(const MultifractalSpectrum& ms,
                                                double level_a = -0.2,
                                                double mono_alpha_eps = 1e-4) {
    const std::size_t n = ms.alpha.size();
    if (n < 3) throw estimation_error("spectrum_descriptors: need >= 3 spectrum points");

    // alpha(q) is non-increasing in q; order points by ascending alpha.
    std::vector<double> alpha = ms.alpha;
    std::vector<double> f = ms.f;
    if (alpha.front() > alpha.back()) {
        std::reverse(alpha.begin(), alpha.end());
        std::reverse(f.begin(), f.end());
    }

    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (f[i] > f[peak]) peak = i;
    }
    if (!(f[peak] > level_a)) {
        throw estimation_error("spectrum_descriptors: spectrum peak does not exceed level_a");
    }

    SpectrumDescriptors sd;
    sd.level_a = level_a;

    double mode = alpha[peak];
    double f_mode = f[peak];
    if (peak > 0 && peak + 1 < n) {
        // parabola through the top three points
        const double x0 = alpha[peak - 1], x1 = alpha[peak], x2 = alpha[peak + 1];
        const double y0 = f[peak - 1], y1 = f[peak], y2 = f[peak + 1];
        const double d01 = (y1 - y0) / (x1 - x0);
        const double d12 = (y2 - y1) / (x2 - x1);
        const double curv = (d12 - d01) / (x2 - x0);
        if (std::isfinite(curv) && curv < 0.0) {
            const double vertex = 0.5 * (x0 + x1 - d01 / curv);
            if (vertex >= x0 && vertex <= x2) {
                mode = vertex;
                // Newton form of the interpolating parabola at its vertex.
                f_mode = y0 + d01 * (vertex - x0) + curv * (vertex - x0) * (vertex - x1);
            }
        }
    }
    sd.spectral_mode = mode;

    const double alpha_range = alpha.back() - alpha.front();
    const auto left = detail::find_crossing(alpha, f, peak, -1, level_a);
    const auto right = detail::find_crossing(alpha, f, peak, +1, level_a);

    if (!left.found && !right.found && alpha_range <= mono_alpha_eps) {
        // Point-like spectrum: a pure monofractal has an infinite tangent;
        // report the largest representable slope and flag the condition.
        sd.effectively_monofractal = true;
        sd.broadness = 0.0;
        sd.left_tangent_point = mode;
        sd.right_tangent_point = mode;
        sd.left_tangent = std::numeric_limits<double>::max();
        sd.right_tangent = -std::numeric_limits<double>::max();
        return sd;
    }

    if (left.found) {
        sd.left_tangent_point = left.alpha;
        sd.left_tangent = left.tangent;
        if (std::abs(mode - left.alpha) > 1e-15) {
            sd.left_slope = (f_mode - level_a) / (mode - left.alpha);
        }
    }
    if (right.found) {
        sd.right_tangent_point = right.alpha;
        sd.right_tangent = right.tangent;
        if (std::abs(right.alpha - mode) > 1e-15) {
            sd.right_slope = (f_mode - level_a) / (mode - right.alpha);
        }
    }
    if (left.found && right.found) {
        sd.broadness = std::abs(right.alpha - left.alpha);
    }
    return sd;
}

/// CSV export of a spectrum: "q,alpha,f" rows.
inline std::string mfspectrum_to_csv(const MultifractalSpectrum& ms) {
    std::string out = "q,alpha,f\n";
    char buf[128];
    for (std::size_t i = 0; i < ms.alpha.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", ms.q_of[i], ms.alpha[i], ms.f[i]);
        out += buf;
    }
    return out;
}

}  // namespace mscale

#endif  // MSCALE_MULTIFRACTAL_HPP
