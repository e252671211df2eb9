// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mscale contributors
//
// Test-only reference implementations.  These deliberately recompute results
// through independent routes (dense matrices, exhaustive enumeration, O(n^2)
// scans) so the fast library paths have something honest to be checked
// against.

#ifndef MSCALE_TESTS_ORACLES_HPP
#define MSCALE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include "mscale/wavelet.hpp"

namespace oracles {

using Matrix = std::vector<std::vector<double>>;

inline Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size(), k = b.size(), p = b[0].size();
    Matrix c(n, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double aij = a[i][j];
            if (aij == 0.0) continue;
            for (std::size_t l = 0; l < p; ++l) c[i][l] += aij * b[j][l];
        }
    }
    return c;
}

// Dense orthogonal matrix of one periodized analysis stage acting on the
// leading `active` entries of a length-n vector (identity elsewhere).  Row
// layout within the active block: smooth rows first, then detail rows.
inline Matrix stage_matrix(std::size_t n, std::size_t active, const mscale::FilterPair& f) {
    Matrix m(n, std::vector<double>(n, 0.0));
    const std::size_t half = active / 2;
    for (std::size_t k = 0; k < half; ++k) {
        for (int t = 0; t < f.taps(); ++t) {
            const std::size_t col = (2 * k + static_cast<std::size_t>(t)) % active;
            m[k][col] += f.low_pass[static_cast<std::size_t>(t)];
            m[half + k][col] += f.high_pass[static_cast<std::size_t>(t)];
        }
    }
    for (std::size_t i = active; i < n; ++i) m[i][i] = 1.0;
    return m;
}

// Explicit transform matrix W for a depth-D periodized DWT of length n.
// Output layout: smooth block, then detail levels coarsest -> finest,
// matching a flattened mscale::WaveletDecomposition.
inline Matrix dwt_matrix(std::size_t n, const mscale::FilterPair& f, int depth) {
    Matrix w = identity(n);
    std::size_t active = n;
    for (int s = 0; s < depth; ++s) {
        w = matmul(stage_matrix(n, active, f), w);
        active /= 2;
    }
    return w;
}

inline std::vector<double> matvec(const Matrix& m, const std::vector<double>& v) {
    std::vector<double> out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    }
    return out;
}

// Flatten a decomposition into the oracle layout.
inline std::vector<double> flatten(const mscale::WaveletDecomposition& d) {
    std::vector<double> out(d.smooth);
    for (const auto& [j, det] : d.details) {
        (void)j;
        out.insert(out.end(), det.begin(), det.end());
    }
    return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace oracles

#endif  // MSCALE_TESTS_ORACLES_HPP
