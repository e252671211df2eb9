// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 mscale contributors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mscale/synth.hpp"

using namespace mscale;

TEST_CASE("fBm synthesis is deterministic in the seed") {
    const auto a = synth_fbm(4096, 0.5, 42);
    const auto b = synth_fbm(4096, 0.5, 42);
    const auto c = synth_fbm(4096, 0.5, 43);
    REQUIRE(a.size() == 4096);
    CHECK(a == b);  // bitwise
    CHECK(a != c);
}

TEST_CASE("fBm increments have unit variance and the fGn lag-1 correlation") {
    for (double hurst : {0.3, 0.5, 0.7}) {
        const std::size_t n = std::size_t{1} << 15;
        const auto path = synth_fbm(n, hurst, 7);
        std::vector<double> inc(n);
        inc[0] = path[0];
        for (std::size_t i = 1; i < n; ++i) inc[i] = path[i] - path[i - 1];
        double m = 0.0;
        for (double v : inc) m += v;
        m /= static_cast<double>(n);
        double var = 0.0, lag1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) var += (inc[i] - m) * (inc[i] - m);
        var /= static_cast<double>(n - 1);
        for (std::size_t i = 1; i < n; ++i) lag1 += (inc[i] - m) * (inc[i - 1] - m);
        lag1 /= (var * static_cast<double>(n - 1));
        INFO("H = " << hurst);
        CHECK(var == Catch::Approx(1.0).margin(0.08));
        CHECK(lag1 == Catch::Approx(fgn_autocov(1, hurst)).margin(0.05));
    }
}

TEST_CASE("fBm parameter validation") {
    CHECK_THROWS_AS(synth_fbm(0, 0.5, 1), config_error);
    CHECK_THROWS_AS(synth_fbm(16, 0.0, 1), config_error);
    CHECK_THROWS_AS(synth_fbm(16, 1.0, 1), config_error);
}

TEST_CASE("cascade masses form a probability vector with the binomial profile") {
    const auto m = cascade_masses(10, 0.7);
    REQUIRE(m.size() == 1024);
    double total = 0.0, largest = 0.0, smallest = 1.0;
    for (double v : m) {
        total += v;
        largest = std::max(largest, v);
        smallest = std::min(smallest, v);
    }
    CHECK(total == Catch::Approx(1.0).margin(1e-12));
    CHECK(largest == Catch::Approx(std::pow(0.7, 10)).margin(1e-15));
    CHECK(smallest == Catch::Approx(std::pow(0.3, 10)).margin(1e-15));
    CHECK(m[0] == Catch::Approx(std::pow(0.7, 10)).margin(1e-15));
}

TEST_CASE("cascade closed forms are internally consistent") {
    const double p = 0.7;
    // alpha = T' by the analytic formula vs a tight finite difference
    for (double q : {1.0, 2.0, 3.5, 5.0}) {
        const double h = 1e-6;
        const double fd = (cascade_partition_function(q + h, p) -
                           cascade_partition_function(q - h, p)) /
                          (2 * h);
        CHECK(cascade_alpha(q, p) == Catch::Approx(fd).margin(1e-8));
        CHECK(cascade_spectrum(q, p) ==
              Catch::Approx(q * cascade_alpha(q, p) - cascade_partition_function(q, p))
                  .margin(1e-12));
    }
    // T(0) = 0 under the mean-based moment convention
    CHECK(cascade_partition_function(0.0, p) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("white noise is deterministic and standard") {
    const auto a = synth_noise(8192, 5);
    const auto b = synth_noise(8192, 5);
    CHECK(a == b);
    double m = 0.0, v = 0.0;
    for (double x : a) m += x;
    m /= static_cast<double>(a.size());
    for (double x : a) v += (x - m) * (x - m);
    v /= static_cast<double>(a.size() - 1);
    CHECK(m == Catch::Approx(0.0).margin(0.05));
    CHECK(v == Catch::Approx(1.0).margin(0.05));
}
