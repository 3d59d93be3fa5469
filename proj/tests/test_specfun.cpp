// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "keyhole/specfun.hpp"
#include "oracles/k1_oracle.hpp"

using keyhole::specfun::bessel_k1;
using keyhole::specfun::z_times_k1;

TEST_CASE("bessel_k1 reference values") {
    // 40-digit values, cross-checked against the Boost 50-digit oracle below.
    CHECK(bessel_k1(1.0) == doctest::Approx(0.6019072301972346).epsilon(1e-14));
    CHECK(bessel_k1(10.0) == doctest::Approx(1.8648773453825584e-5).epsilon(1e-14));
    CHECK(keyhole::oracle::relative_error(0.6019072301972346, keyhole::oracle::bessel_k1_hp(1.0)) < 1e-15);
}

TEST_CASE("z_times_k1 reference values across the three evaluation regimes") {
    struct Ref {
        double z;
        double value;
    };
    const Ref refs[] = {
        {0.5, 0.82822056000165045},   {2.0, 0.27973176363304485},
        {2.5, 0.18472704086936766},   {5.0, 0.020223067227260821},
        {25.0, 8.8319451829998344e-11}, {30.0, 6.5031960056746483e-13},
        {100.0, 4.6798537356369093e-43}, {700.0, 3.2711775576955763e-303},
    };
    for (const auto& r : refs) {
        CAPTURE(r.z);
        CHECK(std::abs(z_times_k1(r.z) - r.value) <= 1e-13 * r.value);
    }
}

TEST_CASE("z_times_k1 at and near the origin") {
    CHECK(z_times_k1(0.0) == 1.0);
    CHECK(std::abs(z_times_k1(1e-6) - 1.0) <= 1e-10);
    CHECK(z_times_k1(std::numeric_limits<double>::denorm_min()) == 1.0);
    // z K1(z) -> 1 as z -> 0+
    CHECK(1e-300 * bessel_k1(1e-300) == doctest::Approx(1.0));
}

TEST_CASE("domain errors") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(bessel_k1(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k1(-1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k1(nan), std::domain_error);
    CHECK_THROWS_AS(bessel_k1(inf), std::domain_error);
    CHECK_THROWS_AS(z_times_k1(-1e-300), std::domain_error);
    CHECK_THROWS_AS(z_times_k1(nan), std::domain_error);
    CHECK_THROWS_AS(z_times_k1(inf), std::domain_error);
}

TEST_CASE("underflow to zero for very large arguments") {
    CHECK(bessel_k1(700.0) > 0.0);
    CHECK(bessel_k1(800.0) == 0.0);
    CHECK(z_times_k1(800.0) == 0.0);
    CHECK(z_times_k1(740.0) > 0.0);
}

TEST_CASE("agreement with the high-precision oracle on a log grid") {
    double worst_zk = 0.0;
    double worst_k = 0.0;
    const int points = 1000;
    for (int i = 0; i < points; ++i) {
        const double z = std::exp(std::log(1e-8) + (std::log(700.0) - std::log(1e-8)) * i / (points - 1));
        worst_zk = std::max(worst_zk, keyhole::oracle::relative_error(z_times_k1(z), keyhole::oracle::z_times_k1_hp(z)));
        worst_k = std::max(worst_k, keyhole::oracle::relative_error(bessel_k1(z), keyhole::oracle::bessel_k1_hp(z)));
    }
    CHECK(worst_zk <= 1e-10);
    CHECK(worst_k <= 1e-10);
}

TEST_CASE("z_times_k1 and z * bessel_k1 are consistent") {
    for (int i = 0; i <= 400; ++i) {
        const double z = std::exp(std::log(1e-6) + (std::log(100.0) - std::log(1e-6)) * i / 400.0);
        const double zk = z_times_k1(z);
        CAPTURE(z);
        CHECK(std::abs(zk - z * bessel_k1(z)) <= 1e-12 * zk);
    }
}

TEST_CASE("property: z_times_k1 lies in (0, 1] and decreases") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> log_z(std::log(1e-4), std::log(700.0));
    std::uniform_real_distribution<double> log_gap(std::log(1e-3), std::log(2.0));
    for (int trial = 0; trial < 2000; ++trial) {
        const double a = std::exp(log_z(rng));
        const double b = a * (1.0 + std::exp(log_gap(rng)));
        if (b > 740.0) continue;
        const double fa = z_times_k1(a);
        const double fb = z_times_k1(b);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(fa > 0.0);
        CHECK(fa <= 1.0);
        CHECK(fa > fb);
    }
    CHECK(z_times_k1(0.0) > z_times_k1(1e-4));
}
