// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "keyhole/montecarlo.hpp"

using namespace keyhole;

namespace {

SystemParams symmetric_point() {
    SystemParams p = default_params();
    p.num_users = 1;
    p.num_eves = 1;
    p.r_th = 0.0;
    p.zeta_hd = p.zeta_he = 2.0;
    return p;
}

}  // namespace

TEST_CASE("symmetric point gives one half") {
    const auto est = mc::estimate_sop(symmetric_point(), 1'000'000, 12345);
    CHECK(est.num_samples == 1'000'000);
    CHECK(std::abs(est.sop_hat - 0.5) <= 4.0 * est.std_error);
}

TEST_CASE("default point agrees with the closed form") {
    const auto report = mc::validate_against_analytic(default_params(), 1'000'000, 2024);
    CHECK(report.cf.value == doctest::Approx(0.2331923123333209).epsilon(1e-12));
    CHECK(report.pass);
    CHECK(std::abs(report.z_score) <= mc::kMaxAbsZScore);
    CHECK(report.mc.ci95_low <= report.cf.value);
    CHECK(report.cf.value <= report.mc.ci95_high);
}

TEST_CASE("estimate is independent of the stream count") {
    const SystemParams p = default_params();
    const auto one = mc::estimate_sop(p, 200'003, 42, 1);
    for (unsigned streams : {2u, 3u, 8u, 64u}) {
        const auto many = mc::estimate_sop(p, 200'003, 42, streams);
        CAPTURE(streams);
        CHECK(many.num_outages == one.num_outages);
        CHECK(many.sop_hat == one.sop_hat);
        CHECK(many.std_error == one.std_error);
        CHECK(many.num_streams == streams);
    }
    CHECK(mc::estimate_sop(p, 200'003, 43, 1).num_outages != one.num_outages);
}

TEST_CASE("outage counter matches the reference sampling path") {
    const SystemParams p = default_params();
    const std::uint64_t seed = 9;
    std::uint64_t expected = 0;
    for (std::uint64_t i = 100; i < 5100; ++i) {
        PhiloxStream rng(seed, i);
        const auto r = sample_realization(p, rng);
        if (is_secrecy_outage(instantaneous_snrs(p, r), p.rho())) ++expected;
    }
    CHECK(mc::count_outages(p, seed, 100, 5100) == expected);
    CHECK(mc::count_outages(p, seed, 100, 2000) + mc::count_outages(p, seed, 2000, 5100) == expected);
}

TEST_CASE("estimate fields are consistent") {
    const auto est = mc::estimate_sop(default_params(), 40'000, 5);
    CHECK(est.sop_hat == static_cast<double>(est.num_outages) / 40'000.0);
    CHECK(est.std_error == doctest::Approx(std::sqrt(est.sop_hat * (1.0 - est.sop_hat) / 40'000.0)));
    CHECK(est.ci95_low <= est.sop_hat);
    CHECK(est.sop_hat <= est.ci95_high);
    CHECK(est.ci95_low >= 0.0);
    CHECK(est.ci95_high <= 1.0);
    CHECK(est.seed == 5);
}

TEST_CASE("quadrupling the sample count halves the standard error formula") {
    mc::MonteCarloEstimate a;
    a.sop_hat = 0.3;
    a.num_samples = 10'000;
    a.std_error = std::sqrt(0.3 * 0.7 / 10'000.0);
    const double quadrupled = std::sqrt(0.3 * 0.7 / 40'000.0);
    CHECK(quadrupled == doctest::Approx(a.std_error / 2.0).epsilon(1e-15));

    // Empirically the mean absolute deviation from the closed form shrinks.
    const SystemParams p = default_params();
    const double cf = analytic::sop_closed_form(p).value;
    double dev_small = 0.0, dev_large = 0.0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        dev_small += std::abs(mc::estimate_sop(p, 5'000, 1000 + seed).sop_hat - cf);
        dev_large += std::abs(mc::estimate_sop(p, 20'000, 2000 + seed).sop_hat - cf);
    }
    CHECK(dev_large < dev_small);
}

TEST_CASE("property: 95% interval coverage over 200 seeds") {
    const SystemParams p = default_params();
    const double cf = analytic::sop_closed_form(p).value;
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto est = mc::estimate_sop(p, 20'000, 500 + seed);
        if (est.ci95_low <= cf && cf <= est.ci95_high) ++covered;
    }
    CHECK(covered >= 180);
}

TEST_CASE("corrupted reference fails, low-power check does not false alarm") {
    const SystemParams p = default_params();
    const auto est = mc::estimate_sop(p, 1'000'000, 31);
    const auto cf = analytic::sop_closed_form(p);
    CHECK(mc::compare_to_analytic(est, cf).pass);
    const auto corrupted = mc::compare_to_analytic(est, {cf.value + 0.05, Method::closed_form});
    CHECK_FALSE(corrupted.pass);
    CHECK(corrupted.z_score < -4.0);

    SystemParams rare = p;
    rare.num_users = 8;
    rare.num_eves = 1;
    rare.gamma_bar_d = rare.gamma_bar_e = db_to_linear(30.0);
    const auto low = mc::validate_against_analytic(rare, 1000, 3);
    CHECK(low.pass);
    CHECK(low.mc.ci95_high > low.mc.ci95_low);
}

TEST_CASE("zero observed outages fall back to the analytic standard error") {
    mc::MonteCarloEstimate none;
    none.num_samples = 1000;
    none.num_outages = 0;
    none.sop_hat = 0.0;
    none.std_error = 0.0;
    const auto ok = mc::compare_to_analytic(none, {0.001, Method::closed_form});
    CHECK(std::isfinite(ok.z_score));
    CHECK(ok.pass);
    const auto bad = mc::compare_to_analytic(none, {0.1, Method::closed_form});
    CHECK_FALSE(bad.pass);
}

TEST_CASE("invalid counts and parameters") {
    const SystemParams p = default_params();
    CHECK_THROWS_AS(mc::estimate_sop(p, 999, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc::estimate_sop(p, 1000, 1, 0), std::invalid_argument);
    SystemParams bad = p;
    bad.num_eves = 0;
    CHECK_THROWS_AS(mc::estimate_sop(bad, 1000, 1), std::invalid_argument);
    CHECK_NOTHROW(mc::estimate_sop(p, 1000, 1, 100));
}
