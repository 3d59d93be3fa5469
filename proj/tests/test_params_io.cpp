// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "keyhole/params_io.hpp"

using namespace keyhole;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_params(text, "test.params");
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("empty text keeps the defaults") {
    const auto cfg = parse_params("# nothing here\n\n");
    const auto d = default_params();
    CHECK(cfg.symmetric_noise);
    CHECK(cfg.params.num_users == d.num_users);
    CHECK(cfg.params.zeta_hd == d.zeta_hd);
    CHECK(cfg.params.gamma_bar_e == d.gamma_bar_e);
}

TEST_CASE("every key is read and converted from dB") {
    const auto cfg = parse_params(
        "M = 5\n"
        "N=1\n"
        "  zeta_g_db = 0   # comment\n"
        "zeta_hd_db = 10\n"
        "zeta_he_db = -10\n"
        "delta = 0.25\n"
        "gamma_bar_d_db = 20\n"
        "r_th = 0\n");
    const auto& p = cfg.params;
    CHECK(p.num_users == 5);
    CHECK(p.num_eves == 1);
    CHECK(p.zeta_g == 1.0);
    CHECK(p.zeta_hd == doctest::Approx(10.0));
    CHECK(p.zeta_he == doctest::Approx(0.1));
    CHECK(p.delta == 0.25);
    CHECK(p.gamma_bar_d == doctest::Approx(100.0));
    CHECK(p.gamma_bar_e == p.gamma_bar_d);
    CHECK(p.r_th == 0.0);
    CHECK(cfg.symmetric_noise);
}

TEST_CASE("explicit eavesdropper SNR breaks the symmetry in either order") {
    for (const char* text : {"gamma_bar_e_db = 0\ngamma_bar_d_db = 20\n",
                             "gamma_bar_d_db = 20\ngamma_bar_e_db = 0\n"}) {
        const auto cfg = parse_params(text);
        CHECK_FALSE(cfg.symmetric_noise);
        CHECK(cfg.params.gamma_bar_d == doctest::Approx(100.0));
        CHECK(cfg.params.gamma_bar_e == 1.0);
    }
}

TEST_CASE("user SNR sweeps move the eavesdropper SNR along") {
    auto sym = parse_params("");
    auto p = at_user_snr_db(sym, 30.0);
    CHECK(p.gamma_bar_d == doctest::Approx(1000.0));
    CHECK(p.gamma_bar_e == p.gamma_bar_d);

    auto asym = parse_params("gamma_bar_d_db = 10\ngamma_bar_e_db = 4\n");
    p = at_user_snr_db(asym, 30.0);
    CHECK(p.gamma_bar_d == doctest::Approx(1000.0));
    CHECK(p.gamma_bar_e / p.gamma_bar_d == doctest::Approx(db_to_linear(-6.0)));
}

TEST_CASE("errors name the source and line") {
    CHECK(error_of("M = 2\nbogus = 1\n").find("test.params:2:") != std::string::npos);
    CHECK(error_of("M = 2\nbogus = 1\n").find("bogus") != std::string::npos);
    CHECK(error_of("M = two\n").find("test.params:1:") != std::string::npos);
    CHECK(error_of("M 2\n").find("test.params:1:") != std::string::npos);
    CHECK(error_of("delta = 1e400\n").find("test.params:1:") != std::string::npos);
    CHECK(error_of("r_th = 1.5x\n").find("r_th") != std::string::npos);
    // Validation of the assembled parameters.
    CHECK_FALSE(error_of("M = 0\n").empty());
    CHECK_FALSE(error_of("delta = -1\n").empty());
    CHECK_FALSE(error_of("r_th = -0.5\n").empty());
}

TEST_CASE("parameter keys") {
    CHECK(is_param_key("zeta_hd_db"));
    CHECK(is_param_key("M"));
    CHECK_FALSE(is_param_key("zeta_hd"));
    ParamConfig cfg;
    CHECK_THROWS_AS(apply_param(cfg, "m", "2"), std::invalid_argument);
}

TEST_CASE("strict number parsing") {
    CHECK(parse_real(" 2.5 ", "x") == 2.5);
    CHECK(parse_real("-3e1", "x") == -30.0);
    CHECK_THROWS_AS(parse_real("", "x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_real("nan", "x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_real("1,5", "x"), std::invalid_argument);
    CHECK(parse_count("12", "n") == 12);
    CHECK_THROWS_AS(parse_count("1.0", "n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_count("99999999999", "n"), std::invalid_argument);
}

TEST_CASE("parameter files") {
    const std::string path = "keyhole_test_params.params";
    {
        std::ofstream out(path);
        out << "M = 4\nN = 2\ngamma_bar_d_db = 15\n";
    }
    const auto cfg = load_params_file(path);
    CHECK(cfg.params.num_users == 4);
    CHECK(cfg.params.num_eves == 2);
    std::remove(path.c_str());
    CHECK_THROWS(load_params_file("does/not/exist.params"));
}
