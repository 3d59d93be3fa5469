// SPDX-License-Identifier: Apache-2.0
#include "keyhole/params_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace keyhole {
namespace {

constexpr std::array<std::string_view, 9> kKeys = {
    "M", "N", "zeta_g_db", "zeta_hd_db", "zeta_he_db", "delta", "gamma_bar_d_db",
    "gamma_bar_e_db", "r_th"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

double parse_real(std::string_view text, std::string_view what) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() ||
        !std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + ": expected a finite number, got '" +
                                    std::string(text) + "'");
    }
    return value;
}

int parse_count(std::string_view text, std::string_view what) {
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument(std::string(what) + ": expected an integer, got '" +
                                    std::string(text) + "'");
    }
    return value;
}

bool is_param_key(std::string_view key) {
    for (auto k : kKeys) {
        if (k == key) return true;
    }
    return false;
}

void apply_param(ParamConfig& config, std::string_view key, std::string_view value) {
    auto& p = config.params;
    if (key == "M") {
        p.num_users = parse_count(value, key);
    } else if (key == "N") {
        p.num_eves = parse_count(value, key);
    } else if (key == "zeta_g_db") {
        p.zeta_g = db_to_linear(parse_real(value, key));
    } else if (key == "zeta_hd_db") {
        p.zeta_hd = db_to_linear(parse_real(value, key));
    } else if (key == "zeta_he_db") {
        p.zeta_he = db_to_linear(parse_real(value, key));
    } else if (key == "delta") {
        p.delta = parse_real(value, key);
    } else if (key == "gamma_bar_d_db") {
        p.gamma_bar_d = db_to_linear(parse_real(value, key));
        if (config.symmetric_noise) p.gamma_bar_e = p.gamma_bar_d;
    } else if (key == "gamma_bar_e_db") {
        p.gamma_bar_e = db_to_linear(parse_real(value, key));
        config.symmetric_noise = false;
    } else if (key == "r_th") {
        p.r_th = parse_real(value, key);
    } else {
        throw std::invalid_argument("unknown parameter key '" + std::string(key) + "'");
    }
}

ParamConfig parse_params(std::string_view text, std::string_view source) {
    ParamConfig config;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        try {
            if (eq == std::string_view::npos) {
                throw std::invalid_argument("expected 'key = value'");
            }
            apply_param(config, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string(source) + ":" + std::to_string(line_no) +
                                        ": " + e.what());
        }
    }
    if (config.symmetric_noise) config.params.gamma_bar_e = config.params.gamma_bar_d;
    try {
        validate(config.params);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string(source) + ": " + e.what());
    }
    return config;
}

ParamConfig load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open parameter file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_params(buf.str(), path);
}

SystemParams at_user_snr_db(const ParamConfig& config, double gamma_bar_d_db) {
    SystemParams p = config.params;
    const double ratio = p.gamma_bar_e / p.gamma_bar_d;
    p.gamma_bar_d = db_to_linear(gamma_bar_d_db);
    p.gamma_bar_e = config.symmetric_noise ? p.gamma_bar_d : p.gamma_bar_d * ratio;
    return p;
}

}  // namespace keyhole
