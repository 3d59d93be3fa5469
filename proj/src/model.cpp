// SPDX-License-Identifier: Apache-2.0
#include "keyhole/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace keyhole {
namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be finite and > 0, got " +
                                    std::to_string(value));
    }
}

}  // namespace

void validate(const SystemParams& params) {
    if (params.num_users < 1) {
        throw std::invalid_argument("M (num_users) must be >= 1, got " +
                                    std::to_string(params.num_users));
    }
    if (params.num_eves < 1) {
        throw std::invalid_argument("N (num_eves) must be >= 1, got " +
                                    std::to_string(params.num_eves));
    }
    require_positive(params.zeta_g, "zeta_g");
    require_positive(params.zeta_hd, "zeta_hd");
    require_positive(params.zeta_he, "zeta_he");
    require_positive(params.delta, "delta");
    require_positive(params.gamma_bar_d, "gamma_bar_d");
    require_positive(params.gamma_bar_e, "gamma_bar_e");
    if (!std::isfinite(params.r_th) || params.r_th < 0.0) {
        throw std::invalid_argument("r_th must be finite and >= 0, got " +
                                    std::to_string(params.r_th));
    }
    if (!std::isfinite(params.rho())) {
        throw std::invalid_argument("r_th too large: 2^r_th overflows");
    }
}

SystemParams default_params() {
    SystemParams p;
    p.num_users = 2;
    p.num_eves = 3;
    p.zeta_g = db_to_linear(3.0);
    p.zeta_hd = db_to_linear(6.0);
    p.zeta_he = db_to_linear(-3.0);
    p.delta = 0.5;
    p.gamma_bar_d = db_to_linear(10.0);
    p.gamma_bar_e = p.gamma_bar_d;
    p.r_th = 1.0;
    return p;
}

double db_to_linear(double x_db) {
    if (!std::isfinite(x_db)) {
        throw std::domain_error("db_to_linear: value must be finite");
    }
    return std::pow(10.0, x_db / 10.0);
}

SnrPair instantaneous_snrs(const SystemParams& params, const ChannelRealization& realization) {
    if (realization.d_powers.size() != static_cast<std::size_t>(params.num_users) ||
        realization.e_powers.size() != static_cast<std::size_t>(params.num_eves)) {
        throw std::invalid_argument(
            "instantaneous_snrs: realization has " + std::to_string(realization.d_powers.size()) +
            " user and " + std::to_string(realization.e_powers.size()) +
            " eavesdropper links, params expect M=" + std::to_string(params.num_users) +
            " N=" + std::to_string(params.num_eves));
    }
    const double best_d = *std::ranges::max_element(realization.d_powers);
    const double best_e = *std::ranges::max_element(realization.e_powers);
    return {keyhole_snr(params.gamma_bar_d, realization.g_power, params.delta, best_d),
            keyhole_snr(params.gamma_bar_e, realization.g_power, params.delta, best_e)};
}

double secrecy_rate(const SnrPair& snrs) {
    return std::max(std::log2((1.0 + snrs.gamma_d) / (1.0 + snrs.gamma_e)), 0.0);
}

}  // namespace keyhole
