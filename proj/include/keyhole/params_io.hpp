// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "keyhole/model.hpp"

namespace keyhole {

/// Parameters as read from a file. `symmetric_noise` is set when
/// gamma_bar_e_db was not given: gamma_bar_e then follows gamma_bar_d
/// (sigma_e^2 = sigma_d^2).
struct ParamConfig {
    SystemParams params = default_params();
    bool symmetric_noise = true;
};

/// Sets one key of the parameter-file vocabulary:
///   M, N, zeta_g_db, zeta_hd_db, zeta_he_db, delta, gamma_bar_d_db,
///   gamma_bar_e_db, r_th
/// Throws std::invalid_argument for unknown keys or unparsable values.
void apply_param(ParamConfig& config, std::string_view key, std::string_view value);

/// True for keys accepted by apply_param.
bool is_param_key(std::string_view key);

/// Parses `key = value` lines; `#` starts a comment, blank lines are ignored.
/// Keys not given keep default_params(). The result is validated. Errors
/// name `source` and the line number.
ParamConfig parse_params(std::string_view text, std::string_view source = "<params>");

ParamConfig load_params_file(const std::string& path);

/// Sets gamma_bar_d to `gamma_bar_d_db`. gamma_bar_e follows it: equal under
/// symmetric noise, otherwise keeping its configured ratio to gamma_bar_d
/// (transmit power varies, noise powers stay put).
SystemParams at_user_snr_db(const ParamConfig& config, double gamma_bar_d_db);

/// Strict numeric parsing shared by the file readers and the CLI.
double parse_real(std::string_view text, std::string_view what);
int parse_count(std::string_view text, std::string_view what);

}  // namespace keyhole
