// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "keyhole/philox.hpp"

namespace keyhole {

/// Keyhole network: one source, M users and N eavesdroppers, all behind the
/// same keyhole. Every channel power is exponential and parameterised by its
/// MEAN, i.e. F(z) = 1 - exp(-z / zeta). All quantities are linear.
struct SystemParams {
    int num_users = 2;         // M
    int num_eves = 3;          // N
    double zeta_g = 0.0;       // mean of |g|^2, source -> keyhole
    double zeta_hd = 0.0;      // mean of |h_d|^2, keyhole -> each user
    double zeta_he = 0.0;      // mean of |h_e|^2, keyhole -> each eavesdropper
    double delta = 0.5;        // keyhole scattering cross-section
    double gamma_bar_d = 0.0;  // P / sigma_d^2
    double gamma_bar_e = 0.0;  // P / sigma_e^2
    double r_th = 1.0;         // threshold secrecy rate, bits per channel use

    /// rho = 2^r_th, the threshold in the SNR domain.
    double rho() const { return std::exp2(r_th); }
};

/// Throws std::invalid_argument naming the first offending field.
void validate(const SystemParams& params);

/// zeta_g = 3 dB, zeta_hd = 6 dB, zeta_he = -3 dB, r_th = 1, delta = 0.5,
/// M = 2, N = 3 and gamma_bar_d = gamma_bar_e = 10 dB.
SystemParams default_params();

/// 10^(x/10). Throws std::domain_error on NaN or infinity.
double db_to_linear(double x_db);

/// One joint draw of the keyhole link and every user/eavesdropper link.
struct ChannelRealization {
    double g_power = 0.0;
    std::vector<double> d_powers;
    std::vector<double> e_powers;
};

struct SnrPair {
    double gamma_d = 0.0;  // at the scheduled (best) user
    double gamma_e = 0.0;  // at the strongest eavesdropper
};

/// Exponential variate with the given MEAN by inversion, -mean * ln(U) with
/// U uniform on (0, 1].
inline double exponential_from_bits(double mean, std::uint64_t bits) {
    return -mean * std::log(open_unit_uniform(bits));
}

/// Received SNR through the keyhole for a link whose post-keyhole power is
/// `link_power`.
inline double keyhole_snr(double gamma_bar, double g_power, double delta, double link_power) {
    return gamma_bar * g_power * (delta * delta) * link_power;
}

/// Draws |g|^2, then the M user powers, then the N eavesdropper powers, one
/// 64-bit output each, in that order.
template <std::uniform_random_bit_generator Rng>
    requires(Rng::min() == 0 && Rng::max() == std::numeric_limits<std::uint64_t>::max())
ChannelRealization sample_realization(const SystemParams& params, Rng& rng) {
    validate(params);
    ChannelRealization out;
    out.g_power = exponential_from_bits(params.zeta_g, rng());
    out.d_powers.resize(static_cast<std::size_t>(params.num_users));
    for (auto& p : out.d_powers) p = exponential_from_bits(params.zeta_hd, rng());
    out.e_powers.resize(static_cast<std::size_t>(params.num_eves));
    for (auto& p : out.e_powers) p = exponential_from_bits(params.zeta_he, rng());
    return out;
}

/// gamma_d = gamma_bar_d |g|^2 delta^2 max_m |h_d|^2 and the eavesdropper
/// analogue. Throws std::invalid_argument if the realization does not have
/// M user and N eavesdropper entries.
SnrPair instantaneous_snrs(const SystemParams& params, const ChannelRealization& realization);

/// [log2((1 + gamma_d) / (1 + gamma_e))]^+ in bits per channel use.
double secrecy_rate(const SnrPair& snrs);

/// Secrecy outage: log2((1 + gamma_d) / (1 + gamma_e)) < r_th, written as
/// 1 + gamma_d < rho (1 + gamma_e). The comparison uses the rate before the
/// positive part is taken, so r_th = 0 counts the draws with gamma_d < gamma_e.
inline bool is_secrecy_outage(const SnrPair& snrs, double rho) {
    return 1.0 + snrs.gamma_d < rho * (1.0 + snrs.gamma_e);
}

}  // namespace keyhole
