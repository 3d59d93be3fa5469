// SPDX-License-Identifier: Apache-2.0
#include "keyhole/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace keyhole::mc {
namespace {

constexpr double kZ95 = 1.959963984540054;

// Minimum of `count` uniforms on (0, 1]; -mean * ln(min) is then bit-identical
// to the maximum of the individual -mean * ln(u) draws.
double min_uniform(PhiloxStream& rng, int count) {
    double lowest = 1.0;
    for (int k = 0; k < count; ++k) lowest = std::min(lowest, open_unit_uniform(rng()));
    return lowest;
}

}  // namespace

std::uint64_t count_outages(const SystemParams& params, std::uint64_t seed, std::uint64_t first,
                            std::uint64_t last) {
    const double rho = params.rho();
    std::uint64_t outages = 0;
    for (std::uint64_t i = first; i < last; ++i) {
        PhiloxStream rng(seed, i);
        const double g = exponential_from_bits(params.zeta_g, rng());
        const double best_d = -params.zeta_hd * std::log(min_uniform(rng, params.num_users));
        const double best_e = -params.zeta_he * std::log(min_uniform(rng, params.num_eves));
        const SnrPair snrs{keyhole_snr(params.gamma_bar_d, g, params.delta, best_d),
                           keyhole_snr(params.gamma_bar_e, g, params.delta, best_e)};
        outages += is_secrecy_outage(snrs, rho) ? 1 : 0;
    }
    return outages;
}

MonteCarloEstimate estimate_sop(const SystemParams& params, std::uint64_t num_samples,
                                std::uint64_t seed, unsigned num_streams) {
    validate(params);
    if (num_samples < kMinSamples) {
        throw std::invalid_argument("estimate_sop: num_samples must be >= 1000, got " +
                                    std::to_string(num_samples));
    }
    if (num_streams < 1) throw std::invalid_argument("estimate_sop: num_streams must be >= 1");

    const std::uint64_t quota = (num_samples + num_streams - 1) / num_streams;
    std::vector<std::uint64_t> counts(num_streams, 0);
    std::vector<std::exception_ptr> errors(num_streams);
    {
        std::vector<std::jthread> workers;
        workers.reserve(num_streams);
        for (unsigned s = 0; s < num_streams; ++s) {
            const std::uint64_t first = std::min(num_samples, s * quota);
            const std::uint64_t last = std::min(num_samples, first + quota);
            workers.emplace_back([&, s, first, last] {
                try {
                    counts[s] = count_outages(params, seed, first, last);
                } catch (...) {
                    errors[s] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    MonteCarloEstimate est;
    est.num_samples = num_samples;
    est.seed = seed;
    est.num_streams = num_streams;
    for (auto c : counts) est.num_outages += c;

    const double n = static_cast<double>(num_samples);
    const double p = static_cast<double>(est.num_outages) / n;
    est.sop_hat = p;
    est.std_error = std::sqrt(p * (1.0 - p) / n);

    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    est.ci95_low = std::clamp(std::min(center - half, p), 0.0, 1.0);
    est.ci95_high = std::clamp(std::max(center + half, p), 0.0, 1.0);
    return est;
}

ValidationReport compare_to_analytic(const MonteCarloEstimate& mc, const SopValue& cf) {
    ValidationReport report{mc, cf, 0.0, false};
    double se = mc.std_error;
    if (se == 0.0) {
        se = std::sqrt(cf.value * (1.0 - cf.value) / static_cast<double>(mc.num_samples));
    }
    const double diff = mc.sop_hat - cf.value;
    if (se > 0.0) {
        report.z_score = diff / se;
    } else {
        report.z_score = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    report.pass = std::abs(report.z_score) <= kMaxAbsZScore;
    return report;
}

ValidationReport validate_against_analytic(const SystemParams& params, std::uint64_t num_samples,
                                           std::uint64_t seed, unsigned num_streams) {
    const auto mc = estimate_sop(params, num_samples, seed, num_streams);
    return compare_to_analytic(mc, analytic::sop_closed_form(params));
}

}  // namespace keyhole::mc
