// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "keyhole/analytic.hpp"
#include "keyhole/model.hpp"

namespace keyhole::mc {

inline constexpr std::uint64_t kMinSamples = 1000;

struct MonteCarloEstimate {
    double sop_hat = 0.0;
    std::uint64_t num_samples = 0;
    std::uint64_t num_outages = 0;
    double std_error = 0.0;  // sqrt(p (1 - p) / n)
    double ci95_low = 0.0;   // Wilson score interval
    double ci95_high = 0.0;
    std::uint64_t seed = 0;
    unsigned num_streams = 1;
};

/// Empirical SOP from num_samples independent channel draws.
///
/// Sample i draws its randomness from PhiloxStream(seed, i), so the estimate
/// depends only on (params, num_samples, seed). The sample range is cut into
/// num_streams contiguous blocks of ceil(num_samples / num_streams), the last
/// one truncated, and each block runs on its own thread; outage counts are
/// integers, so the reduction is exact whatever the thread count.
///
/// Requires num_samples >= 1000 and num_streams >= 1.
MonteCarloEstimate estimate_sop(const SystemParams& params, std::uint64_t num_samples,
                                std::uint64_t seed, unsigned num_streams = 1);

/// Counts outages over samples [first, last) using the same draws as
/// sample_realization(params, PhiloxStream(seed, i)) followed by
/// instantaneous_snrs and is_secrecy_outage. Exposed for tests.
std::uint64_t count_outages(const SystemParams& params, std::uint64_t seed, std::uint64_t first,
                            std::uint64_t last);

struct ValidationReport {
    MonteCarloEstimate mc;
    SopValue cf;
    double z_score = 0.0;
    bool pass = false;
};

inline constexpr double kMaxAbsZScore = 4.0;

/// z = (sop_hat - cf) / std_error and pass = |z| <= 4. When no outage (or
/// only outages) were observed the empirical std_error is 0; the binomial
/// standard error at the analytic value is used instead.
ValidationReport compare_to_analytic(const MonteCarloEstimate& mc, const SopValue& cf);

/// estimate_sop against sop_closed_form at the same point.
ValidationReport validate_against_analytic(const SystemParams& params, std::uint64_t num_samples,
                                           std::uint64_t seed, unsigned num_streams = 1);

}  // namespace keyhole::mc
