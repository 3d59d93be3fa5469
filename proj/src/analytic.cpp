// SPDX-License-Identifier: Apache-2.0
#include "keyhole/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "keyhole/specfun.hpp"
#include "keyhole/summation.hpp"

namespace keyhole {

std::string_view to_string(Method method) {
    switch (method) {
        case Method::closed_form: return "closed_form";
        case Method::asymptotic: return "asymptotic";
        case Method::quadrature: return "quadrature";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

namespace analytic {
namespace {

// Row n of Pascal's triangle. Exact in 64-bit integers up to n = 62, then
// rounded once to double.
std::vector<double> binomial_row(int n) {
    std::vector<double> row(static_cast<std::size_t>(n) + 1);
    std::uint64_t c = 1;
    for (int k = 0; k <= n; ++k) {
        row[static_cast<std::size_t>(k)] = static_cast<double>(c);
        c = c * static_cast<std::uint64_t>(n - k) / static_cast<std::uint64_t>(k + 1);
    }
    return row;
}

void check_binomial_cap(const SystemParams& params) {
    if (params.num_users > kMaxBinomialOrder || params.num_eves > kMaxBinomialOrder) {
        std::ostringstream msg;
        msg << "M=" << params.num_users << ", N=" << params.num_eves
            << " exceeds the binomial cap of " << kMaxBinomialOrder
            << " for the closed-form sums; use the quadrature path instead";
        throw std::invalid_argument(msg.str());
    }
}

void check_order_cdf_args(double x, int count, double zeta, double gamma_bar) {
    if (!(x >= 0.0)) throw std::invalid_argument("order-statistic CDF: x must be >= 0");
    if (count < 1) throw std::invalid_argument("order-statistic CDF: count must be >= 1");
    if (!(zeta > 0.0) || !std::isfinite(zeta)) {
        throw std::invalid_argument("order-statistic CDF: channel mean must be finite and > 0");
    }
    if (!(gamma_bar > 0.0) || !std::isfinite(gamma_bar)) {
        throw std::invalid_argument("order-statistic CDF: average SNR must be finite and > 0");
    }
}

// (1 - exp(-x / scale))^count
double max_exponential_cdf(double x, int count, double scale) {
    return std::pow(-std::expm1(-x / scale), count);
}

// 1 - sum_{m,n} C(M,m) C(N,n) (-1)^{m+n} w_{mn} k_m, where
// w_{mn} = n A / (m rho B + n A) with A = zeta_hd gamma_bar_d, B = zeta_he gamma_bar_e,
// and k_m is supplied by the caller.
template <typename BesselFactor>
double alternating_sop_sum(const SystemParams& params, double user_scale, double eve_scale,
                           BesselFactor&& bessel_factor) {
    const int big_m = params.num_users;
    const int big_n = params.num_eves;
    const auto binom_m = binomial_row(big_m);
    const auto binom_n = binomial_row(big_n);
    const double rho = params.rho();

    CompensatedSum total;
    total += 1.0;
    for (int m = 1; m <= big_m; ++m) {
        const double k_m = bessel_factor(m);
        for (int n = 1; n <= big_n; ++n) {
            const double weight =
                n * user_scale / (m * rho * eve_scale + n * user_scale);
            const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
            total += -sign * binom_m[static_cast<std::size_t>(m)] *
                     binom_n[static_cast<std::size_t>(n)] * weight * k_m;
        }
    }
    return total.value();
}

double clamp_probability(double raw, const char* what) {
    if (!(raw >= -kRangeSlack && raw <= 1.0 + kRangeSlack)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": alternating sum produced " << raw
            << ", outside [0, 1] beyond rounding; cancellation has destroyed the result";
        throw SummationError(msg.str());
    }
    return std::clamp(raw, 0.0, 1.0);
}

}  // namespace

double best_user_cdf(double x, int num_users, double zeta_hd, double gamma_bar_d) {
    check_order_cdf_args(x, num_users, zeta_hd, gamma_bar_d);
    return max_exponential_cdf(x, num_users, zeta_hd * gamma_bar_d);
}

double best_eve_cdf(double y, int num_eves, double zeta_he, double gamma_bar_e) {
    check_order_cdf_args(y, num_eves, zeta_he, gamma_bar_e);
    return max_exponential_cdf(y, num_eves, zeta_he * gamma_bar_e);
}

double max_exponential_cdf_expanded(double x, int count, double scale) {
    const auto binom = binomial_row(count);
    CompensatedSum total;
    total += 1.0;
    for (int m = 1; m <= count; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        total += sign * binom[static_cast<std::size_t>(m)] * std::exp(-m * x / scale);
    }
    return total.value();
}

SopValue sop_closed_form(const SystemParams& params) {
    validate(params);
    check_binomial_cap(params);
    const double user_scale = params.zeta_hd * params.gamma_bar_d;
    const double eve_scale = params.zeta_he * params.gamma_bar_e;
    const double rho_minus_one = std::expm1(params.r_th * std::numbers::ln2);
    const double denom = params.delta * params.delta * params.zeta_g * user_scale;
    const double raw = alternating_sop_sum(params, user_scale, eve_scale, [&](int m) {
        return specfun::z_times_k1(std::sqrt(4.0 * m * rho_minus_one / denom));
    });
    return {clamp_probability(raw, "sop_closed_form"), Method::closed_form};
}

SopValue sop_asymptotic(const SystemParams& params) {
    validate(params);
    check_binomial_cap(params);
    // sigma_e^2 / sigma_d^2 = gamma_bar_d / gamma_bar_e; only the ratio of the
    // two scales matters, so feed zeta_hd and zeta_he * (gamma_bar_e / gamma_bar_d).
    const double noise_ratio = params.gamma_bar_e / params.gamma_bar_d;
    const double raw = alternating_sop_sum(params, params.zeta_hd, params.zeta_he * noise_ratio,
                                           [](int) { return 1.0; });
    return {clamp_probability(raw, "sop_asymptotic"), Method::asymptotic};
}

namespace {

struct QuadraturePass {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

// One evaluation of the double integral. `value_scale` is a prior estimate
// of the result; inner tolerances and the eavesdropper cut are set so that
// their absolute contribution stays below a small fraction of
// rel_tol * value_scale.
QuadraturePass integrate_sop(const SystemParams& params, double rel_tol, double value_scale,
                             unsigned max_depth) {
    using Integrator = boost::math::quadrature::gauss_kronrod<double, 15>;

    const int big_m = params.num_users;
    const int big_n = params.num_eves;
    const double user_scale = params.zeta_hd * params.gamma_bar_d;
    const double eve_scale = params.zeta_he * params.gamma_bar_e;
    const double rho = params.rho();
    const double rho_minus_one = std::expm1(params.r_th * std::numbers::ln2);
    const double delta_sq = params.delta * params.delta;
    const double zeta_g = params.zeta_g;
    const double budget = rel_tol * std::clamp(value_scale, 1e-300, 1.0);

    // Inner integral over the eavesdropper SNR y on [0, y_max], where the
    // tail 1 - F_Y(y_max) <= N exp(-y_max / eve_scale) is below 1e-3 budget.
    // The tail is added as tail * F_X(offset + rho y_max), a lower bound
    // whose shortfall is at most tail * (1 - F_X(...)). Inner values are at
    // most 1, so a relative inner tolerance of 0.1 budget bounds the
    // absolute inner error.
    const double inner_tol = std::max(0.1 * budget, 1e-14);
    const double y_max = eve_scale * std::log(big_n / (1e-3 * budget));
    const double tail = 1.0 - max_exponential_cdf(y_max, big_n, eve_scale);
    double worst_inner = 0.0;

    auto inner = [&](double offset) {
        if (!std::isfinite(offset)) return 1.0;
        auto integrand = [&](double y) {
            const double e = std::exp(-y / eve_scale);
            const double density =
                big_n / eve_scale * e * std::pow(-std::expm1(-y / eve_scale), big_n - 1);
            return max_exponential_cdf(offset + rho * y, big_m, user_scale) * density;
        };
        double err = 0.0;
        const double body =
            Integrator::integrate(integrand, 0.0, y_max, max_depth, inner_tol, &err);
        const double cdf_at_cut = max_exponential_cdf(offset + rho * y_max, big_m, user_scale);
        worst_inner = std::max(worst_inner, err + tail * (1.0 - cdf_at_cut));
        return body + tail * cdf_at_cut;
    };

    // Outer integral over z = |g|^2 = zeta_g exp(s), s on the real line,
    // folded at s = 0 into two half-lines:
    //   near: z = zeta_g exp(-s), weight t exp(-t), t = exp(-s)
    //   far:  z = zeta_g exp(s),  weight t exp(-t), t = exp(s)
    // The log scale resolves a transition of the inner integral at any z,
    // however far it sits from zeta_g.
    auto offset_at = [&](double z) { return rho_minus_one / (delta_sq * z); };
    auto near_piece = [&](double s) {
        const double t = std::exp(-s);
        if (t <= 0.0) return 0.0;
        return inner(offset_at(zeta_g * t)) * t * std::exp(-t);
    };
    auto far_piece = [&](double s) {
        const double t = std::exp(s);
        if (t > 800.0) return 0.0;  // exp(-t) underflows
        return inner(offset_at(zeta_g * t)) * t * std::exp(-t);
    };

    const double inf = std::numeric_limits<double>::infinity();
    double err_near = 0.0;
    double err_far = 0.0;
    const double near = Integrator::integrate(near_piece, 0.0, inf, max_depth, 0.5 * rel_tol, &err_near);
    const double far = Integrator::integrate(far_piece, 0.0, inf, max_depth, 0.5 * rel_tol, &err_far);
    // f_Z integrates to one, so the largest inner error bounds what the
    // inner integrals contribute to the total.
    return {near + far, err_near + err_far + worst_inner};
}

}  // namespace

SopValue sop_quadrature(const SystemParams& params, double rel_tol, unsigned max_depth) {
    validate(params);
    if (!(rel_tol >= 1e-10 && rel_tol <= 1e-3)) {
        throw std::invalid_argument("sop_quadrature: rel_tol must lie in [1e-10, 1e-3]");
    }
    // A coarse pass fixes the scale of the result; the second pass sizes
    // its inner tolerances from it.
    const double scale = integrate_sop(params, 1e-3, 1.0, max_depth).value;
    const auto pass = integrate_sop(params, rel_tol, scale, max_depth);
    const double value = pass.value;
    const double achieved = value > 0.0 ? pass.error / value : pass.error;
    if (!(achieved <= rel_tol) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "sop_quadrature did not converge: achieved relative error estimate " << achieved
            << " exceeds requested " << rel_tol << " (value " << value << ")";
        throw QuadratureError(msg.str(), achieved);
    }
    return {std::clamp(value, 0.0, 1.0), Method::quadrature};
}

}  // namespace analytic
}  // namespace keyhole
