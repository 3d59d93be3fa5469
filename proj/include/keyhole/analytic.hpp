// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "keyhole/model.hpp"

namespace keyhole {

enum class Method { closed_form, asymptotic, quadrature, monte_carlo };

std::string_view to_string(Method method);

/// Secrecy outage probability tagged with how it was obtained.
struct SopValue {
    double value = 0.0;
    Method method = Method::closed_form;
};

/// Alternating binomial sum left [0, 1] by more than the rounding allowance.
class SummationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature hit its depth limit before meeting the tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_rel_error)
        : std::runtime_error(what), achieved_rel_error_(achieved_rel_error) {}
    double achieved_rel_error() const { return achieved_rel_error_; }

private:
    double achieved_rel_error_;
};

namespace analytic {

/// Largest M or N accepted by the binomial-sum formulas. C(60, 30) ~ 1.2e17
/// is already past exact double-precision integers.
inline constexpr int kMaxBinomialOrder = 60;

/// Raw closed-form values may stray this far outside [0, 1] before being
/// clamped; anything further raises SummationError.
inline constexpr double kRangeSlack = 1e-9;

inline constexpr unsigned kQuadratureMaxDepth = 30;

/// P[gamma_bar_d max_m |h_d|^2 <= x] = (1 - exp(-x / (zeta_hd gamma_bar_d)))^M.
double best_user_cdf(double x, int num_users, double zeta_hd, double gamma_bar_d);

/// P[gamma_bar_e max_n |h_e|^2 <= y], the eavesdropper counterpart.
double best_eve_cdf(double y, int num_eves, double zeta_he, double gamma_bar_e);

/// The same CDF through its binomial expansion
///   1 + sum_{m=1}^{M} (-1)^m C(M, m) exp(-m x / scale).
/// Only used to cross-check the product form; the SOP sums embed it.
double max_exponential_cdf_expanded(double x, int count, double scale);

/// Exact SOP as the double binomial sum with the z K1(z) factor. Handles
/// r_th = 0 through the z -> 0 limit of z K1(z).
///
/// Throws std::invalid_argument for invalid params or M, N above
/// kMaxBinomialOrder, and SummationError when cancellation pushes the raw sum
/// outside [-kRangeSlack, 1 + kRangeSlack].
SopValue sop_closed_form(const SystemParams& params);

/// High-SNR saturation level: the closed form with z K1(z) replaced by 1.
/// Independent of delta, zeta_g and the absolute transmit power; only the
/// noise ratio gamma_bar_d / gamma_bar_e enters.
SopValue sop_asymptotic(const SystemParams& params);

/// Direct numerical evaluation of
///   P = int int F_X((rho - 1) / (delta^2 z) + rho y) f_Y(y) f_Z(z) dy dz
/// using product-form CDFs only, so it shares no algebra with the closed
/// form. The |g|^2 axis is integrated on a log scale, folded at its mean;
/// the eavesdropper axis is cut where its tail mass is negligible against
/// the requested accuracy. Both use adaptive Gauss-Kronrod (15 points). A
/// coarse first pass sets the scale the final tolerances are measured
/// against.
///
/// `rel_tol` must lie in [1e-10, 1e-3]. `max_depth` caps the bisection depth
/// of each adaptive integral. Throws QuadratureError carrying the achieved
/// relative error estimate when the tolerance is not met.
SopValue sop_quadrature(const SystemParams& params, double rel_tol = 1e-9,
                        unsigned max_depth = kQuadratureMaxDepth);

}  // namespace analytic
}  // namespace keyhole
