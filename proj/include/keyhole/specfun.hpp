// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace keyhole::specfun {

/// Modified Bessel function of the second kind, order 1, for real z > 0.
///
/// Piecewise evaluation: ascending series with the logarithmic term for
/// z <= 2, Steed's continued fraction on (2, 25], and the Hankel asymptotic
/// expansion beyond. Relative error is below 1e-13 on [1e-8, 700]. Returns 0
/// once the true value underflows (z of roughly 745 and up).
///
/// Throws std::domain_error for z <= 0, NaN or infinity.
double bessel_k1(double z);

/// z * K1(z) for z >= 0, evaluated without forming K1 itself, so there is no
/// overflow near zero and no premature underflow for large z.
///
/// The value at z = 0 is the analytic limit, exactly 1. The result lies in
/// (0, 1] and decreases with z.
///
/// Throws std::domain_error for negative, NaN or infinite z.
double z_times_k1(double z);

}  // namespace keyhole::specfun
