// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference for K1: Boost.Math evaluated in 50-digit binary
// floating point, independent of the double-precision code under test.
#pragma once

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace keyhole::oracle {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

inline HighPrecision bessel_k1_hp(double z) {
    return boost::math::cyl_bessel_k(1, HighPrecision(z));
}

inline HighPrecision z_times_k1_hp(double z) { return HighPrecision(z) * bessel_k1_hp(z); }

/// |approx - exact| / |exact| evaluated in high precision.
inline double relative_error(double approx, const HighPrecision& exact) {
    using boost::multiprecision::abs;
    return static_cast<double>(abs((HighPrecision(approx) - exact) / exact));
}

}  // namespace keyhole::oracle
