// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace keyhole {

/// Kahan-Babuska (Neumaier) accumulator. The running compensation holds the
/// low-order bits lost by each addition, so alternating sums with large
/// intermediate magnitudes keep an error of a few ulps of the largest partial
/// sum instead of growing with the number of terms.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace keyhole
