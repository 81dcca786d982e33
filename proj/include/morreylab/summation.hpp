#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace morreylab {

// Neumaier-compensated accumulator. Summation order is part of the
// contract everywhere this is used: identical inputs in identical order
// give bit-identical results.
class CompensatedSum {
public:
    CompensatedSum() = default;

    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

// Fixed block size for chunked reductions. Partial sums are formed per
// block and combined in block order, so the result does not depend on
// how many threads evaluated the blocks.
inline constexpr std::size_t kReductionBlock = 4096;

double block_sum(const std::vector<double>& partials);

} // namespace morreylab
