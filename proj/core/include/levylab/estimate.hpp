#pragma once

#include <cmath>
#include <cstdint>

namespace levylab {

/// Monte Carlo mean with standard error and a 95% confidence interval.
/// Internally a triple (sum, sum of squares, count), so merging two
/// estimates is associative on the internal state.
class Estimate {
public:
    Estimate() = default;

    void add(double value) {
        sum_ += value;
        sum_squares_ += value * value;
        ++count_;
    }

    void add_incomplete() { ++incomplete_; }

    static Estimate merge(const Estimate& a, const Estimate& b) {
        Estimate out;
        out.sum_ = a.sum_ + b.sum_;
        out.sum_squares_ = a.sum_squares_ + b.sum_squares_;
        out.count_ = a.count_ + b.count_;
        out.incomplete_ = a.incomplete_ + b.incomplete_;
        return out;
    }

    std::uint64_t count() const { return count_; }
    std::uint64_t incomplete_count() const { return incomplete_; }
    bool complete() const { return incomplete_ == 0; }

    double sum() const { return sum_; }
    double sum_squares() const { return sum_squares_; }

    double mean() const { return count_ ? sum_ / static_cast<double>(count_) : 0.0; }

    double standard_error() const {
        if (count_ < 2) return 0.0;
        const double n = static_cast<double>(count_);
        const double variance =
            (sum_squares_ - sum_ * sum_ / n) / (n - 1.0);
        return std::sqrt((variance > 0.0 ? variance : 0.0) / n);
    }

    double ci95_low() const { return mean() - 1.96 * standard_error(); }
    double ci95_high() const { return mean() + 1.96 * standard_error(); }

private:
    double sum_ = 0.0;
    double sum_squares_ = 0.0;
    std::uint64_t count_ = 0;
    std::uint64_t incomplete_ = 0;
};

} // namespace levylab
