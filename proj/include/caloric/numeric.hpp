#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace caloric {

/// Neumaier-compensated accumulator. Feeding terms in a fixed order gives
/// results that do not depend on how the terms were produced.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_sum(std::span<const double> terms);

/// Worker count: hardware concurrency capped by the CALORIC_THREADS
/// environment variable (minimum 1).
std::size_t thread_budget();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write results into per-index slots and reduce afterwards in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y ~ slope*x + intercept. r2 is 1 when y has no
/// spread (a flat line fits exactly).
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Polynomial (Neville) extrapolation of samples (x_i, y_i) to x = 0.
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

/// Trapezoid rule for samples g(t_i) over [a, b]. Endpoints that fall between
/// samples are handled by linear interpolation.
double trapezoid_on(std::span<const double> times, std::span<const double> g, double a, double b);

}  // namespace caloric
