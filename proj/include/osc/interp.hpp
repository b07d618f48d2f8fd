#pragma once
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "osc/rootfind.hpp"

namespace osc {

// Shape-preserving monotone cubic interpolation (Fritsch-Carlson limiter).
// A plain cubic spline can overshoot between nodes, which would break the
// monotone inversion below; the limited derivatives cannot.
class MonotoneCubic {
public:
    MonotoneCubic() = default;

    MonotoneCubic(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw std::invalid_argument("MonotoneCubic: need >= 2 nodes");
        for (size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw std::invalid_argument("MonotoneCubic: x not strictly increasing");
        d_.resize(n);
        std::vector<double> h(n - 1), delta(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        d_[0] = delta[0];
        d_[n - 1] = delta[n - 2];
        for (size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                // weighted harmonic mean keeps the interpolant monotone
                double w1 = 2.0 * h[i] + h[i - 1];
                double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        // clamp endpoint slopes (Fritsch-Carlson condition)
        auto clamp_end = [](double& d, double delta0) {
            if (delta0 == 0.0) d = 0.0;
            else if (d * delta0 < 0.0) d = 0.0;
            else if (std::abs(d) > 3.0 * std::abs(delta0)) d = 3.0 * delta0;
        };
        clamp_end(d_[0], delta[0]);
        clamp_end(d_[n - 1], delta[n - 2]);
    }

    double operator()(double x) const {
        size_t i = segment(x);
        double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
        double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        double h10 = t * (1 - t) * (1 - t);
        double h01 = t * t * (3 - 2 * t);
        double h11 = t * t * (t - 1);
        return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
    }

    double derivative(double x) const {
        size_t i = segment(x);
        double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
        double h00 = 6 * t * (t - 1);
        double h10 = (1 - t) * (1 - 3 * t);
        double h01 = -h00;
        double h11 = t * (3 * t - 2);
        return h00 * y_[i] / h + h10 * d_[i] + h01 * y_[i + 1] / h + h11 * d_[i + 1];
    }

    // Inverse for strictly increasing data.
    double inverse(double y) const {
        if (y <= y_.front()) return x_.front();
        if (y >= y_.back()) return x_.back();
        size_t lo = std::upper_bound(y_.begin(), y_.end(), y) - y_.begin();
        size_t i = lo == 0 ? 0 : lo - 1;
        return brent([&](double x) { return (*this)(x) - y; }, x_[i], x_[i + 1]);
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool valid() const { return x_.size() >= 2; }

private:
    size_t segment(double x) const {
        if (x <= x_.front()) return 0;
        if (x >= x_.back()) return x_.size() - 2;
        size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
        return i - 1;
    }

    std::vector<double> x_, y_, d_;
};

}  // namespace osc
