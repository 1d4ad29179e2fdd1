#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "critset/error.hpp"

namespace critset {

enum class Boundary { Periodic, Dirichlet };

/// Real-valued function sampled on a uniform grid over [0, L].
///
/// Periodic grids hold n samples at t_k = k L / n covering [0, L) with
/// implicit wraparound (no duplicated endpoint). Dirichlet grids hold both
/// endpoints, t_k = k L / (n - 1).
class GridFunction {
public:
    GridFunction(std::vector<double> values, double domain_length, Boundary boundary)
        : values_(std::move(values)), domain_length_(domain_length), boundary_(boundary) {
        if (values_.size() < 8)
            throw invalid_input("GridFunction needs at least 8 samples");
        if (domain_length_ <= 0.0)
            throw invalid_input("GridFunction domain length must be positive");
    }

    static GridFunction constant(double c, std::size_t n, double length, Boundary b) {
        return {std::vector<double>(n, c), length, b};
    }

    /// Sample a scalar function at the grid nodes.
    static GridFunction sample(const std::function<double(double)>& f, std::size_t n,
                               double length, Boundary b) {
        std::vector<double> v(n);
        const double dt = (b == Boundary::Periodic) ? length / static_cast<double>(n)
                                                    : length / static_cast<double>(n - 1);
        for (std::size_t k = 0; k < n; ++k) v[k] = f(dt * static_cast<double>(k));
        return {std::move(v), length, b};
    }

    std::size_t size() const { return values_.size(); }
    double domain_length() const { return domain_length_; }
    Boundary boundary() const { return boundary_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }

    double node(std::size_t k) const {
        const double n = static_cast<double>(values_.size());
        return boundary_ == Boundary::Periodic
                   ? domain_length_ * static_cast<double>(k) / n
                   : domain_length_ * static_cast<double>(k) / (n - 1.0);
    }

    double spacing() const {
        const double n = static_cast<double>(values_.size());
        return boundary_ == Boundary::Periodic ? domain_length_ / n : domain_length_ / (n - 1.0);
    }

    /// Piecewise-linear interpolation; periodic grids wrap, Dirichlet clamp.
    double interpolate(double t) const {
        const std::size_t n = values_.size();
        const double dt = spacing();
        if (boundary_ == Boundary::Periodic) {
            double s = t / dt;
            double base = std::floor(s);
            double frac = s - base;
            long k = static_cast<long>(base) % static_cast<long>(n);
            if (k < 0) k += static_cast<long>(n);
            const std::size_t k0 = static_cast<std::size_t>(k);
            const std::size_t k1 = (k0 + 1) % n;
            return values_[k0] * (1.0 - frac) + values_[k1] * frac;
        }
        if (t <= 0.0) return values_.front();
        if (t >= domain_length_) return values_.back();
        const double s = t / dt;
        const std::size_t k0 = static_cast<std::size_t>(s);
        const std::size_t k1 = std::min(k0 + 1, n - 1);
        const double frac = s - static_cast<double>(k0);
        return values_[k0] * (1.0 - frac) + values_[k1] * frac;
    }

    /// Apply a scalar function sample-wise, keeping grid and boundary tag.
    GridFunction map(const std::function<double(double)>& g) const {
        std::vector<double> out(values_.size());
        for (std::size_t k = 0; k < values_.size(); ++k) out[k] = g(values_[k]);
        return {std::move(out), domain_length_, boundary_};
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Largest jump between adjacent samples (wrapping on periodic grids).
    double max_adjacent_jump() const {
        const std::size_t n = values_.size();
        double m = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k)
            m = std::max(m, std::abs(values_[k + 1] - values_[k]));
        if (boundary_ == Boundary::Periodic)
            m = std::max(m, std::abs(values_[0] - values_[n - 1]));
        return m;
    }

private:
    std::vector<double> values_;
    double domain_length_;
    Boundary boundary_;
};

} // namespace critset
