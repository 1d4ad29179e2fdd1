#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "critset/error.hpp"

namespace critset {

/// Range of f' over the reals (or over a scan window when only that much is
/// known). `conclusive` is false when the range was obtained by sampling a
/// non-polynomial without a closed form.
struct DerivativeRange {
    double inf = 0.0;
    double sup = 0.0;
    bool inf_attained = false; // whether inf is a value of f' (vs. a limit)
    bool sup_attained = false;
    bool inf_finite = true;
    bool sup_finite = true;
    bool conclusive = true;

    /// Strict interior membership: values strictly below and above x are both attained.
    bool contains_interior(double x) const {
        const bool below = !inf_finite || x > inf;
        const bool above = !sup_finite || x < sup;
        return below && above;
    }
};

/// Scalar nonlinearity f with exact first and second derivatives.
/// Polynomials differentiate their coefficient tables; presets use closed forms.
class Nonlinearity {
public:
    /// Coefficients in ascending degree: c0 + c1 x + c2 x^2 + ...
    static Nonlinearity polynomial(std::vector<double> coeffs) {
        Nonlinearity f;
        f.kind_ = Kind::Polynomial;
        f.coeffs_ = std::move(coeffs);
        if (f.coeffs_.empty()) f.coeffs_.push_back(0.0);
        return f;
    }

    static Nonlinearity preset(const std::string& name) {
        Nonlinearity f;
        if (name == "sin") f.kind_ = Kind::Sin;
        else if (name == "tanh") f.kind_ = Kind::Tanh;
        else throw invalid_input("unknown nonlinearity preset '" + name + "'");
        f.name_ = name;
        return f;
    }

    double eval(double x) const { return eval_deriv(x, 0); }
    double d1(double x) const { return eval_deriv(x, 1); }
    double d2(double x) const { return eval_deriv(x, 2); }

    double eval_deriv(double x, int order) const {
        switch (kind_) {
        case Kind::Polynomial: return poly_eval(coeffs_, order, x);
        case Kind::Sin:
            switch (order) {
            case 0: return std::sin(x);
            case 1: return std::cos(x);
            default: return -std::sin(x);
            }
        case Kind::Tanh: {
            const double th = std::tanh(x);
            const double s2 = 1.0 - th * th;
            switch (order) {
            case 0: return th;
            case 1: return s2;
            default: return -2.0 * th * s2;
            }
        }
        }
        return 0.0;
    }

    bool is_polynomial() const { return kind_ == Kind::Polynomial; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    std::string description() const;

    /// Range of f' over all of R (exact for polynomials and presets).
    /// `scan` is the fallback window for future non-closed-form kinds.
    DerivativeRange derivative_range(double scan_lo = -50.0, double scan_hi = 50.0) const;

    /// Real roots of f' + m^2 (candidates for the constant x_m with f'(x_m) = -m^2),
    /// found by dense scan + bisection on [lo, hi].
    std::vector<double> roots_of_d1_plus(double value, double lo = -50.0, double hi = 50.0) const;

private:
    enum class Kind { Polynomial, Sin, Tanh };
    Kind kind_ = Kind::Polynomial;
    std::vector<double> coeffs_{0.0};
    std::string name_;

    static double poly_eval(const std::vector<double>& c, int order, double x) {
        // Horner on the analytically differentiated coefficient table.
        double acc = 0.0;
        const int n = static_cast<int>(c.size());
        for (int k = n - 1; k >= order; --k) {
            double factor = 1.0;
            for (int j = 0; j < order; ++j) factor *= static_cast<double>(k - j);
            acc = acc * x + factor * c[static_cast<std::size_t>(k)];
        }
        return acc;
    }
};

} // namespace critset
