#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "critset/error.hpp"

namespace critset {

struct Window {
    double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;

    static Window square(double half_width) { return {-half_width, half_width, -half_width, half_width}; }
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diameter() const { return std::hypot(width(), height()); }
    bool contains(const Eigen::Vector2d& p, double slack = 0.0) const {
        return p.x() >= xmin - slack && p.x() <= xmax + slack && p.y() >= ymin - slack &&
               p.y() <= ymax + slack;
    }
};

/// Term c * z^j * conj(z)^k of a polynomial map C -> C in z and z-bar.
struct ZZbarTerm {
    int z_power = 0;
    int zbar_power = 0;
    std::complex<double> coeff;
};

/// Smooth map R^2 -> R^2 with evaluation and Jacobian. Analytic Jacobians
/// come from Wirtinger derivatives for z/z-bar polynomials; otherwise central
/// differences with step 1e-6 * scale.
class PlanarMap {
public:
    using EvalFn = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;
    using JacFn = std::function<Eigen::Matrix2d(const Eigen::Vector2d&)>;

    PlanarMap(EvalFn eval, JacFn jacobian)
        : eval_(std::move(eval)), jac_(std::move(jacobian)) {}

    /// Finite-difference Jacobian fallback.
    static PlanarMap from_eval(EvalFn eval, double scale = 1.0);

    /// Polynomial in z and z-bar with analytic Wirtinger Jacobian.
    static PlanarMap zzbar_polynomial(std::vector<ZZbarTerm> terms);

    /// The map z -> z^7 + 5 z-bar^4 + z.
    static PlanarMap preset_z7();

    Eigen::Vector2d operator()(const Eigen::Vector2d& p) const { return eval_(p); }
    Eigen::Matrix2d jacobian(const Eigen::Vector2d& p) const { return jac_(p); }
    double det_jacobian(const Eigen::Vector2d& p) const { return jac_(p).determinant(); }

    /// Gradient of det DF by central differences.
    Eigen::Vector2d det_jacobian_gradient(const Eigen::Vector2d& p, double h = 1e-6) const;

    /// Compare the stored Jacobian against central differences of eval at
    /// random probes; returns the worst relative error.
    double self_check(const Window& window, int probes = 100, unsigned seed = 7) const;

private:
    EvalFn eval_;
    JacFn jac_;
};

} // namespace critset
