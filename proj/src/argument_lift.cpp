#include "critset/argument_lift.hpp"

#include <cmath>
#include <numbers>

namespace critset {

std::vector<double> lift_argument(const std::vector<Eigen::Vector2d>& points, double theta0) {
    if (points.empty()) throw invalid_input("lift_argument needs at least one point");
    std::vector<double> theta(points.size());

    const Eigen::Vector2d& p0 = points.front();
    if (p0.norm() == 0.0) throw degenerate_vector_error("zero vector at index 0");
    const double a0 = std::atan2(p0.y(), p0.x());
    const double twopi = 2.0 * std::numbers::pi;
    // theta0 must be a lift of the actual argument of the first point.
    double diff = std::remainder(theta0 - a0, twopi);
    if (std::abs(diff) > 1e-9)
        throw invalid_input("theta0 is not an argument of the first point (mod 2pi)");
    theta[0] = theta0;

    for (std::size_t k = 1; k < points.size(); ++k) {
        const Eigen::Vector2d& a = points[k - 1];
        const Eigen::Vector2d& b = points[k];
        if (b.norm() == 0.0)
            throw degenerate_vector_error("zero vector at index " + std::to_string(k));
        const double cross = a.x() * b.y() - a.y() * b.x();
        const double dot = a.dot(b);
        const double step = std::atan2(cross, dot);
        if (std::abs(step) >= 0.5 * std::numbers::pi)
            throw resolution_error("adjacent points subtend an angle >= pi/2 at index " +
                                   std::to_string(k) + "; sample more densely");
        theta[k] = theta[k - 1] + step;
    }
    return theta;
}

double winding_number(const std::vector<Eigen::Vector2d>& points, double theta0) {
    const std::vector<double> theta = lift_argument(points, theta0);
    return (theta.back() - theta.front()) / (2.0 * std::numbers::pi);
}

} // namespace critset
