#pragma once

#include <Eigen/Dense>
#include <vector>

#include "critset/error.hpp"

namespace critset {

/// Continuous branch of the argument along a sequence of nonzero planar
/// vectors. theta[0] = theta0 must be a valid argument of points[0]; each
/// increment is computed with atan2 of cross/dot and must stay below pi/2
/// in magnitude (otherwise the sampling is too coarse).
std::vector<double> lift_argument(const std::vector<Eigen::Vector2d>& points, double theta0);

/// Total winding (theta_end - theta_0) / (2 pi) of the lifted argument.
double winding_number(const std::vector<Eigen::Vector2d>& points, double theta0 = 0.0);

} // namespace critset
