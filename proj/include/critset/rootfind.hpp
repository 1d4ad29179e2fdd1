#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "critset/planar_map.hpp"

namespace critset {

struct MultistartOptions {
    double residual_tol = 1e-10;
    int max_iterations = 60;
    double dedup_radius = 0.0; // 0 -> 1e-6 * window diameter
};

/// Newton iteration on F(z) = target from every node of a grid x grid lattice
/// over the window. Starts with a singular Jacobian iterate are abandoned.
/// Converged points are deduplicated and filtered to the window; the result
/// is sorted lexicographically, so it is independent of start order.
std::vector<Eigen::Vector2d> multistart_roots(const PlanarMap& map, const Window& window,
                                              int grid, const Eigen::Vector2d& target,
                                              const MultistartOptions& opts = {});

/// Single Newton solve for F(z) = target from a given start; empty when the
/// iteration stalls or hits a singular Jacobian.
std::optional<Eigen::Vector2d> newton_planar(const PlanarMap& map, const Eigen::Vector2d& start,
                                             const Eigen::Vector2d& target,
                                             const MultistartOptions& opts = {});

/// Bisection for a scalar root on a sign-changing bracket.
double bisect(const std::function<double(double)>& f, double a, double b, double xtol = 1e-14,
              int max_iter = 200);

} // namespace critset
