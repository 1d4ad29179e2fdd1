#include "critset/rootfind.hpp"

#include <algorithm>
#include <cmath>

namespace critset {

std::optional<Eigen::Vector2d> newton_planar(const PlanarMap& map, const Eigen::Vector2d& start,
                                             const Eigen::Vector2d& target,
                                             const MultistartOptions& opts) {
    Eigen::Vector2d z = start;
    for (int it = 0; it < opts.max_iterations; ++it) {
        const Eigen::Vector2d r = map(z) - target;
        if (r.norm() < opts.residual_tol) return z;
        const Eigen::Matrix2d J = map.jacobian(z);
        const double det = J.determinant();
        if (std::abs(det) < 1e-14 * std::max(1.0, J.squaredNorm())) return std::nullopt;
        z -= J.inverse() * r;
        if (!z.allFinite()) return std::nullopt;
    }
    return std::nullopt;
}

std::vector<Eigen::Vector2d> multistart_roots(const PlanarMap& map, const Window& window,
                                              int grid, const Eigen::Vector2d& target,
                                              const MultistartOptions& opts) {
    if (grid < 16) throw invalid_input("multistart grid must be at least 16");
    MultistartOptions o = opts;
    if (o.dedup_radius <= 0.0) o.dedup_radius = 1e-6 * window.diameter();

    std::vector<Eigen::Vector2d> found;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const Eigen::Vector2d start(
                window.xmin + window.width() * (i + 0.5) / grid,
                window.ymin + window.height() * (j + 0.5) / grid);
            const auto root = newton_planar(map, start, target, o);
            if (!root) continue;
            if (!window.contains(*root, o.dedup_radius)) continue;
            bool dup = false;
            for (const auto& p : found)
                if ((p - *root).norm() < o.dedup_radius) { dup = true; break; }
            if (!dup) found.push_back(*root);
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });
    return found;
}

double bisect(const std::function<double(double)>& f, double a, double b, double xtol,
              int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw invalid_input("bisect: bracket does not change sign");
    for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) { b = m; fb = fm; }
        else { a = m; fa = fm; }
    }
    return 0.5 * (a + b);
}

} // namespace critset
