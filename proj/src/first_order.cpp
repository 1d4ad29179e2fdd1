#include "critset/first_order.hpp"

#include <algorithm>
#include <cmath>

#include "critset/quadrature.hpp"
#include "critset/rootfind.hpp"
#include "critset/spectral.hpp"

namespace critset {

namespace {

void require_unit_periodic(const GridFunction& u) {
    if (u.boundary() != Boundary::Periodic)
        throw invalid_input("first-order operator expects a periodic grid function");
}

// Scalar RK4 for u' = rhs(t, u) with escape detection.
bool integrate_scalar(const std::function<double(double, double)>& rhs, double a, int steps,
                      double escape_bound, std::vector<double>* samples, double* final_value) {
    const double h = 1.0 / steps;
    double u = a;
    if (samples) samples->push_back(u);
    for (int k = 0; k < steps; ++k) {
        const double t = h * k;
        const double k1 = rhs(t, u);
        const double k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, u + 0.5 * h * k2);
        const double k4 = rhs(t + h, u + h * k3);
        u += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
        if (!std::isfinite(u) || std::abs(u) > escape_bound) return false;
        if (samples) samples->push_back(u);
    }
    *final_value = u;
    return true;
}

} // namespace

GridFunction apply_F1(const FirstOrderProblem& p, const GridFunction& u) {
    p.validate();
    require_unit_periodic(u);
    GridFunction du = spectral_derivative(u, 1);
    for (std::size_t k = 0; k < u.size(); ++k) du[k] += p.f.eval(u[k]);
    return du;
}

double phi1(const FirstOrderProblem& p, const GridFunction& u) {
    require_unit_periodic(u);
    return quad_periodic(u, [&](double x) { return p.f.d1(x); }) / u.domain_length();
}

double phi12(const FirstOrderProblem& p, const GridFunction& u) {
    require_unit_periodic(u);
    return quad_periodic(u, [&](double x) { return p.f.d2(x); }) / u.domain_length();
}

double floquet_multiplier(const FirstOrderProblem& p, const GridFunction& u) {
    return std::exp(-phi1(p, u));
}

double floquet_multiplier_by_integration(const FirstOrderProblem& p, const GridFunction& u,
                                         int step_count) {
    require_unit_periodic(u);
    // Sample f'(u) on the grid once; the integrator interpolates between nodes.
    const GridFunction fp = u.map([&](double x) { return p.f.d1(x); });
    double v1 = 0.0;
    const bool ok = integrate_scalar(
        [&](double t, double v) { return -fp.interpolate(t) * v; }, 1.0, step_count, 1e12,
        nullptr, &v1);
    if (!ok) throw refinement_failure("linearization integration escaped");
    return v1;
}

double real_eigenvalue_of_linearization(const FirstOrderProblem& p, const GridFunction& u,
                                        int step_count) {
    require_unit_periodic(u);
    const GridFunction fp = u.map([&](double x) { return p.f.d1(x); });
    auto defect = [&](double lambda) {
        // log of the periodicity multiplier of v' + (f'(u) - lambda) v = 0.
        double v1 = 0.0;
        integrate_scalar([&](double t, double v) { return (lambda - fp.interpolate(t)) * v; },
                         1.0, step_count, 1e300, nullptr, &v1);
        return std::log(v1);
    };
    const double bound = fp.max_abs() + 1.0;
    return bisect(defect, -bound, bound, 1e-13);
}

GridFunction project_to_C1(const FirstOrderProblem& p, const GridFunction& u, double scan_lo,
                           double scan_hi) {
    require_unit_periodic(u);
    auto phi_of_shift = [&](double c) {
        return quad_periodic(u, [&](double x) { return p.f.d1(x + c); }) / u.domain_length();
    };
    if (std::abs(phi_of_shift(0.0)) <= 1e-12) return u;

    // Nearest sign-changing bracket on a dense scan of the shift.
    const int n = 4000;
    const double dx = (scan_hi - scan_lo) / n;
    double best_lo = 0.0, best_hi = 0.0, best_dist = std::numeric_limits<double>::infinity();
    double prev = phi_of_shift(scan_lo);
    for (int i = 1; i <= n; ++i) {
        const double c = scan_lo + dx * i;
        const double cur = phi_of_shift(c);
        if (prev * cur <= 0.0 && prev != cur) {
            const double mid = c - 0.5 * dx;
            if (std::abs(mid) < best_dist) {
                best_dist = std::abs(mid);
                best_lo = c - dx;
                best_hi = c;
            }
        }
        prev = cur;
    }
    if (!std::isfinite(best_dist))
        throw not_projectable_error("phi1(u + c) has no sign change on the scan range; "
                                    "the critical set may be empty for this nonlinearity");
    const double c = bisect(phi_of_shift, best_lo, best_hi, 1e-15);
    GridFunction out = u;
    for (auto& v : out.values()) v += c;
    if (std::abs(phi1(p, out)) > 1e-12)
        throw not_projectable_error("projection did not reach |phi1| <= 1e-12");
    return out;
}

namespace {

// Mixing weight for the interleaved pattern: 1 on the u0-intervals, 0 on the
// u1 background, with linear ramps of the given cell width.
std::vector<double> mixing_weights(std::size_t n, double s, int K, int ramp_cells) {
    std::vector<double> w(n, 0.0);
    const double len = (1.0 - s) / K;
    const double ramp = static_cast<double>(ramp_cells) / static_cast<double>(n);
    for (int i = 0; i < K; ++i) {
        const double center = (i + 0.5) / K;
        const double half = 0.5 * len;
        for (std::size_t k = 0; k < n; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(n);
            double dist = std::abs(t - center);
            dist = std::min(dist, 1.0 - dist); // periodic distance
            double wk = 0.0;
            if (dist <= std::max(half - ramp, 0.0)) wk = 1.0;
            else if (dist < half) wk = (half - dist) / ramp;
            w[k] = std::max(w[k], wk);
        }
    }
    return w;
}

// Tent-shaped correction profile on a window of the given measure starting at t0.
std::vector<double> correction_profile(std::size_t n, double t0, double measure) {
    std::vector<double> beta(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double t = static_cast<double>(k) / static_cast<double>(n) - t0;
        t -= std::floor(t); // periodic offset into [0, 1)
        if (t >= measure) continue;
        const double x = t / measure; // 0..1 across the window
        if (x < 0.25) beta[k] = x / 0.25;
        else if (x > 0.75) beta[k] = (1.0 - x) / 0.25;
        else beta[k] = 1.0;
    }
    return beta;
}

} // namespace

HomotopyPath contraction_homotopy(const FirstOrderProblem& p, const GridFunction& u0,
                                  const GridFunction& u1, int steps,
                                  const HomotopyOptions& opts) {
    require_unit_periodic(u0);
    require_unit_periodic(u1);
    if (u0.size() != u1.size()) throw invalid_input("homotopy endpoints need a common grid");
    if (steps < 2) throw invalid_input("homotopy needs at least 2 steps");
    if (std::abs(phi1(p, u0)) > 1e-8 || std::abs(phi1(p, u1)) > 1e-8)
        throw invalid_input("homotopy endpoints must satisfy |phi1| <= 1e-8; project first");

    const std::size_t n = u0.size();
    HomotopyPath path;
    for (int j = 0; j <= steps; ++j) {
        const double s = static_cast<double>(j) / steps;
        if (j == 0) {
            path.slices.push_back(u0);
            path.residuals.push_back(std::abs(phi1(p, u0)));
            continue;
        }
        if (j == steps) {
            path.slices.push_back(u1);
            path.residuals.push_back(std::abs(phi1(p, u1)));
            continue;
        }
        const auto w = mixing_weights(n, s, opts.interleave_count, opts.ramp_cells);
        GridFunction base = u0;
        for (std::size_t k = 0; k < n; ++k) base[k] = w[k] * u0[k] + (1.0 - w[k]) * u1[k];

        // Restore phi1 = 0 exactly with a constant value on the correction window.
        const auto beta = correction_profile(n, 0.0, opts.correction_measure);
        auto phi_of = [&](double c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += p.f.d1((1.0 - beta[k]) * base[k] + beta[k] * c);
            return acc / static_cast<double>(n);
        };
        double lo = -10.0, hi = 10.0;
        for (std::size_t k = 0; k < n; ++k) {
            lo = std::min(lo, base[k] - 10.0);
            hi = std::max(hi, base[k] + 10.0);
        }
        const int scan = 2000;
        double c_star = 0.0;
        bool found = false;
        double prev = phi_of(lo), best_dist = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= scan; ++i) {
            const double c = lo + (hi - lo) * i / scan;
            const double cur = phi_of(c);
            if (prev * cur <= 0.0 && prev != cur) {
                const double root = bisect(phi_of, c - (hi - lo) / scan, c, 1e-15);
                if (std::abs(root) < best_dist) {
                    best_dist = std::abs(root);
                    c_star = root;
                    found = true;
                }
            }
            prev = cur;
        }
        if (!found)
            throw correction_window_error(
                "no constant value restores phi1 = 0 on the correction window; widen "
                "correction_measure (try " + std::to_string(2.0 * opts.correction_measure) + ")");
        for (std::size_t k = 0; k < n; ++k)
            base[k] = (1.0 - beta[k]) * base[k] + beta[k] * c_star;

        const double res = std::abs(phi1(p, base));
        if (res > opts.residual_tol)
            throw correction_window_error("slice residual above tolerance after correction");
        path.slices.push_back(std::move(base));
        path.residuals.push_back(res);
    }
    return path;
}

namespace {

std::vector<double> shooting_roots_at_density(const FirstOrderProblem& p, const GridFunction& g,
                                              const ShootingOptions& opts, double radius,
                                              int density, int* escaped) {
    auto rhs = [&](double t, double u) { return g.interpolate(t) - p.f.eval(u); };
    auto poincare = [&](double a, bool* ok) {
        double uf = 0.0;
        *ok = integrate_scalar(rhs, a, opts.step_count, opts.escape_bound, nullptr, &uf);
        return uf - a;
    };
    std::vector<double> as(density + 1), ps(density + 1);
    std::vector<bool> valid(density + 1);
    *escaped = 0;
    for (int i = 0; i <= density; ++i) {
        as[i] = -radius + 2.0 * radius * i / density;
        bool ok = false;
        ps[i] = poincare(as[i], &ok);
        valid[i] = ok;
        if (!ok) ++(*escaped);
    }
    std::vector<double> roots;
    for (int i = 0; i < density; ++i) {
        if (!valid[i] || !valid[i + 1]) continue;
        if (ps[i] == 0.0) { roots.push_back(as[i]); continue; }
        if (ps[i] * ps[i + 1] < 0.0) {
            const double r = bisect(
                [&](double a) {
                    bool ok = false;
                    const double v = poincare(a, &ok);
                    return ok ? v : (a > 0 ? -opts.escape_bound : opts.escape_bound);
                },
                as[i], as[i + 1], opts.root_tol);
            roots.push_back(r);
        }
    }
    // Dedup (tangential brackets can yield near-identical roots).
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || r - out.back() > 1e-7 * (1.0 + radius)) out.push_back(r);
    return out;
}

} // namespace

PeriodicSolveResult count_periodic_solutions(const FirstOrderProblem& p, const GridFunction& g,
                                             const ShootingOptions& opts) {
    require_unit_periodic(g);
    double radius = opts.scan_radius;
    if (radius <= 0.0) radius = 10.0 + g.max_abs();

    // Rescan at double density until the root set stabilizes.
    int density = opts.scan_density;
    int escaped = 0;
    std::vector<double> roots = shooting_roots_at_density(p, g, opts, radius, density, &escaped);
    for (int round = 0; round < 4; ++round) {
        int esc2 = 0;
        auto finer = shooting_roots_at_density(p, g, opts, radius, density * 2, &esc2);
        density *= 2;
        const bool same =
            finer.size() == roots.size() &&
            std::equal(finer.begin(), finer.end(), roots.begin(),
                       [&](double a, double b) { return std::abs(a - b) < 1e-6 * (1 + radius); });
        roots = std::move(finer);
        escaped = esc2;
        if (same) break;
    }

    PeriodicSolveResult result;
    result.escaped_starts = escaped;
    auto rhs = [&](double t, double u) { return g.interpolate(t) - p.f.eval(u); };
    for (double a : roots) {
        std::vector<double> samples;
        double uf = 0.0;
        if (!integrate_scalar(rhs, a, opts.step_count, opts.escape_bound, &samples, &uf))
            continue;
        result.initial_values.push_back(a);
        samples.pop_back(); // periodic grid drops the duplicated endpoint
        result.solutions.emplace_back(std::move(samples), 1.0, Boundary::Periodic);
    }
    return result;
}

} // namespace critset
