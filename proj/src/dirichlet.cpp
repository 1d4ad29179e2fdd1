#include "critset/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "critset/argument_lift.hpp"
#include "critset/rootfind.hpp"

namespace critset {

using std::numbers::pi;

namespace {

void require_dirichlet_pi(const GridFunction& u) {
    if (u.boundary() != Boundary::Dirichlet)
        throw invalid_input("Dirichlet operator expects a Dirichlet-tagged grid function");
    if (std::abs(u.domain_length() - pi) > 1e-9)
        throw invalid_input("Dirichlet operator expects domain length pi");
}

PruferTrace shoot_at_steps(const Nonlinearity& f, const GridFunction& u, int m, int steps) {
    const GridFunction h = u.map([&](double x) { return f.d1(x); });
    const double dt = pi / steps;

    PruferTrace trace;
    trace.m = m;
    trace.t_samples.reserve(steps + 1);
    trace.v1.reserve(steps + 1);
    trace.v1_prime.reserve(steps + 1);

    double v = 0.0, vp = 1.0;
    trace.t_samples.push_back(0.0);
    trace.v1.push_back(v);
    trace.v1_prime.push_back(vp);
    auto rhs = [&](double t, double vv, double vv_p, double& dv, double& dvp) {
        dv = vv_p;
        dvp = h.interpolate(t) * vv; // -v'' + h v = 0  =>  v'' = h v
    };
    for (int k = 0; k < steps; ++k) {
        const double t = dt * k;
        double k1v, k1p, k2v, k2p, k3v, k3p, k4v, k4p;
        rhs(t, v, vp, k1v, k1p);
        rhs(t + 0.5 * dt, v + 0.5 * dt * k1v, vp + 0.5 * dt * k1p, k2v, k2p);
        rhs(t + 0.5 * dt, v + 0.5 * dt * k2v, vp + 0.5 * dt * k2p, k3v, k3p);
        rhs(t + dt, v + dt * k3v, vp + dt * k3p, k4v, k4p);
        v += (dt / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v);
        vp += (dt / 6.0) * (k1p + 2 * k2p + 2 * k3p + k4p);
        trace.t_samples.push_back(dt * (k + 1));
        trace.v1.push_back(v);
        trace.v1_prime.push_back(vp);
    }

    std::vector<Eigen::Vector2d> pts, pts_m;
    pts.reserve(trace.v1.size());
    pts_m.reserve(trace.v1.size());
    for (std::size_t k = 0; k < trace.v1.size(); ++k) {
        pts.emplace_back(trace.v1_prime[k], trace.v1[k]);
        pts_m.emplace_back(trace.v1_prime[k], m * trace.v1[k]);
    }
    trace.omega = lift_argument(pts, 0.0);
    trace.omega_m = lift_argument(pts_m, 0.0);
    return trace;
}

} // namespace

PruferTrace shoot_fundamental(const Nonlinearity& f, const GridFunction& u, int m,
                              const ShootOptions& opts) {
    require_dirichlet_pi(u);
    if (m < 1) throw invalid_input("m must be a positive integer");
    int steps = opts.step_count;
    while (true) {
        try {
            return shoot_at_steps(f, u, m, steps);
        } catch (const NumericalError& e) {
            if (e.name() != "resolution-error" || steps >= opts.max_step_count) throw;
            steps *= 2;
        }
    }
}

CriticalityResult is_critical_dirichlet(const Nonlinearity& f, const GridFunction& u,
                                        double tol) {
    const PruferTrace trace = shoot_fundamental(f, u, 1);
    CriticalityResult r;
    r.omega_pi = trace.omega_end();
    r.residual = std::abs(std::remainder(r.omega_pi, pi));
    r.critical = r.residual <= tol;
    return r;
}

int component_index(const Nonlinearity& f, const GridFunction& u) {
    const PruferTrace trace = shoot_fundamental(f, u, 1);
    const double w = trace.omega_end();
    if (std::abs(std::remainder(w, pi)) > 1e-6)
        throw invalid_input("component_index requires a critical potential");
    const int m = static_cast<int>(std::lround(w / pi));

    // Independent count: interior zeros of v1 plus one.
    int zeros = 0;
    const std::size_t n = trace.v1.size();
    for (std::size_t k = 1; k + 2 < n; ++k)
        if (trace.v1[k] * trace.v1[k + 1] < 0.0) ++zeros;
    if (zeros + 1 != m)
        throw resolution_error("zero count of the fundamental solution disagrees with "
                               "round(omega(pi)/pi)");
    return m;
}

NonemptyVerdict component_nonempty(const Nonlinearity& f, int m, double scan_lo,
                                   double scan_hi) {
    if (m < 1) throw invalid_input("m must be a positive integer");
    const DerivativeRange r = f.derivative_range(scan_lo, scan_hi);
    if (!r.conclusive) return NonemptyVerdict::Inconclusive;
    return r.contains_interior(-static_cast<double>(m) * m) ? NonemptyVerdict::Nonempty
                                                            : NonemptyVerdict::Empty;
}

namespace {

// Interior bump for the one-parameter criticality correction, centered on the
// first antinode pi/(2m) of sin(mt) so that the potential keeps leverage on
// omega(pi) for every index (a bump at a node of v1 has no first-order effect).
double correction_bump(double t, int m) {
    const double center = 0.5 * pi / m;
    const double a = 0.5 * center, b = 1.5 * center;
    if (t <= a || t >= b) return 0.0;
    const double x = (t - a) / (b - a);
    return 0.5 * (1.0 - std::cos(2.0 * pi * x));
}

double omega_pi_of(const Nonlinearity& f, const GridFunction& u, int m) {
    return shoot_fundamental(f, u, m).omega_end();
}

GridFunction add_bump(const GridFunction& u, double c, int m) {
    GridFunction out = u;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * correction_bump(out.node(k), m);
    return out;
}

// Solve omega(pi; u + c * bump) = m pi for the scalar c.
GridFunction enforce_criticality(const Nonlinearity& f, const GridFunction& u, int m,
                                 double tol) {
    auto defect = [&](double c) { return omega_pi_of(f, add_bump(u, c, m), m) - m * pi; };
    const double d0 = defect(0.0);
    if (std::abs(d0) <= tol) return u;

    const double cmax = 4.0;
    const int scan = 160;
    double best_lo = 0.0, best_hi = 0.0, best = std::numeric_limits<double>::infinity();
    double prev = defect(-cmax);
    for (int i = 1; i <= scan; ++i) {
        const double c = -cmax + 2.0 * cmax * i / scan;
        const double cur = defect(c);
        if (prev * cur <= 0.0 && prev != cur) {
            const double mid = c - cmax / scan;
            if (std::abs(mid) < best) {
                best = std::abs(mid);
                best_lo = c - 2.0 * cmax / scan;
                best_hi = c;
            }
        }
        prev = cur;
    }
    if (!std::isfinite(best))
        throw correction_window_error("criticality correction found no sign change of "
                                      "omega(pi) - m pi over the bump amplitude range");
    const double c = bisect(defect, best_lo, best_hi, 1e-14);
    GridFunction out = add_bump(u, c, m);
    if (std::abs(omega_pi_of(f, out, m) - m * pi) > tol)
        throw correction_window_error("criticality correction did not reach tolerance");
    return out;
}

} // namespace

GridFunction project_to_critical_dirichlet(const Nonlinearity& f, const GridFunction& u, int m,
                                           double tol) {
    require_dirichlet_pi(u);
    GridFunction out = enforce_criticality(f, u, m, tol);
    const int idx = component_index(f, out);
    if (idx != m)
        throw component_structure_error("projection landed in component " + std::to_string(idx) +
                                        " instead of " + std::to_string(m));
    return out;
}

HomotopyPath squeeze_homotopy(const Nonlinearity& f, const GridFunction& u0,
                              const GridFunction& u1, int m, int steps,
                              const SqueezeOptions& opts) {
    require_dirichlet_pi(u0);
    require_dirichlet_pi(u1);
    if (u0.size() != u1.size()) throw invalid_input("homotopy endpoints need a common grid");
    if (steps < 2) throw invalid_input("squeeze homotopy needs at least 2 steps");
    for (const GridFunction* u : {&u0, &u1})
        if (component_index(f, *u) != m)
            throw invalid_input("squeeze endpoints must be critical with index m");

    // The constant x_m with f'(x_m) = -m^2, nearest the mean of u0.
    double mean0 = 0.0;
    for (double v : u0.values()) mean0 += v;
    mean0 /= static_cast<double>(u0.size());
    const auto roots = f.roots_of_d1_plus(static_cast<double>(m) * m);
    if (roots.empty())
        throw component_structure_error("-m^2 is not attained by f'; the component is empty");
    double xm = roots[0];
    for (double r : roots)
        if (std::abs(r - mean0) < std::abs(xm - mean0)) xm = r;

    const std::size_t n = u0.size();
    const GridFunction constant_xm = GridFunction::constant(xm, n, pi, Boundary::Dirichlet);

    auto squeeze_slice = [&](const GridFunction& source, double wall) {
        const PruferTrace trace = shoot_fundamental(f, source, m);
        // Replace u by x_m wherever the m-argument trespasses the wall.
        std::vector<double> alpha(n, 0.0); // 1 -> x_m
        for (std::size_t k = 0; k < n; ++k) {
            const double t = source.node(k);
            // dev at the grid node (trace is denser; interpolate omega_m)
            const double pos = t / pi * static_cast<double>(trace.omega_m.size() - 1);
            const std::size_t i0 = std::min(static_cast<std::size_t>(pos),
                                            trace.omega_m.size() - 2);
            const double fr = pos - static_cast<double>(i0);
            const double om = trace.omega_m[i0] * (1.0 - fr) + trace.omega_m[i0 + 1] * fr;
            if (std::abs(om - m * t) > wall + opts.tol_band) alpha[k] = 1.0;
        }
        // Linear ramps at the region boundaries.
        std::vector<double> smooth = alpha;
        for (int r = 0; r < opts.ramp_cells; ++r) {
            std::vector<double> next = smooth;
            for (std::size_t k = 1; k + 1 < n; ++k)
                next[k] = std::max(smooth[k], 0.5 * (smooth[k - 1] + smooth[k + 1]));
            smooth.swap(next);
        }
        GridFunction out = source;
        for (std::size_t k = 0; k < n; ++k)
            out[k] = (1.0 - smooth[k]) * source[k] + smooth[k] * xm;
        return enforce_criticality(f, out, m, opts.criticality_tol);
    };

    auto max_deviation = [&](const GridFunction& u) {
        const PruferTrace trace = shoot_fundamental(f, u, m);
        double dev = 0.0;
        for (std::size_t k = 0; k < trace.omega_m.size(); ++k)
            dev = std::max(dev, std::abs(trace.omega_m[k] - m * trace.t_samples[k]));
        return dev;
    };

    const int mid = steps / 2;
    const double dev0 = max_deviation(u0);
    const double dev1 = max_deviation(u1);

    HomotopyPath path;
    for (int j = 0; j <= steps; ++j) {
        GridFunction slice = constant_xm;
        if (j == 0) slice = u0;
        else if (j == steps) slice = u1;
        else if (j < mid) {
            const double s = static_cast<double>(j) / mid;
            slice = squeeze_slice(u0, (1.0 - s) * dev0 + s * opts.delta_final);
        } else if (j > mid) {
            const double s = static_cast<double>(steps - j) / (steps - mid);
            slice = squeeze_slice(u1, (1.0 - s) * dev1 + s * opts.delta_final);
        }
        const double omega_pi = omega_pi_of(f, slice, m);
        const double res = std::abs(omega_pi - m * pi);
        if (res > opts.criticality_tol && j != 0 && j != steps)
            throw correction_window_error("squeeze slice failed the criticality tolerance");
        if (static_cast<int>(std::lround(omega_pi / pi)) != m)
            throw component_structure_error("component index jumped along the squeeze path");
        path.slices.push_back(std::move(slice));
        path.residuals.push_back(res);
    }
    return path;
}

} // namespace critset
