#pragma once

#include <vector>

#include "critset/grid_function.hpp"
#include "critset/nonlinearity.hpp"
#include "critset/ode.hpp"

namespace critset {

/// The operator u -> u' + f(u) on periodic functions over [0, 1].
struct FirstOrderProblem {
    Nonlinearity f;
    std::size_t grid_size = 1024;

    void validate() const {
        if (grid_size < 256) throw invalid_input("first-order grid_size must be at least 256");
    }
};

struct HomotopyPath {
    std::vector<GridFunction> slices;
    std::vector<double> residuals; // per-slice |phi1| (or criticality residual)
};

GridFunction apply_F1(const FirstOrderProblem& p, const GridFunction& u);

/// Critical functional: the mean of f'(u) over the period.
double phi1(const FirstOrderProblem& p, const GridFunction& u);

/// Second Morin functional: the mean of f''(u). Zero together with phi1
/// characterizes the nonfold stratum.
double phi12(const FirstOrderProblem& p, const GridFunction& u);

/// Floquet multiplier of the linearized periodic problem: exp(-phi1(u)).
/// u is critical exactly when the multiplier is 1.
double floquet_multiplier(const FirstOrderProblem& p, const GridFunction& u);

/// Independent check of the multiplier identity: integrates the linearization
/// v' + f'(u)v = 0 with RK4 and returns v(1)/v(0). Shares nothing with the
/// quadrature path.
double floquet_multiplier_by_integration(const FirstOrderProblem& p, const GridFunction& u,
                                         int step_count = 4096);

/// The unique real eigenvalue of the discretized linearization, found as the
/// shift lambda for which v' + (f'(u) - lambda) v = 0 has a periodic solution.
double real_eigenvalue_of_linearization(const FirstOrderProblem& p, const GridFunction& u,
                                        int step_count = 4096);

/// Shift u by the constant that puts it on the critical hypersurface
/// phi1 = 0 (bisection then Newton, |phi1| <= 1e-12).
GridFunction project_to_C1(const FirstOrderProblem& p, const GridFunction& u,
                           double scan_lo = -10.0, double scan_hi = 10.0);

struct HomotopyOptions {
    int interleave_count = 16;   // K: evenly spaced subintervals carrying u0
    int ramp_cells = 2;          // linear transition width at interval edges
    double correction_measure = 1.0 / 32.0; // width of the constant correction window
    double residual_tol = 1e-8;
};

/// Path inside the critical hypersurface from u0 to u1: each slice mixes u0
/// and u1 on an interleaved pattern of measure (1 - s), with ramps, and a
/// constant value on a small correction window chosen so that phi1 = 0.
HomotopyPath contraction_homotopy(const FirstOrderProblem& p, const GridFunction& u0,
                                  const GridFunction& u1, int steps,
                                  const HomotopyOptions& opts = {});

struct PeriodicSolveResult {
    std::vector<double> initial_values; // u(0) of each distinct periodic solution
    std::vector<GridFunction> solutions;
    int escaped_starts = 0;
};

struct ShootingOptions {
    double scan_radius = 0.0;  // 0 -> automatic from |g| and f
    int scan_density = 400;
    int step_count = 512;
    double escape_bound = 1e3;
    double root_tol = 1e-10;
};

/// Periodic solutions of u' = g - f(u) by shooting on the Poincare map
/// a -> u(1; a) - a: dense scan, sign-change bracketing, bisection.
PeriodicSolveResult count_periodic_solutions(const FirstOrderProblem& p, const GridFunction& g,
                                             const ShootingOptions& opts = {});

} // namespace critset
