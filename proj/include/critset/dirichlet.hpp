#pragma once

#include <vector>

#include "critset/first_order.hpp" // HomotopyPath
#include "critset/grid_function.hpp"
#include "critset/nonlinearity.hpp"

namespace critset {

/// Fundamental solution of -v'' + f'(u) v = 0 on [0, pi] with v(0) = 0,
/// v'(0) = 1, together with the lifted Prufer argument of (v', v) and the
/// m-argument of (v', m v).
struct PruferTrace {
    std::vector<double> t_samples;
    std::vector<double> v1;
    std::vector<double> v1_prime;
    std::vector<double> omega;   // omega(0) = 0
    std::vector<double> omega_m;
    int m = 1;

    double omega_end() const { return omega.back(); }
};

struct ShootOptions {
    int step_count = 2048;
    int max_step_count = 1 << 16; // resolution errors trigger step doubling up to here
};

PruferTrace shoot_fundamental(const Nonlinearity& f, const GridFunction& u, int m,
                              const ShootOptions& opts = {});

struct CriticalityResult {
    bool critical = false;
    double residual = 0.0; // dist(omega(pi), pi Z)
    double omega_pi = 0.0;
};

/// u is critical for -u'' + f(u) (Dirichlet) iff omega(pi) is a multiple of pi.
CriticalityResult is_critical_dirichlet(const Nonlinearity& f, const GridFunction& u,
                                        double tol = 1e-6);

/// Spectral position m = omega(pi)/pi of a critical u; cross-checked against
/// the interior zero count of the fundamental solution plus one.
int component_index(const Nonlinearity& f, const GridFunction& u);

enum class NonemptyVerdict { Empty, Nonempty, Inconclusive };

/// The component with index m is nonempty iff -m^2 lies in the interior of
/// the image of f'.
NonemptyVerdict component_nonempty(const Nonlinearity& f, int m, double scan_lo = -50.0,
                                   double scan_hi = 50.0);

/// Shift u by a scalar multiple of a fixed interior bump until omega(pi) = m pi.
GridFunction project_to_critical_dirichlet(const Nonlinearity& f, const GridFunction& u, int m,
                                           double tol = 1e-10);

struct SqueezeOptions {
    double delta_final = 0.05; // terminal wall half-width
    double tol_band = 0.1;     // trespass tolerance (radians)
    int ramp_cells = 2;
    double criticality_tol = 1e-8;
};

/// Path in the index-m critical component from u0 to u1: squeeze the graph of
/// the m-argument of u0 toward the line y = m t (replacing trespassing regions
/// by the constant x_m with f'(x_m) = -m^2), pass through u = x_m, and
/// un-squeeze into u1. Every slice is re-established critical exactly.
HomotopyPath squeeze_homotopy(const Nonlinearity& f, const GridFunction& u0,
                              const GridFunction& u1, int m, int steps,
                              const SqueezeOptions& opts = {});

} // namespace critset
