#pragma once

#include <functional>

#include "critset/grid_function.hpp"

namespace critset {

/// Trapezoid rule for g composed with a periodic grid function:
/// (L/n) * sum g(u_k). Spectrally accurate for smooth periodic integrands.
inline double quad_periodic(const GridFunction& u, const std::function<double(double)>& g) {
    if (u.boundary() != Boundary::Periodic)
        throw invalid_input("quad_periodic requires a periodic grid");
    double acc = 0.0;
    for (double v : u.values()) acc += g(v);
    return acc * u.domain_length() / static_cast<double>(u.size());
}

/// Mean of g over the sample values (quad_periodic normalized by L).
inline double mean_periodic(const GridFunction& u) {
    if (u.boundary() != Boundary::Periodic)
        throw invalid_input("mean_periodic requires a periodic grid");
    double acc = 0.0;
    for (double v : u.values()) acc += v;
    return acc / static_cast<double>(u.size());
}

} // namespace critset
