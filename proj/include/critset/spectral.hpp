#pragma once

#include "critset/grid_function.hpp"

namespace critset {

/// Discrete-Fourier differentiation of a periodic grid function: mode k is
/// multiplied by (2*pi*i*k/L)^order. Exact on trigonometric polynomials
/// resolvable on the grid. Odd orders zero the Nyquist mode.
///
/// denoise_floor > 0 zeroes Fourier coefficients smaller than
/// denoise_floor * max|coefficient| before differentiating. High orders
/// amplify mode k by k^order, so rounding noise in the coefficient tail
/// (relative level ~1e-16) would otherwise dominate third derivatives on
/// fine grids; a floor of ~1e-13 removes it without touching genuine
/// spectral content.
GridFunction spectral_derivative(const GridFunction& u, int order, double denoise_floor = 0.0);

/// Spectral projection of a periodic grid function: zeroes Fourier
/// coefficients below denoise_floor * max|coefficient| and transforms back.
/// Used to strip rounding noise from smooth derived quantities before they
/// enter further differentiation.
GridFunction spectral_denoise(const GridFunction& u, double denoise_floor);

} // namespace critset
