#pragma once

#include <Eigen/Dense>
#include <vector>

#include "critset/grid_function.hpp"

namespace critset {

/// Potentials (h0, h1) of the third-order equation v''' = h1 v' + h0 v on a
/// shared periodic grid over [0, 2 pi].
struct PotentialPair {
    GridFunction h0;
    GridFunction h1;

    PotentialPair(GridFunction h0_, GridFunction h1_) : h0(std::move(h0_)), h1(std::move(h1_)) {
        if (h0.boundary() != Boundary::Periodic || h1.boundary() != Boundary::Periodic)
            throw invalid_input("potential pair must be periodic");
        if (h0.size() != h1.size() || std::abs(h0.domain_length() - h1.domain_length()) > 1e-12)
            throw invalid_input("potential pair must share a grid");
        if (std::abs(h0.domain_length() - 6.283185307179586477) > 1e-9)
            throw invalid_input("potential pair must live on [0, 2 pi]");
    }
};

/// Dense samples of the 3x3 fundamental frame M(t) (columns are the three
/// fundamental solutions stacked with their first two derivatives), M(0) = I.
struct FrameTrajectory {
    std::vector<double> t_samples;
    std::vector<Eigen::Matrix3d> frames;

    const Eigen::Matrix3d& final_frame() const { return frames.back(); }
    double wronskian_defect() const; // max |det M(t) - 1|
};

struct FrameOptions {
    int step_count = 4096;
};

FrameTrajectory fundamental_frame_3(const PotentialPair& p, const FrameOptions& opts = {});

struct MembershipResult {
    bool member = false;
    double residual = 0.0; // ||M(2 pi) - I|| (Frobenius)
};

/// All solutions periodic <=> the frame returns to the identity.
MembershipResult is_in_Cstar3(const PotentialPair& p, double tol = 1e-6);

/// Sampled curve on the unit sphere with a local convexity certificate
/// det(gamma, gamma', gamma'') > 0 (derivatives spectral).
struct SphereCurve {
    std::vector<Eigen::Vector3d> samples; // uniform periodic grid over [0, 2 pi]

    std::size_t size() const { return samples.size(); }
    double max_norm_defect() const; // max | |gamma| - 1 |

    /// det(gamma, gamma', gamma'') at every sample.
    std::vector<double> convexity_determinants() const;
    bool locally_convex(double* min_det = nullptr) const;

    /// Base-point conditions gamma(0) = e1, gamma'(0) parallel to e2.
    bool based(double tol = 1e-6) const;
};

/// Normalized first row of the fundamental frame. Requires membership in
/// C*3 (otherwise the curve fails to close) and certifies local convexity
/// and det = 1 at t = 0.
SphereCurve curve_from_potentials(const PotentialPair& p, std::size_t grid_size = 1024,
                                  double membership_tol = 1e-6);

struct InverseResult {
    PotentialPair potentials;
    double max_residual = 0.0; // worst least-squares defect of V''' in span{V, V'}
};

/// Inverse correspondence: r = det(gamma, gamma', gamma'')^(-1/3), V = r gamma,
/// then solve V''' = h0 V + h1 V' per sample in the least-squares sense.
InverseResult potentials_from_curve(const SphereCurve& curve,
                                    double residual_tol_rel = 1e-5);

/// Max-norm distance between potentials_from_curve(curve_from_potentials(p))
/// and p over both components.
double roundtrip_residual(const PotentialPair& p, std::size_t grid_size = 1024);

} // namespace critset
