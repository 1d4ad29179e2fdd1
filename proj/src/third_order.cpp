#include "critset/third_order.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "critset/spectral.hpp"

namespace critset {

using std::numbers::pi;

double FrameTrajectory::wronskian_defect() const {
    double worst = 0.0;
    for (const auto& M : frames) worst = std::max(worst, std::abs(M.determinant() - 1.0));
    return worst;
}

FrameTrajectory fundamental_frame_3(const PotentialPair& p, const FrameOptions& opts) {
    // The frame feeds a third spectral derivative downstream, which amplifies
    // mode k of any rounding noise by k^3. Accumulating in extended precision
    // keeps that noise floor below the spectral filter at every grid size.
    using Mat3L = Eigen::Matrix<long double, 3, 3>;
    const int steps = opts.step_count;
    const long double dt = 2.0L * pi / steps;
    auto companion = [&](double t) -> Mat3L {
        Mat3L A = Mat3L::Zero();
        A(0, 1) = 1.0L;
        A(1, 2) = 1.0L;
        A(2, 0) = p.h0.interpolate(t);
        A(2, 1) = p.h1.interpolate(t);
        return A;
    };

    FrameTrajectory traj;
    traj.t_samples.reserve(steps + 1);
    traj.frames.reserve(steps + 1);
    Mat3L M = Mat3L::Identity();
    traj.t_samples.push_back(0.0);
    traj.frames.push_back(M.cast<double>());
    for (int k = 0; k < steps; ++k) {
        const long double t = dt * k;
        const Mat3L k1 = companion(static_cast<double>(t)) * M;
        const Mat3L k2 = companion(static_cast<double>(t + 0.5L * dt)) * (M + 0.5L * dt * k1);
        const Mat3L k3 = companion(static_cast<double>(t + 0.5L * dt)) * (M + 0.5L * dt * k2);
        const Mat3L k4 = companion(static_cast<double>(t + dt)) * (M + dt * k3);
        M += (dt / 6.0L) * (k1 + 2.0L * k2 + 2.0L * k3 + k4);
        traj.t_samples.push_back(static_cast<double>(dt * (k + 1)));
        traj.frames.push_back(M.cast<double>());
    }
    return traj;
}

MembershipResult is_in_Cstar3(const PotentialPair& p, double tol) {
    const FrameTrajectory traj = fundamental_frame_3(p);
    MembershipResult r;
    r.residual = (traj.final_frame() - Eigen::Matrix3d::Identity()).norm();
    r.member = r.residual <= tol;
    return r;
}

double SphereCurve::max_norm_defect() const {
    double worst = 0.0;
    for (const auto& v : samples) worst = std::max(worst, std::abs(v.norm() - 1.0));
    return worst;
}

namespace {

// Component grids of a sphere curve on [0, 2 pi].
std::array<GridFunction, 3> component_grids(const SphereCurve& c) {
    std::vector<double> x(c.size()), y(c.size()), z(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        x[k] = c.samples[k][0];
        y[k] = c.samples[k][1];
        z[k] = c.samples[k][2];
    }
    return {GridFunction(std::move(x), 2.0 * pi, Boundary::Periodic),
            GridFunction(std::move(y), 2.0 * pi, Boundary::Periodic),
            GridFunction(std::move(z), 2.0 * pi, Boundary::Periodic)};
}

// Third derivatives amplify mode k by k^3; strip the rounding-noise tail of
// the coefficient spectrum so it cannot dominate the result. Scaling the
// floor like n^-3 keeps the truncation error of the genuine tail shrinking
// as the grid is refined (down to the fp noise level at ~3e-15).
double denoise_floor_for(std::size_t n) {
    const double scaled = 1e-13 * std::pow(1024.0 / static_cast<double>(n), 3.0);
    return std::clamp(scaled, 3e-15, 1e-12);
}

std::vector<Eigen::Vector3d> spectral_vec(const std::array<GridFunction, 3>& g, int order) {
    const double floor = denoise_floor_for(g[0].size());
    const GridFunction dx = spectral_derivative(g[0], order, floor);
    const GridFunction dy = spectral_derivative(g[1], order, floor);
    const GridFunction dz = spectral_derivative(g[2], order, floor);
    std::vector<Eigen::Vector3d> out(dx.size());
    for (std::size_t k = 0; k < dx.size(); ++k) out[k] = {dx[k], dy[k], dz[k]};
    return out;
}

} // namespace

std::vector<double> SphereCurve::convexity_determinants() const {
    const auto g = component_grids(*this);
    const auto d1 = spectral_vec(g, 1);
    const auto d2 = spectral_vec(g, 2);
    std::vector<double> det(size());
    for (std::size_t k = 0; k < size(); ++k) {
        Eigen::Matrix3d M;
        M.col(0) = samples[k];
        M.col(1) = d1[k];
        M.col(2) = d2[k];
        det[k] = M.determinant();
    }
    return det;
}

bool SphereCurve::locally_convex(double* min_det) const {
    const auto det = convexity_determinants();
    double lo = det[0];
    for (double d : det) lo = std::min(lo, d);
    if (min_det) *min_det = lo;
    return lo > 0.0;
}

bool SphereCurve::based(double tol) const {
    const auto g = component_grids(*this);
    const auto d1 = spectral_vec(g, 1);
    const Eigen::Vector3d e1(1, 0, 0);
    if ((samples[0] - e1).norm() > tol) return false;
    Eigen::Vector3d dir = d1[0];
    if (dir.norm() < tol) return false;
    dir.normalize();
    return (dir - Eigen::Vector3d(0, 1, 0)).norm() <= tol;
}

SphereCurve curve_from_potentials(const PotentialPair& p, std::size_t grid_size,
                                  double membership_tol) {
    const MembershipResult member = is_in_Cstar3(p, membership_tol);
    if (!member.member)
        throw NumericalError("not-a-member",
                             "frame closure residual " + std::to_string(member.residual) +
                                 " exceeds tolerance; (h0, h1) is not in C*3");

    FrameOptions fopts;
    const int per_cell = std::max<int>(1, static_cast<int>((4096 + grid_size - 1) / grid_size));
    fopts.step_count = per_cell * static_cast<int>(grid_size);
    const FrameTrajectory traj = fundamental_frame_3(p, fopts);

    // The integrated frame misses exact closure by the integrator truncation
    // (~1e-12). Left as-is, that seam puts a slowly decaying 1/k tail on the
    // curve's spectrum, which the inverse map amplifies by k^3. Distribute
    // the closure defect smoothly along the period so the sampled curve
    // closes exactly.
    const Eigen::Matrix3d defect =
        traj.final_frame().inverse() - Eigen::Matrix3d::Identity();

    SphereCurve curve;
    curve.samples.reserve(grid_size);
    for (std::size_t k = 0; k < grid_size; ++k) {
        const double s = static_cast<double>(k * per_cell) /
                         static_cast<double>(fopts.step_count);
        const Eigen::Matrix3d M =
            traj.frames[k * per_cell] * (Eigen::Matrix3d::Identity() + s * defect);
        const Eigen::Vector3d w = M.row(0).transpose(); // (v0, v1, v2)
        const double norm = w.norm();
        if (norm < 1e-10)
            throw degenerate_normalization_error(
                "the fundamental solutions share a zero at t = " +
                std::to_string(traj.t_samples[k * per_cell]));
        curve.samples.push_back(w / norm);
    }

    double min_det = 0.0;
    if (!curve.locally_convex(&min_det))
        throw not_locally_convex_error("det(gamma, gamma', gamma'') reaches " +
                                       std::to_string(min_det));
    const double det0 = curve.convexity_determinants()[0];
    if (std::abs(det0 - 1.0) > 1e-6)
        throw inconsistency_error("det at t = 0 deviates from 1 by " +
                                  std::to_string(std::abs(det0 - 1.0)));
    return curve;
}

InverseResult potentials_from_curve(const SphereCurve& curve, double residual_tol_rel) {
    const std::size_t n = curve.size();
    const auto det_raw = curve.convexity_determinants();
    for (double d : det_raw)
        if (d <= 0.0)
            throw not_locally_convex_error("local convexity certificate fails "
                                           "(det <= 0 at a sample)");

    // The raw determinant carries white rounding noise from the second
    // spectral derivative; filter it before it enters V and is amplified by
    // the third derivative below.
    const GridFunction det_smooth =
        spectral_denoise(GridFunction(det_raw, 2.0 * pi, Boundary::Periodic), 1e-12);
    std::vector<double> det(n);
    for (std::size_t k = 0; k < n; ++k) {
        det[k] = det_smooth[k];
        if (det[k] <= 0.0)
            throw not_locally_convex_error("local convexity certificate fails "
                                           "(filtered det <= 0 at a sample)");
    }

    // V = det^(-1/3) gamma has det(V, V', V'') = 1, so V''' lies in span{V, V'}.
    std::vector<double> vx(n), vy(n), vz(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = std::pow(det[k], -1.0 / 3.0);
        const Eigen::Vector3d V = r * curve.samples[k];
        vx[k] = V[0];
        vy[k] = V[1];
        vz[k] = V[2];
    }
    const std::array<GridFunction, 3> V{GridFunction(vx, 2.0 * pi, Boundary::Periodic),
                                        GridFunction(vy, 2.0 * pi, Boundary::Periodic),
                                        GridFunction(vz, 2.0 * pi, Boundary::Periodic)};
    const auto V1 = spectral_vec(V, 1);
    const auto V3 = spectral_vec(V, 3);

    double v3_scale = 0.0;
    for (const auto& v : V3) v3_scale = std::max(v3_scale, v.norm());

    std::vector<double> h0(n), h1(n);
    double max_residual = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        Eigen::Matrix<double, 3, 2> A;
        A.col(0) = Eigen::Vector3d(vx[k], vy[k], vz[k]);
        A.col(1) = V1[k];
        const Eigen::Vector2d h = A.colPivHouseholderQr().solve(V3[k]);
        h0[k] = h[0];
        h1[k] = h[1];
        max_residual = std::max(max_residual, (A * h - V3[k]).norm());
    }
    if (max_residual > residual_tol_rel * std::max(v3_scale, 1e-12))
        throw resolution_error("least-squares defect of V''' in span{V, V'} is " +
                               std::to_string(max_residual) +
                               "; increase the curve resolution");
    return {PotentialPair(GridFunction(std::move(h0), 2.0 * pi, Boundary::Periodic),
                          GridFunction(std::move(h1), 2.0 * pi, Boundary::Periodic)),
            max_residual};
}

double roundtrip_residual(const PotentialPair& p, std::size_t grid_size) {
    const SphereCurve curve = curve_from_potentials(p, grid_size);
    const InverseResult inv = potentials_from_curve(curve);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid_size; ++k) {
        const double t = 2.0 * pi * static_cast<double>(k) / static_cast<double>(grid_size);
        worst = std::max(worst, std::abs(inv.potentials.h0[k] - p.h0.interpolate(t)));
        worst = std::max(worst, std::abs(inv.potentials.h1[k] - p.h1.interpolate(t)));
    }
    return worst;
}

} // namespace critset
