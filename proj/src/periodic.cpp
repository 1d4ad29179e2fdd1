#include "critset/periodic.hpp"

#include <cmath>
#include <numbers>

#include "critset/argument_lift.hpp"

namespace critset {

using std::numbers::pi;

double MonodromyLift::wronskian_defect() const {
    double worst = 0.0;
    for (const auto& M : frame_samples)
        worst = std::max(worst, std::abs(M.determinant() - 1.0));
    return worst;
}

namespace {

MonodromyLift monodromy_at_steps(const GridFunction& h, int steps) {
    const double dt = 2.0 * pi / steps;
    // State (v1, v1', v2, v2') with v'' = h v.
    Eigen::Vector4d y(1.0, 0.0, 0.0, 1.0);
    auto rhs = [&](double t, const Eigen::Vector4d& s) -> Eigen::Vector4d {
        const double ht = h.interpolate(t);
        return {s[1], ht * s[0], s[3], ht * s[2]};
    };

    MonodromyLift lift;
    lift.t_samples.reserve(steps + 1);
    lift.frame_samples.reserve(steps + 1);
    auto record = [&](double t, const Eigen::Vector4d& s) {
        Eigen::Matrix2d M;
        M << s[0], s[1], s[2], s[3]; // rows (v_i, v_i')
        lift.t_samples.push_back(t);
        lift.frame_samples.push_back(M);
    };
    record(0.0, y);
    for (int k = 0; k < steps; ++k) {
        const double t = dt * k;
        const Eigen::Vector4d k1 = rhs(t, y);
        const Eigen::Vector4d k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1);
        const Eigen::Vector4d k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2);
        const Eigen::Vector4d k4 = rhs(t + dt, y + dt * k3);
        y += (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
        record(dt * (k + 1), y);
    }
    lift.matrix = lift.frame_samples.back();

    // Lift the argument of the first column (v1, v2); it never vanishes
    // because the frame has unit determinant.
    std::vector<Eigen::Vector2d> column;
    column.reserve(lift.frame_samples.size());
    for (const auto& M : lift.frame_samples) column.emplace_back(M(0, 0), M(1, 0));
    lift.angle = lift_argument(column, 0.0).back();

    // Cross-check against the rotation part of the Iwasawa factorization of
    // the monodromy matrix: the first column is a positive multiple of
    // (cos theta, sin theta).
    const double iwasawa = std::atan2(lift.matrix(1, 0), lift.matrix(0, 0));
    if (std::abs(std::remainder(lift.angle - iwasawa, 2.0 * pi)) > 1e-6)
        throw inconsistency_error("lifted angle disagrees with the Iwasawa rotation");
    return lift;
}

} // namespace

MonodromyLift monodromy(const GridFunction& h, const MonodromyOptions& opts) {
    if (h.boundary() != Boundary::Periodic)
        throw invalid_input("monodromy expects a periodic potential");
    if (std::abs(h.domain_length() - 2.0 * pi) > 1e-9)
        throw invalid_input("monodromy expects domain length 2 pi");
    int steps = opts.step_count;
    while (true) {
        try {
            return monodromy_at_steps(h, steps);
        } catch (const NumericalError& e) {
            if (e.name() != "resolution-error" || steps >= opts.max_step_count) throw;
            steps *= 2;
        }
    }
}

PeriodicClassification classify_periodic(const GridFunction& h,
                                         const ClassifyPeriodicOptions& opts) {
    const MonodromyLift lift = monodromy(h);
    PeriodicClassification out;
    out.trace = lift.matrix.trace();
    out.angle = lift.angle;
    out.identity_distance = (lift.matrix - Eigen::Matrix2d::Identity()).norm();

    if (out.identity_distance <= opts.identity_tol) {
        const double turns = lift.angle / (2.0 * pi);
        const int n = static_cast<int>(std::lround(turns));
        if (std::abs(lift.angle - 2.0 * pi * n) > 1e-3)
            throw inconsistency_error("monodromy is the identity but the lifted angle is not "
                                      "near a multiple of 2 pi");
        out.kind = PeriodicKind::Nonregular;
        out.index_n = n;
    } else if (std::abs(out.trace - 2.0) <= opts.trace_tol) {
        out.kind = PeriodicKind::RegularCritical;
    } else {
        out.kind = PeriodicKind::Noncritical;
    }
    return out;
}

PeriodicClassification criticality_of_u(const Nonlinearity& f, const GridFunction& u,
                                        const ClassifyPeriodicOptions& opts) {
    if (u.boundary() != Boundary::Periodic)
        throw invalid_input("criticality_of_u expects a periodic potential");
    return classify_periodic(u.map([&](double x) { return f.d1(x); }), opts);
}

} // namespace critset
