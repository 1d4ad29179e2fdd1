#include "critset/ode.hpp"

#include <cmath>

namespace critset {

namespace {

Eigen::VectorXd rk4_step(const OdeRhs& rhs, double t, const Eigen::VectorXd& y, double h) {
    const Eigen::VectorXd k1 = rhs(t, y);
    const Eigen::VectorXd k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4). Returns the 5th order step; err receives the embedded
// error estimate.
Eigen::VectorXd dp_step(const OdeRhs& rhs, double t, const Eigen::VectorXd& y, double h,
                        double& err) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    const Eigen::VectorXd k1 = rhs(t, y);
    const Eigen::VectorXd k2 = rhs(t + c2 * h, y + h * (k1 / 5.0));
    const Eigen::VectorXd k3 = rhs(t + c3 * h, y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
    const Eigen::VectorXd k4 =
        rhs(t + c4 * h, y + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
    const Eigen::VectorXd k5 =
        rhs(t + c5 * h, y + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                                 64448.0 / 6561 * k3 - 212.0 / 729 * k4));
    const Eigen::VectorXd k6 =
        rhs(t + h, y + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 + 46732.0 / 5247 * k3 +
                            49.0 / 176 * k4 - 5103.0 / 18656 * k5));
    const Eigen::VectorXd y5 = y + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 + 125.0 / 192 * k4 -
                                        2187.0 / 6784 * k5 + 11.0 / 84 * k6);
    const Eigen::VectorXd k7 = rhs(t + h, y5);
    const Eigen::VectorXd y4 =
        y + h * (5179.0 / 57600 * k1 + 7571.0 / 16695 * k3 + 393.0 / 640 * k4 -
                 92097.0 / 339200 * k5 + 187.0 / 2100 * k6 + 1.0 / 40 * k7);
    err = (y5 - y4).norm();
    return y5;
}

} // namespace

Trajectory integrate_ode(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0, double t1,
                         const IntegratorConfig& cfg) {
    cfg.validate();
    const double h = (t1 - t0) / cfg.step_count;
    Trajectory traj;
    traj.times.reserve(cfg.step_count + 1);
    traj.states.reserve(cfg.step_count + 1);
    traj.times.push_back(t0);
    traj.states.push_back(y0);

    Eigen::VectorXd y = y0;
    double err_acc = 0.0;
    for (int k = 0; k < cfg.step_count; ++k) {
        const double t = t0 + h * k;
        if (cfg.method == OdeMethod::RK4) {
            y = rk4_step(rhs, t, y, h);
        } else {
            double err = 0.0;
            y = dp_step(rhs, t, y, h, err);
            err_acc += err;
        }
        traj.times.push_back(t0 + h * (k + 1));
        traj.states.push_back(y);
    }
    if (cfg.method == OdeMethod::DormandPrince && err_acc > cfg.tolerance)
        throw refinement_failure("accumulated error estimate " + std::to_string(err_acc) +
                                 " exceeds tolerance; increase step_count");
    return traj;
}

Trajectory integrate_linear_system(const MatrixOfT& A, const Eigen::VectorXd& y0, double t0,
                                   double t1, const IntegratorConfig& cfg) {
    return integrate_ode([&A](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd
                         { return A(t) * y; },
                         y0, t0, t1, cfg);
}

} // namespace critset
