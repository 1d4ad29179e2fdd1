#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "critset/error.hpp"

namespace critset {

enum class OdeMethod { RK4, DormandPrince };

struct IntegratorConfig {
    int step_count = 1024;
    OdeMethod method = OdeMethod::RK4;
    double tolerance = 1e-10;

    void validate() const {
        if (step_count < 64) throw invalid_input("step_count must be at least 64");
        if (tolerance <= 0.0) throw invalid_input("tolerance must be positive");
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;

    const Eigen::VectorXd& final_state() const { return states.back(); }
};

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
using MatrixOfT = std::function<Eigen::MatrixXd(double)>;

/// Fixed-step integration of y' = G(t, y), dense samples at every step.
/// Dormand-Prince accumulates its embedded error estimate and reports a
/// refinement failure when it exceeds the configured tolerance.
Trajectory integrate_ode(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0, double t1,
                         const IntegratorConfig& cfg = {});

/// Linear system y' = A(t) y. A is typically built from grid samples with
/// linear interpolation between nodes.
Trajectory integrate_linear_system(const MatrixOfT& A, const Eigen::VectorXd& y0, double t0,
                                   double t1, const IntegratorConfig& cfg = {});

} // namespace critset
