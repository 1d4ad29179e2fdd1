#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "critset/grid_function.hpp"
#include "critset/nonlinearity.hpp"

namespace critset {

/// Monodromy of v'' = h v over [0, 2 pi]: the unit-determinant period matrix
/// together with a continuously lifted rotation angle (a point in the
/// universal cover of SL(2, R)). The angle is the lifted argument of the
/// first column of the fundamental frame, seeded at 0.
struct MonodromyLift {
    Eigen::Matrix2d matrix;
    double angle = 0.0;
    std::vector<double> t_samples;
    std::vector<Eigen::Matrix2d> frame_samples;

    double wronskian_defect() const; // max |det - 1| along the trajectory
};

struct MonodromyOptions {
    int step_count = 4096;
    int max_step_count = 1 << 16;
};

MonodromyLift monodromy(const GridFunction& h, const MonodromyOptions& opts = {});

enum class PeriodicKind { Noncritical, RegularCritical, Nonregular };

struct PeriodicClassification {
    PeriodicKind kind = PeriodicKind::Noncritical;
    std::optional<int> index_n; // present iff Nonregular
    double trace = 0.0;
    double angle = 0.0;
    double identity_distance = 0.0;
};

struct ClassifyPeriodicOptions {
    double identity_tol = 1e-6; // separates Nonregular from RegularCritical
    double trace_tol = 1e-8;
};

/// Nonregular when the monodromy is the identity (all solutions periodic);
/// regular critical when the trace equals 2 but the matrix is not the
/// identity; noncritical otherwise.
PeriodicClassification classify_periodic(const GridFunction& h,
                                         const ClassifyPeriodicOptions& opts = {});

/// Classification of the potential u for -u'' + f(u): applies
/// classify_periodic to h = f'(u).
PeriodicClassification criticality_of_u(const Nonlinearity& f, const GridFunction& u,
                                        const ClassifyPeriodicOptions& opts = {});

} // namespace critset
