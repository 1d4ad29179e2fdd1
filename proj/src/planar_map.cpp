#include "critset/planar_map.hpp"

#include <cmath>
#include <random>

namespace critset {

namespace {

std::complex<double> ipow(std::complex<double> z, int n) {
    std::complex<double> r(1.0, 0.0);
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

} // namespace

PlanarMap PlanarMap::from_eval(EvalFn eval, double scale) {
    const double h = 1e-6 * scale;
    EvalFn e2 = eval;
    JacFn jac = [e = std::move(e2), h](const Eigen::Vector2d& p) -> Eigen::Matrix2d {
        Eigen::Matrix2d J;
        const Eigen::Vector2d ex(h, 0.0), ey(0.0, h);
        J.col(0) = (e(p + ex) - e(p - ex)) / (2.0 * h);
        J.col(1) = (e(p + ey) - e(p - ey)) / (2.0 * h);
        return J;
    };
    return {std::move(eval), std::move(jac)};
}

PlanarMap PlanarMap::zzbar_polynomial(std::vector<ZZbarTerm> terms) {
    auto eval = [terms](const Eigen::Vector2d& p) -> Eigen::Vector2d {
        const std::complex<double> z(p.x(), p.y());
        const std::complex<double> zb = std::conj(z);
        std::complex<double> w(0.0, 0.0);
        for (const auto& t : terms) w += t.coeff * ipow(z, t.z_power) * ipow(zb, t.zbar_power);
        return {w.real(), w.imag()};
    };
    auto jac = [terms](const Eigen::Vector2d& p) -> Eigen::Matrix2d {
        const std::complex<double> z(p.x(), p.y());
        const std::complex<double> zb = std::conj(z);
        std::complex<double> fz(0.0, 0.0), fzb(0.0, 0.0);
        for (const auto& t : terms) {
            if (t.z_power > 0)
                fz += t.coeff * static_cast<double>(t.z_power) * ipow(z, t.z_power - 1) *
                      ipow(zb, t.zbar_power);
            if (t.zbar_power > 0)
                fzb += t.coeff * static_cast<double>(t.zbar_power) * ipow(z, t.z_power) *
                       ipow(zb, t.zbar_power - 1);
        }
        // Real Jacobian of w(z, zb): dw/dx = fz + fzb, dw/dy = i(fz - fzb).
        const std::complex<double> dx = fz + fzb;
        const std::complex<double> dy = std::complex<double>(0.0, 1.0) * (fz - fzb);
        Eigen::Matrix2d J;
        J << dx.real(), dy.real(), dx.imag(), dy.imag();
        return J;
    };
    return {std::move(eval), std::move(jac)};
}

PlanarMap PlanarMap::preset_z7() {
    return zzbar_polynomial({{7, 0, {1.0, 0.0}}, {0, 4, {5.0, 0.0}}, {1, 0, {1.0, 0.0}}});
}

Eigen::Vector2d PlanarMap::det_jacobian_gradient(const Eigen::Vector2d& p, double h) const {
    const Eigen::Vector2d ex(h, 0.0), ey(0.0, h);
    return {(det_jacobian(p + ex) - det_jacobian(p - ex)) / (2.0 * h),
            (det_jacobian(p + ey) - det_jacobian(p - ey)) / (2.0 * h)};
}

double PlanarMap::self_check(const Window& window, int probes, unsigned seed) const {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(window.xmin, window.xmax);
    std::uniform_real_distribution<double> uy(window.ymin, window.ymax);
    const double h = 1e-6 * std::max(1.0, 0.5 * window.diameter());
    double worst = 0.0;
    for (int i = 0; i < probes; ++i) {
        const Eigen::Vector2d p(ux(rng), uy(rng));
        const Eigen::Vector2d ex(h, 0.0), ey(0.0, h);
        Eigen::Matrix2d fd;
        fd.col(0) = (eval_(p + ex) - eval_(p - ex)) / (2.0 * h);
        fd.col(1) = (eval_(p + ey) - eval_(p - ey)) / (2.0 * h);
        const Eigen::Matrix2d J = jac_(p);
        const double denom = std::max(1.0, J.norm());
        worst = std::max(worst, (fd - J).norm() / denom);
    }
    return worst;
}

} // namespace critset
