#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "critset/argument_lift.hpp"
#include "critset/grid_function.hpp"
#include "critset/nonlinearity.hpp"
#include "critset/ode.hpp"
#include "critset/quadrature.hpp"
#include "critset/rootfind.hpp"
#include "critset/spectral.hpp"

using namespace critset;
using std::numbers::pi;

TEST_CASE("quad_periodic basic values") {
    auto zero = GridFunction::constant(0.0, 64, 1.0, Boundary::Periodic);
    CHECK(quad_periodic(zero, [](double x) { return x; }) == doctest::Approx(0.0));

    auto c = GridFunction::constant(1.7, 64, 2.0, Boundary::Periodic);
    CHECK(quad_periodic(c, [](double x) { return x * x; }) ==
          doctest::Approx(1.7 * 1.7 * 2.0).epsilon(1e-14));

    auto s = GridFunction::sample([](double t) { return std::sin(2 * pi * t); }, 256, 1.0,
                                  Boundary::Periodic);
    CHECK(std::abs(quad_periodic(s, [](double x) { return x * x; }) - 0.5) < 1e-12);
}

TEST_CASE("trapezoid rule is exact on resolvable trig polynomials") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const std::size_t n = 64;
    for (int trial = 0; trial < 10; ++trial) {
        double a0 = coeff(rng);
        std::vector<double> ac(12), bc(12);
        for (auto& x : ac) x = coeff(rng);
        for (auto& x : bc) x = coeff(rng);
        auto u = GridFunction::sample(
            [&](double t) {
                double v = a0;
                for (std::size_t k = 0; k < ac.size(); ++k)
                    v += ac[k] * std::cos(2 * pi * (k + 1) * t) +
                         bc[k] * std::sin(2 * pi * (k + 1) * t);
                return v;
            },
            n, 1.0, Boundary::Periodic);
        const double integral = quad_periodic(u, [](double x) { return x; });
        CHECK(std::abs(integral - a0) < 1e-12 * (1.0 + std::abs(a0)));
    }
}

TEST_CASE("spectral derivative on resolvable modes") {
    auto u = GridFunction::sample([](double t) { return std::sin(t); }, 128, 2 * pi,
                                  Boundary::Periodic);
    auto du = spectral_derivative(u, 1);
    for (std::size_t k = 0; k < du.size(); ++k)
        CHECK(std::abs(du[k] - std::cos(du.node(k))) < 1e-10);

    auto c = GridFunction::constant(5.0, 64, 1.0, Boundary::Periodic);
    CHECK(spectral_derivative(c, 1).max_abs() < 1e-12);

    auto u3 = GridFunction::sample([](double t) { return std::cos(3 * t); }, 128, 2 * pi,
                                   Boundary::Periodic);
    auto d3 = spectral_derivative(u3, 3);
    for (std::size_t k = 0; k < d3.size(); ++k)
        CHECK(std::abs(d3[k] - 27.0 * std::sin(3.0 * d3.node(k))) < 1e-9);
}

TEST_CASE("spectral derivative rejects Dirichlet input") {
    auto u = GridFunction::constant(0.0, 64, 1.0, Boundary::Dirichlet);
    CHECK_THROWS_AS(spectral_derivative(u, 1), NumericalError);
}

TEST_CASE("first derivative applied twice equals second derivative") {
    auto u = GridFunction::sample(
        [](double t) { return std::sin(2 * t) + 0.3 * std::cos(5 * t); }, 256, 2 * pi,
        Boundary::Periodic);
    auto twice = spectral_derivative(spectral_derivative(u, 1), 1);
    auto second = spectral_derivative(u, 2);
    for (std::size_t k = 0; k < u.size(); ++k) CHECK(std::abs(twice[k] - second[k]) < 1e-9);
}

TEST_CASE("integrate_linear_system closed forms") {
    IntegratorConfig cfg;
    cfg.step_count = 512;

    SUBCASE("zero generator") {
        auto traj = integrate_linear_system(
            [](double) { return Eigen::MatrixXd::Zero(2, 2); }, Eigen::Vector2d(1.0, 0.0), 0.0,
            1.0, cfg);
        CHECK((traj.final_state() - Eigen::Vector2d(1.0, 0.0)).norm() == doctest::Approx(0.0));
    }
    SUBCASE("scalar exponential") {
        auto traj = integrate_linear_system(
            [](double) { return Eigen::MatrixXd::Ones(1, 1); },
            Eigen::VectorXd::Ones(1), 0.0, 1.0, cfg);
        CHECK(std::abs(traj.final_state()[0] - std::exp(1.0)) < 1e-8);
    }
    SUBCASE("rotation returns to start") {
        Eigen::Matrix2d R;
        R << 0, -1, 1, 0;
        auto traj = integrate_linear_system([R](double) -> Eigen::MatrixXd { return R; },
                                            Eigen::Vector2d(1.0, 0.0), 0.0, 2 * pi, cfg);
        CHECK((traj.final_state() - Eigen::Vector2d(1.0, 0.0)).norm() < 1e-6);
    }
}

TEST_CASE("RK4 shows fourth order convergence") {
    auto run = [](int steps) {
        IntegratorConfig cfg;
        cfg.step_count = steps;
        auto traj = integrate_linear_system(
            [](double) { return Eigen::MatrixXd::Ones(1, 1); },
            Eigen::VectorXd::Ones(1), 0.0, 1.0, cfg);
        return std::abs(traj.final_state()[0] - std::exp(1.0));
    };
    const double e1 = run(64), e2 = run(128);
    CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("Dormand-Prince reports refinement failure on tight tolerance") {
    IntegratorConfig cfg;
    cfg.step_count = 64;
    cfg.method = OdeMethod::DormandPrince;
    cfg.tolerance = 1e-18;
    CHECK_THROWS_AS(integrate_ode([](double, const Eigen::VectorXd& y)
                                      -> Eigen::VectorXd { return 5.0 * y.array().sin().matrix(); },
                                  Eigen::VectorXd::Ones(1), 0.0, 10.0, cfg),
                    NumericalError);
}

TEST_CASE("lift_argument") {
    SUBCASE("constant sequence") {
        std::vector<Eigen::Vector2d> pts(10, Eigen::Vector2d(1.0, 0.0));
        auto theta = lift_argument(pts, 0.0);
        for (double t : theta) CHECK(t == doctest::Approx(0.0));
    }
    SUBCASE("two full turns end at 4 pi") {
        const int n = 64;
        std::vector<Eigen::Vector2d> pts;
        for (int k = 0; k <= 2 * n; ++k)
            pts.emplace_back(std::cos(2 * pi * k / n), std::sin(2 * pi * k / n));
        auto theta = lift_argument(pts, 0.0);
        CHECK(theta.back() == doctest::Approx(4 * pi).epsilon(1e-12));
    }
    SUBCASE("single upward crossing of the negative axis") {
        std::vector<Eigen::Vector2d> pts;
        for (int k = 0; k <= 32; ++k) {
            const double a = pi * 1.2 * k / 32.0;
            pts.emplace_back(std::cos(a), std::sin(a));
        }
        auto theta = lift_argument(pts, 0.0);
        CHECK(theta.back() > pi / 2);
        CHECK(theta.back() < 3 * pi / 2);
    }
    SUBCASE("mod 2 pi consistency") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> step(-1.2, 1.2);
        std::vector<Eigen::Vector2d> pts;
        double a = 0.4;
        for (int k = 0; k < 200; ++k) {
            pts.emplace_back(std::cos(a), std::sin(a));
            a += step(rng);
        }
        auto theta = lift_argument(pts, 0.4);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const double ref = std::atan2(pts[k].y(), pts[k].x());
            CHECK(std::abs(std::remainder(theta[k] - ref, 2 * pi)) < 1e-10);
        }
    }
    SUBCASE("zero vector is rejected") {
        std::vector<Eigen::Vector2d> pts{{1.0, 0.0}, {0.0, 0.0}};
        CHECK_THROWS_AS(lift_argument(pts, 0.0), NumericalError);
    }
    SUBCASE("coarse jump is rejected") {
        std::vector<Eigen::Vector2d> pts{{1.0, 0.0}, {-1.0, 0.1}};
        CHECK_THROWS_AS(lift_argument(pts, 0.0), NumericalError);
    }
}

TEST_CASE("multistart_roots") {
    SUBCASE("identity map") {
        auto id = PlanarMap::zzbar_polynomial({{1, 0, {1.0, 0.0}}});
        auto roots = multistart_roots(id, Window::square(10.0), 16, {3.0, 4.0});
        REQUIRE(roots.size() == 1);
        CHECK((roots[0] - Eigen::Vector2d(3.0, 4.0)).norm() < 1e-9);
    }
    SUBCASE("square roots of unity") {
        auto sq = PlanarMap::zzbar_polynomial({{2, 0, {1.0, 0.0}}});
        auto roots = multistart_roots(sq, Window::square(3.0), 24, {1.0, 0.0});
        REQUIRE(roots.size() == 2);
        CHECK((roots[0] - Eigen::Vector2d(-1.0, 0.0)).norm() < 1e-9);
        CHECK((roots[1] - Eigen::Vector2d(1.0, 0.0)).norm() < 1e-9);
    }
    SUBCASE("the z7 preset has 17 preimages of the origin") {
        auto F = PlanarMap::preset_z7();
        auto roots = multistart_roots(F, Window::square(2.5), 48, {0.0, 0.0});
        CHECK(roots.size() == 17);
    }
    SUBCASE("result stable under doubling the start grid") {
        auto F = PlanarMap::preset_z7();
        auto a = multistart_roots(F, Window::square(2.5), 32, {0.3, -0.2});
        auto b = multistart_roots(F, Window::square(2.5), 64, {0.3, -0.2});
        CHECK(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) CHECK((a[k] - b[k]).norm() < 1e-6);
    }
}

TEST_CASE("nonlinearity derivatives and ranges") {
    auto f = Nonlinearity::polynomial({0.0, -1.0, 0.0, 1.0}); // x^3 - x
    CHECK(f.eval(2.0) == doctest::Approx(6.0));
    CHECK(f.d1(2.0) == doctest::Approx(11.0));
    CHECK(f.d2(2.0) == doctest::Approx(12.0));

    auto r = f.derivative_range();
    CHECK(r.inf == doctest::Approx(-1.0));
    CHECK(r.inf_attained);
    CHECK_FALSE(r.sup_finite);
    CHECK_FALSE(r.contains_interior(-1.0));
    CHECK(r.contains_interior(-0.5));

    auto s = Nonlinearity::preset("sin").derivative_range();
    CHECK(s.inf == doctest::Approx(-1.0));
    CHECK(s.sup == doctest::Approx(1.0));
    CHECK_FALSE(s.contains_interior(-1.0));

    auto cube = Nonlinearity::polynomial({0.0, 0.0, 0.0, -1.0}); // -x^3
    auto rc = cube.derivative_range();
    CHECK(rc.sup == doctest::Approx(0.0));
    CHECK_FALSE(rc.inf_finite);
    CHECK(rc.contains_interior(-4.0));

    auto xm = cube.roots_of_d1_plus(1.0); // -3x^2 + 1 = 0
    REQUIRE(xm.size() == 2);
    CHECK(xm[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-9));
    CHECK(xm[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("grid function interpolation and invariants") {
    CHECK_THROWS_AS(GridFunction(std::vector<double>(4, 0.0), 1.0, Boundary::Periodic),
                    NumericalError);
    auto u = GridFunction::sample([](double t) { return t; }, 16, 1.0, Boundary::Dirichlet);
    CHECK(u.interpolate(0.5) == doctest::Approx(0.5));
    CHECK(u.interpolate(-1.0) == doctest::Approx(0.0));

    auto p = GridFunction::sample([](double t) { return std::sin(2 * pi * t); }, 128, 1.0,
                                  Boundary::Periodic);
    CHECK(p.interpolate(1.25) == doctest::Approx(p.interpolate(0.25)).epsilon(1e-12));
}
