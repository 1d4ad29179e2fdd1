#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "critset/periodic.hpp"

using namespace critset;
using std::numbers::pi;

namespace {

GridFunction periodic_constant(double value, std::size_t n = 1024) {
    return GridFunction::constant(value, n, 2 * pi, Boundary::Periodic);
}

} // namespace

TEST_CASE("monodromy of closed-form potentials") {
    SUBCASE("h = 0 is parabolic with a sub-quarter-turn angle") {
        const MonodromyLift lift = monodromy(periodic_constant(0.0));
        CHECK(std::abs(lift.matrix(0, 0) - 1.0) < 1e-8);
        CHECK(std::abs(lift.matrix(0, 1)) < 1e-8);
        CHECK(std::abs(lift.matrix(1, 0) - 2 * pi) < 1e-7);
        CHECK(std::abs(lift.matrix(1, 1) - 1.0) < 1e-8);
        CHECK(lift.angle > 0.0);
        CHECK(lift.angle < pi / 2);
    }

    SUBCASE("h = -n^2 closes up with angle 2 pi n") {
        for (int n : {1, 2, 3}) {
            const MonodromyLift lift = monodromy(periodic_constant(-n * n));
            CHECK((lift.matrix - Eigen::Matrix2d::Identity()).norm() < 1e-8);
            CHECK(std::abs(lift.angle - 2 * pi * n) < 1e-6);
        }
    }

    SUBCASE("Wronskian stays at 1 along the trajectory") {
        for (double h : {-4.0, -1.0, 0.0, 1.0})
            CHECK(monodromy(periodic_constant(h)).wronskian_defect() < 1e-8);
        auto wavy = GridFunction::sample(
            [](double t) { return -1.0 + 0.3 * std::sin(t) + 0.2 * std::cos(3 * t); }, 1024,
            2 * pi, Boundary::Periodic);
        CHECK(monodromy(wavy).wronskian_defect() < 1e-8);
    }

    SUBCASE("step doubling leaves matrix and angle stable") {
        for (double h : {-4.0, -1.0, 0.0, 1.0}) {
            MonodromyOptions coarse, fine;
            coarse.step_count = 4096;
            fine.step_count = 8192;
            const MonodromyLift a = monodromy(periodic_constant(h), coarse);
            const MonodromyLift b = monodromy(periodic_constant(h), fine);
            CHECK((a.matrix - b.matrix).norm() < 1e-8);
            CHECK(std::abs(a.angle - b.angle) < 1e-8);
        }
    }

    SUBCASE("angle additivity for the rotation family") {
        const double base = monodromy(periodic_constant(-1.0)).angle;
        for (int n : {2, 3})
            CHECK(std::abs(monodromy(periodic_constant(-n * n)).angle - n * base) < 1e-6);
    }
}

TEST_CASE("classification of closed-form potentials") {
    const PeriodicClassification hyper = classify_periodic(periodic_constant(1.0));
    CHECK(hyper.kind == PeriodicKind::Noncritical);
    CHECK(std::abs(hyper.trace - 2 * std::cosh(2 * pi)) < 1e-4);

    const PeriodicClassification parab = classify_periodic(periodic_constant(0.0));
    CHECK(parab.kind == PeriodicKind::RegularCritical);
    CHECK(std::abs(parab.trace - 2.0) < 1e-8);
    CHECK_FALSE(parab.index_n.has_value());

    for (int n : {1, 2, 3}) {
        const PeriodicClassification rot = classify_periodic(periodic_constant(-n * n));
        CHECK(rot.kind == PeriodicKind::Nonregular);
        REQUIRE(rot.index_n.has_value());
        CHECK(*rot.index_n == n);
    }
}

TEST_CASE("generic perturbations leave the nonregular stratum") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = amp(rng), b = amp(rng), c = amp(rng);
        auto h = GridFunction::sample(
            [&](double t) {
                return -1.0 + 1e-2 * (a * std::sin(t) + b * std::cos(2 * t) + c * std::sin(3 * t));
            },
            1024, 2 * pi, Boundary::Periodic);
        CHECK(classify_periodic(h).kind != PeriodicKind::Nonregular);
    }
}

TEST_CASE("criticality of a potential through the nonlinearity") {
    const Nonlinearity cubic = Nonlinearity::polynomial({0.0, -1.0, 0.0, 1.0}); // x^3 - x
    const PeriodicClassification rot = criticality_of_u(cubic, periodic_constant(0.0));
    CHECK(rot.kind == PeriodicKind::Nonregular);
    REQUIRE(rot.index_n.has_value());
    CHECK(*rot.index_n == 1);

    const Nonlinearity linear = Nonlinearity::polynomial({0.0, 1.0});
    CHECK(criticality_of_u(linear, periodic_constant(0.7)).kind == PeriodicKind::Noncritical);

    const Nonlinearity half_square = Nonlinearity::polynomial({0.0, 0.0, 0.5}); // x^2 / 2
    CHECK(criticality_of_u(half_square, periodic_constant(0.0)).kind ==
          PeriodicKind::RegularCritical);
}
