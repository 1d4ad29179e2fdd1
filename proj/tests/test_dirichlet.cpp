#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "critset/dirichlet.hpp"

using namespace critset;
using std::numbers::pi;

namespace {

GridFunction dirichlet_constant(double value, std::size_t n = 513) {
    return GridFunction::constant(value, n, pi, Boundary::Dirichlet);
}

// f(x) = c x so that f' is the constant c.
Nonlinearity linear_f(double c) { return Nonlinearity::polynomial({0.0, c}); }

} // namespace

TEST_CASE("shooting closed forms") {
    SUBCASE("f' = -m^2 gives v1 = sin(mt)/m and a linear m-argument") {
        for (int m : {1, 2, 3}) {
            const auto trace = shoot_fundamental(linear_f(-m * m), dirichlet_constant(0.0), m);
            CHECK(trace.v1.front() == 0.0);
            CHECK(trace.v1_prime.front() == 1.0);
            CHECK(trace.omega.front() == 0.0);
            for (std::size_t k = 0; k < trace.t_samples.size(); ++k) {
                const double t = trace.t_samples[k];
                CHECK(std::abs(trace.v1[k] - std::sin(m * t) / m) < 1e-8);
                CHECK(std::abs(trace.omega_m[k] - m * t) < 1e-7);
            }
            CHECK(std::abs(trace.omega_end() - m * pi) < 1e-8);
        }
    }

    SUBCASE("f' = 0 gives v1 = t and omega(pi) = arctan(pi)") {
        const auto trace = shoot_fundamental(linear_f(0.0), dirichlet_constant(0.0), 1);
        for (std::size_t k = 0; k < trace.t_samples.size(); ++k)
            CHECK(std::abs(trace.v1[k] - trace.t_samples[k]) < 1e-9);
        CHECK(std::abs(trace.omega_end() - std::atan(pi)) < 1e-8);
    }

    SUBCASE("f' = 1 gives v1 = sinh t and omega(pi) = arctan(tanh pi)") {
        const auto trace = shoot_fundamental(linear_f(1.0), dirichlet_constant(0.0), 1);
        for (std::size_t k = 0; k < trace.t_samples.size(); ++k)
            CHECK(std::abs(trace.v1[k] - std::sinh(trace.t_samples[k])) < 1e-7);
        CHECK(std::abs(trace.omega_end() - std::atan(std::tanh(pi))) < 1e-8);
    }
}

TEST_CASE("omega is stable under step doubling") {
    for (double c : {-9.0, -4.0, -1.0, 0.0, 1.0}) {
        ShootOptions coarse, fine;
        coarse.step_count = 2048;
        fine.step_count = 4096;
        const double w1 =
            shoot_fundamental(linear_f(c), dirichlet_constant(0.0), 1, coarse).omega_end();
        const double w2 =
            shoot_fundamental(linear_f(c), dirichlet_constant(0.0), 1, fine).omega_end();
        CHECK(std::abs(w1 - w2) < 1e-8);
    }
}

TEST_CASE("omega and the m-argument coincide at multiples of pi") {
    const auto trace =
        shoot_fundamental(Nonlinearity::polynomial({0.0, -6.5}), dirichlet_constant(0.0), 3);
    for (std::size_t k = 0; k < trace.omega.size(); ++k) {
        const double frac = std::abs(std::remainder(trace.omega[k], pi));
        if (frac < 1e-8) CHECK(std::abs(trace.omega[k] - trace.omega_m[k]) < 1e-6);
        // Monotone crossings: forward difference is positive near pi Z.
        if (frac < 1e-3 && k + 1 < trace.omega.size())
            CHECK(trace.omega[k + 1] > trace.omega[k]);
    }
}

TEST_CASE("criticality of closed-form potentials") {
    const Nonlinearity cubic = Nonlinearity::polynomial({0.0, -1.0, 0.0, 1.0}); // x^3 - x
    const auto crit = is_critical_dirichlet(cubic, dirichlet_constant(0.0));
    CHECK(crit.critical);
    CHECK(std::abs(crit.omega_pi - pi) < 1e-8);

    CHECK_FALSE(is_critical_dirichlet(linear_f(0.0), dirichlet_constant(0.0)).critical);

    const auto crit2 = is_critical_dirichlet(linear_f(-4.0), dirichlet_constant(0.0));
    CHECK(crit2.critical);
    CHECK(std::abs(crit2.omega_pi - 2 * pi) < 1e-8);
}

TEST_CASE("component index matches the interior zero count") {
    CHECK(component_index(linear_f(-1.0), dirichlet_constant(0.0)) == 1);
    CHECK(component_index(linear_f(-4.0), dirichlet_constant(0.0)) == 2);
    CHECK(component_index(linear_f(-9.0), dirichlet_constant(0.0)) == 3);
}

TEST_CASE("component index on randomized critical potentials") {
    const Nonlinearity f = Nonlinearity::polynomial({0.0, 0.0, 0.0, -1.0}); // -x^3
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> amp(-0.1, 0.1);
    for (int m : {1, 2, 3}) {
        const double xm = std::sqrt(m * m / 3.0); // f'(x) = -3x^2 = -m^2
        for (int trial = 0; trial < 4; ++trial) {
            const double a = amp(rng), b = amp(rng);
            auto u = GridFunction::sample(
                [&](double t) { return xm + a * std::sin(t) + b * std::sin(2 * t); }, 513, pi,
                Boundary::Dirichlet);
            const GridFunction v = project_to_critical_dirichlet(f, u, m);
            CHECK(is_critical_dirichlet(f, v).critical);
            CHECK(component_index(f, v) == m);
        }
    }
}

TEST_CASE("nonemptiness criterion") {
    CHECK(component_nonempty(Nonlinearity::preset("sin"), 1) == NonemptyVerdict::Empty);
    CHECK(component_nonempty(Nonlinearity::polynomial({0.0, 0.0, 0.0, -1.0}), 2) ==
          NonemptyVerdict::Nonempty);
    CHECK(component_nonempty(Nonlinearity::polynomial({0.0, -1.0, 0.0, 1.0}), 1) ==
          NonemptyVerdict::Empty);
}

TEST_CASE("squeeze homotopy") {
    const Nonlinearity f = Nonlinearity::polynomial({0.0, 0.0, 0.0, -1.0}); // -x^3

    SUBCASE("constant critical endpoints give a near-constant path") {
        const double x1 = std::sqrt(1.0 / 3.0);
        auto u = dirichlet_constant(x1);
        const HomotopyPath path = squeeze_homotopy(f, u, u, 1, 8);
        REQUIRE(path.slices.size() == 9);
        for (double res : path.residuals) CHECK(std::abs(res) <= 1e-8);
        for (const auto& s : path.slices)
            for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(s[k] - x1) < 1e-6);
    }

    SUBCASE("perturbed endpoints stay critical with fixed index, m = 1") {
        const double x1 = std::sqrt(1.0 / 3.0);
        auto bumped = GridFunction::sample(
            [&](double t) { return x1 + 0.08 * std::sin(t); }, 513, pi, Boundary::Dirichlet);
        const GridFunction u0 = project_to_critical_dirichlet(f, bumped, 1);
        const GridFunction u1 = dirichlet_constant(x1);
        const HomotopyPath path = squeeze_homotopy(f, u0, u1, 1, 12);
        for (double res : path.residuals) CHECK(std::abs(res) <= 1e-8);
        for (const auto& s : path.slices) CHECK(component_index(f, s) == 1);
        for (std::size_t k = 0; k < u0.size(); ++k) {
            CHECK(path.slices.front()[k] == u0[k]);
            CHECK(path.slices.back()[k] == u1[k]);
        }
    }

    SUBCASE("index-2 component path between distinct perturbations") {
        const double x2 = std::sqrt(4.0 / 3.0);
        auto a = GridFunction::sample([&](double t) { return x2 + 0.05 * std::sin(2 * t); }, 513,
                                      pi, Boundary::Dirichlet);
        auto b = GridFunction::sample([&](double t) { return x2 - 0.04 * std::sin(t); }, 513, pi,
                                      Boundary::Dirichlet);
        const GridFunction u0 = project_to_critical_dirichlet(f, a, 2);
        const GridFunction u1 = project_to_critical_dirichlet(f, b, 2);
        const HomotopyPath path = squeeze_homotopy(f, u0, u1, 2, 12);
        for (double res : path.residuals) CHECK(std::abs(res) <= 1e-8);
        for (const auto& s : path.slices) CHECK(component_index(f, s) == 2);
    }

    SUBCASE("missing x_m raises component-structure error") {
        // f' = 1 never equals -1.
        auto u = dirichlet_constant(0.0);
        CHECK_THROWS_AS(squeeze_homotopy(linear_f(1.0), u, u, 1, 4), NumericalError);
    }
}
