// Acceptance harness: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Each criterion is self-contained and deterministic.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "critset/dirichlet.hpp"
#include "critset/first_order.hpp"
#include "critset/periodic.hpp"
#include "critset/planar_singularity.hpp"
#include "critset/quadrature.hpp"
#include "critset/third_order.hpp"

using namespace critset;
using std::numbers::pi;

namespace {

struct Harness {
    int failures = 0;

    void run(int number, const std::string& title, const std::function<std::string()>& body) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = body();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!ok) ++failures;
        std::printf("%s  criterion %2d  %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", number,
                    title.c_str(), detail.c_str(), seconds);
        std::fflush(stdout);
    }
};

// Throwing check with a formatted message.
void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

GridFunction random_trig_poly(std::mt19937& rng, double offset_half_width,
                              std::size_t n = 1024) {
    std::uniform_real_distribution<double> amp(-0.5, 0.5);
    std::uniform_real_distribution<double> off(-offset_half_width, offset_half_width);
    std::vector<double> a(8), b(8);
    for (int k = 0; k < 8; ++k) {
        a[k] = amp(rng);
        b[k] = amp(rng);
    }
    const double mean = off(rng);
    return GridFunction::sample(
        [&](double t) {
            double v = mean;
            for (int k = 0; k < 8; ++k)
                v += a[k] * std::cos(2 * pi * (k + 1) * t) + b[k] * std::sin(2 * pi * (k + 1) * t);
            return v;
        },
        n, 1.0, Boundary::Periodic);
}

std::string criterion_1() {
    const PlanarMap map = PlanarMap::preset_z7();
    TraceResult traced = trace_critical_set(map, Window::square(2.0));
    require(traced.curves.size() == 2,
            "expected 2 critical curves, got " + std::to_string(traced.curves.size()));
    require(traced.curves[1].contains(traced.curves[0].vertices[0]),
            "critical curves are not nested");
    const int inner = count_cusps(map, traced.curves[0]);
    const int outer = count_cusps(map, traced.curves[1]);
    require(inner == 5 && outer == 11,
            "cusp counts " + std::to_string(inner) + "/" + std::to_string(outer) +
                ", expected 5/11");

    CensusOptions copts;
    copts.critical_window = Window::square(2.0);
    const RegionCensus census =
        preimage_census(map, {{0.0, 0.0}, {1.0e4, 0.0}}, Window::square(6.0), copts);
    require(census.counts[0] == 17, "origin count " + std::to_string(census.counts[0]) +
                                        ", expected 17");
    require(census.counts[1] == 7, "large-target count " + std::to_string(census.counts[1]) +
                                       ", expected 7");
    const int degree = topological_degree(map, 10.0, {0.0, 0.0});
    require(degree == 7, "degree " + std::to_string(degree) + ", expected 7");
    return "2 nested curves, cusps 5/11, preimages 17/7, degree 7";
}

std::string criterion_2() {
    const PlanarMap map = PlanarMap::preset_z7();
    TraceResult traced = trace_critical_set(map, Window::square(2.0));
    for (auto& c : traced.curves) count_cusps(map, c); // tag cusps
    const auto images = image_of_critical_set(map, traced.curves);

    CensusOptions copts;
    copts.critical_window = Window::square(2.0);
    std::mt19937 rng(101);
    std::uniform_int_distribution<std::size_t> pick_curve(0, images.size() - 1);
    int done = 0;
    while (done < 12) {
        const std::size_t ci = pick_curve(rng);
        const auto& img = images[ci];
        const std::size_t n = img.vertices.size();
        std::uniform_int_distribution<std::size_t> pick_vertex(0, n - 1);
        const std::size_t k = pick_vertex(rng);
        // Stay away from cusps of the image arc: require an all-fold window.
        bool fold_window = true;
        for (std::size_t d = 0; d <= 12 && fold_window; ++d)
            fold_window = img.tags[(k + n - 6 + d) % n] == PointTag::Fold;
        if (!fold_window) continue;

        const Eigen::Vector2d a = img.vertices[k], b = img.vertices[(k + 1) % n];
        const Eigen::Vector2d mid = 0.5 * (a + b);
        const Eigen::Vector2d tangent = (b - a).normalized();
        const Eigen::Vector2d normal(-tangent.y(), tangent.x());

        // Pick a straddle width: crosses the image curves exactly once and
        // keeps both endpoints clear of the near-critical-value guard.
        double eps = 0.05 * (1.0 + mid.norm());
        bool placed = false;
        for (int attempt = 0; attempt < 8 && !placed; ++attempt, eps *= 0.5) {
            const Eigen::Vector2d hi = mid + eps * normal, lo = mid - eps * normal;
            int crossings = 0;
            double clearance = std::numeric_limits<double>::infinity();
            for (const auto& other : images) {
                crossings += segment_curve_crossings(lo, hi, other);
                clearance = std::min({clearance, distance_to_curve(hi, other),
                                      distance_to_curve(lo, other)});
            }
            if (crossings != 1 || clearance < 1e-3) continue;
            const RegionCensus census = preimage_census(map, {lo, hi}, Window::square(6.0), copts);
            require(std::abs(census.counts[0] - census.counts[1]) == 2,
                    "straddle counts " + std::to_string(census.counts[0]) + "/" +
                        std::to_string(census.counts[1]) + " do not differ by 2");
            require(census.counts[0] % 2 == 1 && census.counts[1] % 2 == 1,
                    "straddle counts are not congruent to 7 mod 2");
            placed = true;
        }
        if (placed) ++done;
    }
    return "12 fold-straddling pairs differ by exactly 2, all counts odd";
}

std::string criterion_3() {
    const FirstOrderProblem p{Nonlinearity::polynomial({0.0, -1.0, 0.0, 1.0}), 1024};
    std::mt19937 rng(23);
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        const GridFunction u = random_trig_poly(rng, 0.5);
        const double mu = floquet_multiplier(p, u);
        const double mu_ode = floquet_multiplier_by_integration(p, u);
        worst = std::max(worst, std::abs(mu - mu_ode));
    }
    require(worst <= 1e-6, fmt("multiplier identity defect %.3e exceeds 1e-6", worst));

    const auto s = GridFunction::sample([](double t) { return std::sin(2 * pi * t); }, 1024, 1.0,
                                        Boundary::Periodic);
    const double p1 = phi1(p, s);
    require(std::abs(p1 - 0.5) <= 1e-10, fmt("phi1(sin 2 pi t) = %.12f, expected 0.5", p1));
    return fmt("25 multiplier identities within %.2e; phi1(sin 2 pi t) = 0.5", worst);
}

std::string criterion_4() {
    const FirstOrderProblem p{Nonlinearity::polynomial({0.0, -1.0, 0.0, 1.0}), 1024};
    const double x1 = std::sqrt(1.0 / 3.0);
    const auto u0 = GridFunction::constant(x1, 1024, 1.0, Boundary::Periodic);
    const auto u1 = GridFunction::constant(-x1, 1024, 1.0, Boundary::Periodic);
    const HomotopyPath path = contraction_homotopy(p, u0, u1, 32);
    require(path.slices.size() == 33, "expected 33 slices");
    double worst = 0.0;
    for (double r : path.residuals) worst = std::max(worst, std::abs(r));
    require(worst <= 1e-8, fmt("slice residual %.3e exceeds 1e-8", worst));
    for (std::size_t k = 0; k < u0.size(); ++k) {
        require(path.slices.front()[k] == u0[k], "first slice differs from u0");
        require(path.slices.back()[k] == u1[k], "last slice differs from u1");
    }
    return fmt("32 slices, |phi1| <= %.2e, endpoints exact", worst);
}

std::string criterion_5() {
    std::mt19937 rng(47);

    const FirstOrderProblem monotone{Nonlinearity::preset("tanh"), 1024};
    int strip_trials = 0;
    while (strip_trials < 20) {
        const GridFunction g = random_trig_poly(rng, 2.0);
        const double mean = mean_periodic(g);
        if (std::abs(std::abs(mean) - 1.0) < 0.05) continue; // boundary band
        const std::size_t expected = std::abs(mean) < 1.0 ? 1 : 0;
        const auto res = count_periodic_solutions(monotone, g);
        require(res.solutions.size() == expected,
                fmt("tanh: mean(g) = %.3f gave %.0f solutions, expected %.0f", mean,
                    static_cast<double>(res.solutions.size()), static_cast<double>(expected)));
        ++strip_trials;
    }

    const FirstOrderProblem convex{Nonlinearity::polynomial({0.0, 0.0, 1.0}), 1024};
    for (int trial = 0; trial < 50; ++trial) {
        const GridFunction g = random_trig_poly(rng, 1.5);
        const auto res = count_periodic_solutions(convex, g);
        const std::size_t count = res.solutions.size();
        if (count == 1) {
            // Allowed only within tolerance of the fold locus, where the two
            // solutions merge and phi1 vanishes at the merged solution.
            const double crit = std::abs(phi1(convex, res.solutions[0]));
            require(crit <= 1e-4, fmt("x^2: single solution with |phi1| = %.3e off the fold "
                                      "locus", crit));
            continue;
        }
        require(count == 0 || count == 2,
                fmt("x^2: got %.0f solutions, expected 0 or 2", static_cast<double>(count)));
    }
    return "tanh strip criterion on 20 g; x^2 counts in {0, 2} on 50 g";
}

std::string criterion_6() {
    for (int m : {1, 2, 3}) {
        const Nonlinearity f = Nonlinearity::polynomial({0.0, -static_cast<double>(m * m)});
        const auto u0 = GridFunction::constant(0.0, 513, pi, Boundary::Dirichlet);
        const PruferTrace trace = shoot_fundamental(f, u0, m);
        require(std::abs(trace.omega_end() - m * pi) <= 1e-8,
                fmt("omega(pi) = %.12f for m = %.0f", trace.omega_end(),
                    static_cast<double>(m)));
        double sup = 0.0;
        for (std::size_t k = 0; k < trace.t_samples.size(); ++k)
            sup = std::max(sup, std::abs(trace.omega_m[k] - m * trace.t_samples[k]));
        require(sup <= 1e-6, fmt("m-argument deviates from the line by %.3e", sup));
    }
    require(component_nonempty(Nonlinearity::preset("sin"), 1) == NonemptyVerdict::Empty,
            "(f = sin, m = 1) should be empty");
    const Nonlinearity neg_cubic = Nonlinearity::polynomial({0.0, 0.0, 0.0, -1.0});
    for (int m : {1, 2})
        require(component_nonempty(neg_cubic, m) == NonemptyVerdict::Nonempty,
                "(f = -x^3, m = " + std::to_string(m) + ") should be nonempty");
    return "omega(pi) = m pi and linear m-argument for m in {1,2,3}; nonemptiness verdicts";
}

std::string criterion_7() {
    const Nonlinearity f = Nonlinearity::polynomial({0.0, 0.0, 0.0, -1.0}); // -x^3
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> amp(-0.08, 0.08);
    double worst = 0.0;
    for (int m : {1, 2}) {
        const double xm = std::sqrt(m * m / 3.0); // f'(xm) = -m^2
        const double a0 = amp(rng), a1 = amp(rng), b0 = amp(rng), b1 = amp(rng);
        const auto bump_a = GridFunction::sample(
            [&](double t) { return xm + a0 * std::sin(t) + a1 * std::sin(2 * t); }, 513, pi,
            Boundary::Dirichlet);
        const auto bump_b = GridFunction::sample(
            [&](double t) { return xm + b0 * std::sin(t) + b1 * std::sin(2 * t); }, 513, pi,
            Boundary::Dirichlet);
        const GridFunction u0 = project_to_critical_dirichlet(f, bump_a, m);
        const GridFunction u1 = project_to_critical_dirichlet(f, bump_b, m);
        const HomotopyPath path = squeeze_homotopy(f, u0, u1, m, 12);
        for (double r : path.residuals) worst = std::max(worst, std::abs(r));
        require(worst <= 1e-8, fmt("criticality residual %.3e on a slice", worst));
        for (const auto& slice : path.slices)
            require(component_index(f, slice) == m,
                    "component index changed along the path for m = " + std::to_string(m));
    }
    return fmt("paths for m in {1,2} stay critical within %.2e with constant index", worst);
}

std::string criterion_8() {
    for (int n : {1, 2, 3}) {
        const auto h = GridFunction::constant(-n * n, 1024, 2 * pi, Boundary::Periodic);
        const PeriodicClassification c = classify_periodic(h);
        require(c.kind == PeriodicKind::Nonregular,
                "h = -" + std::to_string(n * n) + " not classified Nonregular");
        require(c.index_n && *c.index_n == n, "wrong index for n = " + std::to_string(n));
        require(c.identity_distance <= 1e-8,
                fmt("||M - I|| = %.3e for n = %.0f", c.identity_distance,
                    static_cast<double>(n)));
        require(monodromy(h).wronskian_defect() <= 1e-8, "Wronskian drifts from 1");
    }

    const auto zero = GridFunction::constant(0.0, 1024, 2 * pi, Boundary::Periodic);
    const PeriodicClassification parab = classify_periodic(zero);
    require(parab.kind == PeriodicKind::RegularCritical, "h = 0 not RegularCritical");
    Eigen::Matrix2d expected;
    expected << 1.0, 0.0, 2 * pi, 1.0;
    const MonodromyLift lift = monodromy(zero);
    require((lift.matrix - expected).norm() <= 1e-8, "h = 0 monodromy differs from [[1,0],[2pi,1]]");
    require(lift.wronskian_defect() <= 1e-8, "Wronskian drifts from 1 at h = 0");

    const auto one = GridFunction::constant(1.0, 1024, 2 * pi, Boundary::Periodic);
    const PeriodicClassification hyper = classify_periodic(one);
    require(hyper.kind == PeriodicKind::Noncritical, "h = 1 not Noncritical");
    const double tr_rel = std::abs(hyper.trace - 2 * std::cosh(2 * pi)) / (2 * std::cosh(2 * pi));
    require(tr_rel <= 1e-6, fmt("trace relative error %.3e at h = 1", tr_rel));
    require(monodromy(one).wronskian_defect() <= 1e-8, "Wronskian drifts from 1 at h = 1");
    return "indices 1/2/3 with M = I; parabolic and hyperbolic traces match closed forms";
}

std::string criterion_9() {
    auto constant_pair = [](double h0, double h1, std::size_t n = 1024) {
        return PotentialPair{GridFunction::constant(h0, n, 2 * pi, Boundary::Periodic),
                             GridFunction::constant(h1, n, 2 * pi, Boundary::Periodic)};
    };
    for (double h1 : {-1.0, -4.0}) {
        const MembershipResult m = is_in_Cstar3(constant_pair(0.0, h1));
        require(m.member && m.residual <= 1e-6,
                fmt("(0, %.0f): closure residual %.3e", h1, m.residual));
    }

    for (double alpha : {pi / 8, pi / 6, pi / 4}) {
        SphereCurve circle;
        for (std::size_t k = 0; k < 1024; ++k) {
            const double t = 2 * pi * static_cast<double>(k) / 1024.0;
            circle.samples.emplace_back(std::cos(alpha), std::sin(alpha) * std::cos(t),
                                        std::sin(alpha) * std::sin(t));
        }
        const InverseResult inv = potentials_from_curve(circle);
        double worst = inv.potentials.h0.max_abs();
        for (std::size_t k = 0; k < inv.potentials.h1.size(); ++k)
            worst = std::max(worst, std::abs(inv.potentials.h1[k] + 1.0));
        require(worst <= 1e-6, fmt("circle alpha = %.4f recovers (0, -1) within %.3e only",
                                   alpha, worst));
    }

    std::ostringstream detail;
    detail.precision(2);
    detail << std::scientific;
    for (double h1 : {-1.0, -4.0}) {
        const double mid = roundtrip_residual(constant_pair(0.0, h1, 1024), 1024);
        const double fine = roundtrip_residual(constant_pair(0.0, h1, 2048), 2048);
        require(mid <= 1e-5, fmt("(0, %.0f): roundtrip %.3e at n = 1024", h1, mid));
        require(fine <= mid / 4.0,
                fmt("(0, %.0f): roundtrip shrank only %.2fx at n = 2048", h1, mid / fine));
        detail << " (0," << h1 << "): " << mid << " -> " << fine;
    }
    return "members accepted, circles invert to (0, -1), roundtrip" + detail.str();
}

std::string criterion_10() {
    // The contractibility, ambient-diffeomorphism, and cohomology statements
    // are not finitely checkable; they are covered only through the
    // constructive shadows verified above (homotopy paths with certified
    // residuals, classification indices, round-trip identities).
    return "topological statements covered by constructive shadows only (declaration)";
}

} // namespace

int main() {
    Harness h;
    h.run(1, "planar reproduction", criterion_1);
    h.run(2, "fold parity", criterion_2);
    h.run(3, "first-order spectral identity", criterion_3);
    h.run(4, "interleaved contraction homotopy", criterion_4);
    h.run(5, "first-order image facts", criterion_5);
    h.run(6, "Prufer criticality", criterion_6);
    h.run(7, "squeeze homotopy", criterion_7);
    h.run(8, "monodromy classification", criterion_8);
    h.run(9, "third-order correspondence", criterion_9);
    h.run(10, "topological scope declaration", criterion_10);
    if (h.failures > 0) std::printf("%d criterion(s) failed\n", h.failures);
    return h.failures == 0 ? 0 : 1;
}
