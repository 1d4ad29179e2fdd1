#include "critset/nonlinearity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <sstream>

namespace critset {

namespace {

// Real roots of a polynomial (ascending coefficients) via companion matrix.
std::vector<double> real_roots(std::vector<double> c) {
    while (c.size() > 1 && std::abs(c.back()) < 1e-300) c.pop_back();
    std::vector<double> roots;
    if (c.size() <= 1) return roots;
    const int deg = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    for (int i = 0; i < deg; ++i) {
        const auto z = es.eigenvalues()[i];
        if (std::abs(z.imag()) < 1e-9 * (1.0 + std::abs(z.real()))) roots.push_back(z.real());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> differentiate(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

} // namespace

std::string Nonlinearity::description() const {
    if (kind_ == Kind::Sin) return "sin";
    if (kind_ == Kind::Tanh) return "tanh";
    std::ostringstream os;
    os << "poly[";
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k) os << ",";
        os << coeffs_[k];
    }
    os << "]";
    return os.str();
}

DerivativeRange Nonlinearity::derivative_range(double scan_lo, double scan_hi) const {
    DerivativeRange r;
    if (kind_ == Kind::Sin) {
        r = {-1.0, 1.0, true, true, true, true, true};
        return r;
    }
    if (kind_ == Kind::Tanh) {
        // f' = sech^2 has image (0, 1].
        r = {0.0, 1.0, false, true, true, true, true};
        return r;
    }
    (void)scan_lo;
    (void)scan_hi;
    std::vector<double> d1 = differentiate(coeffs_);
    while (d1.size() > 1 && std::abs(d1.back()) < 1e-300) d1.pop_back();
    const int deg = static_cast<int>(d1.size()) - 1;
    if (deg == 0) {
        r = {d1[0], d1[0], true, true, true, true, true};
        return r;
    }
    if (deg % 2 == 1) {
        r.inf_finite = false;
        r.sup_finite = false;
        return r; // odd-degree derivative is onto R
    }
    // Even degree: one end is a finite extremum over the critical values.
    std::vector<double> crit = real_roots(differentiate(d1));
    double extreme = poly_eval(d1, 0, 0.0);
    bool first = true;
    const bool upward = d1.back() > 0.0;
    for (double x : crit) {
        const double v = poly_eval(d1, 0, x);
        if (first) { extreme = v; first = false; }
        else extreme = upward ? std::min(extreme, v) : std::max(extreme, v);
    }
    if (upward) {
        r.inf = extreme; r.inf_attained = true; r.inf_finite = true; r.sup_finite = false;
    } else {
        r.sup = extreme; r.sup_attained = true; r.sup_finite = true; r.inf_finite = false;
    }
    return r;
}

std::vector<double> Nonlinearity::roots_of_d1_plus(double value, double lo, double hi) const {
    std::vector<double> roots;
    const int n = 20000;
    const double dx = (hi - lo) / n;
    double prev = d1(lo) + value;
    for (int i = 1; i <= n; ++i) {
        const double x = lo + dx * i;
        const double cur = d1(x) + value;
        if (prev == 0.0) roots.push_back(x - dx);
        else if (prev * cur < 0.0) {
            double a = x - dx, b = x, fa = prev;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = d1(m) + value;
                if (fm == 0.0) { a = b = m; break; }
                if (fa * fm < 0.0) b = m;
                else { a = m; fa = fm; }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev = cur;
    }
    if (d1(hi) + value == 0.0) roots.push_back(hi);
    return roots;
}

} // namespace critset
