#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "marstrand/types.hpp"

namespace marstrand {

// Golden-section minimization of a unimodal function on [a, b].
// Returns the abscissa of the minimum to within tol.
template <typename F>
double golden_minimize(F&& f, double a, double b, double tol = 1e-10, int max_iter = 400) {
    static const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;  // 1/phi
    double c = b - inv_gr * (b - a);
    double d = a + inv_gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Three-point parabolic refinement around a near-minimum abscissa. Golden
// section alone localizes a flat minimum only to ~sqrt(machine eps); the
// parabola vertex through (s-h, s, s+h) recovers the quadratic-accurate
// location.
template <typename F>
double refine_minimum_parabolic(F&& f, double s, double h = 1e-5) {
    double fm = f(s - h), f0 = f(s), fp = f(s + h);
    double denom = fm - 2.0 * f0 + fp;
    if (!(denom > 0.0)) return s;  // no curvature signal at this scale
    double step = 0.5 * h * (fm - fp) / denom;
    if (std::abs(step) > h) return s;  // vertex outside the sample triple
    return s + step;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

// Ordinary least squares for y = slope*x + intercept. A constant y-series fits
// exactly (slope 0, r^2 = 1); that convention keeps degenerate count tables
// well defined.
inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw precondition_error("fit_line: need at least two samples");
    size_t n = xs.size();
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw precondition_error("fit_line: degenerate abscissae");
    LineFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    if (syy == 0.0) {
        out.r_squared = 1.0;
    } else {
        double ss_res = syy - out.slope * sxy;
        out.r_squared = 1.0 - ss_res / syy;
        if (out.r_squared < 0.0) out.r_squared = 0.0;
        if (out.r_squared > 1.0) out.r_squared = 1.0;
    }
    return out;
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw precondition_error("median of empty set");
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace marstrand
