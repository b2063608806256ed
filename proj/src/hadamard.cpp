#include "marstrand/hadamard.hpp"

#include <cmath>

#include "marstrand/rng.hpp"
#include "ode_backend.hpp"

namespace marstrand {

namespace {

// Disk automorphism T_x(z) = (z + x) / (1 + conj(x) z); takes 0 to x with
// positive real derivative at 0, so frame directions carry over unchanged.
Point2 mobius_translate(Point2 x, Point2 z) {
    double nx = z.x + x.x, ny = z.y + x.y;
    double dx = 1.0 + x.x * z.x + x.y * z.y;
    double dy = x.x * z.y - x.y * z.x;
    double den = dx * dx + dy * dy;
    return {(nx * dx + ny * dy) / den, (ny * dx - nx * dy) / den};
}

// Inverse translate: T_x^{-1}(y) = (y - x) / (1 - conj(x) y).
Point2 mobius_untranslate(Point2 x, Point2 y) {
    double nx = y.x - x.x, ny = y.y - x.y;
    double dx = 1.0 - (x.x * y.x + x.y * y.y);
    double dy = -(x.x * y.y - x.y * y.x);
    double den = dx * dx + dy * dy;
    return {(nx * dx + ny * dy) / den, (ny * dx - nx * dy) / den};
}

Point2 disk_exp(Point2 base, Point2 v) {
    double len = norm(v);
    if (len == 0.0) return base;
    Point2 dir{v.x / len, v.y / len};
    double r = std::tanh(0.5 * len);
    return mobius_translate(base, r * dir);
}

Point2 disk_log(Point2 base, Point2 target) {
    Point2 w = mobius_untranslate(base, target);
    double r = norm(w);
    if (r == 0.0) return {0.0, 0.0};
    double d = 2.0 * std::atanh(r);
    return (d / r) * w;
}

void require_origin_base(Point2 base, const char* what) {
    if (norm(base) > 1e-12)
        throw precondition_error(std::string(what) +
                                 ": closed-form disk backend requires base at the origin");
}

double poincare_arc(Point2 a, Point2 b) {
    double num = norm_sq(a - b);
    double den = (1.0 - dot(a, b)) * (1.0 - dot(a, b)) + cross(a, b) * cross(a, b);
    return 2.0 * std::atanh(std::sqrt(num / den));
}

// Foot parameter on the real diameter: the inside root of
// x t^2 - (1 + |z|^2) t + x = 0 in the stable product form.
double disk_foot_on_real_axis(Point2 z) {
    double b = 1.0 + norm_sq(z);
    double disc = b * b - 4.0 * z.x * z.x;
    return 2.0 * z.x / (b + std::sqrt(disc));
}

double disk_project(double lambda, Point2 z) {
    Point2 zr = rotated(z, -lambda);
    double t = disk_foot_on_real_axis(zr);
    return 2.0 * std::atanh(t);
}

GeodesicFrame euclid_frame(Point2 u, Point2 v, Point2 base) {
    Point2 d = normalized(v - u);
    Point2 q = u + dot(base - u, d) * d;
    GeodesicFrame out;
    out.foot = q;
    out.t_param = dot(q - u, d);
    double h = norm(q - base);
    if (h < 1e-9) {
        Point2 e{d.y, -d.x};  // cross(e, d) = 1 > 0
        out.theta = wrap_angle(std::atan2(e.y, e.x));
        out.s_param = 0.0;
        out.foot = base;
        return out;
    }
    Point2 e = (1.0 / h) * (q - base);
    if (cross(e, d) > 0.0) {
        out.theta = wrap_angle(std::atan2(e.y, e.x));
        out.s_param = h;
    } else {
        out.theta = wrap_angle(std::atan2(e.y, e.x) + kPi);
        out.s_param = -h;
    }
    return out;
}

GeodesicFrame disk_frame(Point2 u, Point2 v) {
    GeodesicFrame out;
    double cr = cross(u, v);
    bool through_origin = std::abs(cr) < 1e-15 || norm(u) < 1e-15 || norm(v) < 1e-15;
    if (!through_origin) {
        // Geodesic through u, v: circle orthogonal to the unit circle, center
        // from 2<u,c> = |u|^2 + 1, 2<v,c> = |v|^2 + 1.
        double bu = 0.5 * (norm_sq(u) + 1.0);
        double bv = 0.5 * (norm_sq(v) + 1.0);
        Point2 c{(bu * v.y - bv * u.y) / cr, (bv * u.x - bu * v.x) / cr};
        double cn = norm(c);
        double r = std::sqrt(std::max(0.0, norm_sq(c) - 1.0));
        // Closest point of the circle to the origin; |c| - r = 1/(|c| + r)
        // since |c|^2 - r^2 = 1, stable however large the circle is.
        double q_mag = 1.0 / (cn + r);
        Point2 e{c.x / cn, c.y / cn};
        Point2 q = q_mag * e;
        double hyp = 2.0 * std::atanh(q_mag);
        if (hyp < 1e-9) {
            through_origin = true;  // numerically through the base point
        } else {
            // Direction of travel u -> v as the angular direction around c.
            double au = std::atan2(u.y - c.y, u.x - c.x);
            double av = std::atan2(v.y - c.y, v.x - c.x);
            double aq = std::atan2(q.y - c.y, q.x - c.x);
            double sweep = wrap_pi(av - au);
            Point2 t_ccw = normalized(Point2{-(q.y - c.y), q.x - c.x});
            Point2 gamma_dir = (sweep > 0.0) ? t_ccw : -t_ccw;
            out.foot = q;
            double t_abs = poincare_arc(u, q);
            double toward = wrap_pi(aq - au);
            out.t_param = ((toward > 0.0) == (sweep > 0.0)) ? t_abs : -t_abs;
            if (cross(e, gamma_dir) > 0.0) {
                out.theta = wrap_angle(std::atan2(e.y, e.x));
                out.s_param = hyp;
            } else {
                out.theta = wrap_angle(std::atan2(e.y, e.x) + kPi);
                out.s_param = -hyp;
            }
            return out;
        }
    }
    // Diameter case: the geodesic through u, v passes through the origin.
    Point2 w = normalized(v - u);
    Point2 e{w.y, -w.x};  // orthogonal with cross(e, w) = 1 > 0
    out.theta = wrap_angle(std::atan2(e.y, e.x));
    out.foot = {0.0, 0.0};
    out.s_param = 0.0;
    double t_abs = poincare_arc(u, Point2{0.0, 0.0});
    out.t_param = (dot(-u, w) >= 0.0) ? t_abs : -t_abs;
    return out;
}

}  // namespace

Point2 exp_map(const MetricContext& ctx, Point2 base, Point2 v) {
    ctx.require_inside(base, "exp_map");
    require_finite(v, "exp_map tangent");
    Point2 out;
    switch (ctx.kind) {
        case Geometry::Euclidean:
            out = base + v;
            break;
        case Geometry::PoincareDisk:
            out = disk_exp(base, v);
            break;
        case Geometry::ConformalHadamard:
            out = detail::ode_exp(*ctx.conformal, base, v);
            break;
        default:
            throw precondition_error("exp_map: unknown geometry");
    }
    ctx.require_inside(out, "exp_map result");
    return out;
}

Point2 log_map(const MetricContext& ctx, Point2 base, Point2 target) {
    ctx.require_inside(base, "log_map");
    ctx.require_inside(target, "log_map");
    switch (ctx.kind) {
        case Geometry::Euclidean:
            return target - base;
        case Geometry::PoincareDisk:
            return disk_log(base, target);
        case Geometry::ConformalHadamard:
            return detail::ode_log(*ctx.conformal, base, target);
    }
    throw precondition_error("log_map: unknown geometry");
}

Point2 point_on_segment(const MetricContext& ctx, Point2 a, Point2 b, double frac) {
    return exp_map(ctx, a, frac * log_map(ctx, a, b));
}

Point2 geodesic_point(const ParamGeodesic& geo, double s) {
    switch (geo.context.kind) {
        case Geometry::Euclidean:
            return geo.base + s * unit_vector(geo.angle);
        case Geometry::PoincareDisk: {
            require_origin_base(geo.base, "geodesic_point");
            return std::tanh(0.5 * s) * unit_vector(geo.angle);
        }
        case Geometry::ConformalHadamard: {
            detail::GeodesicTrace trace(*geo.context.conformal, geo.base, geo.angle);
            return trace.at(s).pos;
        }
    }
    throw precondition_error("geodesic_point: unknown geometry");
}

double project_param(const ParamGeodesic& geo, Point2 z) {
    geo.context.require_inside(z, "project_param");
    switch (geo.context.kind) {
        case Geometry::Euclidean:
            return dot(z - geo.base, unit_vector(geo.angle));
        case Geometry::PoincareDisk:
            require_origin_base(geo.base, "project_param");
            return disk_project(geo.angle, z);
        case Geometry::ConformalHadamard:
            return detail::ode_project(*geo.context.conformal, geo.base, geo.angle, z);
    }
    throw precondition_error("project_param: unknown geometry");
}

double angle_at(const MetricContext& ctx, Point2 vertex, Point2 a, Point2 b) {
    ctx.require_inside(vertex, "angle_at");
    ctx.require_inside(a, "angle_at");
    ctx.require_inside(b, "angle_at");
    if (ctx.kind == Geometry::ConformalHadamard)
        return detail::ode_angle_at(*ctx.conformal, vertex, a, b);
    Point2 u = log_map(ctx, vertex, a);
    Point2 w = log_map(ctx, vertex, b);
    if (norm(u) < 1e-15 || norm(w) < 1e-15)
        throw precondition_error("angle_at: vertex coincides with an endpoint");
    return std::atan2(std::abs(cross(u, w)), dot(u, w));
}

GeodesicFrame frame(const MetricContext& ctx, Point2 u, Point2 v, Point2 base) {
    ctx.require_inside(u, "frame");
    ctx.require_inside(v, "frame");
    if (norm(u - v) < 1e-14) throw precondition_error("frame: u and v coincide");
    switch (ctx.kind) {
        case Geometry::Euclidean:
            return euclid_frame(u, v, base);
        case Geometry::PoincareDisk:
            require_origin_base(base, "frame");
            return disk_frame(u, v);
        case Geometry::ConformalHadamard:
            return detail::ode_frame(*ctx.conformal, u, v, base);
    }
    throw precondition_error("frame: unknown geometry");
}

GeometryCalibration calibrate_bilipschitz(const MetricContext& ctx, Point2 base, double radius,
                                          int n_samples, uint64_t seed) {
    if (!(radius > 0.0)) throw precondition_error("calibrate: radius must be positive");
    if (n_samples < 1) throw precondition_error("calibrate: need at least one sample");
    ctx.require_inside(base, "calibrate");
    Rng rng(seed);
    double k_hat = 1.0;
    for (int i = 0; i < n_samples; ++i) {
        // Sampling is scaled by the radius so k_hat is pointwise monotone in R
        // for a fixed seed (distance-convexity of the comparison ratio).
        Point2 x = exp_map(ctx, base, radius * rng.in_disk(1.0));
        Point2 tu = radius * rng.in_disk(1.0);
        Point2 tv = radius * rng.in_disk(1.0);
        double sep = norm(tu - tv);
        if (sep < 1e-12) continue;
        double d = distance(ctx, exp_map(ctx, x, tu), exp_map(ctx, x, tv));
        k_hat = std::max(k_hat, d / sep);
    }
    return {radius, k_hat, n_samples};
}

}  // namespace marstrand
