#include "ode_backend.hpp"

#include <algorithm>
#include <cmath>

#include "marstrand/numerics.hpp"

namespace marstrand::detail {

namespace {

// Geodesic equations of g = e^{2 phi} (dx^2 + dy^2):
//   x'' = -phi_x (x'^2 - y'^2) - 2 phi_y x' y'
//   y'' = +phi_y (x'^2 - y'^2) - 2 phi_x x' y'
struct Deriv {
    Point2 dpos;
    Point2 dvel;
};

inline Deriv rhs(const ConformalMetricSpec& spec, const GeoState& s) {
    Point2 g = spec.grad_phi(s.pos);
    double vx = s.vel.x, vy = s.vel.y;
    double quad = vx * vx - vy * vy;
    double mixed = vx * vy;
    return {s.vel, Point2{-g.x * quad - 2.0 * g.y * mixed, g.y * quad - 2.0 * g.x * mixed}};
}

inline GeoState axpy(const GeoState& s, double h, const Deriv& d) {
    return {{s.pos.x + h * d.dpos.x, s.pos.y + h * d.dpos.y},
            {s.vel.x + h * d.dvel.x, s.vel.y + h * d.dvel.y}};
}

inline void require_inside(const ConformalMetricSpec& spec, Point2 p) {
    if (!spec.contains(p)) throw precondition_error("geodesic left the conformal domain");
}

// Cubic Hermite position/velocity across one step [0, h].
struct HermiteSeg {
    GeoState a, b;
    double h;

    Point2 pos(double t) const {
        double u = t / h;
        double u2 = u * u, u3 = u2 * u;
        double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
        double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
        return {h00 * a.pos.x + h10 * h * a.vel.x + h01 * b.pos.x + h11 * h * b.vel.x,
                h00 * a.pos.y + h10 * h * a.vel.y + h01 * b.pos.y + h11 * h * b.vel.y};
    }
    Point2 vel(double t) const {
        double u = t / h;
        double u2 = u * u;
        double d00 = (6 * u2 - 6 * u) / h, d10 = 3 * u2 - 4 * u + 1;
        double d01 = (-6 * u2 + 6 * u) / h, d11 = 3 * u2 - 2 * u;
        return {d00 * a.pos.x + d10 * a.vel.x + d01 * b.pos.x + d11 * b.vel.x,
                d00 * a.pos.y + d10 * a.vel.y + d01 * b.pos.y + d11 * b.vel.y};
    }
};

// Outcome of tracing one shot: closest approach to the target.
struct Trace {
    double arc = 0.0;          // arclength at closest approach
    Point2 point;              // closest point
    Point2 dir;                // unit coordinate velocity there
    double miss_signed = 0.0;  // Riemannian transverse miss, signed by side
    double miss_total = 0.0;   // Riemannian distance from closest point to target
};

Trace trace_shot(const ConformalMetricSpec& spec, Point2 a, double psi, Point2 b, double s_max) {
    GeoState cur = geodesic_start(spec, a, psi);
    double g_cur = dot(b - cur.pos, cur.vel);
    Trace out;
    auto finish = [&](Point2 q, Point2 v, double arc) {
        Point2 d = normalized(v);
        double scale = std::exp(spec.phi(q));
        out.arc = arc;
        out.point = q;
        out.dir = d;
        out.miss_signed = scale * cross(d, b - q);
        out.miss_total = scale * norm(b - q);
    };
    if (g_cur <= 0.0) {  // target behind: closest approach at the start
        finish(cur.pos, cur.vel, 0.0);
        return out;
    }
    double arc = 0.0;
    while (arc < s_max) {
        GeoState nxt = rk4_step(spec, cur, kOdeStep);
        require_inside(spec, nxt.pos);
        double g_nxt = dot(b - nxt.pos, nxt.vel);
        if (g_nxt <= 0.0) {
            // Closest approach inside this step: Newton on <H(t)-b, H'(t)> = 0.
            HermiteSeg seg{cur, nxt, kOdeStep};
            double t = 0.5 * kOdeStep;
            for (int it = 0; it < 8; ++it) {
                Point2 p = seg.pos(t), v = seg.vel(t);
                double f = dot(p - b, v);
                double df = dot(v, v);  // curvature term negligible at this scale
                double step = f / df;
                t -= step;
                t = std::clamp(t, 0.0, kOdeStep);
                if (std::abs(step) < 1e-15) break;
            }
            finish(seg.pos(t), seg.vel(t), arc + t);
            return out;
        }
        cur = nxt;
        g_cur = g_nxt;
        arc += kOdeStep;
    }
    // Never started receding within the budget; report the endpoint.
    finish(cur.pos, cur.vel, arc);
    return out;
}

// Riemannian length upper bound: the coordinate segment ab is a path.
double segment_length_bound(const ConformalMetricSpec& spec, Point2 a, Point2 b) {
    const int kSamples = 32;
    double max_phi = -1e300;
    for (int i = 0; i <= kSamples; ++i) {
        double t = static_cast<double>(i) / kSamples;
        Point2 p = a + t * (b - a);
        if (!spec.contains(p))
            throw precondition_error("segment between endpoints leaves the conformal domain");
        max_phi = std::max(max_phi, spec.phi(p));
    }
    return norm(b - a) * std::exp(max_phi);
}

}  // namespace

GeoState geodesic_start(const ConformalMetricSpec& spec, Point2 base, double angle) {
    if (!spec.contains(base)) throw precondition_error("geodesic base outside conformal domain");
    double speed = std::exp(-spec.phi(base));
    return {base, {speed * std::cos(angle), speed * std::sin(angle)}};
}

GeoState rk4_step(const ConformalMetricSpec& spec, const GeoState& s, double h) {
    Deriv k1 = rhs(spec, s);
    Deriv k2 = rhs(spec, axpy(s, 0.5 * h, k1));
    Deriv k3 = rhs(spec, axpy(s, 0.5 * h, k2));
    Deriv k4 = rhs(spec, axpy(s, h, k3));
    GeoState out;
    out.pos.x = s.pos.x + h / 6.0 * (k1.dpos.x + 2 * k2.dpos.x + 2 * k3.dpos.x + k4.dpos.x);
    out.pos.y = s.pos.y + h / 6.0 * (k1.dpos.y + 2 * k2.dpos.y + 2 * k3.dpos.y + k4.dpos.y);
    out.vel.x = s.vel.x + h / 6.0 * (k1.dvel.x + 2 * k2.dvel.x + 2 * k3.dvel.x + k4.dvel.x);
    out.vel.y = s.vel.y + h / 6.0 * (k1.dvel.y + 2 * k2.dvel.y + 2 * k3.dvel.y + k4.dvel.y);
    return out;
}

Point2 ode_exp(const ConformalMetricSpec& spec, Point2 base, Point2 v) {
    double len = norm(v);
    if (len == 0.0) return base;
    GeoState s = geodesic_start(spec, base, std::atan2(v.y, v.x));
    double done = 0.0;
    while (done + kOdeStep <= len) {
        s = rk4_step(spec, s, kOdeStep);
        require_inside(spec, s.pos);
        done += kOdeStep;
    }
    double rest = len - done;
    if (rest > 0.0) {
        s = rk4_step(spec, s, rest);
        require_inside(spec, s.pos);
    }
    return s.pos;
}

ShootResult ode_distance(const ConformalMetricSpec& spec, Point2 a, Point2 b, double miss_tol,
                         const double* angle_hint) {
    if (!spec.contains(a) || !spec.contains(b))
        throw precondition_error("ode_distance: point outside conformal domain");
    double sep = norm(b - a);
    if (sep < 1e-15) return {0.0, 0.0};

    double s_max = segment_length_bound(spec, a, b) * 1.05 + 10 * kOdeStep;
    double psi0 = std::atan2(b.y - a.y, b.x - a.x);

    auto miss = [&](double psi) { return trace_shot(spec, a, psi, b, s_max); };

    // The connecting direction lies within the forward hemisphere of the
    // coordinate chord (tangent-chord angle stays below pi/2 on these
    // surfaces); clamping the bracket there excludes the spurious backward
    // sign crossing where the target sits behind the shot.
    const double kMaxDeviation = 1.5;
    double center = psi0;
    if (angle_hint) {
        double rel = wrap_pi(*angle_hint - psi0);
        if (std::abs(rel) < 1.0) center = psi0 + rel;
    }
    double lo, hi;
    Trace tlo, thi;
    double width = angle_hint ? 0.03 : 0.3;
    bool bracketed = false;
    for (;;) {
        lo = std::max(center - width, psi0 - kMaxDeviation);
        hi = std::min(center + width, psi0 + kMaxDeviation);
        tlo = miss(lo);
        thi = miss(hi);
        if (tlo.miss_total < miss_tol) return {tlo.arc, lo};
        if (thi.miss_total < miss_tol) return {thi.arc, hi};
        if ((tlo.miss_signed < 0.0) != (thi.miss_signed < 0.0)) {
            bracketed = true;
            break;
        }
        if (lo <= psi0 - kMaxDeviation && hi >= psi0 + kMaxDeviation) break;
        width *= 2.0;
    }
    if (!bracketed) throw solver_error("geodesic shooting: no sign change on the initial angle");

    // Illinois (bracket-keeping regula falsi) on the signed transverse miss.
    double flo = tlo.miss_signed, fhi = thi.miss_signed;
    Trace best = (tlo.miss_total < thi.miss_total) ? tlo : thi;
    double best_psi = (tlo.miss_total < thi.miss_total) ? lo : hi;
    for (int it = 0; it < 120; ++it) {
        double denom = fhi - flo;
        double mid = (std::abs(denom) > 1e-300) ? (lo - flo * (hi - lo) / denom)
                                                : 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        Trace tm = miss(mid);
        if (tm.miss_total < best.miss_total) {
            best = tm;
            best_psi = mid;
        }
        if (tm.miss_total < miss_tol) return {tm.arc, mid};
        if ((tm.miss_signed < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = tm.miss_signed;
            fhi *= 0.5;  // Illinois scaling keeps the bracket shrinking
        } else {
            hi = mid;
            fhi = tm.miss_signed;
            flo *= 0.5;
        }
        if (hi - lo < 1e-15) break;
    }
    if (best.miss_total < 100 * miss_tol) return {best.arc, best_psi};  // near-converged
    throw solver_error("geodesic shooting did not converge to the endpoint-miss tolerance");
}

double ode_angle_at(const ConformalMetricSpec& spec, Point2 vertex, Point2 a, Point2 b) {
    ShootResult ra = ode_distance(spec, vertex, a);
    ShootResult rb = ode_distance(spec, vertex, b);
    // Conformal metric: Riemannian angles equal coordinate angles.
    return std::abs(wrap_pi(ra.angle - rb.angle));
}

GeodesicTrace::GeodesicTrace(const ConformalMetricSpec& spec, Point2 base, double angle)
    : spec_(&spec) {
    fwd_.push_back(geodesic_start(spec, base, angle));
    bwd_.push_back(geodesic_start(spec, base, angle + kPi));
}

void GeodesicTrace::extend_forward(double s) const {
    while ((fwd_.size() - 1) * kOdeStep < s) {
        GeoState nxt = rk4_step(*spec_, fwd_.back(), kOdeStep);
        if (!spec_->contains(nxt.pos))
            throw precondition_error("geodesic left the conformal domain");
        fwd_.push_back(nxt);
    }
}

void GeodesicTrace::extend_backward(double s) const {
    while ((bwd_.size() - 1) * kOdeStep < s) {
        GeoState nxt = rk4_step(*spec_, bwd_.back(), kOdeStep);
        if (!spec_->contains(nxt.pos))
            throw precondition_error("geodesic left the conformal domain");
        bwd_.push_back(nxt);
    }
}

GeoState GeodesicTrace::at(double s) const {
    const std::vector<GeoState>* line = &fwd_;
    bool reversed = false;
    double t = s;
    if (s < 0.0) {
        line = &bwd_;
        reversed = true;
        t = -s;
    }
    if (reversed)
        extend_backward(t + kOdeStep);
    else
        extend_forward(t + kOdeStep);
    std::size_t k = static_cast<std::size_t>(t / kOdeStep);
    if (k + 1 >= line->size()) k = line->size() - 2;
    HermiteSeg seg{(*line)[k], (*line)[k + 1], kOdeStep};
    double local = t - k * kOdeStep;
    GeoState out{seg.pos(local), seg.vel(local)};
    if (reversed) out.vel = -out.vel;  // report velocity in increasing-s direction
    return out;
}

double ode_project(const ConformalMetricSpec& spec, Point2 base, double lambda, Point2 z) {
    if (!spec.contains(z)) throw precondition_error("ode_project: point outside domain");
    GeodesicTrace line(spec, base, lambda);
    double hint = std::atan2(z.y - base.y, z.x - base.x) + kPi;  // rough initial shot l(s) -> z
    bool have_hint = false;
    auto dist_to = [&](double s) {
        GeoState g = line.at(s);
        ShootResult r = ode_distance(spec, g.pos, z, 1e-9, have_hint ? &hint : nullptr);
        hint = r.angle;
        have_hint = true;
        return r.distance;
    };
    // Bracket expansion around s = 0.
    double a = -1.0, b = 1.0;
    double fa = dist_to(a), fm = dist_to(0.0), fb = dist_to(b);
    int guard = 0;
    while (fa <= fm || fb <= fm) {
        if (fa <= fm) {
            b = 0.0;
            fb = fm;
            fm = fa;
            a *= 2.0;
            fa = dist_to(a);
        } else {
            a = 0.0;
            fa = fm;
            fm = fb;
            b *= 2.0;
            fb = dist_to(b);
        }
        if (++guard > 12) throw solver_error("ode_project: bracket expansion failed");
    }
    have_hint = false;  // golden section jumps around; re-derive hints locally
    return golden_minimize(dist_to, a, b, 1e-7);
}

GeodesicFrame ode_frame(const ConformalMetricSpec& spec, Point2 u, Point2 v, Point2 base) {
    if (norm(u - v) < 1e-14) throw precondition_error("frame: u and v coincide");
    ShootResult uv = ode_distance(spec, u, v);
    GeodesicTrace gamma(spec, u, uv.angle);
    auto dist_to_base = [&](double t) {
        GeoState g = gamma.at(t);
        return ode_distance(spec, base, g.pos, 1e-9).distance;
    };
    double a = -uv.distance, b = 2.0 * uv.distance;
    double fa = dist_to_base(a), fb = dist_to_base(b);
    double fm = dist_to_base(0.5 * (a + b));
    int guard = 0;
    while (fa <= fm || fb <= fm) {
        if (fa <= fm) {
            a -= (b - a);
            fa = dist_to_base(a);
        } else {
            b += (b - a);
            fb = dist_to_base(b);
        }
        fm = dist_to_base(0.5 * (a + b));
        if (++guard > 10) throw solver_error("ode_frame: foot bracket expansion failed");
    }
    double t_foot = golden_minimize(dist_to_base, a, b, 1e-8);
    GeoState foot_state = gamma.at(t_foot);
    Point2 foot = foot_state.pos;
    Point2 gamma_dir = normalized(foot_state.vel);

    GeodesicFrame out;
    out.foot = foot;
    out.t_param = t_foot;
    double d_base = ode_distance(spec, base, foot, 1e-9).distance;
    if (d_base < 1e-9) {
        // gamma passes through the base: theta orthogonal to gamma' by the
        // positive-orientation rule.
        Point2 e{gamma_dir.y, -gamma_dir.x};
        out.theta = wrap_angle(std::atan2(e.y, e.x));
        out.s_param = 0.0;
        out.foot = base;
        return out;
    }
    ShootResult to_foot = ode_distance(spec, base, foot, 1e-9);
    // Direction of l_theta at the foot = final velocity of the shot base->foot.
    GeoState probe = geodesic_start(spec, base, to_foot.angle);
    double done = 0.0;
    while (done + kOdeStep <= to_foot.distance) {
        probe = rk4_step(spec, probe, kOdeStep);
        done += kOdeStep;
    }
    if (to_foot.distance - done > 0.0) probe = rk4_step(spec, probe, to_foot.distance - done);
    Point2 l_dir = normalized(probe.vel);
    if (cross(l_dir, gamma_dir) > 0.0) {
        out.theta = wrap_angle(to_foot.angle);
        out.s_param = to_foot.distance;
    } else {
        out.theta = wrap_angle(to_foot.angle + kPi);
        out.s_param = -to_foot.distance;
    }
    return out;
}

Point2 ode_log(const ConformalMetricSpec& spec, Point2 base, Point2 target) {
    ShootResult r = ode_distance(spec, base, target);
    return {r.distance * std::cos(r.angle), r.distance * std::sin(r.angle)};
}

}  // namespace marstrand::detail
