#include "marstrand/metric.hpp"

#include <algorithm>
#include <cmath>

#include "ode_backend.hpp"

namespace marstrand {

// ---- ConformalMetricSpec ----------------------------------------------------

ConformalMetricSpec ConformalMetricSpec::zero(Rect domain) {
    ConformalMetricSpec s;
    s.kind_ = ConformalKind::Zero;
    s.domain_ = domain;
    return s;
}

ConformalMetricSpec ConformalMetricSpec::poincare_factor(double max_radius) {
    if (!(max_radius > 0.0 && max_radius < 1.0))
        throw precondition_error("poincare factor: max_radius must lie in (0,1)");
    ConformalMetricSpec s;
    s.kind_ = ConformalKind::PoincareFactor;
    s.domain_ = Rect{-1.0, 1.0, -1.0, 1.0};
    s.max_radius_ = max_radius;
    return s;
}

ConformalMetricSpec ConformalMetricSpec::polynomial(std::vector<PolyTerm> terms, Rect domain) {
    for (const auto& t : terms) {
        if (t.px < 0 || t.py < 0) throw precondition_error("polynomial term: negative power");
        if (!std::isfinite(t.coeff)) throw precondition_error("polynomial term: non-finite coeff");
    }
    ConformalMetricSpec s;
    s.kind_ = ConformalKind::Polynomial;
    s.domain_ = domain;
    s.terms_ = std::move(terms);
    return s;
}

std::string ConformalMetricSpec::label() const {
    switch (kind_) {
        case ConformalKind::Zero: return "zero";
        case ConformalKind::PoincareFactor: return "poincare_factor";
        case ConformalKind::Polynomial: return "polynomial";
    }
    return "?";
}

bool ConformalMetricSpec::contains(Point2 q) const {
    if (!is_finite(q)) return false;
    if (q.x < domain_.xmin || q.x > domain_.xmax || q.y < domain_.ymin || q.y > domain_.ymax)
        return false;
    if (max_radius_ > 0.0 && norm_sq(q) > max_radius_ * max_radius_) return false;
    return true;
}

double ConformalMetricSpec::phi(Point2 q) const {
    switch (kind_) {
        case ConformalKind::Zero:
            return 0.0;
        case ConformalKind::PoincareFactor:
            return std::log(2.0 / (1.0 - norm_sq(q)));
        case ConformalKind::Polynomial: {
            double acc = 0.0;
            for (const auto& t : terms_)
                acc += t.coeff * std::pow(q.x, t.px) * std::pow(q.y, t.py);
            return acc;
        }
    }
    return 0.0;
}

Point2 ConformalMetricSpec::grad_phi(Point2 q) const {
    switch (kind_) {
        case ConformalKind::Zero:
            return {0.0, 0.0};
        case ConformalKind::PoincareFactor: {
            double u = 1.0 - norm_sq(q);
            return {2.0 * q.x / u, 2.0 * q.y / u};
        }
        case ConformalKind::Polynomial: {
            Point2 g{0.0, 0.0};
            for (const auto& t : terms_) {
                if (t.px > 0)
                    g.x += t.coeff * t.px * std::pow(q.x, t.px - 1) * std::pow(q.y, t.py);
                if (t.py > 0)
                    g.y += t.coeff * t.py * std::pow(q.x, t.px) * std::pow(q.y, t.py - 1);
            }
            return g;
        }
    }
    return {0.0, 0.0};
}

double ConformalMetricSpec::laplacian_phi(Point2 q) const {
    switch (kind_) {
        case ConformalKind::Zero:
            return 0.0;
        case ConformalKind::PoincareFactor: {
            double u = 1.0 - norm_sq(q);
            return 4.0 / (u * u);
        }
        case ConformalKind::Polynomial: {
            double acc = 0.0;
            for (const auto& t : terms_) {
                if (t.px >= 2)
                    acc += t.coeff * t.px * (t.px - 1) * std::pow(q.x, t.px - 2) *
                           std::pow(q.y, t.py);
                if (t.py >= 2)
                    acc += t.coeff * t.py * (t.py - 1) * std::pow(q.x, t.px) *
                           std::pow(q.y, t.py - 2);
            }
            return acc;
        }
    }
    return 0.0;
}

double curvature_at(const ConformalMetricSpec& spec, Point2 q) {
    if (!spec.contains(q)) throw precondition_error("curvature_at: point outside domain");
    return -std::exp(-2.0 * spec.phi(q)) * spec.laplacian_phi(q);
}

// ---- MetricContext ----------------------------------------------------------

MetricContext MetricContext::conformal_hadamard(ConformalMetricSpec spec) {
    // Non-positive curvature on the working region, sampled on a grid.
    const int kGrid = 33;
    const Rect& d = spec.domain();
    for (int i = 0; i <= kGrid; ++i) {
        for (int j = 0; j <= kGrid; ++j) {
            Point2 q{d.xmin + (d.xmax - d.xmin) * i / kGrid,
                     d.ymin + (d.ymax - d.ymin) * j / kGrid};
            if (!spec.contains(q)) continue;
            if (curvature_at(spec, q) > 1e-9)
                throw precondition_error(
                    "conformal metric has positive curvature on the domain grid");
        }
    }
    MetricContext ctx;
    ctx.kind = Geometry::ConformalHadamard;
    ctx.conformal = std::make_shared<const ConformalMetricSpec>(std::move(spec));
    return ctx;
}

bool MetricContext::contains(Point2 p) const {
    if (!is_finite(p)) return false;
    switch (kind) {
        case Geometry::Euclidean:
            return true;
        case Geometry::PoincareDisk:
            return norm_sq(p) < 1.0;
        case Geometry::ConformalHadamard:
            return conformal && conformal->contains(p);
    }
    return false;
}

void MetricContext::require_inside(Point2 p, const char* what) const {
    if (!contains(p)) throw precondition_error(std::string(what) + ": point outside domain");
}

// ---- distance ---------------------------------------------------------------

namespace {

// d = 2 artanh( |a-b| / |1 - conj(a) b| ); equivalent to the arcosh form but
// better conditioned for nearby points.
double poincare_distance(Point2 a, Point2 b) {
    double num = norm_sq(a - b);
    double den = (1.0 - dot(a, b)) * (1.0 - dot(a, b)) + cross(a, b) * cross(a, b);
    double r = std::sqrt(num / den);
    if (r >= 1.0) throw precondition_error("poincare distance: point on the boundary");
    return 2.0 * std::atanh(r);
}

}  // namespace

double distance(const MetricContext& ctx, Point2 a, Point2 b) {
    ctx.require_inside(a, "distance");
    ctx.require_inside(b, "distance");
    switch (ctx.kind) {
        case Geometry::Euclidean:
            return norm(a - b);
        case Geometry::PoincareDisk:
            return poincare_distance(a, b);
        case Geometry::ConformalHadamard:
            return detail::ode_distance(*ctx.conformal, a, b).distance;
    }
    throw precondition_error("distance: unknown geometry");
}

// ---- DiscreteMeasure --------------------------------------------------------

void DiscreteMeasure::validate() const {
    if (points.empty() || points.size() != weights.size())
        throw precondition_error("measure: points/weights must be nonempty and equal length");
    double mass = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        require_finite(points[i], "measure point");
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
            throw precondition_error("measure: weights must be finite and nonnegative");
        mass += weights[i];
    }
    if (!(mass > 0.0)) throw precondition_error("measure: total mass must be positive");
}

double DiscreteMeasure::total_mass() const {
    double mass = 0.0;
    for (double w : weights) mass += w;
    return mass;
}

DiscreteMeasure line_measure(const std::vector<double>& coords,
                             const std::vector<double>& weights, double resolution) {
    DiscreteMeasure mu;
    mu.points.reserve(coords.size());
    for (double c : coords) mu.points.push_back({c, 0.0});
    mu.weights = weights;
    mu.context = MetricContext::euclidean();
    mu.resolution = resolution;
    mu.validate();
    return mu;
}

// ---- energy / ball mass / density -------------------------------------------

double energy(const DiscreteMeasure& mu, double s) {
    mu.validate();
    if (!(s >= 0.0)) throw precondition_error("energy: s must be nonnegative");
    const std::size_t n = mu.size();
    if (s == 0.0) {
        double mass = mu.total_mass(), wsq = 0.0;
        for (double w : mu.weights) wsq += w * w;
        return mass * mass - wsq;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double ww = mu.weights[i] * mu.weights[j];
            double d = distance(mu.context, mu.points[i], mu.points[j]);
            if (d == 0.0) {
                if (ww > 0.0)
                    throw precondition_error(
                        "energy: infinite energy (duplicate support points at positive weight)");
                continue;
            }
            acc += 2.0 * ww * std::exp(-s * std::log(d));
        }
    }
    return acc;
}

double ball_mass(const DiscreteMeasure& mu, Point2 center, double r) {
    mu.validate();
    if (!(r > 0.0)) throw precondition_error("ball_mass: radius must be positive");
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (distance(mu.context, mu.points[i], center) <= r) acc += mu.weights[i];
    return acc;
}

double ball_mass(const DiscreteMeasure& mu, double center, double r) {
    return ball_mass(mu, Point2{center, 0.0}, r);
}

KappaDensity kappa_density(const DiscreteMeasure& nu, Point2 y, double kappa,
                           const std::vector<double>& r_ladder) {
    nu.validate();
    if (!(kappa > 0.0)) throw precondition_error("kappa_density: kappa must be positive");
    if (r_ladder.size() < 2) throw precondition_error("kappa_density: ladder needs >= 2 rungs");
    for (std::size_t i = 0; i < r_ladder.size(); ++i) {
        if (!(r_ladder[i] > 0.0)) throw precondition_error("kappa_density: radii must be positive");
        if (i > 0 && !(r_ladder[i] < r_ladder[i - 1]))
            throw precondition_error("kappa_density: ladder must be strictly decreasing");
    }
    if (nu.resolution > 0.0 && r_ladder.back() < 3.0 * nu.resolution * (1.0 - 1e-12))
        throw precondition_error("kappa_density: ladder descends below the resolution floor");

    std::vector<double> ratios(r_ladder.size());
    for (std::size_t i = 0; i < r_ladder.size(); ++i)
        ratios[i] = ball_mass(nu, y, r_ladder[i]) / std::pow(r_ladder[i], kappa);

    // Tail half of the ladder = the smallest radii.
    std::size_t tail_begin = r_ladder.size() / 2;
    KappaDensity out;
    bool increasing = ratios.back() > 0.0;
    for (std::size_t i = tail_begin + 1; i < ratios.size() && increasing; ++i)
        if (!(ratios[i] > ratios[i - 1])) increasing = false;
    if (increasing && ratios.back() >= 1.5 * ratios[tail_begin]) {
        // Atom-like growth: the liminf proxy diverges; report the finest scale.
        out.value = ratios.back();
        out.diverging = true;
        return out;
    }
    double best = ratios[tail_begin];
    for (std::size_t i = tail_begin; i < ratios.size(); ++i) best = std::min(best, ratios[i]);
    out.value = best;
    return out;
}

KappaDensity kappa_density(const DiscreteMeasure& nu, double y, double kappa,
                           const std::vector<double>& r_ladder) {
    return kappa_density(nu, Point2{y, 0.0}, kappa, r_ladder);
}

std::vector<double> geometric_ladder(double r0, double ratio, int rungs) {
    if (!(r0 > 0.0) || !(ratio > 0.0 && ratio < 1.0) || rungs < 2)
        throw precondition_error("geometric_ladder: need r0 > 0, ratio in (0,1), rungs >= 2");
    std::vector<double> out(rungs);
    double r = r0;
    for (int i = 0; i < rungs; ++i) {
        out[i] = r;
        r *= ratio;
    }
    return out;
}

}  // namespace marstrand
