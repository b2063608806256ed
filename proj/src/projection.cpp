#include "marstrand/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace marstrand {

ProjectionFamily ProjectionFamily::euclidean_angle() {
    ProjectionFamily f;
    f.kind = FamilyKind::EuclideanAngle;
    f.context = MetricContext::euclidean();
    return f;
}

ProjectionFamily ProjectionFamily::hyperbolic_geodesic(MetricContext ctx) {
    if (ctx.kind == Geometry::Euclidean)
        throw precondition_error("hyperbolic_geodesic family needs a curved context");
    ProjectionFamily f;
    f.kind = FamilyKind::HyperbolicGeodesic;
    f.context = ctx;
    return f;
}

double project_extended(const ProjectionFamily& family, double lambda, Point2 x) {
    switch (family.kind) {
        case FamilyKind::EuclideanAngle:
            return dot(x, unit_vector(lambda));
        case FamilyKind::HyperbolicGeodesic:
            return project_param(ParamGeodesic{{0.0, 0.0}, lambda, family.context}, x);
    }
    throw precondition_error("project: unknown family");
}

double project(const ProjectionFamily& family, double lambda, Point2 x) {
    if (!(lambda >= 0.0 && lambda < kPi + 1e-12))
        throw precondition_error("project: lambda must lie in [0, pi)");
    return project_extended(family, lambda, x);
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const ProjectionFamily& family,
                            double lambda) {
    mu.validate();
    if (mu.context.kind != family.context.kind)
        throw precondition_error("pushforward: measure context does not match the family");
    std::vector<std::pair<double, double>> atoms;  // (coordinate, weight)
    atoms.reserve(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i)
        atoms.emplace_back(project(family, lambda, mu.points[i]), mu.weights[i]);
    std::sort(atoms.begin(), atoms.end());
    // Atoms that land on exactly the same coordinate are one atom of the
    // pushforward; merging keeps mass exact and the energy sum meaningful.
    DiscreteMeasure nu;
    nu.context = MetricContext::euclidean();
    nu.resolution = mu.resolution;  // projections are 1-Lipschitz
    for (const auto& [coord, w] : atoms) {
        if (!nu.points.empty() && nu.points.back().x == coord)
            nu.weights.back() += w;
        else {
            nu.points.push_back({coord, 0.0});
            nu.weights.push_back(w);
        }
    }
    return nu;
}

double theta_lambda(double lambda, double theta_uv) {
    if (!(lambda >= 0.0 && lambda <= kPi + 1e-12))
        throw precondition_error("theta_lambda: lambda must lie in [0, pi]");
    if (!(theta_uv >= 0.0 && theta_uv < kTwoPi))
        throw precondition_error("theta_lambda: theta_uv must lie in [0, 2pi)");
    if (theta_uv < kPi) {
        return (lambda < theta_uv) ? lambda + kPi : lambda;
    }
    return (lambda < theta_uv - kPi) ? lambda : lambda + kPi;
}

}  // namespace marstrand
