#pragma once

#include "marstrand/hadamard.hpp"
#include "marstrand/metric.hpp"

namespace marstrand {

enum class FamilyKind { EuclideanAngle, HyperbolicGeodesic };

// Family of projections onto lines/geodesics through the origin, parametrized
// by lambda in [0, pi) with normalized Lebesgue measure. Both built-ins are
// 1-Lipschitz with alpha = kappa = 1.
struct ProjectionFamily {
    FamilyKind kind = FamilyKind::EuclideanAngle;
    MetricContext context;  // source geometry the cloud/measure lives in
    double alpha = 1.0;
    double kappa = 1.0;

    static ProjectionFamily euclidean_angle();
    static ProjectionFamily hyperbolic_geodesic(MetricContext ctx = MetricContext::poincare_disk());
};

struct TransversalityParams {
    double alpha = 1.0;
    double kappa = 1.0;
    double C = 1.0;
};

// Signed coordinate of the projection of x on the target line/geodesic.
double project(const ProjectionFamily& family, double lambda, Point2 x);

// Same map with the parameter extended to [0, 2*pi) (geometry-level sweeps).
double project_extended(const ProjectionFamily& family, double lambda, Point2 x);

// Pushforward measure: points mapped by project, weights carried over; atoms
// landing on exactly the same coordinate are merged (their weights add), so
// total mass is preserved exactly.
DiscreteMeasure pushforward(const DiscreteMeasure& mu, const ProjectionFamily& family,
                            double lambda);

// The reflected parameter theta_lambda(u,v): piecewise lambda or lambda+pi,
// landing (mod 2*pi) in [theta_uv, theta_uv + pi] where the sine lower bound
// applies. lambda in [0, pi], theta_uv in [0, 2*pi).
double theta_lambda(double lambda, double theta_uv);

}  // namespace marstrand
