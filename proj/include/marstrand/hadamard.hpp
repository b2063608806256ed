#pragma once

#include <cstdint>

#include "marstrand/metric.hpp"
#include "marstrand/types.hpp"

namespace marstrand {

// Geodesic through `base` with initial direction `angle`, parametrized by
// signed arclength. The closed-form Poincare backend requires base = origin.
struct ParamGeodesic {
    Point2 base;
    double angle = 0.0;
    MetricContext context;
};

// The frame (theta(u,v), I(u,v)): the geodesic through the base point that
// meets the full geodesic through u,v orthogonally, oriented so that
// {l'_theta, gamma'_uv} is a positive basis at the foot.
struct GeodesicFrame {
    double theta = 0.0;   // direction of the perpendicular geodesic at base
    Point2 foot;          // I(u,v)
    double s_param = 0.0; // signed arclength of foot along l_theta
    double t_param = 0.0; // signed arclength of foot along gamma_uv from u toward v
};

struct GeometryCalibration {
    double radius = 0.0;
    double k_hat = 1.0;
    int samples = 0;
};

// Point at arclength |v| along the geodesic from base with initial direction
// v/|v|; tangent components are in the orthonormal frame at base.
Point2 exp_map(const MetricContext& ctx, Point2 base, Point2 v);

// Inverse of exp_map (unique on Hadamard surfaces).
Point2 log_map(const MetricContext& ctx, Point2 base, Point2 target);

// exp_base(frac * log_base(target)): point along the geodesic segment.
Point2 point_on_segment(const MetricContext& ctx, Point2 a, Point2 b, double frac);

Point2 geodesic_point(const ParamGeodesic& geo, double s);

// Signed arclength parameter of the orthogonal projection of z onto the full
// geodesic. Closed form on the disk (validated against the golden-section
// oracle); golden-section minimization of s -> d(z, l(s)) on the ODE backend.
double project_param(const ParamGeodesic& geo, Point2 z);

// Angle at `vertex` between the geodesic segments toward a and b, in [0, pi].
double angle_at(const MetricContext& ctx, Point2 vertex, Point2 a, Point2 b);

GeodesicFrame frame(const MetricContext& ctx, Point2 u, Point2 v, Point2 base);

// Empirical bi-Lipschitz constant of exp on a ball of the given radius:
// max over sampled x in B_R(base) and tangent pairs u,v of
// d(exp_x u, exp_x v) / |u - v|.
GeometryCalibration calibrate_bilipschitz(const MetricContext& ctx, Point2 base,
                                          double radius, int n_samples, uint64_t seed);

}  // namespace marstrand
