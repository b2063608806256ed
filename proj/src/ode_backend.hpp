#pragma once

// Numeric backend for ConformalHadamard contexts: RK4 geodesic integration in
// arclength (fixed step 1e-3) and boundary-value distance via shooting on the
// initial angle. Internal to the library.

#include <vector>

#include "marstrand/hadamard.hpp"
#include "marstrand/metric.hpp"

namespace marstrand::detail {

inline constexpr double kOdeStep = 1e-3;
inline constexpr double kShootMissTol = 1e-8;

struct GeoState {
    Point2 pos;
    Point2 vel;  // coordinate velocity; |vel| = e^{-phi(pos)} at unit Riemannian speed
};

struct ShootResult {
    double distance = 0.0;
    double angle = 0.0;  // initial direction at the start point
};

GeoState geodesic_start(const ConformalMetricSpec& spec, Point2 base, double angle);

// One RK4 step of arclength h.
GeoState rk4_step(const ConformalMetricSpec& spec, const GeoState& s, double h);

Point2 ode_exp(const ConformalMetricSpec& spec, Point2 base, Point2 v);

// Distance and connecting direction a -> b. `angle_hint` warm-starts the
// shooting bracket.
ShootResult ode_distance(const ConformalMetricSpec& spec, Point2 a, Point2 b,
                         double miss_tol = kShootMissTol, const double* angle_hint = nullptr);

double ode_angle_at(const ConformalMetricSpec& spec, Point2 vertex, Point2 a, Point2 b);

// Cached polyline of a full geodesic, extensible in both directions; points
// at arbitrary arclength via cubic Hermite interpolation between stored steps.
class GeodesicTrace {
public:
    GeodesicTrace(const ConformalMetricSpec& spec, Point2 base, double angle);
    GeoState at(double s) const;  // extends the cache as needed

private:
    void extend_forward(double s) const;
    void extend_backward(double s) const;

    const ConformalMetricSpec* spec_;
    mutable std::vector<GeoState> fwd_;  // states at s = k * kOdeStep, k >= 0
    mutable std::vector<GeoState> bwd_;  // states at s = -k * kOdeStep, k >= 0
};

double ode_project(const ConformalMetricSpec& spec, Point2 base, double lambda, Point2 z);

GeodesicFrame ode_frame(const ConformalMetricSpec& spec, Point2 u, Point2 v, Point2 base);

Point2 ode_log(const ConformalMetricSpec& spec, Point2 base, Point2 target);

}  // namespace marstrand::detail
