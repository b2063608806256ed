#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "marstrand/metric.hpp"
#include "marstrand/projection.hpp"

namespace marstrand {

// One property suite run on a seeded random corpus.
struct CheckResult {
    std::string name;
    int samples = 0;
    int failures = 0;
    double worst_residual = 0.0;  // most negative slack / largest violation seen
    double tolerance = 0.0;
    bool passed = false;
};

// Metric axioms: symmetry, identity, triangle inequality.
CheckResult check_metric_axioms(const MetricContext& ctx, int n, uint64_t seed, double tol);

// Orthogonal projection properties.
CheckResult check_projection_minimality(const MetricContext& ctx, int n, int n_probes,
                                        uint64_t seed);
CheckResult check_projection_segment_invariance(const MetricContext& ctx, int n, uint64_t seed,
                                                double tol = 1e-7);
CheckResult check_projection_obtuse_angle(const MetricContext& ctx, int n, uint64_t seed,
                                          double tol = 1e-6);

// d(x,y) >= sin angle_z(x,y) * d(x,z).
CheckResult check_sine_inequality(const MetricContext& ctx, int n, uint64_t seed, double tol);

// d^2(x,z) >= d^2(y,x) + d^2(y,z) - 2 d(y,x) d(y,z) cos angle_y(x,z).
CheckResult check_law_of_cosines(const MetricContext& ctx, int n, uint64_t seed, double tol);

// Frame invariants: foot on the geodesic (vs golden-section oracle),
// orthogonal crossing, positive orientation.
CheckResult check_frame_invariants(const MetricContext& ctx, int n, uint64_t seed);

// Distance identity for the reflected parameter theta_lambda.
CheckResult check_claim_identity(const MetricContext& ctx, int n, uint64_t seed,
                                 double tol = 1e-9);

// d(pi_lambda u, pi_lambda v) == d(pi_{lambda+pi} u, pi_{lambda+pi} v).
CheckResult check_same_geodesic_identity(const MetricContext& ctx, int n, uint64_t seed,
                                         double tol = 1e-9);

// |pi_lambda x1 - pi_lambda x2| <= d(x1, x2) + tol.
CheckResult check_lipschitz(const ProjectionFamily& family, int n, uint64_t seed,
                            double tol = 1e-9);

struct BackendAgreement {
    CheckResult distance;
    CheckResult exp;
    CheckResult projection;
};

// Closed-form Poincare backend vs conformal ODE backend with the Poincare
// factor, on seeded pairs in |z| <= 0.8.
BackendAgreement check_backend_agreement(int n, uint64_t seed, double tol = 1e-4);

// Closed-form project_param vs the golden-section oracle on the disk.
CheckResult check_projection_oracle(int n, uint64_t seed, double tol = 1e-8);

}  // namespace marstrand
