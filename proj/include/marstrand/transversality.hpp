#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "marstrand/fractal.hpp"
#include "marstrand/projection.hpp"

namespace marstrand {

struct TransversalityReport {
    TransversalityParams fitted;  // C-hat, kappa-hat at the fixed alpha
    double r_squared = 0.0;
    std::vector<double> delta_grid;
    std::vector<double> worst_probability;  // per delta, max over probe pairs
    int probe_pairs = 0;
    int lambda_samples = 0;
    std::optional<double> eta;  // geometric constant when computed
    uint64_t seed = 0;
};

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    double t = 0.0;
    double alpha = 1.0;
    double kappa = 1.0;
    double C_used = 1.0;
    double mc_stderr = 0.0;
    // Fraction of density evaluations whose finite-scale proxy diverged
    // (atomic pushforward); > 0 marks the report as out-of-model.
    double flagged_fraction = 0.0;
};

// Fraction of stratified lambda samples (midpoint rule on [0, pi)) with
// d(pi_lambda(x1), pi_lambda(x2)) <= delta * d(x1, x2)^alpha.
double probability_estimate(const ProjectionFamily& family, Point2 x1, Point2 x2,
                            double delta, double alpha, int n_lambda, uint64_t seed);

struct PowerLawFit {
    double kappa_hat = 0.0;
    double C_hat = 0.0;
    double r_squared = 0.0;
    int used_cells = 0;
};

// log-log least squares of probabilities vs deltas, dropping cells with
// probability below `floor` (log 0 is undefined; one-sample cells are noise).
PowerLawFit fit_powerlaw(const std::vector<double>& deltas,
                         const std::vector<double>& probabilities, double floor);

// Fits C-hat, kappa-hat in P[..] <= C delta^kappa from worst-case (max over
// sampled pairs) probabilities on a geometric delta grid.
TransversalityReport fit_transversality(const ProjectionFamily& family, const PointCloud& cloud,
                                        double alpha, std::vector<double> delta_grid,
                                        int n_pairs, int n_lambda, uint64_t seed);

// eta-hat = min over cloud pairs (u,v) and the lambda grid of
// d(pi_{lambda+theta(u,v)} u, pi_{lambda+theta(u,v)} v) / (|sin lambda| d(u,v)),
// excluding the numerically unstable band |sin lambda| < 1e-3.
double lemma_L1_eta(const ProjectionFamily& family, const PointCloud& cloud,
                    double ball_radius, int n_lambda, uint64_t seed);

inline constexpr double kEtaSineFloor = 1e-3;

// Monte Carlo check of  avg_lambda I_t(nu_lambda) <= (1 + C t/(kappa - t)) I_{alpha t}(mu).
InequalityReport check_lemma31(const DiscreteMeasure& mu, const ProjectionFamily& family,
                               double t, TransversalityParams params, int n_lambda,
                               uint64_t seed);

// Monte Carlo check of  avg_lambda int D^kappa nu_lambda d nu_lambda <= C I_{alpha kappa}(mu).
// Advisory: the finite-scale density proxy has a one-sided bias, so the slack
// is reported, not asserted.
InequalityReport check_lemma32(const DiscreteMeasure& mu, const ProjectionFamily& family,
                               TransversalityParams params, const std::vector<double>& r_ladder,
                               int n_lambda, uint64_t seed);

}  // namespace marstrand
