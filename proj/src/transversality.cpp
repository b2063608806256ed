#include "marstrand/transversality.hpp"

#include <algorithm>
#include <cmath>

#include "marstrand/numerics.hpp"
#include "marstrand/parallel.hpp"
#include "marstrand/rng.hpp"

namespace marstrand {

namespace {

// Stratified midpoint samples of [0, end).
std::vector<double> lambda_midpoints(int n, double end = kPi) {
    if (n < 1) throw precondition_error("lambda grid: need n >= 1");
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = (k + 0.5) * end / n;
    return out;
}

double source_distance(const ProjectionFamily& family, Point2 a, Point2 b) {
    return distance(family.context, a, b);
}

// Per-pair sorted projection ratios |pi_l x1 - pi_l x2| / d(x1,x2)^alpha over
// the midpoint grid; probability estimates are counts below delta.
std::vector<double> pair_ratios(const ProjectionFamily& family, Point2 x1, Point2 x2,
                                double alpha, const std::vector<double>& lambdas) {
    double d = source_distance(family, x1, x2);
    if (d <= 0.0) throw precondition_error("transversality: coincident probe points");
    double d_alpha = std::pow(d, alpha);
    std::vector<double> ratios(lambdas.size());
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        double p1 = project(family, lambdas[k], x1);
        double p2 = project(family, lambdas[k], x2);
        ratios[k] = std::abs(p1 - p2) / d_alpha;
    }
    std::sort(ratios.begin(), ratios.end());
    return ratios;
}

}  // namespace

double probability_estimate(const ProjectionFamily& family, Point2 x1, Point2 x2, double delta,
                            double alpha, int n_lambda, uint64_t seed) {
    (void)seed;  // midpoint stratification is deterministic; kept for interface stability
    if (n_lambda < 1000) throw precondition_error("probability_estimate: need n_lambda >= 1000");
    if (!(delta >= 0.0)) throw precondition_error("probability_estimate: delta must be >= 0");
    if (norm(x1 - x2) < 1e-15)
        throw precondition_error("probability_estimate: degenerate pair x1 = x2");
    std::vector<double> lambdas = lambda_midpoints(n_lambda);
    std::vector<double> ratios = pair_ratios(family, x1, x2, alpha, lambdas);
    auto it = std::upper_bound(ratios.begin(), ratios.end(), delta);
    return static_cast<double>(it - ratios.begin()) / n_lambda;
}

PowerLawFit fit_powerlaw(const std::vector<double>& deltas,
                         const std::vector<double>& probabilities, double floor) {
    if (deltas.size() != probabilities.size())
        throw precondition_error("fit_powerlaw: mismatched inputs");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (probabilities[i] < floor) continue;  // zero/undersampled cells are noise
        xs.push_back(std::log(deltas[i]));
        ys.push_back(std::log(probabilities[i]));
    }
    if (deltas.size() < 2)
        throw precondition_error("fit_powerlaw: degenerate fit (single grid point)");
    if (xs.size() < 2)
        throw solver_error("fit_powerlaw: all cells undersampled; increase n_lambda");
    LineFit fit = fit_line(xs, ys);
    PowerLawFit out;
    out.kappa_hat = fit.slope;
    out.C_hat = std::exp(fit.intercept);
    out.r_squared = fit.r_squared;
    out.used_cells = static_cast<int>(xs.size());
    return out;
}

namespace {

void validate_delta_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw precondition_error("delta grid: empty");
    for (double d : grid)
        if (!(d >= 1e-3 * (1.0 - 1e-9) && d <= 1.0 + 1e-9))
            throw precondition_error("delta grid: values must lie in [1e-3, 1]");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw precondition_error("delta grid: must be increasing");
    if (grid.size() >= 3) {
        double ratio = grid[1] / grid[0];
        for (std::size_t i = 2; i < grid.size(); ++i)
            if (std::abs(grid[i] / grid[i - 1] - ratio) > 1e-6 * ratio)
                throw precondition_error("delta grid: must be geometric");
    }
}

}  // namespace

TransversalityReport fit_transversality(const ProjectionFamily& family, const PointCloud& cloud,
                                        double alpha, std::vector<double> delta_grid, int n_pairs,
                                        int n_lambda, uint64_t seed) {
    validate_delta_grid(delta_grid);
    if (n_pairs < 50) throw precondition_error("fit_transversality: need n_pairs >= 50");
    if (n_lambda < 1000) throw precondition_error("fit_transversality: need n_lambda >= 1000");
    if (cloud.points.size() < 2) throw precondition_error("fit_transversality: cloud too small");

    Rng rng(derive_seed(seed, {1}));
    std::vector<std::pair<Point2, Point2>> pairs;
    pairs.reserve(n_pairs);
    int guard = 0;
    while (static_cast<int>(pairs.size()) < n_pairs) {
        Point2 a = cloud.points[rng.below(cloud.points.size())];
        Point2 b = cloud.points[rng.below(cloud.points.size())];
        if (norm(a - b) > 1e-12) pairs.emplace_back(a, b);
        if (++guard > 1000 * n_pairs)
            throw precondition_error("fit_transversality: could not sample distinct pairs");
    }

    std::vector<double> lambdas = lambda_midpoints(n_lambda);
    std::vector<std::vector<double>> all_ratios(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        all_ratios[i] = pair_ratios(family, pairs[i].first, pairs[i].second, alpha, lambdas);
    });

    std::vector<double> worst(delta_grid.size(), 0.0);
    for (const auto& ratios : all_ratios) {
        for (std::size_t gi = 0; gi < delta_grid.size(); ++gi) {
            auto it = std::upper_bound(ratios.begin(), ratios.end(), delta_grid[gi]);
            double p = static_cast<double>(it - ratios.begin()) / n_lambda;
            worst[gi] = std::max(worst[gi], p);
        }
    }

    PowerLawFit fit = fit_powerlaw(delta_grid, worst, 2.0 / n_lambda);
    TransversalityReport report;
    report.fitted = {alpha, fit.kappa_hat, fit.C_hat};
    report.r_squared = fit.r_squared;
    report.delta_grid = std::move(delta_grid);
    report.worst_probability = std::move(worst);
    report.probe_pairs = n_pairs;
    report.lambda_samples = n_lambda;
    report.seed = seed;
    return report;
}

double lemma_L1_eta(const ProjectionFamily& family, const PointCloud& cloud, double ball_radius,
                    int n_lambda, uint64_t seed) {
    (void)seed;
    if (cloud.points.size() < 2) throw precondition_error("lemma_L1_eta: cloud too small");
    if (n_lambda < 8) throw precondition_error("lemma_L1_eta: need n_lambda >= 8");
    const Point2 origin{0.0, 0.0};
    for (const auto& p : cloud.points)
        if (distance(family.context, origin, p) > ball_radius + 1e-9)
            throw precondition_error("lemma_L1_eta: cloud leaves the base ball B_R(p)");

    std::vector<double> lambdas;
    for (double l : lambda_midpoints(n_lambda, kPi))
        if (std::abs(std::sin(l)) >= kEtaSineFloor) lambdas.push_back(l);
    if (lambdas.size() < 2) throw precondition_error("lemma_L1_eta: lambda grid too coarse");

    const std::size_t n = cloud.points.size();
    std::vector<double> per_point_min(n, 1e300);
    parallel_for(n, [&](std::size_t i) {
        double local = 1e300;
        Point2 u = cloud.points[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            Point2 v = cloud.points[j];
            double duv = distance(family.context, u, v);
            if (duv <= 0.0) continue;
            double theta = frame(family.context, u, v, origin).theta;
            for (double l : lambdas) {
                double beta = wrap_angle(l + theta);
                double pu = project_extended(family, beta, u);
                double pv = project_extended(family, beta, v);
                double ratio = std::abs(pu - pv) / (std::sin(l) * duv);
                local = std::min(local, ratio);
            }
        }
        per_point_min[i] = local;
    });
    double eta = 1e300;
    for (double v : per_point_min) eta = std::min(eta, v);
    if (eta == 1e300) throw precondition_error("lemma_L1_eta: no usable pairs");
    return eta;
}

InequalityReport check_lemma31(const DiscreteMeasure& mu, const ProjectionFamily& family,
                               double t, TransversalityParams params, int n_lambda,
                               uint64_t seed) {
    mu.validate();
    if (!(t >= 0.0 && t < params.kappa))
        throw precondition_error("check_lemma31: need 0 <= t < kappa (C_{t,kappa} diverges)");
    if (n_lambda < 2) throw precondition_error("check_lemma31: need n_lambda >= 2");

    std::vector<double> lambdas = lambda_midpoints(n_lambda);
    std::vector<double> values(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t k) {
        values[k] = energy(pushforward(mu, family, lambdas[k]), t);
    });
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    double stderr_mc =
        values.size() > 1 ? std::sqrt(var / (values.size() * (values.size() - 1.0))) : 0.0;

    double c_factor = 1.0 + params.C * t / (params.kappa - t);
    double rhs = c_factor * energy(mu, params.alpha * t);

    InequalityReport rep;
    rep.lhs = mean;
    rep.rhs = rhs;
    rep.slack = rhs - mean;
    rep.t = t;
    rep.alpha = params.alpha;
    rep.kappa = params.kappa;
    rep.C_used = params.C;
    rep.mc_stderr = stderr_mc;
    (void)seed;
    return rep;
}

InequalityReport check_lemma32(const DiscreteMeasure& mu, const ProjectionFamily& family,
                               TransversalityParams params, const std::vector<double>& r_ladder,
                               int n_lambda, uint64_t seed) {
    mu.validate();
    if (n_lambda < 2) throw precondition_error("check_lemma32: need n_lambda >= 2");

    std::vector<double> lambdas = lambda_midpoints(n_lambda);
    std::vector<double> values(lambdas.size());
    std::vector<double> flagged(lambdas.size(), 0.0);
    parallel_for(lambdas.size(), [&](std::size_t k) {
        DiscreteMeasure nu = pushforward(mu, family, lambdas[k]);
        double acc = 0.0;
        double flags = 0.0;
        // Integrate D^kappa nu against nu over its own atoms.
        for (std::size_t i = 0; i < nu.size(); ++i) {
            KappaDensity kd = kappa_density(nu, nu.points[i], params.kappa, r_ladder);
            acc += nu.weights[i] * kd.value;
            if (kd.diverging) flags += 1.0;
        }
        values[k] = acc;
        flagged[k] = flags / nu.size();
    });
    double mean = 0.0, flag_mean = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        mean += values[k];
        flag_mean += flagged[k];
    }
    mean /= values.size();
    flag_mean /= values.size();
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    double stderr_mc =
        values.size() > 1 ? std::sqrt(var / (values.size() * (values.size() - 1.0))) : 0.0;

    InequalityReport rep;
    rep.lhs = mean;
    rep.rhs = params.C * energy(mu, params.alpha * params.kappa);
    rep.slack = rep.rhs - rep.lhs;
    rep.t = params.kappa;
    rep.alpha = params.alpha;
    rep.kappa = params.kappa;
    rep.C_used = params.C;
    rep.mc_stderr = stderr_mc;
    rep.flagged_fraction = flag_mean;
    (void)seed;
    return rep;
}

}  // namespace marstrand
