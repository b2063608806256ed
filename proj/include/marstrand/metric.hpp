#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "marstrand/types.hpp"

namespace marstrand {

enum class Geometry { Euclidean, PoincareDisk, ConformalHadamard };

// Closed-form catalog for conformal metrics g = e^{2 phi} (dx^2 + dy^2).
// Entries expose phi, its gradient and Laplacian analytically, so the
// Gaussian curvature K = -e^{-2 phi} * laplacian(phi) is exact.
enum class ConformalKind { Zero, PoincareFactor, Polynomial };

struct PolyTerm {
    int px = 0;
    int py = 0;
    double coeff = 0.0;
};

struct Rect {
    double xmin = -1.0, xmax = 1.0;
    double ymin = -1.0, ymax = 1.0;
};

class ConformalMetricSpec {
public:
    static ConformalMetricSpec zero(Rect domain);
    // The hyperbolic factor phi = ln(2/(1-|z|^2)); only defined inside the
    // unit disk, so the valid region is the rectangle clipped to |z| <= max_radius.
    static ConformalMetricSpec poincare_factor(double max_radius = 0.999);
    static ConformalMetricSpec polynomial(std::vector<PolyTerm> terms, Rect domain);

    ConformalKind kind() const { return kind_; }
    const Rect& domain() const { return domain_; }
    double max_radius() const { return max_radius_; }
    std::string label() const;

    bool contains(Point2 q) const;
    double phi(Point2 q) const;
    Point2 grad_phi(Point2 q) const;
    double laplacian_phi(Point2 q) const;

private:
    ConformalMetricSpec() = default;
    ConformalKind kind_ = ConformalKind::Zero;
    Rect domain_;
    double max_radius_ = 0.0;  // 0 => no disk clipping
    std::vector<PolyTerm> terms_;
};

// Gaussian curvature at q from the catalog's closed-form Laplacian.
double curvature_at(const ConformalMetricSpec& spec, Point2 q);

struct MetricContext {
    Geometry kind = Geometry::Euclidean;
    std::shared_ptr<const ConformalMetricSpec> conformal;  // ConformalHadamard only

    static MetricContext euclidean() { return {Geometry::Euclidean, nullptr}; }
    static MetricContext poincare_disk() { return {Geometry::PoincareDisk, nullptr}; }
    // Validates non-positive curvature (K <= 1e-9 on a grid over the valid
    // region) before accepting the spec.
    static MetricContext conformal_hadamard(ConformalMetricSpec spec);

    bool contains(Point2 p) const;
    void require_inside(Point2 p, const char* what) const;
};

double distance(const MetricContext& ctx, Point2 a, Point2 b);

// Finite weighted point set standing in for a measure. `resolution` is the
// covering scale of the support in the context metric (0 = unknown); density
// and window floors key off it.
struct DiscreteMeasure {
    std::vector<Point2> points;
    std::vector<double> weights;
    MetricContext context;
    double resolution = 0.0;

    void validate() const;
    double total_mass() const;
    std::size_t size() const { return points.size(); }
};

// Measure supported on the real line (embedded on the x-axis, Euclidean metric).
DiscreteMeasure line_measure(const std::vector<double>& coords,
                             const std::vector<double>& weights, double resolution = 0.0);

struct RegularityParams {
    double kappa = 1.0;
    double c = 1.0;
};

// s-energy sum_{i != j} w_i w_j / d(p_i, p_j)^s. The diagonal is excluded;
// duplicate support points with positive weight and s > 0 raise the
// infinite-energy signal instead of returning +inf.
double energy(const DiscreteMeasure& mu, double s);

// Mass of the closed ball B(center, r).
double ball_mass(const DiscreteMeasure& mu, Point2 center, double r);
double ball_mass(const DiscreteMeasure& mu, double center, double r);

struct KappaDensity {
    double value = 0.0;
    // Tail ratios grow like an atom's: the finite-scale proxy is diverging and
    // `value` holds the finest-scale ratio.
    bool diverging = false;
};

// Finite-scale proxy for liminf_{r->0} nu(B(y,r))/r^kappa: min over the tail
// half of a strictly decreasing radius ladder, with a hard floor at 3x the
// measure's resolution scale.
KappaDensity kappa_density(const DiscreteMeasure& nu, Point2 y, double kappa,
                           const std::vector<double>& r_ladder);
KappaDensity kappa_density(const DiscreteMeasure& nu, double y, double kappa,
                           const std::vector<double>& r_ladder);

// {r0, r0*ratio, ..., r0*ratio^(rungs-1)}, ratio in (0,1).
std::vector<double> geometric_ladder(double r0, double ratio = 0.5, int rungs = 8);

}  // namespace marstrand
