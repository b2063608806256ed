#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "marstrand/geom_checks.hpp"
#include "marstrand/metric.hpp"
#include "marstrand/rng.hpp"

using namespace marstrand;

namespace {

DiscreteMeasure uniform_on_unit_grid(int n) {
    std::vector<double> coords(n), weights(n, 1.0 / n);
    for (int i = 0; i < n; ++i) coords[i] = static_cast<double>(i) / (n - 1);
    return line_measure(coords, weights, 1.0 / (n - 1));
}

}  // namespace

TEST_CASE("euclidean distance is the pythagorean norm") {
    MetricContext ctx = MetricContext::euclidean();
    CHECK(distance(ctx, {0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(distance(ctx, {1.5, -2}, {1.5, -2}) == 0.0);
}

TEST_CASE("poincare disk distance closed forms agree") {
    MetricContext ctx = MetricContext::poincare_disk();
    // d(0, x) = 2 artanh |x|
    CHECK(distance(ctx, {0, 0}, {0.5, 0}) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(distance(ctx, {0.3, -0.6}, {0.3, -0.6}) == 0.0);

    // arcosh form as an independent route
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Point2 a = rng.in_disk(0.9), b = rng.in_disk(0.9);
        double arg = 1.0 + 2.0 * norm_sq(a - b) / ((1.0 - norm_sq(a)) * (1.0 - norm_sq(b)));
        double via_acosh = std::acosh(arg);
        CHECK(distance(ctx, a, b) == doctest::Approx(via_acosh).epsilon(1e-11));
    }
}

TEST_CASE("distance rejects points outside the domain") {
    MetricContext disk = MetricContext::poincare_disk();
    CHECK_THROWS_AS(distance(disk, {0, 0}, {1.2, 0}), precondition_error);
    MetricContext conf = MetricContext::conformal_hadamard(
        ConformalMetricSpec::zero(Rect{-1, 1, -1, 1}));
    CHECK_THROWS_AS(distance(conf, {0, 0}, {2.0, 0}), precondition_error);
}

TEST_CASE("metric axioms hold on random triples") {
    CHECK(check_metric_axioms(MetricContext::euclidean(), 300, 11, 1e-9).passed);
    CHECK(check_metric_axioms(MetricContext::poincare_disk(), 300, 12, 1e-9).passed);
}

TEST_CASE("energy of two equal atoms at distance one") {
    DiscreteMeasure mu = line_measure({0.0, 1.0}, {0.5, 0.5});
    CHECK(energy(mu, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("energy at s = 0 is mass^2 minus sum of squared weights") {
    DiscreteMeasure mu = line_measure({0.0, 0.3, 0.9}, {0.2, 0.3, 0.5});
    double mass = 1.0, wsq = 0.04 + 0.09 + 0.25;
    CHECK(energy(mu, 0.0) == doctest::Approx(mass * mass - wsq).epsilon(1e-15));
}

TEST_CASE("energy of the equilateral triangle matches the brute-force pair sum") {
    DiscreteMeasure mu;
    mu.points = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
    mu.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    mu.context = MetricContext::euclidean();
    // oracle: direct double sum over ordered pairs
    double oracle = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            double d = norm(mu.points[i] - mu.points[j]);
            oracle += mu.weights[i] * mu.weights[j] / (d * d);
        }
    CHECK(oracle == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(energy(mu, 2.0) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("energy is monotone in s when the support has diameter <= 1") {
    Rng rng(21);
    DiscreteMeasure mu;
    for (int i = 0; i < 40; ++i) mu.points.push_back(rng.in_rect(0.0, 0.5, 0.0, 0.5));
    mu.weights.assign(40, 1.0 / 40);
    mu.context = MetricContext::euclidean();
    double prev = energy(mu, 0.0);
    for (double s : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        double cur = energy(mu, s);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("duplicate support points raise the infinite-energy signal") {
    DiscreteMeasure mu = line_measure({0.2, 0.2, 0.9}, {0.4, 0.4, 0.2});
    CHECK_THROWS_AS(energy(mu, 0.5), precondition_error);
    CHECK_NOTHROW(energy(mu, 0.0));  // no distances involved at s = 0
}

TEST_CASE("ball_mass basics") {
    DiscreteMeasure atom = line_measure({0.5}, {1.0});
    CHECK(ball_mass(atom, 0.5, 0.01) == doctest::Approx(1.0));
    CHECK(ball_mass(atom, 0.5, 100.0) == doctest::Approx(1.0));

    DiscreteMeasure mu = uniform_on_unit_grid(1000);
    double got = ball_mass(mu, 0.5, 0.25);
    // proportion oracle: direct count
    int cnt = 0;
    for (const auto& p : mu.points)
        if (std::abs(p.x - 0.5) <= 0.25) ++cnt;
    CHECK(got == doctest::Approx(static_cast<double>(cnt) / 1000).epsilon(1e-12));
    CHECK(std::abs(got - 0.5) <= 0.05);

    CHECK(ball_mass(mu, -5.0, 0.5) == 0.0);  // far from the support
}

TEST_CASE("ball_mass is monotone in r and saturates at total mass") {
    DiscreteMeasure mu = uniform_on_unit_grid(300);
    double prev = 0.0;
    for (double r : {0.01, 0.05, 0.2, 0.5, 2.0}) {
        double cur = ball_mass(mu, 0.3, r);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK(prev == doctest::Approx(mu.total_mass()).epsilon(1e-12));
}

TEST_CASE("kappa_density of the uniform line measure is the density 2") {
    DiscreteMeasure mu = uniform_on_unit_grid(10000);
    std::vector<double> ladder;
    for (int j = 0; j <= 4; ++j) ladder.push_back(0.2 * std::pow(2.0, -j));
    KappaDensity kd = kappa_density(mu, 0.5, 1.0, ladder);
    CHECK_FALSE(kd.diverging);
    CHECK(std::abs(kd.value - 2.0) <= 0.1);
}

TEST_CASE("kappa_density of an atom diverges and reports the finest scale") {
    DiscreteMeasure atom = line_measure({0.3}, {0.7});
    std::vector<double> ladder = geometric_ladder(0.1, 0.5, 8);
    KappaDensity kd = kappa_density(atom, 0.3, 1.0, ladder);
    CHECK(kd.diverging);
    CHECK(kd.value == doctest::Approx(0.7 / ladder.back()).epsilon(1e-12));
}

TEST_CASE("kappa_density far from the support is zero") {
    DiscreteMeasure atom = line_measure({0.0}, {1.0});
    KappaDensity kd = kappa_density(atom, 10.0, 1.0, geometric_ladder(0.1, 0.5, 6));
    CHECK(kd.value == 0.0);
    CHECK_FALSE(kd.diverging);
}

TEST_CASE("kappa_density enforces the resolution floor and ladder shape") {
    DiscreteMeasure mu = uniform_on_unit_grid(100);  // resolution ~ 1e-2
    CHECK_THROWS_AS(kappa_density(mu, 0.5, 1.0, geometric_ladder(0.1, 0.5, 8)),
                    precondition_error);  // descends to ~8e-4 < 3 * 1e-2
    CHECK_THROWS_AS(kappa_density(mu, 0.5, 1.0, std::vector<double>{0.1, 0.2}),
                    precondition_error);  // not decreasing
}

TEST_CASE("curvature of the catalog metrics") {
    auto flat = ConformalMetricSpec::zero(Rect{-2, 2, -2, 2});
    CHECK(curvature_at(flat, {0.3, -1.0}) == 0.0);

    auto poin = ConformalMetricSpec::poincare_factor();
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        Point2 q = rng.in_disk(0.9);
        CHECK(curvature_at(poin, q) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    // finite-difference Laplacian oracle at a generic point
    Point2 q{0.31, -0.22};
    double h = 1e-4;
    auto phi = [&](double x, double y) { return poin.phi({x, y}); };
    double lap = (phi(q.x + h, q.y) + phi(q.x - h, q.y) + phi(q.x, q.y + h) +
                  phi(q.x, q.y - h) - 4.0 * phi(q.x, q.y)) /
                 (h * h);
    CHECK(lap == doctest::Approx(poin.laplacian_phi(q)).epsilon(1e-5));

    // phi = (x^2 + y^2)/2: K = -2 e^{-(x^2+y^2)}
    auto poly = ConformalMetricSpec::polynomial({{2, 0, 0.5}, {0, 2, 0.5}}, Rect{-2, 2, -2, 2});
    CHECK(curvature_at(poly, {0, 0}) == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(curvature_at(poly, {0.5, 0.5}) ==
          doctest::Approx(-2.0 * std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("positively curved conformal specs are rejected") {
    // phi = -(x^2+y^2)/2 has laplacian -2 => K = +2 e^{...} > 0
    auto bad = ConformalMetricSpec::polynomial({{2, 0, -0.5}, {0, 2, -0.5}}, Rect{-1, 1, -1, 1});
    CHECK_THROWS_AS(MetricContext::conformal_hadamard(bad), precondition_error);
    CHECK_NOTHROW(MetricContext::conformal_hadamard(
        ConformalMetricSpec::polynomial({{2, 0, 0.5}, {0, 2, 0.5}}, Rect{-1, 1, -1, 1})));
}

TEST_CASE("poincare disk vs conformal backend with the poincare factor") {
    MetricContext disk = MetricContext::poincare_disk();
    MetricContext conf =
        MetricContext::conformal_hadamard(ConformalMetricSpec::poincare_factor());
    Rng rng(31);
    for (int i = 0; i < 25; ++i) {
        Point2 a = rng.in_disk(0.8), b = rng.in_disk(0.8);
        double dc = distance(disk, a, b);
        double dn = distance(conf, a, b);
        CHECK(std::abs(dc - dn) <= 1e-4 * std::max(1e-6, dc));
    }
}

TEST_CASE("conformal metric axioms at ODE tolerance") {
    MetricContext conf =
        MetricContext::conformal_hadamard(ConformalMetricSpec::poincare_factor());
    CHECK(check_metric_axioms(conf, 40, 13, 1e-5).passed);
}

TEST_CASE("measure validation") {
    DiscreteMeasure bad;
    bad.context = MetricContext::euclidean();
    CHECK_THROWS_AS(bad.validate(), precondition_error);
    bad.points = {{0, 0}};
    bad.weights = {-1.0};
    CHECK_THROWS_AS(bad.validate(), precondition_error);
    bad.weights = {0.0};
    CHECK_THROWS_AS(bad.validate(), precondition_error);  // zero total mass
}
