#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "marstrand/geom_checks.hpp"
#include "marstrand/projection.hpp"
#include "marstrand/rng.hpp"

using namespace marstrand;

namespace {
const ProjectionFamily kEuclid = ProjectionFamily::euclidean_angle();
const ProjectionFamily kHyp = ProjectionFamily::hyperbolic_geodesic();
}  // namespace

TEST_CASE("euclidean projection worked examples") {
    CHECK(project(kEuclid, 0.0, {3, 4}) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(project(kEuclid, kPi / 2, {3, 4}) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(project(kEuclid, 4.0, {1, 0}), precondition_error);  // lambda >= pi
}

TEST_CASE("hyperbolic projection matches the quadratic-root foot") {
    CHECK(project(kHyp, 0.0, {0.3, 0.4}) == doctest::Approx(0.5229842776).epsilon(1e-9));
}

TEST_CASE("euclidean projected gaps follow the cosine law") {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        Point2 a = rng.in_rect(-2, 2, -2, 2), b = rng.in_rect(-2, 2, -2, 2);
        if (norm(a - b) < 1e-9) continue;
        double lambda = rng.uniform(0.0, kPi * (1 - 1e-12));
        double dir = std::atan2(a.y - b.y, a.x - b.x);
        double gap = std::abs(project(kEuclid, lambda, a) - project(kEuclid, lambda, b));
        CHECK(gap == doctest::Approx(std::abs(std::cos(lambda - dir)) * norm(a - b))
                         .epsilon(1e-11));
    }
}

TEST_CASE("l_lambda and l_lambda+pi share a trace (distances agree)") {
    CHECK(check_same_geodesic_identity(MetricContext::poincare_disk(), 300, 5).passed);
    CHECK(check_same_geodesic_identity(MetricContext::euclidean(), 300, 6).passed);
}

TEST_CASE("theta_lambda piecewise branches") {
    CHECK(theta_lambda(kPi / 4, kPi / 2) == doctest::Approx(kPi / 4 + kPi));   // case 1, below
    CHECK(theta_lambda(3 * kPi / 4, kPi / 2) == doctest::Approx(3 * kPi / 4)); // case 1, above
    CHECK(theta_lambda(kPi / 4, 3 * kPi / 2) == doctest::Approx(kPi / 4));     // case 2, below
    CHECK(theta_lambda(3 * kPi / 4, 3 * kPi / 2) ==
          doctest::Approx(3 * kPi / 4 + kPi));                                 // case 2, above
    CHECK_THROWS_AS(theta_lambda(-0.1, 1.0), precondition_error);
    CHECK_THROWS_AS(theta_lambda(0.5, 7.0), precondition_error);
}

TEST_CASE("theta_lambda lands in [theta_uv, theta_uv + pi] mod 2pi") {
    Rng rng(8);
    for (int i = 0; i < 500; ++i) {
        double lambda = rng.uniform(0.0, kPi);
        double theta = rng.uniform(0.0, kTwoPi * (1 - 1e-12));
        double got = theta_lambda(lambda, theta);
        double rel = wrap_angle(got - theta);  // in [0, 2pi)
        CHECK(rel <= kPi + 1e-12);
    }
}

TEST_CASE("claim identity: reflected parameter preserves projected distances") {
    CHECK(check_claim_identity(MetricContext::poincare_disk(), 300, 9).passed);
    CHECK(check_claim_identity(MetricContext::euclidean(), 300, 10).passed);
}

TEST_CASE("both families are 1-Lipschitz") {
    CHECK(check_lipschitz(kEuclid, 400, 11).passed);
    CHECK(check_lipschitz(kHyp, 400, 12).passed);
}

TEST_CASE("pushforward preserves mass and maps atoms") {
    DiscreteMeasure mu;
    mu.points = {{0, 0}, {1, 0}};
    mu.weights = {0.5, 0.5};
    mu.context = MetricContext::euclidean();
    DiscreteMeasure nu = pushforward(mu, kEuclid, 0.0);
    REQUIRE(nu.size() == 2);
    CHECK(nu.points[0].x == doctest::Approx(0.0));
    CHECK(nu.points[1].x == doctest::Approx(1.0));
    CHECK(nu.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pushforward merges exact coordinate collisions") {
    DiscreteMeasure mu;
    mu.points = {{0.25, -0.3}, {0.25, 0.8}, {0.5, 0.1}};
    mu.weights = {0.25, 0.25, 0.5};
    mu.context = MetricContext::euclidean();
    // lambda = 0 projects onto x: the first two atoms collide exactly
    DiscreteMeasure nu = pushforward(mu, kEuclid, 0.0);
    REQUIRE(nu.size() == 2);
    CHECK(nu.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(nu.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pushforward energy matches the brute-force double sum") {
    Rng rng(17);
    DiscreteMeasure mu;
    for (int i = 0; i < 30; ++i) mu.points.push_back(rng.in_disk(0.7));
    mu.weights.assign(30, 1.0 / 30);
    mu.context = MetricContext::euclidean();
    double lambda = 0.37;
    double t = 0.6;
    DiscreteMeasure nu = pushforward(mu, kEuclid, lambda);
    // brute-force oracle over the source atoms
    double oracle = 0.0;
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j) {
            if (i == j) continue;
            double gap = std::abs(project(kEuclid, lambda, mu.points[i]) -
                                  project(kEuclid, lambda, mu.points[j]));
            oracle += mu.weights[i] * mu.weights[j] * std::pow(gap, -t);
        }
    CHECK(energy(nu, t) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("pushforward rejects context mismatches") {
    DiscreteMeasure mu;
    mu.points = {{0.1, 0.2}, {0.3, -0.2}};
    mu.weights = {0.5, 0.5};
    mu.context = MetricContext::euclidean();
    CHECK_THROWS_AS(pushforward(mu, kHyp, 0.3), precondition_error);
    mu.context = MetricContext::poincare_disk();
    CHECK_NOTHROW(pushforward(mu, kHyp, 0.3));
}

TEST_CASE("hyperbolic family requires a curved context") {
    CHECK_THROWS_AS(ProjectionFamily::hyperbolic_geodesic(MetricContext::euclidean()),
                    precondition_error);
}
