#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "marstrand/geom_checks.hpp"
#include "marstrand/hadamard.hpp"
#include "marstrand/numerics.hpp"
#include "marstrand/rng.hpp"

using namespace marstrand;

namespace {
const MetricContext kDisk = MetricContext::poincare_disk();
const MetricContext kEuclid = MetricContext::euclidean();

MetricContext conformal_poincare() {
    return MetricContext::conformal_hadamard(ConformalMetricSpec::poincare_factor());
}
}  // namespace

TEST_CASE("exp_map closed forms") {
    CHECK(norm(exp_map(kEuclid, {1, 1}, {2, 0}) - Point2{3, 1}) < 1e-15);
    CHECK(norm(exp_map(kDisk, {0.2, -0.1}, {0, 0}) - Point2{0.2, -0.1}) < 1e-15);
    // d(0, x) = 2 artanh |x| inverts to tanh(|v|/2)
    Point2 got = exp_map(kDisk, {0, 0}, {std::log(3.0), 0});
    CHECK(got.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(got.y == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("exp_map from a general disk point preserves arclength and direction") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Point2 base = rng.in_disk(0.7);
        Point2 v = rng.in_disk(1.2);
        if (norm(v) < 1e-6) continue;
        Point2 q = exp_map(kDisk, base, v);
        CHECK(distance(kDisk, base, q) == doctest::Approx(norm(v)).epsilon(1e-11));
        Point2 back = log_map(kDisk, base, q);
        CHECK(norm(back - v) < 1e-9);
    }
}

TEST_CASE("log_map inverts exp_map on every backend") {
    Rng rng(17);
    for (int i = 0; i < 60; ++i) {
        Point2 a = rng.in_disk(0.6), b = rng.in_disk(0.6);
        if (norm(a - b) < 1e-6) continue;
        CHECK(norm(exp_map(kDisk, a, log_map(kDisk, a, b)) - b) < 1e-11);
        CHECK(norm(exp_map(kEuclid, a, log_map(kEuclid, a, b)) - b) < 1e-12);
    }
}

TEST_CASE("project_param is the identity on geodesic points") {
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        ParamGeodesic geo{{0, 0}, rng.uniform(0.0, kTwoPi), kDisk};
        double s0 = rng.uniform(-2.0, 2.0);
        CHECK(project_param(geo, geodesic_point(geo, s0)) ==
              doctest::Approx(s0).epsilon(1e-10));
    }
}

TEST_CASE("project_param disk worked examples") {
    ParamGeodesic real_axis{{0, 0}, 0.0, kDisk};
    // symmetry forces the foot to the origin
    CHECK(project_param(real_axis, {0.0, 0.5}) == doctest::Approx(0.0).epsilon(1e-14));
    // quadratic foot for z = (0.3, 0.4): the inside root of
    // 0.3 t^2 - 1.25 t + 0.3 = 0, s = 2 artanh t; frozen from the
    // golden-section oracle.
    CHECK(project_param(real_axis, {0.3, 0.4}) ==
          doctest::Approx(0.5229842776).epsilon(1e-9));
}

TEST_CASE("project_param closed form matches the golden-section oracle") {
    CheckResult r = check_projection_oracle(400, 1234, 1e-8);
    CHECK(r.passed);
    CHECK(r.failures == 0);
}

TEST_CASE("angle_at basics") {
    CHECK(angle_at(kEuclid, {0, 0}, {1, 0}, {0, 1}) == doctest::Approx(kPi / 2));
    CHECK(angle_at(kEuclid, {0.5, 0}, {1, 0}, {-1, 0}) == doctest::Approx(kPi));
    // angles at the disk origin are Euclidean (conformal model)
    CHECK(angle_at(kDisk, {0, 0}, {0.5, 0}, {0, 0.9}) == doctest::Approx(kPi / 2));
    CHECK_THROWS_AS(angle_at(kEuclid, {0, 0}, {0, 0}, {1, 0}), precondition_error);
}

TEST_CASE("frame: orthogonal-through-base diameter case picks theta by orientation") {
    GeodesicFrame fr = frame(kDisk, {0.3, 0.0}, {0.6, 0.0}, {0, 0});
    CHECK(fr.theta == doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-12));
    CHECK(norm(fr.foot) < 1e-14);
    CHECK(fr.s_param == 0.0);
    // t_param: foot (origin) is behind u when walking toward v
    CHECK(fr.t_param == doctest::Approx(-distance(kDisk, {0.3, 0.0}, {0, 0})).epsilon(1e-12));
}

TEST_CASE("frame: symmetric pairs give theta in {0, pi}") {
    Rng rng(41);
    for (int i = 0; i < 50; ++i) {
        double x = rng.uniform(0.1, 0.7), y = rng.uniform(0.05, 0.5);
        if (x * x + y * y >= 0.8) continue;
        GeodesicFrame fr = frame(kDisk, {x, y}, {x, -y}, {0, 0});
        double d0 = std::min(std::abs(fr.theta), std::abs(fr.theta - kPi));
        CHECK(d0 < 1e-9);
        CHECK(std::abs(fr.foot.y) < 1e-12);  // foot on the real axis
    }
}

TEST_CASE("frame invariants on random pairs (disk and euclidean)") {
    CHECK(check_frame_invariants(kDisk, 300, 2024).passed);
    CHECK(check_frame_invariants(kEuclid, 300, 2025).passed);
}

TEST_CASE("projection property suites on the closed-form backends") {
    for (const MetricContext& ctx : {kDisk, kEuclid}) {
        CHECK(check_projection_minimality(ctx, 150, 200, 7).passed);
        CHECK(check_projection_segment_invariance(ctx, 150, 8).passed);
        CHECK(check_projection_obtuse_angle(ctx, 150, 9).passed);
    }
}

TEST_CASE("sine inequality and law of cosines on closed-form backends") {
    CHECK(check_sine_inequality(kDisk, 2000, 55, 1e-7).passed);
    CHECK(check_sine_inequality(kEuclid, 2000, 56, 1e-7).passed);
    CHECK(check_law_of_cosines(kDisk, 2000, 57, 1e-7).passed);
    CHECK(check_law_of_cosines(kEuclid, 2000, 58, 1e-7).passed);
}

TEST_CASE("ODE backend: small law-of-cosines and sine-inequality corpora") {
    MetricContext conf = conformal_poincare();
    CHECK(check_sine_inequality(conf, 60, 60, 1e-7).passed);
    CHECK(check_law_of_cosines(conf, 60, 61, 1e-4).passed);
}

TEST_CASE("ODE backend agrees with the closed Poincare forms") {
    BackendAgreement agree = check_backend_agreement(30, 77);
    CHECK(agree.distance.passed);
    CHECK(agree.exp.passed);
    CHECK(agree.projection.passed);
}

TEST_CASE("ODE backend: projection suites on a small corpus") {
    MetricContext conf = conformal_poincare();
    CHECK(check_projection_minimality(conf, 10, 30, 91).passed);
    CHECK(check_projection_segment_invariance(conf, 10, 92, 1e-6).passed);
}

TEST_CASE("calibrate_bilipschitz: euclidean exp is an isometry") {
    GeometryCalibration cal = calibrate_bilipschitz(kEuclid, {0, 0}, 1.0, 200, 5);
    CHECK(std::abs(cal.k_hat - 1.0) <= 1e-9);
}

TEST_CASE("calibrate_bilipschitz: disk distortion within the comparison bound") {
    GeometryCalibration cal = calibrate_bilipschitz(kDisk, {0, 0}, 1.0, 400, 6);
    CHECK(cal.k_hat >= 1.0 - 1e-9);
    CHECK(cal.k_hat <= std::sinh(1.0) + 0.05);  // sinh(R)/R bounds the ball distortion
    GeometryCalibration cal2 = calibrate_bilipschitz(kDisk, {0, 0}, 2.0, 400, 6);
    CHECK(cal2.k_hat >= cal.k_hat);  // same seed, scaled samples
}

TEST_CASE("frame requires distinct points and an origin base on the disk") {
    CHECK_THROWS_AS(frame(kDisk, {0.1, 0.1}, {0.1, 0.1}, {0, 0}), precondition_error);
    CHECK_THROWS_AS(frame(kDisk, {0.1, 0.1}, {0.2, 0.2}, {0.3, 0}), precondition_error);
}

TEST_CASE("geodesic_point on the conformal backend tracks the disk closed form") {
    MetricContext conf = conformal_poincare();
    ParamGeodesic g_disk{{0, 0}, 0.7, kDisk};
    ParamGeodesic g_conf{{0, 0}, 0.7, conf};
    for (double s : {-1.5, -0.3, 0.4, 1.1, 2.0}) {
        CHECK(norm(geodesic_point(g_disk, s) - geodesic_point(g_conf, s)) < 1e-6);
    }
}
