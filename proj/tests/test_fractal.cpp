#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "marstrand/fractal.hpp"
#include "marstrand/metric.hpp"

using namespace marstrand;

namespace {

std::vector<double> sorted_xs(const PointCloud& cloud) {
    std::vector<double> xs;
    for (const auto& p : cloud.points) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    return xs;
}

// One-sided Hausdorff distance max_a min_b |a - b|.
double hausdorff(const PointCloud& a, const PointCloud& b) {
    double worst = 0.0;
    for (const auto& p : a.points) {
        double best = 1e300;
        for (const auto& q : b.points) best = std::min(best, norm(p - q));
        worst = std::max(worst, best);
    }
    for (const auto& q : b.points) {
        double best = 1e300;
        for (const auto& p : a.points) best = std::min(best, norm(p - q));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("moran dimension closed forms") {
    CHECK(moran_dimension(cantor_ifs()) ==
          doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    CHECK(moran_dimension(four_corner_ifs(0.25)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(moran_dimension(cantor_ifs(0.5, 2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("moran dimension is strictly decreasing in the ratio") {
    double prev = 10.0;
    for (double rho : {0.45, 0.4, 0.3, 0.2, 0.1}) {
        double d = moran_dimension(cantor_ifs(rho, 2));
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("generate: depth 1 gives one point per map") {
    PointCloud c = generate(four_corner_ifs(0.25), 1);
    CHECK(c.points.size() == 4);
}

TEST_CASE("generate: middle-thirds depth 2 is the hand-expanded word set") {
    PointCloud c = generate(cantor_ifs(), 2);
    // f0 f0 (0) = 0, f0 f1 (0) = 2/9, f1 f0 (0) = 2/3, f1 f1 (0) = 8/9
    std::vector<double> expect{0.0, 2.0 / 9.0, 2.0 / 3.0, 8.0 / 9.0};
    std::vector<double> got = sorted_xs(c);
    REQUIRE(got.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-14));
    for (const auto& p : c.points) CHECK(p.y == 0.0);
}

TEST_CASE("generate: four-corner depth 5 count and resolution bookkeeping") {
    PointCloud c = generate(four_corner_ifs(0.25), 5);
    CHECK(c.points.size() == 1024);
    CHECK(c.resolution ==
          doctest::Approx(cloud_diameter(c) * std::pow(0.25, 5)).epsilon(1e-12));
}

TEST_CASE("generate: point budget enforced") {
    CHECK_THROWS_AS(generate(four_corner_ifs(0.25), 13), precondition_error);  // 4^13 > 1e7
}

TEST_CASE("generate: depth d+1 contains the image of depth d under every map") {
    SimilarityIFS ifs = cantor_ifs();
    PointCloud cd = generate(ifs, 4);
    PointCloud cd1 = generate(ifs, 5);
    std::vector<double> next = sorted_xs(cd1);
    for (const auto& m : ifs.maps) {
        for (const auto& q : cd.points) {
            double img = m.scale * q.x + m.translation.x;
            auto it = std::lower_bound(next.begin(), next.end(), img - 1e-12);
            REQUIRE(it != next.end());
            CHECK(std::abs(*it - img) <= 1e-12);
        }
    }
}

TEST_CASE("generate: depth-d cloud is within resolution(d) of depth d+2") {
    SimilarityIFS ifs = cantor_ifs();
    PointCloud a = generate(ifs, 4);
    PointCloud b = generate(ifs, 6);
    CHECK(hausdorff(a, b) <= a.resolution);
}

TEST_CASE("product_cloud shapes") {
    PointCloud c6 = generate(cantor_ifs(), 6);
    PointCloud axis = product_cloud(c6, singleton_cloud());
    CHECK(axis.points.size() == 64);
    for (const auto& p : axis.points) CHECK(p.y == 0.0);

    PointCloud c5 = generate(cantor_ifs(), 5);
    PointCloud sq = product_cloud(c5, c5);
    CHECK(sq.points.size() == 1024);

    PointCloud one = product_cloud(singleton_cloud(), singleton_cloud());
    CHECK(one.points.size() == 1);
}

TEST_CASE("product_cloud rejects non-line inputs and oversized products") {
    PointCloud plane = generate(four_corner_ifs(0.25), 2);
    CHECK_THROWS_AS(product_cloud(plane, singleton_cloud()), precondition_error);
    PointCloud big = segment_cloud(4000);
    CHECK_THROWS_AS(product_cloud(big, big), precondition_error);  // 1.6e7 > 1e7
}

TEST_CASE("uniform_measure: equal weights, unit mass") {
    PointCloud c = generate(cantor_ifs(), 2);
    DiscreteMeasure mu = uniform_measure(c);
    for (double w : mu.weights) CHECK(w == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mu.resolution == c.resolution);
}

TEST_CASE("energy of the cantor measure follows the self-similar tail model") {
    // The diagonal-excluded sum at depth d misses the within-cell tail: with
    // q = 2 (1/2)^2 3^s = 3^s / 2, I_d = I_inf (1 - q^d). At s = 0.5 the
    // depth-8 vs depth-10 gap is therefore ~10.4%, not smaller.
    double e8 = energy(uniform_measure(generate(cantor_ifs(), 8)), 0.5);
    double e10 = energy(uniform_measure(generate(cantor_ifs(), 10)), 0.5);
    double q = std::sqrt(3.0) / 2.0;
    double predicted_ratio = (1.0 - std::pow(q, 8)) / (1.0 - std::pow(q, 10));
    CHECK(std::isfinite(e8));
    CHECK(std::isfinite(e10));
    CHECK(e8 / e10 == doctest::Approx(predicted_ratio).epsilon(0.01));
    CHECK(std::abs(e8 - e10) / e10 <= 0.13);
}

TEST_CASE("shrink_to_disk recenters and rescales") {
    PointCloud c = generate(cantor_ifs(), 6);
    PointCloud s = shrink_to_disk(c, 0.4);
    double rmax = 0.0;
    for (const auto& p : s.points) rmax = std::max(rmax, norm(p));
    CHECK(rmax == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(s.resolution < c.resolution);
}

TEST_CASE("catalog validation") {
    CHECK_THROWS_AS(cantor_ifs(0.6, 2), precondition_error);
    CHECK_THROWS_AS(cantor_ifs(1.0 / 3.0, 1), precondition_error);
    CHECK_THROWS_AS(four_corner_ifs(0.7), precondition_error);
    SimilarityIFS bad;
    bad.maps = {{1.2, 0.0, {0, 0}}, {0.5, 0.0, {1, 0}}};
    CHECK_THROWS_AS(bad.validate(), precondition_error);
}
