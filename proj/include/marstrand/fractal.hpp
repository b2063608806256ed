#pragma once

#include <string>
#include <vector>

#include "marstrand/metric.hpp"
#include "marstrand/types.hpp"

namespace marstrand {

// Orientation-preserving planar similarity x -> scale * R(rotation) x + translation.
struct SimilarityMap {
    double scale = 0.5;
    double rotation = 0.0;
    Point2 translation;
};

struct SimilarityIFS {
    std::vector<SimilarityMap> maps;
    std::string name;

    void validate() const;  // >= 2 maps, every scale in (0,1)
};

struct PointCloud {
    std::vector<Point2> points;
    // Covering scale: the true attractor is within `resolution` of the cloud.
    double resolution = 0.0;
    std::string provenance;

    std::size_t size() const { return points.size(); }
};

// Bounding-box diagonal; stands in for the diameter throughout.
double cloud_diameter(const PointCloud& cloud);

// Unique s solving sum_i scale_i^s = 1 (bisection to 1e-12).
double moran_dimension(const SimilarityIFS& ifs);

// Deterministic depth-d image set {f_{i1} o ... o f_{id}(x0)} over all index
// words in lexicographic order, x0 the fixed point of the first map.
PointCloud generate(const SimilarityIFS& ifs, int depth);

// Cartesian product of two line-supported clouds, embedded in the plane.
PointCloud product_cloud(const PointCloud& a, const PointCloud& b);

DiscreteMeasure uniform_measure(const PointCloud& cloud);

// Catalog (open set condition holds by construction):
SimilarityIFS cantor_ifs(double ratio = 1.0 / 3.0, int maps = 2);
SimilarityIFS four_corner_ifs(double ratio = 0.25);

PointCloud segment_cloud(int n_points);       // evenly spaced on [0,1] x {0}
PointCloud singleton_cloud(double x = 0.0);   // one point on the axis

// Recenter on the bounding-box midpoint and rescale so the cloud fits in the
// Euclidean disk of the given radius; resolution is rescaled accordingly.
PointCloud shrink_to_disk(const PointCloud& cloud, double euclid_radius);

inline constexpr std::size_t kMaxCloudPoints = 10'000'000;

}  // namespace marstrand
