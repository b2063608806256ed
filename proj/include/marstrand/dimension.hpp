#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "marstrand/fractal.hpp"
#include "marstrand/metric.hpp"

namespace marstrand {

enum class DimensionMethod { BoxCount, Correlation };

struct ScaleWindow {
    double min_scale = 0.0;
    double max_scale = 0.0;
};

struct DimensionEstimate {
    double value = 0.0;
    double r_squared = 1.0;
    ScaleWindow window;
    DimensionMethod method = DimensionMethod::BoxCount;
    // (scale, count) pairs sorted by scale: N(eps) for box counts, C(r) for
    // correlation sums.
    std::vector<std::pair<double, double>> counts;
};

// [3 * resolution, diameter / 4]: below 3x resolution discreteness flattens
// the curve, above diam/4 counts saturate.
ScaleWindow default_window(const PointCloud& cloud);

inline constexpr uint64_t kBoxOffsetSeed = 0xB0C5EED5u;

// Least-squares slope of log N(eps) vs log(1/eps) over a dyadic scale ladder
// inside the window, with occupied-box counts averaged over 8 random grid
// offsets (fixed seed) to suppress grid-phase artifacts.
DimensionEstimate box_dimension(const PointCloud& cloud, ScaleWindow window,
                                uint64_t offset_seed = kBoxOffsetSeed);

// Slope of log C(r) vs log r, C(r) = sum_{i != j} w_i w_j [d(p_i,p_j) <= r].
DimensionEstimate correlation_dimension(const DiscreteMeasure& mu, ScaleWindow window);

// Lebesgue measure of the union of intervals [p - eps/2, p + eps/2].
// `resolution` > 0 enforces the eps >= resolution floor.
double projected_length(std::vector<double> line_points, double eps, double resolution = 0.0);

}  // namespace marstrand
