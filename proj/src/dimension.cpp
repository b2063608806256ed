#include "marstrand/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "marstrand/numerics.hpp"
#include "marstrand/rng.hpp"

namespace marstrand {

namespace {

// Dyadic ladder inside [window.min, window.max], descending from the top.
std::vector<double> dyadic_scales(ScaleWindow window) {
    if (!(window.min_scale > 0.0) || !(window.max_scale >= window.min_scale))
        throw precondition_error("scale window: need 0 < min <= max");
    std::vector<double> scales;
    for (double e = window.max_scale; e >= window.min_scale * (1.0 - 1e-12); e *= 0.5)
        scales.push_back(e);
    if (scales.size() < 4)
        throw precondition_error("degenerate fit: fewer than 4 scales in the window");
    std::reverse(scales.begin(), scales.end());  // ascending
    return scales;
}

void check_window(ScaleWindow window, double resolution, double diameter) {
    if (resolution > 0.0 && window.min_scale < 3.0 * resolution * (1.0 - 1e-12))
        throw precondition_error("scale window: lower edge below 3x resolution floor");
    if (diameter > 0.0 && window.max_scale > 0.5 * diameter * (1.0 + 1e-12))
        throw precondition_error("scale window: upper edge above half the diameter");
}

double count_boxes(const std::vector<Point2>& pts, double eps, Point2 offset) {
    std::vector<uint64_t> keys;
    keys.reserve(pts.size());
    for (const auto& p : pts) {
        auto ix = static_cast<int64_t>(std::floor((p.x - offset.x) / eps));
        auto iy = static_cast<int64_t>(std::floor((p.y - offset.y) / eps));
        keys.push_back((static_cast<uint64_t>(ix + 0x40000000LL) << 32) ^
                       static_cast<uint64_t>(static_cast<uint32_t>(iy + 0x40000000LL)));
    }
    std::sort(keys.begin(), keys.end());
    return static_cast<double>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

DimensionEstimate fit_counts(std::vector<std::pair<double, double>> counts, ScaleWindow window,
                             DimensionMethod method, bool invert_scale) {
    std::vector<double> xs, ys;
    for (const auto& [scale, count] : counts) {
        if (count <= 0.0) continue;
        xs.push_back(invert_scale ? std::log(1.0 / scale) : std::log(scale));
        ys.push_back(std::log(count));
    }
    DimensionEstimate out;
    out.window = window;
    out.method = method;
    out.counts = std::move(counts);
    if (xs.empty()) {
        out.value = 0.0;  // empty correlation sums: no mass below any scale
        out.r_squared = 1.0;
        return out;
    }
    if (xs.size() < 4) throw precondition_error("degenerate fit: fewer than 4 usable scales");
    LineFit fit = fit_line(xs, ys);
    out.value = std::max(0.0, fit.slope);
    out.r_squared = fit.r_squared;
    return out;
}

}  // namespace

ScaleWindow default_window(const PointCloud& cloud) {
    double diam = cloud_diameter(cloud);
    return {3.0 * cloud.resolution, diam / 4.0};
}

DimensionEstimate box_dimension(const PointCloud& cloud, ScaleWindow window,
                                uint64_t offset_seed) {
    if (cloud.points.size() <= 1) {
        DimensionEstimate out;
        out.window = window;
        out.method = DimensionMethod::BoxCount;
        return out;  // a point has dimension 0
    }
    double diam = cloud_diameter(cloud);
    check_window(window, cloud.resolution, diam);
    std::vector<double> scales = dyadic_scales(window);

    const int kOffsets = 8;
    Rng rng(offset_seed);
    std::vector<Point2> offsets;
    offsets.reserve(kOffsets);
    for (int i = 0; i < kOffsets; ++i) offsets.push_back({rng.u01(), rng.u01()});

    std::vector<std::pair<double, double>> counts;
    counts.reserve(scales.size());
    for (double eps : scales) {
        double acc = 0.0;
        for (const auto& o : offsets) acc += count_boxes(cloud.points, eps, eps * o);
        counts.emplace_back(eps, acc / kOffsets);
    }
    return fit_counts(std::move(counts), window, DimensionMethod::BoxCount, true);
}

DimensionEstimate correlation_dimension(const DiscreteMeasure& mu, ScaleWindow window) {
    mu.validate();
    if (mu.size() <= 1) {
        DimensionEstimate out;
        out.window = window;
        out.method = DimensionMethod::Correlation;
        return out;
    }
    PointCloud support;
    support.points = mu.points;
    double diam = cloud_diameter(support);
    check_window(window, mu.resolution, diam);
    std::vector<double> scales = dyadic_scales(window);

    // One pass over pairs: bucket each distance into the smallest radius that
    // contains it, then accumulate ascending.
    std::vector<double> buckets(scales.size() + 1, 0.0);
    const std::size_t n = mu.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = distance(mu.context, mu.points[i], mu.points[j]);
            auto it = std::lower_bound(scales.begin(), scales.end(), d);
            buckets[static_cast<std::size_t>(it - scales.begin())] +=
                2.0 * mu.weights[i] * mu.weights[j];
        }
    }
    std::vector<std::pair<double, double>> counts;
    counts.reserve(scales.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < scales.size(); ++k) {
        acc += buckets[k];
        counts.emplace_back(scales[k], acc);
    }
    return fit_counts(std::move(counts), window, DimensionMethod::Correlation, false);
}

double projected_length(std::vector<double> line_points, double eps, double resolution) {
    if (line_points.empty()) throw precondition_error("projected_length: empty point set");
    if (!(eps > 0.0)) throw precondition_error("projected_length: eps must be positive");
    if (resolution > 0.0 && eps < resolution * (1.0 - 1e-12))
        throw precondition_error("projected_length: eps below the resolution floor");
    std::sort(line_points.begin(), line_points.end());
    double total = 0.0;
    double lo = line_points[0] - 0.5 * eps, hi = line_points[0] + 0.5 * eps;
    for (std::size_t i = 1; i < line_points.size(); ++i) {
        double a = line_points[i] - 0.5 * eps, b = line_points[i] + 0.5 * eps;
        if (a > hi) {
            total += hi - lo;
            lo = a;
        }
        hi = b;
    }
    total += hi - lo;
    return total;
}

}  // namespace marstrand
