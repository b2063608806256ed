#include "marstrand/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace marstrand {

void SimilarityIFS::validate() const {
    if (maps.size() < 2) throw precondition_error("IFS: need at least 2 maps");
    for (const auto& m : maps) {
        if (!(m.scale > 0.0 && m.scale < 1.0))
            throw precondition_error("IFS: every contraction ratio must lie in (0,1)");
        if (!std::isfinite(m.rotation) || !is_finite(m.translation))
            throw precondition_error("IFS: non-finite map parameters");
    }
}

namespace {

Point2 apply_map(const SimilarityMap& m, Point2 p) {
    return m.scale * rotated(p, m.rotation) + m.translation;
}

// Fixed point of x -> s R x + t: solve (I - s R) x = t.
Point2 fixed_point(const SimilarityMap& m) {
    double c = m.scale * std::cos(m.rotation), s = m.scale * std::sin(m.rotation);
    double a11 = 1.0 - c, a12 = s, a21 = -s, a22 = 1.0 - c;
    double det = a11 * a22 - a12 * a21;
    return {(a22 * m.translation.x - a12 * m.translation.y) / det,
            (-a21 * m.translation.x + a11 * m.translation.y) / det};
}

struct BBox {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    void add(Point2 p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    double diagonal() const {
        if (xmax < xmin) return 0.0;
        return std::hypot(xmax - xmin, ymax - ymin);
    }
    Point2 center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
};

BBox bbox_of(const std::vector<Point2>& pts) {
    BBox b;
    for (const auto& p : pts) b.add(p);
    return b;
}

void check_distinct(std::vector<Point2> pts, const char* what) {
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (std::abs(pts[i].x - pts[i - 1].x) <= 1e-12 &&
            std::abs(pts[i].y - pts[i - 1].y) <= 1e-12)
            throw precondition_error(std::string(what) + ": points not distinct within 1e-12");
    }
}

}  // namespace

double cloud_diameter(const PointCloud& cloud) { return bbox_of(cloud.points).diagonal(); }

double moran_dimension(const SimilarityIFS& ifs) {
    ifs.validate();
    auto value = [&](double s) {
        double acc = 0.0;
        for (const auto& m : ifs.maps) acc += std::pow(m.scale, s);
        return acc;
    };
    // value is strictly decreasing with value(0) = #maps >= 2 > 1.
    double hi = 1.0;
    while (value(hi) > 1.0) {
        hi *= 2.0;
        if (hi > 1e6) throw solver_error("moran_dimension: bracket expansion failed");
    }
    double lo = 0.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-13; ++i) {
        double mid = 0.5 * (lo + hi);
        if (value(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

PointCloud generate(const SimilarityIFS& ifs, int depth) {
    ifs.validate();
    if (depth < 1) throw precondition_error("generate: depth must be >= 1");
    const std::size_t m = ifs.maps.size();
    double budget = std::pow(static_cast<double>(m), depth);
    if (budget > static_cast<double>(kMaxCloudPoints))
        throw precondition_error("generate: point budget exceeded (maps^depth > 1e7)");

    std::vector<Point2> level{fixed_point(ifs.maps[0])};
    for (int d = 0; d < depth; ++d) {
        std::vector<Point2> next;
        next.reserve(level.size() * m);
        // Outer loop over maps keeps index words in lexicographic order.
        for (std::size_t j = 0; j < m; ++j)
            for (const auto& q : level) next.push_back(apply_map(ifs.maps[j], q));
        level.swap(next);
    }
    check_distinct(level, "generate");

    double rho_max = 0.0;
    for (const auto& mp : ifs.maps) rho_max = std::max(rho_max, mp.scale);
    PointCloud out;
    out.points = std::move(level);
    out.resolution = bbox_of(out.points).diagonal() * std::pow(rho_max, depth);
    if (out.resolution <= 0.0) out.resolution = 1e-15;
    out.provenance = ifs.name + ",depth=" + std::to_string(depth);
    return out;
}

PointCloud product_cloud(const PointCloud& a, const PointCloud& b) {
    if (a.points.empty() || b.points.empty())
        throw precondition_error("product_cloud: empty factor");
    for (const auto& p : a.points)
        if (std::abs(p.y) > 1e-12)
            throw precondition_error("product_cloud: first factor is not line-supported");
    for (const auto& p : b.points)
        if (std::abs(p.y) > 1e-12)
            throw precondition_error("product_cloud: second factor is not line-supported");
    if (a.points.size() * b.points.size() > kMaxCloudPoints)
        throw precondition_error("product_cloud: point budget exceeded");
    PointCloud out;
    out.points.reserve(a.points.size() * b.points.size());
    for (const auto& p : a.points)
        for (const auto& q : b.points) out.points.push_back({p.x, q.x});
    out.resolution = std::max(a.resolution, b.resolution);
    out.provenance = "product(" + a.provenance + ";" + b.provenance + ")";
    return out;
}

DiscreteMeasure uniform_measure(const PointCloud& cloud) {
    if (cloud.points.empty()) throw precondition_error("uniform_measure: empty cloud");
    DiscreteMeasure mu;
    mu.points = cloud.points;
    mu.weights.assign(cloud.points.size(), 1.0 / cloud.points.size());
    mu.context = MetricContext::euclidean();
    mu.resolution = cloud.resolution;
    return mu;
}

SimilarityIFS cantor_ifs(double ratio, int maps) {
    if (maps < 2) throw precondition_error("cantor_ifs: need >= 2 maps");
    if (!(ratio > 0.0 && ratio <= 1.0 / maps))
        throw precondition_error("cantor_ifs: ratio must lie in (0, 1/maps] for separation");
    SimilarityIFS ifs;
    ifs.name = "cantor(ratio=" + std::to_string(ratio) + ",maps=" + std::to_string(maps) + ")";
    for (int j = 0; j < maps; ++j)
        ifs.maps.push_back({ratio, 0.0, {j * (1.0 - ratio) / (maps - 1), 0.0}});
    return ifs;
}

SimilarityIFS four_corner_ifs(double ratio) {
    if (!(ratio > 0.0 && ratio <= 0.5))
        throw precondition_error("four_corner_ifs: ratio must lie in (0, 1/2] for separation");
    SimilarityIFS ifs;
    ifs.name = "four_corners(ratio=" + std::to_string(ratio) + ")";
    const Point2 corners[4] = {{0.0, 0.0}, {1.0 - ratio, 0.0}, {0.0, 1.0 - ratio},
                               {1.0 - ratio, 1.0 - ratio}};
    for (const auto& c : corners) ifs.maps.push_back({ratio, 0.0, c});
    return ifs;
}

PointCloud segment_cloud(int n_points) {
    if (n_points < 2) throw precondition_error("segment_cloud: need >= 2 points");
    PointCloud out;
    out.points.reserve(n_points);
    for (int i = 0; i < n_points; ++i)
        out.points.push_back({static_cast<double>(i) / (n_points - 1), 0.0});
    out.resolution = 1.0 / (n_points - 1);
    out.provenance = "segment(n=" + std::to_string(n_points) + ")";
    return out;
}

PointCloud singleton_cloud(double x) {
    PointCloud out;
    out.points.push_back({x, 0.0});
    out.resolution = 1e-15;
    out.provenance = "singleton";
    return out;
}

PointCloud shrink_to_disk(const PointCloud& cloud, double euclid_radius) {
    if (cloud.points.empty()) throw precondition_error("shrink_to_disk: empty cloud");
    if (!(euclid_radius > 0.0)) throw precondition_error("shrink_to_disk: radius must be positive");
    Point2 c = bbox_of(cloud.points).center();
    double rmax = 0.0;
    for (const auto& p : cloud.points) rmax = std::max(rmax, norm(p - c));
    double scale = (rmax > 0.0) ? euclid_radius / rmax : 1.0;
    PointCloud out;
    out.points.reserve(cloud.points.size());
    for (const auto& p : cloud.points) out.points.push_back(scale * (p - c));
    out.resolution = std::max(cloud.resolution * scale, 1e-300);
    out.provenance = cloud.provenance + ",shrunk(r=" + std::to_string(euclid_radius) + ")";
    return out;
}

}  // namespace marstrand
