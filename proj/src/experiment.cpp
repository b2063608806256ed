#include "marstrand/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "marstrand/io.hpp"
#include "marstrand/numerics.hpp"
#include "marstrand/parallel.hpp"

namespace marstrand {

namespace {

double hyperbolic_cover_factor(const PointCloud& cloud) {
    double rmax = 0.0;
    for (const auto& p : cloud.points) rmax = std::max(rmax, norm_sq(p));
    return 2.0 / (1.0 - rmax);
}

}  // namespace

PreparedSet prepare_set(const SetSpec& set, FamilyKind family) {
    PreparedSet out;
    if (set.kind == "cantor_line") {
        SimilarityIFS ifs = cantor_ifs(set.ratio, set.maps);
        out.cloud = generate(ifs, set.depth);
        out.moran_oracle = moran_dimension(ifs);
    } else if (set.kind == "cantor_product") {
        SimilarityIFS ifs = cantor_ifs(set.ratio, set.maps);
        PointCloud line = generate(ifs, set.depth);
        out.cloud = product_cloud(line, line);
        out.moran_oracle = 2.0 * moran_dimension(ifs);
    } else if (set.kind == "four_corners") {
        SimilarityIFS ifs = four_corner_ifs(set.ratio);
        out.cloud = generate(ifs, set.depth);
        out.moran_oracle = moran_dimension(ifs);
    } else if (set.kind == "segment") {
        out.cloud = segment_cloud(set.n_points);
        out.moran_oracle = 1.0;
    } else if (set.kind == "singleton") {
        out.cloud = singleton_cloud();
        out.moran_oracle = 0.0;
    } else {
        throw precondition_error("unknown set kind: " + set.kind);
    }

    if (family == FamilyKind::HyperbolicGeodesic) {
        double euclid_radius = std::tanh(0.5 * set.shrink_radius);
        out.cloud = shrink_to_disk(out.cloud, euclid_radius);
        out.metric_resolution = out.cloud.resolution * hyperbolic_cover_factor(out.cloud);
    } else {
        out.metric_resolution = out.cloud.resolution;
    }
    return out;
}

ExperimentReport run_marstrand(const ExperimentConfig& config) {
    if (!config.has_seed) throw precondition_error("config: seed is mandatory");
    if (config.n_lambda < 1) throw precondition_error("config: n_lambda must be >= 1");

    PreparedSet prepared = prepare_set(config.set, config.family);
    const PointCloud& cloud = prepared.cloud;
    ProjectionFamily family = (config.family == FamilyKind::EuclideanAngle)
                                  ? ProjectionFamily::euclidean_angle()
                                  : ProjectionFamily::hyperbolic_geodesic();

    ExperimentReport report;
    report.config = config;
    report.moran_oracle = prepared.moran_oracle;

    ScaleWindow dim_window = config.dim_window ? *config.dim_window : default_window(cloud);
    if (cloud.size() > 1)
        report.dim_x = box_dimension(cloud, dim_window);
    else
        report.dim_x = DimensionEstimate{};

    double dim_ref = prepared.moran_oracle ? *prepared.moran_oracle : report.dim_x.value;
    report.target_dim = std::min(family.kappa, dim_ref / family.alpha);
    report.regime =
        (dim_ref > family.alpha * family.kappa) ? "positive_length" : "dimension_preservation";

    double eps = config.length_eps ? *config.length_eps
                                   : std::max(3.0 * prepared.metric_resolution, 1e-9);
    report.length_eps_used = eps;

    const int n = config.n_lambda;
    report.per_lambda.resize(n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
        double lambda = (k + 0.5) * kPi / n;
        std::vector<double> coords(cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i)
            coords[i] = project(family, lambda, cloud.points[i]);

        LambdaResult res;
        res.lambda = lambda;
        res.projected_length = projected_length(coords, eps, prepared.metric_resolution);
        PointCloud line;
        line.points.reserve(coords.size());
        for (double c : coords) line.points.push_back({c, 0.0});
        line.resolution = prepared.metric_resolution;
        if (line.size() > 1) {
            DimensionEstimate est = box_dimension(line, default_window(line));
            res.projected_dim = est.value;
            res.dim_r_squared = est.r_squared;
        } else {
            res.projected_dim = 0.0;
            res.dim_r_squared = 1.0;
        }
        report.per_lambda[k] = res;
    });

    std::vector<double> dims, lengths;
    dims.reserve(n);
    lengths.reserve(n);
    for (const auto& r : report.per_lambda) {
        dims.push_back(r.projected_dim);
        lengths.push_back(r.projected_length);
    }
    report.median_projected_dim = median(dims);
    int above = 0;
    double inv_sum = 0.0;
    bool any_zero = false;
    for (double len : lengths) {
        if (len >= config.length_threshold) ++above;
        if (len > 0.0)
            inv_sum += 1.0 / len;
        else
            any_zero = true;
    }
    report.length_fraction = static_cast<double>(above) / n;
    report.harmonic_mean_length = any_zero ? 0.0 : n / inv_sum;
    report.dim_within_tolerance =
        std::abs(report.median_projected_dim - report.target_dim) <= 0.1;
    report.length_fraction_pass = report.length_fraction >= 0.95;

    if (!config.out_json.empty()) emit_report(report, ReportFormat::Json, config.out_json);
    if (!config.out_csv.empty()) emit_report(report, ReportFormat::Csv, config.out_csv);
    if (!config.out_svg.empty()) emit_report(report, ReportFormat::SvgScatter, config.out_svg);
    return report;
}

// ---- serialization ----------------------------------------------------------

ordered_json config_to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["set"] = {{"kind", c.set.kind},     {"ratio", c.set.ratio},
                {"maps", c.set.maps},     {"depth", c.set.depth},
                {"n_points", c.set.n_points}, {"shrink_radius", c.set.shrink_radius}};
    j["family"] = (c.family == FamilyKind::EuclideanAngle) ? "euclidean" : "hyperbolic";
    j["n_lambda"] = c.n_lambda;
    if (c.dim_window)
        j["dim_window"] = {c.dim_window->min_scale, c.dim_window->max_scale};
    else
        j["dim_window"] = nullptr;
    if (c.length_eps)
        j["length_eps"] = *c.length_eps;
    else
        j["length_eps"] = nullptr;
    j["length_threshold"] = c.length_threshold;
    j["seed"] = c.seed;
    j["output"] = {{"json", c.out_json}, {"csv", c.out_csv}, {"svg", c.out_svg}};
    return j;
}

ExperimentConfig config_from_json(const ordered_json& j) {
    ExperimentConfig c;
    if (j.contains("set")) {
        const auto& s = j.at("set");
        c.set.kind = s.value("kind", c.set.kind);
        c.set.ratio = s.value("ratio", c.set.ratio);
        c.set.maps = s.value("maps", c.set.maps);
        c.set.depth = s.value("depth", c.set.depth);
        c.set.n_points = s.value("n_points", c.set.n_points);
        c.set.shrink_radius = s.value("shrink_radius", c.set.shrink_radius);
    }
    std::string family = j.value("family", "euclidean");
    if (family == "euclidean")
        c.family = FamilyKind::EuclideanAngle;
    else if (family == "hyperbolic")
        c.family = FamilyKind::HyperbolicGeodesic;
    else
        throw precondition_error("config: unknown family " + family);
    c.n_lambda = j.value("n_lambda", c.n_lambda);
    if (j.contains("dim_window") && !j.at("dim_window").is_null()) {
        auto w = j.at("dim_window");
        c.dim_window = ScaleWindow{w.at(0).get<double>(), w.at(1).get<double>()};
    }
    if (j.contains("length_eps") && !j.at("length_eps").is_null())
        c.length_eps = j.at("length_eps").get<double>();
    c.length_threshold = j.value("length_threshold", c.length_threshold);
    if (!j.contains("seed")) throw precondition_error("config: seed is mandatory");
    c.seed = j.at("seed").get<uint64_t>();
    c.has_seed = true;
    if (j.contains("output")) {
        const auto& o = j.at("output");
        c.out_json = o.value("json", "");
        c.out_csv = o.value("csv", "");
        c.out_svg = o.value("svg", "");
    }
    return c;
}

ordered_json report_to_json(const ExperimentReport& r) {
    ordered_json j;
    j["config"] = config_to_json(r.config);
    j["dim_x"] = {{"value", r.dim_x.value},
                  {"r_squared", r.dim_x.r_squared},
                  {"method", "box"},
                  {"window", {r.dim_x.window.min_scale, r.dim_x.window.max_scale}}};
    if (r.moran_oracle)
        j["moran_oracle"] = *r.moran_oracle;
    else
        j["moran_oracle"] = nullptr;
    j["target_dim"] = r.target_dim;
    j["regime"] = r.regime;
    j["length_eps_used"] = r.length_eps_used;
    j["aggregate"] = {{"median_projected_dim", r.median_projected_dim},
                      {"length_fraction", r.length_fraction},
                      {"length_threshold", r.config.length_threshold},
                      {"harmonic_mean_length", r.harmonic_mean_length},
                      {"dim_within_tolerance", r.dim_within_tolerance},
                      {"length_fraction_pass", r.length_fraction_pass}};
    ordered_json rows = ordered_json::array();
    for (const auto& lr : r.per_lambda) {
        rows.push_back({{"lambda", lr.lambda},
                        {"projected_dim", lr.projected_dim},
                        {"r_squared", lr.dim_r_squared},
                        {"projected_length", lr.projected_length}});
    }
    j["per_lambda"] = rows;
    return j;
}

std::string report_to_csv(const ExperimentReport& r) {
    std::ostringstream os;
    os << "lambda,projected_dim,r_squared,projected_length\n";
    char buf[160];
    for (const auto& lr : r.per_lambda) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", lr.lambda,
                      lr.projected_dim, lr.dim_r_squared, lr.projected_length);
        os << buf;
    }
    return os.str();
}

namespace {

// Maps value ranges onto pixel boxes for the two scatter panels.
struct Axis {
    double lo, hi, pix_lo, pix_hi;
    double operator()(double v) const {
        double t = (hi > lo) ? (v - lo) / (hi - lo) : 0.5;
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

void svg_panel(std::ostringstream& os, const ExperimentReport& r, const char* cls,
               double y_top, double y_bottom, const char* title, bool lengths) {
    double vmax = 0.0;
    for (const auto& lr : r.per_lambda)
        vmax = std::max(vmax, lengths ? lr.projected_length : lr.projected_dim);
    if (vmax <= 0.0) vmax = 1.0;
    Axis ax{0.0, kPi, 60.0, 620.0};
    Axis ay{0.0, vmax * 1.05, y_bottom, y_top};
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"60\" y=\"%.1f\" width=\"560\" height=\"%.1f\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  y_top, y_bottom - y_top);
    os << buf;
    std::snprintf(buf, sizeof(buf), "<text x=\"60\" y=\"%.1f\" font-size=\"12\">%s</text>\n",
                  y_top - 6.0, title);
    os << buf;
    for (const auto& lr : r.per_lambda) {
        double v = lengths ? lr.projected_length : lr.projected_dim;
        std::snprintf(buf, sizeof(buf),
                      "<circle class=\"%s\" cx=\"%.2f\" cy=\"%.2f\" r=\"2\"/>\n", cls,
                      ax(lr.lambda), ay(v));
        os << buf;
    }
}

}  // namespace

std::string report_to_svg(const ExperimentReport& r) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"680\" "
          "height=\"560\">\n";
    svg_panel(os, r, "dim-pt", 30.0, 260.0, "projected dimension vs lambda", false);
    svg_panel(os, r, "len-pt", 310.0, 540.0, "projected length vs lambda", true);
    os << "</svg>\n";
    return os.str();
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
    switch (format) {
        case ReportFormat::Json:
            write_text_file(path, report_to_json(report).dump(2) + "\n");
            return;
        case ReportFormat::Csv:
            write_text_file(path, report_to_csv(report));
            return;
        case ReportFormat::SvgScatter:
            write_text_file(path, report_to_svg(report));
            return;
    }
    throw precondition_error("emit_report: unknown format");
}

}  // namespace marstrand
