#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "marstrand/dimension.hpp"
#include "marstrand/projection.hpp"
#include "marstrand/transversality.hpp"

namespace marstrand {

using ordered_json = nlohmann::ordered_json;

// Built-in set recipes. Product recipes multiply a line Cantor set with a
// second factor; "cantor_line" is C x {0} on the axis.
struct SetSpec {
    std::string kind = "cantor_line";  // cantor_line | cantor_product | four_corners | segment | singleton
    double ratio = 1.0 / 3.0;
    int maps = 2;
    int depth = 8;
    int n_points = 10000;  // segment only
    // Hyperbolic runs shrink the cloud into the hyperbolic ball of this radius.
    double shrink_radius = 1.0;
};

struct ExperimentConfig {
    SetSpec set;
    FamilyKind family = FamilyKind::EuclideanAngle;
    int n_lambda = 100;
    std::optional<ScaleWindow> dim_window;    // default: per-cloud window
    std::optional<double> length_eps;         // default: 3 x projected resolution
    double length_threshold = 0.1;
    uint64_t seed = 0;
    bool has_seed = false;  // seed is mandatory in configs
    std::string out_json, out_csv, out_svg;   // empty = do not write
};

struct LambdaResult {
    double lambda = 0.0;
    double projected_dim = 0.0;
    double dim_r_squared = 0.0;
    double projected_length = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    DimensionEstimate dim_x;
    std::optional<double> moran_oracle;
    double target_dim = 0.0;  // min(kappa, dim X / alpha), oracle-backed when available
    std::string regime;       // "positive_length" or "dimension_preservation"
    std::vector<LambdaResult> per_lambda;
    double median_projected_dim = 0.0;
    double length_fraction = 0.0;  // fraction of lambda with length >= threshold
    double harmonic_mean_length = 0.0;
    double length_eps_used = 0.0;
    bool dim_within_tolerance = false;   // |median - target| <= 0.1
    bool length_fraction_pass = false;   // length_fraction >= 0.95
};

// Builds the point cloud for a config (shrinking into the disk for
// hyperbolic families) plus the resolution in the family's source metric.
struct PreparedSet {
    PointCloud cloud;
    double metric_resolution = 0.0;
    std::optional<double> moran_oracle;
};
PreparedSet prepare_set(const SetSpec& set, FamilyKind family);

ExperimentReport run_marstrand(const ExperimentConfig& config);

ordered_json report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);
std::string report_to_svg(const ExperimentReport& report);

enum class ReportFormat { Json, Csv, SvgScatter };
void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

ExperimentConfig config_from_json(const ordered_json& j);
ordered_json config_to_json(const ExperimentConfig& config);

}  // namespace marstrand
