#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "marstrand/fractal.hpp"

namespace marstrand {

// Cloud CSV: header "x,y", one point per row, 17 significant digits.
void write_cloud_csv(const PointCloud& cloud, const std::string& path);

// Provenance sidecar written next to the CSV as <stem>.meta.json.
void write_cloud_sidecar(const PointCloud& cloud, const std::string& csv_path);

// Reads a cloud CSV; resolution comes from the sidecar when present, else
// from the override (one of the two is required).
PointCloud read_cloud_csv(const std::string& path, std::optional<double> resolution_override);

std::string sidecar_path(const std::string& csv_path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace marstrand
