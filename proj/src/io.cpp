#include "marstrand/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace marstrand {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string sidecar_path(const std::string& csv_path) {
    auto pos = csv_path.find_last_of('.');
    std::string stem = (pos == std::string::npos) ? csv_path : csv_path.substr(0, pos);
    return stem + ".meta.json";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
    std::ostringstream os;
    os << "x,y\n";
    for (const auto& p : cloud.points)
        os << format_double(p.x) << ',' << format_double(p.y) << '\n';
    write_text_file(path, os.str());
}

void write_cloud_sidecar(const PointCloud& cloud, const std::string& csv_path) {
    nlohmann::ordered_json j;
    j["provenance"] = cloud.provenance;
    j["resolution"] = cloud.resolution;
    j["points"] = cloud.points.size();
    write_text_file(sidecar_path(csv_path), j.dump(2) + "\n");
}

PointCloud read_cloud_csv(const std::string& path, std::optional<double> resolution_override) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    PointCloud cloud;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {  // "x,y"
            header = false;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed cloud CSV row: " + line);
        cloud.points.push_back({std::stod(line.substr(0, comma)),
                                std::stod(line.substr(comma + 1))});
    }
    if (cloud.points.empty()) throw std::runtime_error("cloud CSV has no points: " + path);

    if (resolution_override) {
        cloud.resolution = *resolution_override;
        cloud.provenance = "csv:" + path;
        return cloud;
    }
    std::ifstream meta(sidecar_path(path));
    if (!meta)
        throw precondition_error(
            "cloud resolution unknown: no sidecar " + sidecar_path(path) +
            " and no --resolution override");
    nlohmann::json j;
    meta >> j;
    cloud.resolution = j.at("resolution").get<double>();
    cloud.provenance = j.value("provenance", "csv:" + path);
    return cloud;
}

}  // namespace marstrand
