#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "privplan/errors.hpp"
#include "privplan/planner.hpp"

namespace privplan {

namespace {

using nlohmann::json;

constexpr int kRoadmapFormatVersion = 1;

// FNV-1a 64-bit over the canonical payload serialization; cheap integrity
// check against truncation and bit rot, not a cryptographic digest.
std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

json payload_json(const Roadmap& roadmap) {
  json payload;
  payload["format_version"] = kRoadmapFormatVersion;
  payload["params"] = {{"samples", roadmap.params.samples},
                       {"conn_radius", roadmap.params.conn_radius},
                       {"resolution", roadmap.params.resolution},
                       {"privacy_resolution", roadmap.params.privacy_resolution}};
  payload["seed"] = roadmap.seed;
  payload["scene_name"] = roadmap.scene_name;
  payload["nodes"] = roadmap.nodes;
  json edges = json::array();
  for (const auto& edge : roadmap.edges)
    edges.push_back({edge.i, edge.j, edge.base_length, edge.violating_length});
  payload["edges"] = std::move(edges);
  return payload;
}

std::string checksum_of(const json& payload) {
  std::ostringstream hex;
  hex << std::hex << fnv1a64(payload.dump());
  return hex.str();
}

}  // namespace

void save_roadmap(const Roadmap& roadmap, const std::filesystem::path& path) {
  json doc = payload_json(roadmap);
  doc["checksum"] = checksum_of(doc);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open roadmap file for writing: " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("failed writing roadmap file: " + path.string());
}

Roadmap load_roadmap(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open roadmap file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw RoadmapFileError(RoadmapFileError::Kind::checksum,
                           "roadmap file truncated or corrupt: " + std::string(e.what()));
  }

  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != kRoadmapFormatVersion)
    throw RoadmapFileError(RoadmapFileError::Kind::version,
                           "unsupported roadmap format_version (expected " +
                               std::to_string(kRoadmapFormatVersion) + ")");

  if (!doc.contains("checksum") || !doc["checksum"].is_string())
    throw RoadmapFileError(RoadmapFileError::Kind::checksum, "roadmap file missing checksum");
  const std::string stored = doc["checksum"].get<std::string>();
  json payload = doc;
  payload.erase("checksum");
  if (checksum_of(payload) != stored)
    throw RoadmapFileError(RoadmapFileError::Kind::checksum, "roadmap checksum mismatch");

  try {
    Roadmap roadmap;
    const json& params = doc.at("params");
    roadmap.params.samples = params.at("samples").get<std::size_t>();
    roadmap.params.conn_radius = params.at("conn_radius").get<double>();
    roadmap.params.resolution = params.at("resolution").get<double>();
    roadmap.params.privacy_resolution = params.at("privacy_resolution").get<double>();
    roadmap.seed = doc.at("seed").get<std::uint64_t>();
    roadmap.scene_name = doc.at("scene_name").get<std::string>();
    roadmap.nodes = doc.at("nodes").get<std::vector<Config>>();
    for (const auto& edge : doc.at("edges")) {
      if (!edge.is_array() || edge.size() != 4)
        throw RoadmapFileError(RoadmapFileError::Kind::checksum, "malformed edge record");
      roadmap.edges.push_back({edge[0].get<std::uint32_t>(), edge[1].get<std::uint32_t>(),
                               edge[2].get<double>(), edge[3].get<double>()});
    }
    return roadmap;
  } catch (const json::exception& e) {
    throw RoadmapFileError(RoadmapFileError::Kind::checksum,
                           "malformed roadmap payload: " + std::string(e.what()));
  }
}

}  // namespace privplan
