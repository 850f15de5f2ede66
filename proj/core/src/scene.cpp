#include "privplan/scene.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "privplan/errors.hpp"

namespace privplan {

namespace {

using nlohmann::json;

constexpr int kSceneFormatVersion = 1;
constexpr double kDegToRad = M_PI / 180.0;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const json& require(const json& node, const char* key, const std::string& path) {
  const auto it = node.find(key);
  if (it == node.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double as_number(const json& node, const std::string& path) {
  if (!node.is_number()) fail(path, "expected a number");
  return node.get<double>();
}

Vec3 as_vec3(const json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 3) fail(path, "expected an array of 3 numbers");
  return Vec3(as_number(node[0], path), as_number(node[1], path), as_number(node[2], path));
}

std::pair<double, double> as_interval(const json& node, const std::string& path, double scale) {
  if (!node.is_array() || node.size() != 2) fail(path, "expected [lower, upper]");
  return {scale * as_number(node[0], path), scale * as_number(node[1], path)};
}

Transform parse_transform(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected a transform object");
  Transform t;
  if (node.contains("xyz")) t.translation = as_vec3(node["xyz"], path + ".xyz");
  const bool has_rpy = node.contains("rpy_deg") || node.contains("rpy_rad");
  if (has_rpy && node.contains("quat")) fail(path, "give rpy or quat, not both");
  if (node.contains("quat")) {
    const auto& q = node["quat"];
    if (!q.is_array() || q.size() != 4) fail(path + ".quat", "expected [w, x, y, z]");
    t.rotation = Quat(as_number(q[0], path), as_number(q[1], path), as_number(q[2], path),
                      as_number(q[3], path));
    if (std::abs(t.rotation.norm() - 1.0) > 1e-9) fail(path + ".quat", "quaternion must be unit norm");
  } else if (has_rpy) {
    const char* key = node.contains("rpy_deg") ? "rpy_deg" : "rpy_rad";
    const double scale = node.contains("rpy_deg") ? kDegToRad : 1.0;
    const Vec3 rpy = scale * as_vec3(node[key], path + "." + key);
    t.rotation = Quat(Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
                      Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
                      Eigen::AngleAxisd(rpy.x(), Vec3::UnitX()));
  }
  return t;
}

json dump_transform(const Transform& t) {
  json node;
  node["xyz"] = {t.translation.x(), t.translation.y(), t.translation.z()};
  node["quat"] = {t.rotation.w(), t.rotation.x(), t.rotation.y(), t.rotation.z()};
  return node;
}

Primitive parse_primitive(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected a primitive object");
  const std::string type = require(node, "type", path).get<std::string>();
  Transform pose;
  if (node.contains("origin")) pose = parse_transform(node["origin"], path + ".origin");
  try {
    if (type == "sphere")
      return Primitive::make_sphere(as_number(require(node, "radius", path), path + ".radius"),
                                    pose);
    if (type == "capsule")
      return Primitive::make_capsule(as_number(require(node, "radius", path), path + ".radius"),
                                     as_number(require(node, "length", path), path + ".length"),
                                     pose);
    if (type == "box")
      return Primitive::make_box(as_vec3(require(node, "half_extents", path), path + ".half_extents"),
                                 pose);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path + ".type", "unknown primitive type '" + type + "'");
}

json dump_primitive(const Primitive& prim) {
  json node;
  switch (prim.kind) {
    case Primitive::Kind::sphere:
      node["type"] = "sphere";
      node["radius"] = prim.radius;
      break;
    case Primitive::Kind::capsule:
      node["type"] = "capsule";
      node["radius"] = prim.radius;
      node["length"] = 2.0 * prim.half_length;
      break;
    case Primitive::Kind::box:
      node["type"] = "box";
      node["half_extents"] = {prim.half_extents.x(), prim.half_extents.y(), prim.half_extents.z()};
      break;
  }
  node["origin"] = dump_transform(prim.pose);
  return node;
}

JointSpec parse_joint(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected a joint object");
  JointSpec joint;
  if (node.contains("name")) joint.name = node["name"].get<std::string>();
  if (node.contains("origin")) joint.origin = parse_transform(node["origin"], path + ".origin");

  const std::string kind = require(node, "type", path).get<std::string>();
  auto limits = [&](const char* deg_key, const char* rad_key, const char* plain_key)
      -> std::pair<double, double> {
    if (deg_key && node.contains(deg_key)) return as_interval(node[deg_key], path + "." + deg_key, kDegToRad);
    if (rad_key && node.contains(rad_key)) return as_interval(node[rad_key], path + "." + rad_key, 1.0);
    if (plain_key && node.contains(plain_key)) return as_interval(node[plain_key], path + "." + plain_key, 1.0);
    fail(path, "missing joint limits");
  };

  if (kind == "revolute" || kind == "prismatic") {
    joint.kind = kind == "revolute" ? JointSpec::Kind::revolute : JointSpec::Kind::prismatic;
    joint.axis = as_vec3(require(node, "axis", path), path + ".axis");
    const auto [lo, hi] = kind == "revolute" ? limits("limits_deg", "limits_rad", nullptr)
                                             : limits(nullptr, nullptr, "limits");
    joint.lower = {lo};
    joint.upper = {hi};
    joint.metric_weight = {node.contains("metric_weight")
                               ? as_number(node["metric_weight"], path + ".metric_weight")
                               : 1.0};
  } else if (kind == "planar_base") {
    joint.kind = JointSpec::Kind::planar_base;
    const auto [xlo, xhi] = as_interval(require(node, "x_limits", path), path + ".x_limits", 1.0);
    const auto [ylo, yhi] = as_interval(require(node, "y_limits", path), path + ".y_limits", 1.0);
    const auto [wlo, whi] = limits("yaw_limits_deg", "yaw_limits_rad", nullptr);
    joint.lower = {xlo, ylo, wlo};
    joint.upper = {xhi, yhi, whi};
    joint.metric_weight = {1.0, 1.0, 0.5};
    if (node.contains("metric_weights")) {
      const auto& w = node["metric_weights"];
      if (!w.is_array() || w.size() != 3) fail(path + ".metric_weights", "expected 3 weights");
      for (int k = 0; k < 3; ++k) joint.metric_weight[k] = as_number(w[k], path + ".metric_weights");
    }
  } else {
    fail(path + ".type", "unknown joint kind '" + kind + "'");
  }
  return joint;
}

json dump_joint(const JointSpec& joint) {
  json node;
  if (!joint.name.empty()) node["name"] = joint.name;
  node["origin"] = dump_transform(joint.origin);
  switch (joint.kind) {
    case JointSpec::Kind::revolute:
      node["type"] = "revolute";
      node["axis"] = {joint.axis.x(), joint.axis.y(), joint.axis.z()};
      node["limits_rad"] = {joint.lower[0], joint.upper[0]};
      node["metric_weight"] = joint.metric_weight[0];
      break;
    case JointSpec::Kind::prismatic:
      node["type"] = "prismatic";
      node["axis"] = {joint.axis.x(), joint.axis.y(), joint.axis.z()};
      node["limits"] = {joint.lower[0], joint.upper[0]};
      node["metric_weight"] = joint.metric_weight[0];
      break;
    case JointSpec::Kind::planar_base:
      node["type"] = "planar_base";
      node["x_limits"] = {joint.lower[0], joint.upper[0]};
      node["y_limits"] = {joint.lower[1], joint.upper[1]};
      node["yaw_limits_rad"] = {joint.lower[2], joint.upper[2]};
      node["metric_weights"] = {joint.metric_weight[0], joint.metric_weight[1], joint.metric_weight[2]};
      break;
  }
  return node;
}

RobotModel parse_robot(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected a robot object");
  RobotModel robot;

  const json& joints = require(node, "joints", path);
  if (!joints.is_array() || joints.empty()) fail(path + ".joints", "expected a nonempty array");
  for (std::size_t i = 0; i < joints.size(); ++i)
    robot.joints.push_back(parse_joint(joints[i], path + ".joints[" + std::to_string(i) + "]"));

  robot.link_collision.assign(robot.joints.size(), std::nullopt);
  if (node.contains("links")) {
    const json& links = node["links"];
    if (!links.is_array() || links.size() != robot.joints.size())
      fail(path + ".links", "expected one (possibly null) entry per joint");
    for (std::size_t i = 0; i < links.size(); ++i)
      if (!links[i].is_null())
        robot.link_collision[i] = parse_primitive(links[i], path + ".links[" + std::to_string(i) + "]");
  }

  const json& sensor = require(node, "sensor", path);
  robot.sensor.link_index = require(sensor, "link", path + ".sensor").get<std::size_t>();
  if (sensor.contains("origin"))
    robot.sensor.mount = parse_transform(sensor["origin"], path + ".sensor.origin");
  if (sensor.contains("fov_deg") == sensor.contains("half_angle_rad"))
    fail(path + ".sensor", "give exactly one of fov_deg or half_angle_rad");
  robot.sensor.half_angle = sensor.contains("fov_deg")
                                ? 0.5 * kDegToRad * as_number(sensor["fov_deg"], path + ".sensor.fov_deg")
                                : as_number(sensor["half_angle_rad"], path + ".sensor.half_angle_rad");
  robot.sensor.range = as_number(require(sensor, "range", path + ".sensor"), path + ".sensor.range");
  return robot;
}

json dump_robot(const RobotModel& robot) {
  json node;
  node["joints"] = json::array();
  for (const auto& joint : robot.joints) node["joints"].push_back(dump_joint(joint));
  node["links"] = json::array();
  for (const auto& link : robot.link_collision)
    node["links"].push_back(link ? dump_primitive(*link) : json(nullptr));
  json sensor;
  sensor["link"] = robot.sensor.link_index;
  sensor["origin"] = dump_transform(robot.sensor.mount);
  sensor["half_angle_rad"] = robot.sensor.half_angle;
  sensor["range"] = robot.sensor.range;
  node["sensor"] = sensor;
  return node;
}

Scene parse_scene(const json& doc) {
  if (!doc.is_object()) throw ValidationError("scene: expected a JSON object");
  const json& version = require(doc, "format_version", "scene");
  if (!version.is_number_integer() || version.get<int>() != kSceneFormatVersion)
    throw ValidationError("scene.format_version: unsupported version (expected " +
                          std::to_string(kSceneFormatVersion) + ")");

  Scene scene;
  if (doc.contains("meta") && doc["meta"].contains("name"))
    scene.name = doc["meta"]["name"].get<std::string>();

  scene.robot = parse_robot(require(doc, "robot", "scene"), "robot");

  if (doc.contains("obstacles")) {
    const json& obstacles = doc["obstacles"];
    if (!obstacles.is_array()) fail("obstacles", "expected an array");
    for (std::size_t i = 0; i < obstacles.size(); ++i)
      scene.obstacles.push_back(parse_primitive(obstacles[i], "obstacles[" + std::to_string(i) + "]"));
  }

  const json& regions = require(doc, "privacy_regions", "scene");
  if (!regions.is_array()) fail("privacy_regions", "expected an array");
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const std::string path = "privacy_regions[" + std::to_string(i) + "]";
    const json& region = regions[i];
    PrivacyRegion r;
    r.center = as_vec3(require(region, "center", path), path + ".center");
    r.radius = as_number(require(region, "radius", path), path + ".radius");
    if (!(r.radius > 0.0)) fail(path + ".radius", "must be > 0");
    scene.privacy_regions.push_back(r);
  }

  scene.validate();
  return scene;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scene parse error: ") + e.what());
  }
}

}  // namespace

void Scene::validate() const {
  robot.validate();
  for (std::size_t i = 0; i < privacy_regions.size(); ++i)
    if (!(privacy_regions[i].radius > 0.0))
      throw ValidationError("privacy_regions[" + std::to_string(i) + "].radius: must be > 0");
}

Scene load_scene(const std::string& text) { return parse_scene(parse_document(text)); }

Scene load_scene_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_scene(text);
}

std::string serialize_scene(const Scene& scene) {
  json doc;
  doc["format_version"] = kSceneFormatVersion;
  doc["meta"] = {{"name", scene.name}};
  doc["robot"] = dump_robot(scene.robot);
  doc["obstacles"] = json::array();
  for (const auto& obstacle : scene.obstacles) doc["obstacles"].push_back(dump_primitive(obstacle));
  doc["privacy_regions"] = json::array();
  for (const auto& region : scene.privacy_regions)
    doc["privacy_regions"].push_back(
        {{"center", {region.center.x(), region.center.y(), region.center.z()}},
         {"radius", region.radius}});
  return doc.dump(2) + "\n";
}

namespace {

ScenarioBundle parse_scenario(const json& doc) {
  ScenarioBundle bundle;
  bundle.scene = parse_scene(doc);

  if (!doc.contains("meta") || !doc["meta"].contains("defaults"))
    throw ValidationError("meta.defaults: scenario files must carry experiment defaults");
  const json& defaults = doc["meta"]["defaults"];

  bundle.defaults.samples = require(defaults, "roadmap_n", "meta.defaults").get<std::size_t>();
  bundle.defaults.conn_radius =
      as_number(require(defaults, "conn_radius", "meta.defaults"), "meta.defaults.conn_radius");
  bundle.defaults.resolution =
      as_number(require(defaults, "resolution", "meta.defaults"), "meta.defaults.resolution");
  bundle.defaults.privacy_resolution =
      defaults.contains("privacy_resolution")
          ? as_number(defaults["privacy_resolution"], "meta.defaults.privacy_resolution")
          : bundle.defaults.resolution;

  const json& weights = require(defaults, "weights", "meta.defaults");
  if (!weights.is_array() || weights.empty())
    fail("meta.defaults.weights", "expected a nonempty array");
  for (const auto& w : weights) bundle.weights.push_back(as_number(w, "meta.defaults.weights"));
  bool has_agnostic = false;
  for (double w : bundle.weights) {
    if (std::abs(w) < 1.0) fail("meta.defaults.weights", "weight magnitude must be >= 1");
    if (w == 1.0) has_agnostic = true;
  }
  if (!has_agnostic) fail("meta.defaults.weights", "sweep must contain the agnostic weight 1");

  if (defaults.contains("query_sampling"))
    bundle.query_sampling = defaults["query_sampling"].get<std::string>();
  if (bundle.query_sampling != "rejection_uniform")
    fail("meta.defaults.query_sampling", "unknown start/goal rule '" + bundle.query_sampling + "'");
  return bundle;
}

}  // namespace

ScenarioBundle load_scenario(const std::string& text) {
  return parse_scenario(parse_document(text));
}

ScenarioBundle load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_scenario(text);
}

bool operator==(const Transform& a, const Transform& b) {
  return a.rotation.coeffs() == b.rotation.coeffs() && a.translation == b.translation;
}

bool operator==(const Primitive& a, const Primitive& b) {
  return a.kind == b.kind && a.radius == b.radius && a.half_length == b.half_length &&
         a.half_extents == b.half_extents && a.pose == b.pose;
}

bool operator==(const PrivacyRegion& a, const PrivacyRegion& b) {
  return a.center == b.center && a.radius == b.radius;
}

bool operator==(const JointSpec& a, const JointSpec& b) {
  return a.kind == b.kind && a.axis == b.axis && a.origin == b.origin && a.lower == b.lower &&
         a.upper == b.upper && a.metric_weight == b.metric_weight && a.name == b.name;
}

bool operator==(const SensorMount& a, const SensorMount& b) {
  return a.link_index == b.link_index && a.mount == b.mount && a.half_angle == b.half_angle &&
         a.range == b.range;
}

bool operator==(const RobotModel& a, const RobotModel& b) {
  return a.joints == b.joints && a.link_collision == b.link_collision && a.sensor == b.sensor;
}

bool operator==(const Scene& a, const Scene& b) {
  return a.name == b.name && a.robot == b.robot && a.obstacles == b.obstacles &&
         a.privacy_regions == b.privacy_regions;
}

}  // namespace privplan
