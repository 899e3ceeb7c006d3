#include "rpreg/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rpreg {

namespace {

using nlohmann::json;

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ifstream open_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return in;
}

json rotation_json(const Mat3& R) {
  json rot = json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      rot.push_back(R(r, c));
    }
  }
  return rot;
}

std::vector<Vec3> load_cloud_xyz(const std::filesystem::path& path) {
  std::ifstream in = open_text(path);
  std::vector<Vec3> cloud;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line) || line[0] == '#') continue;
    std::istringstream ss(line);
    Vec3 p;
    if (!(ss >> p.x() >> p.y() >> p.z())) {
      throw IoError(path.string() + ":" + std::to_string(lineno) +
                    ": expected at least 3 numbers");
    }
    cloud.push_back(p);
  }
  return cloud;
}

std::vector<Vec3> load_cloud_ply(const std::filesystem::path& path) {
  std::ifstream in = open_text(path);
  std::string line;
  std::size_t lineno = 0;

  auto fail = [&](const std::string& msg) -> IoError {
    return IoError(path.string() + ":" + std::to_string(lineno) + ": " + msg);
  };

  if (!std::getline(in, line) || (++lineno, line.substr(0, 3) != "ply")) {
    throw fail("not a PLY file");
  }

  std::size_t vertex_count = 0;
  bool in_vertex_element = false;
  bool seen_format = false;
  int x_col = -1, y_col = -1, z_col = -1;
  int property_col = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string keyword;
    ss >> keyword;
    if (keyword == "comment" || keyword.empty()) continue;
    if (keyword == "format") {
      std::string kind;
      ss >> kind;
      if (kind != "ascii") {
        throw fail("unsupported PLY format '" + kind + "' (only ascii)");
      }
      seen_format = true;
    } else if (keyword == "element") {
      std::string name;
      std::size_t count = 0;
      if (!(ss >> name >> count)) throw fail("malformed element line");
      in_vertex_element = (name == "vertex");
      if (in_vertex_element) {
        vertex_count = count;
        property_col = 0;
      }
    } else if (keyword == "property") {
      if (!in_vertex_element) continue;
      std::string type, name;
      if (!(ss >> type >> name)) throw fail("malformed property line");
      if (type == "list") throw fail("list property in vertex element");
      if (name == "x") x_col = property_col;
      if (name == "y") y_col = property_col;
      if (name == "z") z_col = property_col;
      ++property_col;
    } else if (keyword == "end_header") {
      break;
    } else if (keyword != "obj_info" && !seen_format) {
      throw fail("malformed header line '" + keyword + "'");
    }
  }
  if (!seen_format) throw fail("missing format line");
  if (vertex_count == 0) throw fail("missing vertex element");
  if (x_col < 0 || y_col < 0 || z_col < 0) throw fail("missing x/y/z properties");

  std::vector<Vec3> cloud;
  cloud.reserve(vertex_count);
  while (cloud.size() < vertex_count && std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    std::istringstream ss(line);
    std::vector<double> values;
    double v = 0.0;
    while (ss >> v) values.push_back(v);
    const int needed = std::max({x_col, y_col, z_col});
    if (static_cast<int>(values.size()) <= needed) {
      throw fail("vertex line has too few values");
    }
    cloud.push_back(Vec3(values[static_cast<std::size_t>(x_col)],
                         values[static_cast<std::size_t>(y_col)],
                         values[static_cast<std::size_t>(z_col)]));
  }
  if (cloud.size() < vertex_count) {
    throw fail("unexpected end of file before all vertices were read");
  }
  return cloud;
}

}  // namespace

CorrespondenceSet load_correspondences(const std::filesystem::path& path) {
  std::ifstream in = open_text(path);
  CorrespondenceSet set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line) || line[0] == '#') continue;
    std::istringstream ss(line);
    Correspondence c;
    if (!(ss >> c.p.x() >> c.p.y() >> c.p.z() >> c.q.x() >> c.q.y() >> c.q.z())) {
      throw IoError(path.string() + ":" + std::to_string(lineno) +
                    ": expected 6 numbers");
    }
    std::string rest;
    if (ss >> rest) {
      throw IoError(path.string() + ":" + std::to_string(lineno) +
                    ": trailing content '" + rest + "'");
    }
    set.pairs.push_back(c);
  }
  return set;
}

void save_correspondences(const std::filesystem::path& path,
                          const CorrespondenceSet& correspondences) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << "# px py pz qx qy qz\n";
  for (const Correspondence& c : correspondences.pairs) {
    out << format_double(c.p.x()) << ' ' << format_double(c.p.y()) << ' '
        << format_double(c.p.z()) << ' ' << format_double(c.q.x()) << ' '
        << format_double(c.q.y()) << ' ' << format_double(c.q.z()) << '\n';
  }
}

std::vector<Vec3> load_cloud(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".xyz" || ext == ".txt") {
    return load_cloud_xyz(path);
  }
  if (ext == ".ply") {
    return load_cloud_ply(path);
  }
  throw IoError("unknown point cloud extension '" + ext + "' for " + path.string());
}

void save_cloud_xyz(const std::filesystem::path& path,
                    const std::vector<Vec3>& cloud) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  for (const Vec3& p : cloud) {
    out << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
        << format_double(p.z()) << '\n';
  }
}

std::string result_to_json_string(const RegistrationResult& result) {
  json j;
  j["rotation"] = rotation_json(result.transform.rotation);
  j["translation"] = {result.transform.translation.x(),
                      result.transform.translation.y(),
                      result.transform.translation.z()};
  j["consensus"] = result.consensus;
  j["per_axis_inliers"] = {result.axis_solutions[0].inliers,
                           result.axis_solutions[1].inliers,
                           result.axis_solutions[2].inliers};
  j["orthogonality_defect"] = result.orthogonality_defect;
  j["certified"] = result.certified;
  j["iterations"] = {result.axis_solutions[0].iterations,
                     result.axis_solutions[1].iterations,
                     result.axis_solutions[2].iterations};
  j["runtime_ms"] = {result.axis_runtime_ms[0], result.axis_runtime_ms[1],
                     result.axis_runtime_ms[2]};
  j["epsilon"] = result.epsilon;
  return j.dump(2) + "\n";
}

void save_result_json(const std::filesystem::path& path,
                      const RegistrationResult& result) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << result_to_json_string(result);
}

std::string transform_to_json_string(const RigidTransform& transform) {
  json j;
  j["rotation"] = rotation_json(transform.rotation);
  j["translation"] = {transform.translation.x(), transform.translation.y(),
                      transform.translation.z()};
  return j.dump(2) + "\n";
}

void save_transform_json(const std::filesystem::path& path,
                         const RigidTransform& transform) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << transform_to_json_string(transform);
}

RigidTransform load_transform_json(const std::filesystem::path& path) {
  std::ifstream in = open_text(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  if (!j.contains("rotation") || !j.contains("translation")) {
    throw IoError(path.string() + ": missing rotation/translation fields");
  }
  const auto& rot = j["rotation"];
  const auto& tr = j["translation"];
  if (rot.size() != 9 || tr.size() != 3) {
    throw IoError(path.string() + ": rotation must have 9 entries, translation 3");
  }
  RigidTransform T;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      T.rotation(r, c) = rot[static_cast<std::size_t>(3 * r + c)].get<double>();
    }
  }
  for (int c = 0; c < 3; ++c) {
    T.translation(c) = tr[static_cast<std::size_t>(c)].get<double>();
  }
  return T;
}

}  // namespace rpreg
