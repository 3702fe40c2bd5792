// Copyright 2026 The UNO Push Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unopush/config_io.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace unopush {
namespace {

namespace pt = boost::property_tree;

template <typename T>
T ParseScalar(const std::string& key, const std::string& raw) {
  try {
    return boost::lexical_cast<T>(boost::trim_copy(raw));
  } catch (const boost::bad_lexical_cast&) {
    throw ConfigError("bad value for " + key + ": '" + raw + "'");
  }
}

template <typename T>
std::vector<T> ParseList(const std::string& key, const std::string& raw) {
  std::vector<std::string> parts;
  boost::split(parts, raw, boost::is_any_of(","));
  std::vector<T> out;
  for (const auto& p : parts) {
    if (boost::trim_copy(p).empty()) continue;
    out.push_back(ParseScalar<T>(key, p));
  }
  if (out.empty()) throw ConfigError("empty list for " + key);
  return out;
}

std::string ResolvePath(const std::string& base_dir, const std::string& raw) {
  const std::string path = boost::trim_copy(raw);
  if (path.empty() || base_dir.empty()) return path;
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

using Setter = std::function<void(const std::string&)>;

}  // namespace

LoadedConfig ParseConfig(const std::string& text, const std::string& base_dir) {
  // The INI reader only knows ';' comments; accept '#' as well.
  std::istringstream lines(text);
  std::ostringstream cleaned;
  for (std::string line; std::getline(lines, line);) {
    const std::string t = boost::trim_copy(line);
    if (!t.empty() && t[0] == '#') continue;
    cleaned << line << '\n';
  }
  pt::ptree tree;
  try {
    std::istringstream in(cleaned.str());
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }

  LoadedConfig out;
  ExperimentConfig& c = out.experiment;
  SweepSpec& s = out.sweep;
  std::optional<double> dist_trans, dist_rot, dist_prob;

  const std::map<std::string, std::map<std::string, Setter>> schema = {
      {"experiment",
       {
           {"shape", [&](const std::string& v) { c.shape = boost::trim_copy(v); }},
           {"shape_file",
            [&](const std::string& v) { c.shape_file = ResolvePath(base_dir, v); }},
           {"transfer_shape",
            [&](const std::string& v) { c.transfer_shape = boost::trim_copy(v); }},
           {"setting", [&](const std::string& v) { c.setting = ParseScalar<int>("setting", v); }},
           {"N", [&](const std::string& v) { c.exploration_count = ParseScalar<int>("N", v); }},
           {"delta", [&](const std::string& v) { c.delta = ParseScalar<double>("delta", v); }},
           {"sigma", [&](const std::string& v) { c.sigma = ParseScalar<double>("sigma", v); }},
           {"max_pushes",
            [&](const std::string& v) { c.max_pushes = ParseScalar<int>("max_pushes", v); }},
           {"seeds", [&](const std::string& v) { c.seeds = ParseList<uint64_t>("seeds", v); }},
           {"model_file",
            [&](const std::string& v) { c.model_file = ResolvePath(base_dir, v); }},
       }},
      {"mpc",
       {
           {"horizon", [&](const std::string& v) { c.mpc.horizon = ParseScalar<int>("horizon", v); }},
           {"rollouts",
            [&](const std::string& v) { c.mpc.rollouts = ParseScalar<int>("rollouts", v); }},
           {"perturb_trans",
            [&](const std::string& v) { c.mpc.perturb_trans = ParseScalar<double>("perturb_trans", v); }},
           {"perturb_rot",
            [&](const std::string& v) { c.mpc.perturb_rot = ParseScalar<double>("perturb_rot", v); }},
           {"threads", [&](const std::string& v) { c.mpc.threads = ParseScalar<int>("threads", v); }},
       }},
      {"weights",
       {
           {"w_pos", [&](const std::string& v) { c.mpc.weights.w_pos = ParseScalar<double>("w_pos", v); }},
           {"w_rot", [&](const std::string& v) { c.mpc.weights.w_rot = ParseScalar<double>("w_rot", v); }},
       }},
      {"model",
       {
           {"epsilon", [&](const std::string& v) { c.epsilon = ParseScalar<double>("epsilon", v); }},
       }},
      {"plant",
       {
           {"limit_surface_c",
            [&](const std::string& v) { c.plant.limit_surface_c = ParseScalar<double>("limit_surface_c", v); }},
           {"contact_friction_mu",
            [&](const std::string& v) { c.plant.contact_friction_mu = ParseScalar<double>("contact_friction_mu", v); }},
           {"pusher_radius",
            [&](const std::string& v) { c.plant.pusher_radius = ParseScalar<double>("pusher_radius", v); }},
           {"integration_step",
            [&](const std::string& v) { c.plant.integration_step = ParseScalar<double>("integration_step", v); }},
           {"motion_epsilon",
            [&](const std::string& v) { c.plant.motion_epsilon = ParseScalar<double>("motion_epsilon", v); }},
           {"push_distance_d",
            [&](const std::string& v) { c.plant.push_distance_d = ParseScalar<double>("push_distance_d", v); }},
           {"virtual_circle_R",
            [&](const std::string& v) { c.plant.virtual_circle_R = ParseScalar<double>("virtual_circle_R", v); }},
           {"disturbance_trans",
            [&](const std::string& v) { dist_trans = ParseScalar<double>("disturbance_trans", v); }},
           {"disturbance_rot",
            [&](const std::string& v) { dist_rot = ParseScalar<double>("disturbance_rot", v); }},
           {"disturbance_probability",
            [&](const std::string& v) { dist_prob = ParseScalar<double>("disturbance_probability", v); }},
       }},
      {"trajectory",
       {
           {"type",
            [&](const std::string& v) {
              const std::string t = boost::to_lower_copy(boost::trim_copy(v));
              if (t == "circle") c.trajectory.type = TrajectoryType::kCircle;
              else if (t == "square") c.trajectory.type = TrajectoryType::kSquare;
              else if (t == "letter") c.trajectory.type = TrajectoryType::kLetter;
              else throw ConfigError("unknown trajectory type: " + v);
            }},
           {"radius", [&](const std::string& v) { c.trajectory.radius = ParseScalar<double>("radius", v); }},
           {"side", [&](const std::string& v) { c.trajectory.side = ParseScalar<double>("side", v); }},
           {"letter",
            [&](const std::string& v) {
              const std::string t = boost::to_upper_copy(boost::trim_copy(v));
              if (t.size() != 1 || std::string("RICE").find(t[0]) == std::string::npos) {
                throw ConfigError("letter must be one of R, I, C, E");
              }
              c.trajectory.letter = t[0];
            }},
           {"scale", [&](const std::string& v) { c.trajectory.scale = ParseScalar<double>("scale", v); }},
           {"M", [&](const std::string& v) { c.trajectory.waypoints = ParseScalar<int>("M", v); }},
       }},
      {"sweep",
       {
           {"axis",
            [&](const std::string& v) {
              const std::string t = boost::to_lower_copy(boost::trim_copy(v));
              if (t == "n") s.axis = SweepAxis::kN;
              else if (t == "qxl" || t == "q_l" || t == "ql") s.axis = SweepAxis::kQxL;
              else if (t == "setting") s.axis = SweepAxis::kSetting;
              else throw ConfigError("unknown sweep axis: " + v);
            }},
           {"N", [&](const std::string& v) { s.n_values = ParseList<int>("sweep.N", v); }},
           {"Q", [&](const std::string& v) { s.q_values = ParseList<int>("sweep.Q", v); }},
           {"L", [&](const std::string& v) { s.l_values = ParseList<int>("sweep.L", v); }},
           {"settings",
            [&](const std::string& v) { s.settings = ParseList<int>("sweep.settings", v); }},
           {"shapes",
            [&](const std::string& v) {
              std::vector<std::string> parts;
              boost::split(parts, v, boost::is_any_of(","));
              s.shapes.clear();
              for (auto& p : parts) {
                boost::trim(p);
                if (!p.empty()) s.shapes.push_back(p);
              }
            }},
       }},
  };

  for (const auto& [section, body] : tree) {
    auto sec = schema.find(section);
    if (sec == schema.end()) {
      if (!body.empty() || !body.data().empty()) {
        throw ConfigError("unknown config section or top-level key: " + section);
      }
      continue;
    }
    for (const auto& [key, value] : body) {
      auto setter = sec->second.find(key);
      if (setter == sec->second.end()) {
        throw ConfigError("unknown key '" + key + "' in [" + section + "]");
      }
      setter->second(value.data());
    }
  }

  if (dist_trans || dist_rot || dist_prob) {
    Disturbance d;
    if (dist_trans) d.trans_mag = *dist_trans;
    if (dist_rot) d.rot_mag = *dist_rot;
    if (dist_prob) d.probability = *dist_prob;
    c.plant.disturbance = d;
  }
  c.Validate();
  return out;
}

LoadedConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str(),
                     std::filesystem::path(path).parent_path().string());
}

}  // namespace unopush
