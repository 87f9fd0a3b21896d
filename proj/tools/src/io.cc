// Copyright 2026 The UQF Authors.
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


#include "uqf_cli/io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "uqf/errors.h"

namespace uqf::cli {
namespace {

Json matrix_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Eigen::VectorXd& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* key, const std::string& where) {
  try {
    return field(j, key, where).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(where + ": field '" + key + "': " + e.what());
  }
}

Eigen::VectorXd vector_from(const Json& j, const char* key, int n,
                            const std::string& where) {
  const auto v = get_as<std::vector<double>>(j, key, where);
  if (static_cast<int>(v.size()) != n) {
    throw ConfigError(where + ": field '" + key + "' must have length " +
                      std::to_string(n));
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), n);
}

}  // namespace

Json to_json(const Pomdp& m) {
  Json t = Json::array();
  Json z = Json::array();
  for (int s = 0; s < m.num_states; ++s) {
    Json ts = Json::array();
    Json zs = Json::array();
    for (int a = 0; a < m.num_actions; ++a) {
      ts.push_back(vector_json(m.transition[static_cast<std::size_t>(a)].row(s).transpose()));
      zs.push_back(vector_json(m.emission[static_cast<std::size_t>(a)].row(s).transpose()));
    }
    t.push_back(std::move(ts));
    z.push_back(std::move(zs));
  }
  Json j;
  j["num_states"] = m.num_states;
  j["num_actions"] = m.num_actions;
  j["num_obs"] = m.num_obs;
  j["T"] = std::move(t);
  j["Z"] = std::move(z);
  j["R"] = matrix_rows(m.reward);
  j["mu"] = vector_json(m.initial);
  j["gamma"] = m.gamma;
  return j;
}

Pomdp pomdp_from_json(const Json& j, const std::string& where) {
  Pomdp m;
  m.num_states = get_as<int>(j, "num_states", where);
  m.num_actions = get_as<int>(j, "num_actions", where);
  m.num_obs = get_as<int>(j, "num_obs", where);
  if (m.num_states < 1 || m.num_actions < 1 || m.num_obs < 1) {
    throw ConfigError(where + ": sizes must be >= 1");
  }
  const int k = m.num_states;
  const auto t = get_as<std::vector<std::vector<std::vector<double>>>>(j, "T", where);
  const auto z = get_as<std::vector<std::vector<std::vector<double>>>>(j, "Z", where);
  const auto r = get_as<std::vector<std::vector<double>>>(j, "R", where);
  auto bad_shape = [&](const char* name) {
    return ConfigError(where + ": field '" + name + "' has the wrong shape");
  };
  if (static_cast<int>(t.size()) != k) throw bad_shape("T");
  if (static_cast<int>(z.size()) != k) throw bad_shape("Z");
  if (static_cast<int>(r.size()) != k) throw bad_shape("R");
  m.transition.assign(static_cast<std::size_t>(m.num_actions), Eigen::MatrixXd(k, k));
  m.emission.assign(static_cast<std::size_t>(m.num_actions), Eigen::MatrixXd(k, m.num_obs));
  m.reward.resize(k, m.num_actions);
  for (int s = 0; s < k; ++s) {
    const auto si = static_cast<std::size_t>(s);
    if (static_cast<int>(t[si].size()) != m.num_actions) throw bad_shape("T");
    if (static_cast<int>(z[si].size()) != m.num_actions) throw bad_shape("Z");
    if (static_cast<int>(r[si].size()) != m.num_actions) throw bad_shape("R");
    for (int a = 0; a < m.num_actions; ++a) {
      const auto ai = static_cast<std::size_t>(a);
      if (static_cast<int>(t[si][ai].size()) != k) throw bad_shape("T");
      if (static_cast<int>(z[si][ai].size()) != m.num_obs) throw bad_shape("Z");
      for (int s2 = 0; s2 < k; ++s2) m.transition[ai](s, s2) = t[si][ai][static_cast<std::size_t>(s2)];
      for (int o = 0; o < m.num_obs; ++o) m.emission[ai](s, o) = z[si][ai][static_cast<std::size_t>(o)];
      m.reward(s, a) = r[si][ai];
    }
  }
  m.initial = vector_from(j, "mu", k, where);
  m.gamma = get_as<double>(j, "gamma", where);
  const ValidationReport report = validate(m);
  if (!report.empty()) {
    throw ConfigError(where + ": invalid model: " + report.front().path + " " +
                      report.front().message);
  }
  return m;
}

Json to_json(const Wfa& wfa) {
  Json j;
  j["num_states"] = wfa.num_states();
  j["num_actions"] = wfa.alphabet().num_actions;
  j["num_obs"] = wfa.alphabet().num_obs;
  j["alpha"] = vector_json(wfa.alpha());
  j["omega"] = vector_json(wfa.omega());
  Json transitions = Json::array();
  for (const auto& m : wfa.transitions()) transitions.push_back(matrix_rows(m));
  j["transitions"] = std::move(transitions);  // indexed by a * num_obs + o
  return j;
}

Wfa wfa_from_json(const Json& j, const std::string& where) {
  const int n = get_as<int>(j, "num_states", where);
  const Alphabet alphabet{get_as<int>(j, "num_actions", where),
                          get_as<int>(j, "num_obs", where)};
  if (n < 1 || alphabet.num_actions < 1 || alphabet.num_obs < 1) {
    throw ConfigError(where + ": sizes must be >= 1");
  }
  const auto raw = get_as<std::vector<std::vector<std::vector<double>>>>(
      j, "transitions", where);
  if (static_cast<int>(raw.size()) != alphabet.size()) {
    throw ConfigError(where + ": expected " + std::to_string(alphabet.size()) +
                      " transition matrices");
  }
  std::vector<Eigen::MatrixXd> transitions;
  for (const auto& rows : raw) {
    Eigen::MatrixXd m(n, n);
    if (static_cast<int>(rows.size()) != n) throw ConfigError(where + ": bad transition shape");
    for (int i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<int>(row.size()) != n) throw ConfigError(where + ": bad transition shape");
      for (int c = 0; c < n; ++c) m(i, c) = row[static_cast<std::size_t>(c)];
    }
    transitions.push_back(std::move(m));
  }
  try {
    return Wfa(alphabet, vector_from(j, "alpha", n, where), std::move(transitions),
               vector_from(j, "omega", n, where));
  } catch (const InvalidModelError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::string episode_line(const Episode& episode) {
  Json steps = Json::array();
  for (const Step& s : episode.steps) {
    steps.push_back(Json::array({s.symbol.action, s.symbol.observation, s.reward}));
  }
  Json j;
  j["seed"] = episode.seed;
  j["steps"] = std::move(steps);
  return j.dump();
}

Episode episode_from_json(const Json& j, const std::string& where) {
  Episode ep;
  ep.seed = get_as<std::uint64_t>(j, "seed", where);
  const Json& steps = field(j, "steps", where);
  if (!steps.is_array()) throw ConfigError(where + ": 'steps' must be an array");
  for (const Json& s : steps) {
    if (!s.is_array() || s.size() != 3 || !s[0].is_number_integer() ||
        !s[1].is_number_integer() || !s[2].is_number()) {
      throw ConfigError(where + ": each step must be [action, observation, reward]");
    }
    ep.steps.push_back({{s[0].get<int>(), s[1].get<int>()}, s[2].get<double>(), -1});
  }
  return ep;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << data;
  if (!out) throw IoError("error writing " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<Episode> read_episodes(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<Episode> episodes;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(number);
    try {
      episodes.push_back(episode_from_json(Json::parse(line), where));
    } catch (const Json::parse_error& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return episodes;
}

void write_episodes(const std::filesystem::path& path,
                    const std::vector<Episode>& episodes) {
  std::string out;
  for (const Episode& ep : episodes) {
    out += episode_line(ep);
    out += '\n';
  }
  write_file(path, out);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace uqf::cli
