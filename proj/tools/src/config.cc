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


#include "uqf_cli/config.h"

#include "uqf/envs.h"
#include "uqf/errors.h"
#include "uqf/fixtures.h"

namespace uqf::cli {
namespace {

// Reads `key` into `out` when present.
template <typename T>
void take(const Json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(where + ": key '" + key + "': " + e.what());
  }
}

const Json* section(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return nullptr;
  if (!j.at(key).is_object()) {
    throw ConfigError(where + ": key '" + key + "' must be an object");
  }
  return &j.at(key);
}

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw ConfigError(where + ": " + what);
}

}  // namespace

ExperimentConfig config_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": config must be a JSON object");
  ExperimentConfig c;
  take(j, "env", c.env, where);
  take(j, "slip", c.slip, where);
  take(j, "count", c.count, where);
  take(j, "episode_length", c.episode_length, where);
  take(j, "sizes", c.sizes, where);
  take(j, "seeds", c.seeds, where);
  take(j, "seed", c.seed, where);
  take(j, "rank", c.learn.rank, where);
  take(j, "gamma", c.learn.gamma, where);
  if (const Json* b = section(j, "basis", where)) {
    take(*b, "max_prefixes", c.learn.basis.max_prefixes, where);
    take(*b, "max_suffixes", c.learn.basis.max_suffixes, where);
    take(*b, "max_len", c.learn.basis.max_len, where);
  }
  if (const Json* s = section(j, "compressed", where)) {
    take(*s, "enabled", c.learn.compressed.enabled, where);
    take(*s, "d_u", c.learn.compressed.d_u, where);
    take(*s, "d_v", c.learn.compressed.d_v, where);
    take(*s, "seed", c.learn.compressed.seed, where);
  }
  if (const Json* e = section(j, "eval", where)) {
    take(*e, "episodes", c.eval.episodes, where);
    take(*e, "max_len", c.eval.max_len, where);
    take(*e, "gamma_eval", c.eval.gamma_eval, where);
  }
  if (const Json* it = section(j, "iterate", where)) {
    take(*it, "epsilon0", c.iterate.epsilon0, where);
    take(*it, "eta", c.iterate.eta, where);
    take(*it, "iterations", c.iterate.iterations, where);
    take(*it, "episodes_per_iter", c.iterate.episodes_per_iter, where);
  }

  require(c.count >= 1, where, "count must be >= 1");
  require(c.episode_length >= 1, where, "episode_length must be >= 1");
  require(!c.sizes.empty() && !c.seeds.empty(), where, "sizes and seeds must be non-empty");
  for (int s : c.sizes) require(s > 0, where, "sizes must be positive");
  require(c.learn.rank >= 1, where, "rank must be >= 1");
  require(c.learn.gamma >= 0.0 && c.learn.gamma < 1.0, where, "gamma must lie in [0, 1)");
  require(c.learn.basis.max_prefixes >= 1 && c.learn.basis.max_suffixes >= 1 &&
              c.learn.basis.max_len >= 1,
          where, "basis limits must be >= 1");
  require(c.learn.compressed.d_u >= 1 && c.learn.compressed.d_v >= 1, where,
          "compressed dimensions must be >= 1");
  require(c.eval.episodes >= 1 && c.eval.max_len >= 1, where,
          "eval episodes and max_len must be >= 1");
  require(c.eval.gamma_eval >= 0.0 && c.eval.gamma_eval <= 1.0, where,
          "gamma_eval must lie in [0, 1]");
  require(c.iterate.epsilon0 >= 0.0 && c.iterate.epsilon0 <= 1.0, where,
          "iterate.epsilon0 must lie in [0, 1]");
  require(c.iterate.eta > 1.0, where, "iterate.eta must be > 1");
  require(c.iterate.iterations >= 1 && c.iterate.episodes_per_iter >= 1, where,
          "iterate.iterations and iterate.episodes_per_iter must be >= 1");
  require(c.slip >= 0.0 && c.slip < 1.0, where, "slip must lie in [0, 1)");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  Json j;
  try {
    j = read_json(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return config_from_json(j, path.string());
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["env"] = c.env;
  j["slip"] = c.slip;
  j["count"] = c.count;
  j["episode_length"] = c.episode_length;
  j["sizes"] = c.sizes;
  j["seeds"] = c.seeds;
  j["seed"] = c.seed;
  j["rank"] = c.learn.rank;
  j["gamma"] = c.learn.gamma;
  j["basis"] = {{"max_prefixes", c.learn.basis.max_prefixes},
                {"max_suffixes", c.learn.basis.max_suffixes},
                {"max_len", c.learn.basis.max_len}};
  j["compressed"] = {{"enabled", c.learn.compressed.enabled},
                     {"d_u", c.learn.compressed.d_u},
                     {"d_v", c.learn.compressed.d_v},
                     {"seed", c.learn.compressed.seed}};
  j["eval"] = {{"episodes", c.eval.episodes},
               {"max_len", c.eval.max_len},
               {"gamma_eval", c.eval.gamma_eval}};
  j["iterate"] = {{"epsilon0", c.iterate.epsilon0},
                  {"eta", c.iterate.eta},
                  {"iterations", c.iterate.iterations},
                  {"episodes_per_iter", c.iterate.episodes_per_iter}};
  return j;
}

Environment resolve_env(const std::string& ref, double slip) {
  std::string name = ref;
  if (name.rfind("gridworld:", 0) == 0) name = name.substr(10);
  if (name == "A" || name == "B" || name == "C") {
    GridSpec spec = builtin_gridworld(name);
    spec.slip = slip;
    return compile_gridworld(spec).env("gridworld-" + name);
  }
  if (name == "chain") return {"chain", chain_pomdp(), std::nullopt};
  if (name == "line") return {"line", line_world(), std::nullopt};

  const std::filesystem::path path(ref);
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("env: ") + e.what());
  }
  const std::string stem = path.stem().string();
  if (path.extension() == ".json") {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
    Environment env{stem, pomdp_from_json(j, path.string()), std::nullopt};
    if (j.contains("terminal_state")) {
      const Json& t = j.at("terminal_state");
      if (!t.is_number_integer() || t.get<int>() < 0 ||
          t.get<int>() >= env.model.num_states) {
        throw ConfigError(path.string() + ": bad terminal_state");
      }
      env.terminal_state = t.get<int>();
    }
    return env;
  }
  try {
    return compile_gridworld(parse_grid(text, slip)).env(stem);
  } catch (const Error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace uqf::cli
