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


#include "uqf_cli/commands.h"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "uqf/errors.h"
#include "uqf/planner.h"
#include "uqf/spectral.h"
#include "uqf_cli/io.h"
#include "uqf_cli/selfcheck.h"

namespace uqf::cli {
namespace {

constexpr const char* kEvalHeader = "env,train_size,seed,mean_return,stderr\n";
constexpr const char* kCurveHeader =
    "env,policy,train_size,seed,mean_return,stderr,note\n";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Appends `row`, writing `header` first if the file is new or empty.
void append_csv(const std::filesystem::path& path, const char* header,
                const std::string& row) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) ||
                     std::filesystem::file_size(path, ec) == 0;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot write " + path.string());
  if (fresh) out << header;
  out << row;
  if (!out) throw IoError("error writing " + path.string());
}

std::vector<Episode> uniform_episodes(const Environment& env, int count,
                                      int length, std::uint64_t seed) {
  HistoryPolicy uniform = HistoryPolicy::uniform(env.model.num_actions);
  return simulate(env.model, uniform, count,
                  {.length = length, .terminal_state = std::nullopt}, seed);
}

EvalResult eval_baseline(const Environment& env, const std::string& which,
                         const EvalConfig& config, std::uint64_t seed) {
  if (which == "random") {
    HistoryPolicy uniform = HistoryPolicy::uniform(env.model.num_actions);
    return evaluate_policy(env, uniform, config, seed);
  }
  if (which == "optimal") {
    const MdpSolution sol = mdp_optimal(env.model);
    StatePolicyController opt(
        StatePolicy::deterministic(sol.policy, env.model.num_actions));
    return evaluate_policy(env, opt, config, seed);
  }
  throw ConfigError("--baseline must be 'random' or 'optimal', got '" + which + "'");
}

Json report_json(const LearnReport& r, double seconds, long episodes) {
  Json j;
  j["train_size"] = episodes;
  j["singular_values"] = r.singular_values;
  j["spectral_radius"] = r.spectral_radius;
  j["num_prefixes"] = r.num_prefixes;
  j["num_suffixes"] = r.num_suffixes;
  j["rank_used"] = r.rank_used;
  j["num_examples"] = r.num_examples;
  j["compressed"] = r.compressed;
  j["wall_clock_s"] = seconds;
  return j;
}

}  // namespace

ExperimentConfig effective_config(const Options& o) {
  ExperimentConfig c = o.config ? load_config(*o.config) : ExperimentConfig{};
  if (o.env) c.env = *o.env;
  if (o.seed) c.seed = *o.seed;
  if (o.count) {
    if (*o.count < 1) throw ConfigError("--count must be >= 1");
    c.count = *o.count;
  }
  return c;
}

void cmd_sample(const Options& o, std::ostream& log) {
  const ExperimentConfig c = effective_config(o);
  const Environment env = resolve_env(c.env, c.slip);
  const auto episodes = uniform_episodes(env, c.count, c.episode_length, c.seed);
  write_episodes(o.out / "episodes.jsonl", episodes);
  Json manifest;
  manifest["env"] = env.name;
  manifest["env_hash"] = fnv1a_hex(to_json(env.model).dump());
  manifest["seed"] = c.seed;
  manifest["count"] = c.count;
  manifest["episode_length"] = c.episode_length;
  manifest["policy"] = "uniform";
  write_file(o.out / "manifest.json", manifest.dump(2) + "\n");
  log << "wrote " << c.count << " episodes to " << (o.out / "episodes.jsonl").string() << "\n";
}

void cmd_learn(const Options& o, std::ostream& log) {
  const ExperimentConfig c = effective_config(o);
  if (!o.episodes) throw ConfigError("learn requires --episodes PATH");
  const std::vector<Episode> episodes = read_episodes(*o.episodes);
  if (episodes.empty()) throw ConfigError(o.episodes->string() + ": no episodes");
  // The alphabet is taken from the environment so unseen symbols still get
  // (zero) operators.
  const Alphabet alphabet = resolve_env(c.env, c.slip).model.alphabet();

  const auto t0 = std::chrono::steady_clock::now();
  const LearnResult learned = learn_uqf(episodes, alphabet, c.learn);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json model;
  model["kind"] = "uqf";
  model["gamma"] = c.learn.gamma;
  model["train_size"] = static_cast<long>(episodes.size());
  model["wfa"] = to_json(learned.uqf);
  write_file(o.out / "model.json", model.dump() + "\n");
  write_file(o.out / "report.json",
             report_json(learned.report, seconds, static_cast<long>(episodes.size())).dump(2) + "\n");
  log << "rank " << learned.report.rank_used << ", spectral radius "
      << learned.report.spectral_radius << ", " << learned.report.num_prefixes
      << "x" << learned.report.num_suffixes << " basis\n";
}

void cmd_eval(const Options& o, std::ostream& log) {
  const ExperimentConfig c = effective_config(o);
  const Environment env = resolve_env(c.env, c.slip);
  EvalResult result;
  long train_size = 0;
  if (o.baseline) {
    result = eval_baseline(env, *o.baseline, c.eval, c.seed);
  } else {
    if (!o.model) throw ConfigError("eval requires --model PATH or --baseline");
    const Json j = read_json(*o.model);
    const std::string where = o.model->string();
    if (!j.is_object() || !j.contains("wfa")) throw ConfigError(where + ": missing 'wfa'");
    Wfa uqf = wfa_from_json(j.at("wfa"), where);
    if (!(uqf.alphabet() == env.model.alphabet())) {
      throw ConfigError(where + ": model alphabet does not match the environment");
    }
    train_size = j.value("train_size", 0L);
    GreedyPolicy policy(std::move(uqf));
    result = evaluate_policy(env, policy, c.eval, c.seed);
  }
  const std::string row = csv_field(env.name) + "," + std::to_string(train_size) + "," +
                          std::to_string(c.seed) + "," + format_double(result.mean_return) +
                          "," + format_double(result.std_error) + "\n";
  append_csv(o.out / "eval.csv", kEvalHeader, row);
  log << "mean return " << result.mean_return << " (stderr " << result.std_error << ")\n";
}

std::uint64_t curve_sample_seed(std::uint64_t seed, int size) {
  return derive_seed(derive_seed(seed, 0xc5), static_cast<std::uint64_t>(size));
}

std::uint64_t curve_eval_seed(std::uint64_t seed) { return derive_seed(seed, 0xe5); }

std::vector<CurveRow> run_curve(const ExperimentConfig& c, const Environment& env) {
  std::vector<CurveRow> rows;
  std::map<std::uint64_t, std::pair<EvalResult, EvalResult>> baselines;
  for (const int size : c.sizes) {
    for (const std::uint64_t seed : c.seeds) {
      const std::uint64_t eval_seed = curve_eval_seed(seed);
      CurveRow row{env.name, "uqf", size, seed, std::nullopt, std::nullopt, ""};
      try {
        const auto episodes =
            uniform_episodes(env, size, c.episode_length, curve_sample_seed(seed, size));
        LearnResult learned = learn_uqf(episodes, env.model.alphabet(), c.learn);
        GreedyPolicy policy(std::move(learned.uqf));
        const EvalResult r = evaluate_policy(env, policy, c.eval, eval_seed);
        row.mean_return = r.mean_return;
        row.std_error = r.std_error;
      } catch (const Error& e) {
        row.note = e.what();
      }
      rows.push_back(std::move(row));

      auto it = baselines.find(seed);
      if (it == baselines.end()) {
        it = baselines
                 .emplace(seed, std::pair{eval_baseline(env, "random", c.eval, eval_seed),
                                          eval_baseline(env, "optimal", c.eval, eval_seed)})
                 .first;
      }
      rows.push_back({env.name, "random", size, seed, it->second.first.mean_return,
                      it->second.first.std_error, ""});
      rows.push_back({env.name, "optimal", size, seed, it->second.second.mean_return,
                      it->second.second.std_error, ""});
    }
  }
  return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::string out = kCurveHeader;
  for (const CurveRow& r : rows) {
    out += csv_field(r.env) + "," + r.policy + "," + std::to_string(r.train_size) + "," +
           std::to_string(r.seed) + "," +
           (r.mean_return ? format_double(*r.mean_return) : "") + "," +
           (r.std_error ? format_double(*r.std_error) : "") + "," + csv_field(r.note) + "\n";
  }
  return out;
}

void cmd_curve(const Options& o, std::ostream& log) {
  const ExperimentConfig c = effective_config(o);
  const Environment env = resolve_env(c.env, c.slip);
  const auto rows = run_curve(c, env);
  write_file(o.out / "curve.csv", curve_csv(rows));
  int failed = 0;
  for (const CurveRow& r : rows) failed += r.note.empty() ? 0 : 1;
  log << "wrote " << rows.size() << " rows to " << (o.out / "curve.csv").string();
  if (failed > 0) log << " (" << failed << " failed cells)";
  log << "\n";
}

bool cmd_selfcheck(const Options& /*options*/, std::ostream& log) {
  bool ok = true;
  for (const CheckResult& r : run_selfcheck()) {
    ok = ok && r.passed;
    log << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  max_error=" << r.max_error
        << "  tolerance=" << r.tolerance;
    if (!r.detail.empty()) log << "  (" << r.detail << ")";
    log << "\n";
  }
  return ok;
}

void cmd_iterate(const Options& o, std::ostream& log) {
  const ExperimentConfig c = effective_config(o);
  const Environment env = resolve_env(c.env, c.slip);
  IterationConfig ic = c.iterate;
  ic.learn = c.learn;
  ic.eval = c.eval;
  ic.seed = c.seed;
  ic.episode_length = c.episode_length;
  const PolicyIterationResult result = policy_iteration(env, ic);
  std::string csv = "iter,epsilon,episodes,mean_return,stderr,spectral_radius,rank_used,note\n";
  for (const IterationMetrics& m : result.metrics) {
    csv += std::to_string(m.iter) + "," + format_double(m.epsilon) + "," +
           std::to_string(m.episodes) + "," + format_double(m.mean_return) + "," +
           format_double(m.std_error) + "," + format_double(m.spectral_radius) + "," +
           std::to_string(m.rank_used) + "," + csv_field(m.error) + "\n";
  }
  write_file(o.out / "iterate.csv", csv);
  if (result.policy) {
    Json model;
    model["kind"] = "uqf";
    model["gamma"] = c.learn.gamma;
    model["train_size"] = ic.episodes_per_iter;
    model["levels"] = result.policy->num_levels();
    model["wfa"] = to_json(result.policy->uqf());
    write_file(o.out / "model.json", model.dump() + "\n");
  }
  log << "wrote " << result.metrics.size() << " iterations to "
      << (o.out / "iterate.csv").string() << "\n";
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral UQF learning and planning"};
  app.require_subcommand(1);
  Options o;
  std::string config;
  std::string outdir = ".";
  std::uint64_t seed = 0;
  std::string env;
  std::string episodes;
  std::string model;
  std::string baseline;
  int count = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON experiment config");
    sub->add_option("--out", outdir, "Output directory");
    sub->add_option("--seed", seed, "Base random seed");
    sub->add_option("--env", env, "A|B|C|chain|line, Pomdp JSON or grid layout file");
  };
  CLI::App* sample = app.add_subcommand("sample", "Sample uniform-policy episodes");
  common(sample);
  sample->add_option("--count", count, "Number of episodes");
  CLI::App* learn = app.add_subcommand("learn", "Learn a UQF from episodes");
  common(learn);
  learn->add_option("--episodes", episodes, "Episodes JSONL")->required();
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a model or baseline");
  common(eval);
  eval->add_option("--model", model, "Model JSON from learn");
  eval->add_option("--baseline", baseline, "random or optimal")
      ->check(CLI::IsMember({"random", "optimal"}));
  CLI::App* curve = app.add_subcommand("curve", "Learning-curve sweep");
  common(curve);
  CLI::App* check = app.add_subcommand("selfcheck", "Oracle equivalence checks");
  CLI::App* iterate = app.add_subcommand("iterate", "Policy iteration");
  common(iterate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigFailure;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    auto given = [&](const char* name) {
      const CLI::Option* opt = sub->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--config")) o.config = config;
    if (given("--seed")) o.seed = seed;
    if (given("--env")) o.env = env;
    if (given("--out")) o.out = outdir;
  }
  if (sample->parsed() && sample->count("--count")) o.count = count;
  if (learn->parsed()) o.episodes = episodes;
  if (eval->parsed() && eval->count("--model")) o.model = model;
  if (eval->parsed() && eval->count("--baseline")) o.baseline = baseline;

  try {
    if (sample->parsed()) cmd_sample(o, out);
    if (learn->parsed()) cmd_learn(o, out);
    if (eval->parsed()) cmd_eval(o, out);
    if (curve->parsed()) cmd_curve(o, out);
    if (iterate->parsed()) cmd_iterate(o, out);
    if (check->parsed()) return cmd_selfcheck(o, out) ? kOk : kCheckFailed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const InvalidModelError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const Error& e) {
    err << "learning error: " << e.what() << "\n";
    return kLearningFailure;
  }
  return kOk;
}

}  // namespace uqf::cli
