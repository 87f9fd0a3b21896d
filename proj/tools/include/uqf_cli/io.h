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


#ifndef UQF_CLI_IO_H_
#define UQF_CLI_IO_H_

// JSON / JSONL serialization for models, episodes and learned automata.
// Matrices are nested row-major arrays:
//   T[s][a][s'], Z[s'][a][o], R[s][a].

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "uqf/pomdp.h"
#include "uqf/wfa.h"

namespace uqf::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Pomdp& model);
// Throws ConfigError with `where` in the message on malformed input.
Pomdp pomdp_from_json(const Json& j, const std::string& where);

Json to_json(const Wfa& wfa);
Wfa wfa_from_json(const Json& j, const std::string& where);

// One line: {"seed": .., "steps": [[a, o, r], ...]}.  Hidden states are
// not written.
std::string episode_line(const Episode& episode);
Episode episode_from_json(const Json& j, const std::string& where);

std::string read_file(const std::filesystem::path& path);  // IoError
void write_file(const std::filesystem::path& path, const std::string& data);
Json read_json(const std::filesystem::path& path);  // IoError / ConfigError

std::vector<Episode> read_episodes(const std::filesystem::path& path);
void write_episodes(const std::filesystem::path& path,
                    const std::vector<Episode>& episodes);

// Stable 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

// Shortest round-trip decimal text for a double.
std::string format_double(double x);

}  // namespace uqf::cli

#endif  // UQF_CLI_IO_H_
