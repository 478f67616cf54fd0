// Copyright 2026 The srlaser Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "srlaser/params.hpp"

namespace srl::io {

/// Record of one CLI run. The argument vector, together with the config
/// snapshot stored next to it, reproduces every deterministic output.
struct RunManifest {
  std::vector<std::string> argv;
  std::string command;
  std::string preset;
  std::string config_text;  ///< effective parameters in config file format
  std::vector<std::uint64_t> seeds;
  std::string version = SRLASER_VERSION;
  std::vector<std::string> outputs;  ///< file names relative to the out dir
  double wall_seconds = 0.0;
  std::string status = "ok";

  void write(const std::filesystem::path& path) const;
  static RunManifest read(const std::filesystem::path& path);
};

}  // namespace srl::io
