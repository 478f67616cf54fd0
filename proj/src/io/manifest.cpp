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

#include "srlaser/io/manifest.hpp"

#include <fstream>

#include <json.hpp>

namespace srl::io {

void RunManifest::write(const std::filesystem::path& path) const {
  nlohmann::ordered_json j;
  j["argv"] = argv;
  j["command"] = command;
  j["preset"] = preset;
  j["config"] = config_text;
  j["seeds"] = seeds;
  j["version"] = version;
  j["outputs"] = outputs;
  j["wall_seconds"] = wall_seconds;
  j["status"] = status;
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << "\n";
  if (!out) throw Error("cannot write " + path.string());
}

RunManifest RunManifest::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  const auto j = nlohmann::json::parse(in);
  RunManifest m;
  m.argv = j.at("argv").get<std::vector<std::string>>();
  m.command = j.at("command").get<std::string>();
  m.preset = j.value("preset", std::string());
  m.config_text = j.value("config", std::string());
  m.seeds = j.value("seeds", std::vector<std::uint64_t>{});
  m.version = j.at("version").get<std::string>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.wall_seconds = j.value("wall_seconds", 0.0);
  m.status = j.value("status", std::string("ok"));
  return m;
}

}  // namespace srl::io
