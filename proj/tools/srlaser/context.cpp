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

#include "context.hpp"

#include <fstream>
#include <iostream>

namespace srl::cli {

Context::Context(GlobalOptions opts, std::vector<std::string> argv,
                 std::string command)
    : opts_(std::move(opts)), out_(opts_.out), start_(std::chrono::steady_clock::now()) {
  if (opts_.preset == "desk") preset_ = Preset::kDesk;
  else if (opts_.preset == "paper") preset_ = Preset::kPaper;
  else throw ValidationError("preset", "expected desk or paper");
  manifest_.argv = std::move(argv);
  manifest_.command = std::move(command);
  manifest_.preset = opts_.preset;
  std::filesystem::create_directories(out_);
}

PhysParams Context::params(const io::ParamsHz& defaults) {
  io::ParamsHz merged = defaults;
  if (!opts_.config.empty())
    merged = merged.overlaid(io::ParamsHz::from_key_values(io::read_key_values(opts_.config)));
  merged = merged.overlaid(opts_.overrides);
  effective_ = merged;
  return merged.resolve();
}

std::unique_ptr<io::CsvWriter> Context::csv(const std::string& name,
                                            const std::string& schema,
                                            const PhysParams& p,
                                            const std::vector<std::string>& columns,
                                            const io::Metadata& extra) {
  manifest_.outputs.push_back(name);
  return std::make_unique<io::CsvWriter>(out_ / name, schema, p, columns, extra);
}

void Context::text(const std::string& name, const std::string& content) {
  std::ofstream f(out_ / name, std::ios::binary);
  f << content;
  if (!f) throw Error("cannot write " + (out_ / name).string());
  manifest_.outputs.push_back(name);
}

void Context::warn(const std::string& message) {
  std::cerr << "warning: " << message << "\n";
}

void Context::finish(const std::string& status) {
  manifest_.config_text = effective_.to_text();
  manifest_.status = status;
  manifest_.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  {
    std::ofstream f(out_ / kConfigName, std::ios::binary);
    f << manifest_.config_text;
  }
  manifest_.write(out_ / kManifestName);
}

}  // namespace srl::cli
