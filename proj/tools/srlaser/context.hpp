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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "srlaser/io/config.hpp"
#include "srlaser/io/csv.hpp"
#include "srlaser/io/manifest.hpp"
#include "srlaser/params.hpp"

namespace srl::cli {

enum class Preset { kDesk, kPaper };

/// Flags shared by every subcommand.
struct GlobalOptions {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string preset = "desk";
  io::ParamsHz overrides;  ///< --g-hz, --kappa-hz, ..., --N
};

/// Output directory, parameter resolution and the run manifest.
class Context {
 public:
  Context(GlobalOptions opts, std::vector<std::string> argv, std::string command);

  Preset preset() const { return preset_; }
  bool paper() const { return preset_ == Preset::kPaper; }
  std::uint64_t seed() const { return opts_.seed; }
  unsigned threads() const { return opts_.threads; }
  const std::filesystem::path& out_dir() const { return out_; }

  /// `defaults` < config file < command-line overrides. Records the result
  /// in the config snapshot.
  PhysParams params(const io::ParamsHz& defaults);
  const io::ParamsHz& effective() const { return effective_; }
  /// Explicit N override, if any.
  std::optional<double> N_override() const { return opts_.overrides.N; }

  /// Opens a CSV in the output directory and lists it in the manifest.
  std::unique_ptr<io::CsvWriter> csv(const std::string& name,
                                     const std::string& schema,
                                     const PhysParams& p,
                                     const std::vector<std::string>& columns,
                                     const io::Metadata& extra = {});
  /// Writes a text file in the output directory and lists it.
  void text(const std::string& name, const std::string& content);

  void add_seed(std::uint64_t s) { manifest_.seeds.push_back(s); }
  void warn(const std::string& message);

  /// Writes config.txt and manifest.json with the given status.
  void finish(const std::string& status);

 private:
  GlobalOptions opts_;
  Preset preset_ = Preset::kDesk;
  std::filesystem::path out_;
  io::ParamsHz effective_;
  io::RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

inline constexpr const char* kManifestName = "manifest.json";
inline constexpr const char* kConfigName = "config.txt";

}  // namespace srl::cli
