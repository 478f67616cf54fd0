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

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "srlaser/params.hpp"

namespace srl::io {

using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// skipped; a repeated key is an error. `source` names the input in errors.
KeyValues parse_key_values(std::istream& in, const std::string& source);
KeyValues read_key_values(const std::filesystem::path& path);

/// Physical parameters as they appear at the interfaces, in Hz. Unset fields
/// fall through to the next layer.
struct ParamsHz {
  std::optional<double> g_hz;
  std::optional<double> kappa_hz;
  std::optional<double> gamma_hz;
  std::optional<double> gammaR_hz;  ///< refreshing rate Gamma_R/2pi
  std::optional<double> Gamma_hz;   ///< loading rate Gamma/2pi
  std::optional<double> N;

  /// Reads the parameter keys of a config file. Unknown keys and files
  /// giving both gammaR_hz and Gamma_hz are rejected.
  static ParamsHz from_key_values(const KeyValues& kv);
  static ParamsHz from_params(const PhysParams& p);

  /// Fields set in `over` replace ours. A loading rate in `over` replaces
  /// either form of loading rate here.
  ParamsHz overlaid(const ParamsHz& over) const;

  /// Converts to angular rates. Every field except one loading rate must be
  /// set; a missing loading rate means Gamma = 0.
  PhysParams resolve() const;

  /// Flat key/value text in the config file format.
  std::string to_text() const;
};

/// Parses a finite double; `field` names the value in the error.
double parse_double(const std::string& text, const std::string& field);

}  // namespace srl::io
