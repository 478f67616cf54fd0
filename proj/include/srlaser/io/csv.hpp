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
#include <fstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "srlaser/params.hpp"

namespace srl::io {

/// Shortest text that reads back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_double(double v);

/// JSON object with every parameter in Hz plus N.
std::string params_json(const PhysParams& p);

using Cell = std::variant<double, std::int64_t, std::string>;
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// UTF-8 CSV with a '#' preamble: schema id, parameter set as JSON, then any
/// extra metadata, then one header row.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& schema,
            const PhysParams& params, const std::vector<std::string>& columns,
            const Metadata& extra = {});

  void row(const std::vector<Cell>& cells);
  void row(const std::vector<double>& values);
  /// Flushes and checks the stream; throws Error on I/O failure.
  void close();

  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return columns_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
  std::size_t rows_ = 0;
};

/// Reads a file written by CsvWriter: '#' lines are returned raw (without the
/// marker) and data cells are parsed as doubles.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace srl::io
