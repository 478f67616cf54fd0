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

#include "srlaser/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace srl::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string params_json(const PhysParams& p) {
  nlohmann::ordered_json j;
  j["g_hz"] = angular_to_hz(p.g);
  j["kappa_hz"] = angular_to_hz(p.kappa);
  j["gamma_hz"] = angular_to_hz(p.gamma);
  j["Gamma_hz"] = angular_to_hz(p.Gamma);
  j["gammaR_hz"] = angular_to_hz(p.gamma_r());
  j["N"] = p.N;
  return j.dump();
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::string& schema, const PhysParams& params,
                     const std::vector<std::string>& columns,
                     const Metadata& extra)
    : path_(path), out_(path, std::ios::binary), columns_(columns.size()) {
  if (!out_) throw Error("cannot write " + path.string());
  out_ << "# schema: " << schema << "\n";
  out_ << "# params: " << params_json(params) << "\n";
  for (const auto& [k, v] : extra) out_ << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_)
    throw Error(path_.string() + ": row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) out_ << format_double(v);
          else out_ << v;
        },
        cells[i]);
  }
  out_ << '\n';
  ++rows_;
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<Cell> cells(values.begin(), values.end());
  row(cells);
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw Error("write failed: " + path_.string());
  out_.close();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw Error("no column " + name);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      if (c == "nan") row.push_back(std::numeric_limits<double>::quiet_NaN());
      else if (c == "inf") row.push_back(std::numeric_limits<double>::infinity());
      else if (c == "-inf") row.push_back(-std::numeric_limits<double>::infinity());
      else {
        double v = std::numeric_limits<double>::quiet_NaN();
        std::from_chars(c.data(), c.data() + c.size(), v);
        row.push_back(v);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace srl::io
