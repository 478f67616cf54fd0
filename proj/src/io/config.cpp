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

#include "srlaser/io/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "srlaser/io/csv.hpp"

namespace srl::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& source) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw ValidationError(where, "expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ValidationError(where, "empty key");
    if (!kv.emplace(key, value).second)
      throw ValidationError(key, "repeated in " + source);
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open " + path.string());
  return parse_key_values(in, path.string());
}

double parse_double(const std::string& text, const std::string& field) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw ValidationError(field, "not a finite number: '" + text + "'");
  return v;
}

ParamsHz ParamsHz::from_key_values(const KeyValues& kv) {
  ParamsHz p;
  for (const auto& [key, value] : kv) {
    const double v = parse_double(value, key);
    if (key == "g_hz") p.g_hz = v;
    else if (key == "kappa_hz") p.kappa_hz = v;
    else if (key == "gamma_hz") p.gamma_hz = v;
    else if (key == "gammaR_hz") p.gammaR_hz = v;
    else if (key == "Gamma_hz") p.Gamma_hz = v;
    else if (key == "N") p.N = v;
    else throw ValidationError(key, "unknown config key");
  }
  if (p.gammaR_hz && p.Gamma_hz)
    throw ValidationError("Gamma_hz", "give exactly one of gammaR_hz and Gamma_hz");
  return p;
}

ParamsHz ParamsHz::from_params(const PhysParams& p) {
  ParamsHz h;
  h.g_hz = angular_to_hz(p.g);
  h.kappa_hz = angular_to_hz(p.kappa);
  h.gamma_hz = angular_to_hz(p.gamma);
  h.Gamma_hz = angular_to_hz(p.Gamma);
  h.N = p.N;
  return h;
}

ParamsHz ParamsHz::overlaid(const ParamsHz& over) const {
  if (over.gammaR_hz && over.Gamma_hz)
    throw ValidationError("Gamma_hz", "give exactly one of gammaR_hz and Gamma_hz");
  ParamsHz out = *this;
  if (over.g_hz) out.g_hz = over.g_hz;
  if (over.kappa_hz) out.kappa_hz = over.kappa_hz;
  if (over.gamma_hz) out.gamma_hz = over.gamma_hz;
  if (over.N) out.N = over.N;
  if (over.gammaR_hz || over.Gamma_hz) {
    out.gammaR_hz = over.gammaR_hz;
    out.Gamma_hz = over.Gamma_hz;
  }
  return out;
}

PhysParams ParamsHz::resolve() const {
  if (!g_hz) throw ValidationError("g_hz", "not set");
  if (!kappa_hz) throw ValidationError("kappa_hz", "not set");
  if (!N) throw ValidationError("N", "not set");
  if (gammaR_hz && Gamma_hz)
    throw ValidationError("Gamma_hz", "give exactly one of gammaR_hz and Gamma_hz");
  double Gamma = 0.0;
  if (Gamma_hz) Gamma = *Gamma_hz;
  if (gammaR_hz) Gamma = *N * *gammaR_hz;
  PhysParams p = PhysParams::from_hz(*g_hz, *kappa_hz, gamma_hz.value_or(0.0),
                                     Gamma, *N);
  check(p);
  return p;
}

std::string ParamsHz::to_text() const {
  std::ostringstream os;
  auto put = [&os](const char* key, const std::optional<double>& v) {
    if (v) os << key << " = " << format_double(*v) << "\n";
  };
  put("g_hz", g_hz);
  put("kappa_hz", kappa_hz);
  put("gamma_hz", gamma_hz);
  put("gammaR_hz", gammaR_hz);
  put("Gamma_hz", Gamma_hz);
  put("N", N);
  return os.str();
}

}  // namespace srl::io
