// Copyright The skewsep Authors
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

#include "skewsep/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "skewsep/errors.hpp"

namespace skewsep {

nlohmann::ordered_json state_to_json(const DensityMatrix& rho) {
  nlohmann::ordered_json j;
  j["dA"] = rho.dA();
  j["dB"] = rho.dB();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& z : rho.matrix().data()) entries.push_back({z.real(), z.imag()});
  j["entries"] = std::move(entries);
  return j;
}

DensityMatrix state_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("state file must hold a JSON object");
    const std::size_t dA = j.at("dA").get<std::size_t>();
    const std::size_t dB = j.at("dB").get<std::size_t>();
    const auto& entries = j.at("entries");
    const std::size_t n = dA * dB;
    if (dA == 0 || dB == 0 || !entries.is_array() || entries.size() != n * n) {
      throw InputError("state file: expected " + std::to_string(n * n) + " entries");
    }
    std::vector<cplx> data;
    data.reserve(n * n);
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2) throw InputError("state file: entries must be [re, im] pairs");
      data.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return DensityMatrix(ComplexMatrix(n, n, std::move(data)), dA, dB);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("state file: ") + e.what());
  } catch (const Error& e) {
    throw InputError(std::string("state file: ") + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

DensityMatrix load_state(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("state file is not JSON: ") + e.what());
  }
  return state_from_json(j);
}

void save_state(const DensityMatrix& rho, const std::filesystem::path& path) {
  write_text(path, state_to_json(rho).dump(2) + "\n");
}

std::string format_g12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace skewsep
