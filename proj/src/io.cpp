// Copyright 2026 The nvqoc Authors.
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

#include "nvqoc/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nvqoc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_pulse_csv(const std::string& path, const ControlField& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "t_us,bx_gauss,by_gauss\n";
  for (std::size_t k = 0; k < field.t.size(); ++k) {
    const double bx = field.channels.size() > 0 ? field.channels[0][k] : 0.0;
    const double by = field.channels.size() > 1 ? field.channels[1][k] : 0.0;
    out << format_double(field.t[k]) << ',' << format_double(bx) << ',' << format_double(by)
        << '\n';
  }
}

ControlField read_pulse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pulse file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "t_us,bx_gauss,by_gauss") {
    throw std::runtime_error("bad pulse file header in " + path);
  }
  ControlField field;
  field.channels.assign(2, {});
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double vals[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(row, cell, ',')) {
        throw std::runtime_error("short row in pulse file " + path);
      }
      vals[i] = std::stod(cell);
    }
    field.t.push_back(vals[0]);
    field.channels[0].push_back(vals[1]);
    field.channels[1].push_back(vals[2]);
  }
  if (field.t.size() < 2) throw std::runtime_error("pulse file has no grid: " + path);
  return field;
}

void write_convergence_csv(const std::string& path, const std::vector<IterationRecord>& log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "iter,k,j,delta_norm\n";
  for (const auto& rec : log) {
    out << rec.iter << ',' << format_double(rec.k) << ',' << format_double(rec.j) << ','
        << format_double(rec.delta_norm) << '\n';
  }
}

void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& [key, value] : entries) {
    out << key << ": " << value << '\n';
  }
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace nvqoc
