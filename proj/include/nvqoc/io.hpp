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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nvqoc/krotov.hpp"

namespace nvqoc {

// Pulse files: CSV, header `t_us,bx_gauss,by_gauss`, one row per grid
// point. Doubles are printed with 17 significant digits so files are
// bit-stable and round-trip exactly.
void write_pulse_csv(const std::string& path, const ControlField& field);
ControlField read_pulse_csv(const std::string& path);

// Convergence log: CSV `iter,k,j,delta_norm`.
void write_convergence_csv(const std::string& path, const std::vector<IterationRecord>& log);

// Summary: `key: value` lines.
void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& entries);

std::string format_double(double v);

/// FNV-1a, used to fingerprint configs in summaries.
std::uint64_t fnv1a(const std::string& data);

}  // namespace nvqoc
