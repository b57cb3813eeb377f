// Copyright 2026 The pmcov Authors.
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

#include "pmcov/grid.hpp"

namespace pmcov {

// Flat binary grid dump, all numbers little-endian:
//
//   offset  size  content
//   0       8     magic "PMCOVGRD"
//   8       1     version (1)
//   9       4     nx (uint32)
//   13      4     ny (uint32)
//   17      8     lx (float64)
//   25      8     ly (float64)
//   33      8*n   values (float64), row-major, x fastest
inline constexpr char kGridMagic[8] = {'P', 'M', 'C', 'O', 'V', 'G', 'R', 'D'};
inline constexpr std::uint8_t kGridVersion = 1;
inline constexpr std::size_t kGridHeaderSize = 33;

void write_grid(const std::filesystem::path& path, const ScalarField& f);
/// Throws IoError on a missing file, bad magic/version, or truncated payload.
ScalarField read_grid(const std::filesystem::path& path);

}  // namespace pmcov
