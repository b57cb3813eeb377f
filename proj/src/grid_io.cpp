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

#include "pmcov/grid_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmcov/errors.hpp"

namespace pmcov {

namespace {

template <typename T>
void put_le(std::vector<unsigned char>& buf, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  buf.insert(buf.end(), bytes, bytes + sizeof(T));
}

template <typename T>
T get_le(const unsigned char* p) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_grid(const std::filesystem::path& path, const ScalarField& f) {
  const Grid2D& g = f.grid();
  std::vector<unsigned char> buf;
  buf.reserve(kGridHeaderSize + 8 * f.size());
  buf.insert(buf.end(), std::begin(kGridMagic), std::end(kGridMagic));
  buf.push_back(kGridVersion);
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(g.nx()));
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(g.ny()));
  put_le<double>(buf, g.lx());
  put_le<double>(buf, g.ly());
  for (double v : f.values()) put_le<double>(buf, v);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

ScalarField read_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kGridHeaderSize) throw IoError(path.string() + ": truncated header");
  if (std::memcmp(buf.data(), kGridMagic, sizeof(kGridMagic)) != 0) {
    throw IoError(path.string() + ": not a grid dump (bad magic)");
  }
  if (buf[8] != kGridVersion) {
    throw IoError(path.string() + ": unsupported version " + std::to_string(buf[8]));
  }
  const auto nx = get_le<std::uint32_t>(buf.data() + 9);
  const auto ny = get_le<std::uint32_t>(buf.data() + 13);
  const auto lx = get_le<double>(buf.data() + 17);
  const auto ly = get_le<double>(buf.data() + 25);
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  if (buf.size() != kGridHeaderSize + 8 * n) {
    throw IoError(path.string() + ": payload size does not match " + std::to_string(nx) + "x" +
                  std::to_string(ny));
  }
  std::optional<Grid2D> grid;
  try {
    grid.emplace(nx, ny, lx, ly);
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = get_le<double>(buf.data() + kGridHeaderSize + 8 * k);
  return ScalarField(*grid, std::move(values));
}

}  // namespace pmcov
