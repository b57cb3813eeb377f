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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "pmcov/density.hpp"
#include "pmcov/errors.hpp"
#include "pmcov/grid_io.hpp"

using namespace pmcov;
using namespace pmcov::test;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "pmcov_density_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void check_invariants(const TargetDensity& d) {
  for (double v : d.field().values()) REQUIRE(v >= 0.0);
  CHECK(d.field().integral() == doctest::Approx(1.0).epsilon(1e-12));
}

TargetDensity unit_circle_square(const Grid2D& g) {
  return circle_square(g, 0.1 * g.lx(), 0.3 * g.lx(), 0.35 * g.lx(), {0.5 * g.lx(), 0.5 * g.ly()});
}

}  // namespace

TEST_SUITE("density") {

TEST_CASE("circle-square is positive at the center and zero between square and ring") {
  const Grid2D g(64, 64);
  const auto d = unit_circle_square(g);
  CHECK(d.field()(32, 32) > 0.0);
  CHECK(d.field()(31, 31) > 0.0);
  CHECK(d.field()(1, 1) == 0.0);
  CHECK(d.field()(32, 32 + 13) == 0.0);  // y = 0.71: between square and ring
  CHECK(d.field()(32, 32 + 20) > 0.0);   // y = 0.82: inside the ring
  check_invariants(d);
  // Indicator-valued: every positive cell holds the same value.
  const double top = d.field().max_abs();
  for (double v : d.field().values()) CHECK((v == 0.0 || v == top));
}

TEST_CASE("circle-square rejects degenerate geometry") {
  const Grid2D g(32, 32);
  CHECK_THROWS_AS(circle_square(g, 0.1, 0.35, 0.3, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(circle_square(g, 0.1, 0.3, 0.3, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(circle_square(g, 0.1, 0.3, 0.6, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(circle_square(g, -0.1, 0.3, 0.35, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("gaussian stripe is zero inside the band and symmetric about the mean") {
  const Grid2D g(64, 64);
  const auto d = gaussian_stripe(g, {0.5, 0.5}, {0.0225, 0.0, 0.0225}, StripeAxis::Y, 0.05);
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(d.field()(i, 31) == 0.0);
    CHECK(d.field()(i, 32) == 0.0);
  }
  CHECK(d.field()(20, 10) > 0.0);
  CHECK(d.field()(20, 10) == doctest::Approx(d.field()(63 - 20, 63 - 10)).epsilon(1e-15));
  CHECK(d.field()(5, 50) == doctest::Approx(d.field()(50, 5)).epsilon(1e-15));
  check_invariants(d);

  const auto dx = gaussian_stripe(g, {0.5, 0.5}, {0.0225, 0.0, 0.0225}, StripeAxis::X, 0.05);
  CHECK(dx.field()(32, 7) == 0.0);
  CHECK(dx.field()(7, 32) > 0.0);
}

TEST_CASE("gaussian stripe errors") {
  const Grid2D g(16, 16);
  CHECK_THROWS_AS(gaussian_stripe(g, {0.5, 0.5}, {0.01, 0.0, 0.01}, StripeAxis::Y, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_stripe(g, {0.5, 0.5}, {0.01, 0.02, 0.01}, StripeAxis::Y, 0.1), std::invalid_argument);
}

TEST_CASE("bimodal mixture peaks at its means and is swap-symmetric") {
  const Grid2D g(64, 64);
  const Covariance cov{0.0225, 0.0, 0.0225};
  const auto d = bimodal_gaussian(g, {Point{0.3, 0.3}, Point{0.7, 0.7}}, {cov, cov});
  for (double v : d.field().values()) CHECK(v > 0.0);
  check_invariants(d);
  // Cells 19 and 44 hold the means 0.3 and 0.7 (0.3 * 64 = 19.2).
  for (const auto [ci, cj] : {std::pair{19, 19}, std::pair{44, 44}}) {
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        CHECK(d.field()(ci, cj) >= d.field()(ci + di, cj + dj));
      }
    }
  }
  for (std::size_t j = 0; j < 64; ++j) {
    for (std::size_t i = 0; i < 64; ++i) {
      CHECK(d.field()(i, j) == doctest::Approx(d.field()(63 - i, 63 - j)).epsilon(1e-14));
      CHECK(d.field()(i, j) == doctest::Approx(d.field()(j, i)).epsilon(1e-14));
    }
  }
}

TEST_CASE("constructors satisfy the density invariants for random parameters") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const double L = 0.5 + 100.0 * rng.uniform();
    const Grid2D g(32, 48, L, L * (0.5 + rng.uniform()));
    const double m = std::min(g.lx(), g.ly());
    const double outer = m * (0.15 + 0.3 * rng.uniform());
    const double inner = outer * (0.3 + 0.6 * rng.uniform());
    check_invariants(circle_square(g, 0.5 * inner * rng.uniform() + 0.05 * m, inner, outer,
                                   {0.5 * g.lx(), 0.5 * g.ly()}));
    const double s2 = std::pow(m * (0.05 + 0.3 * rng.uniform()), 2);
    const Covariance c{s2, 0.3 * s2 * (2 * rng.uniform() - 1), s2 * (0.5 + rng.uniform())};
    const Point mean{g.lx() * (0.2 + 0.6 * rng.uniform()), g.ly() * (0.2 + 0.6 * rng.uniform())};
    check_invariants(gaussian_stripe(g, mean, c, rng.uniform() < 0.5 ? StripeAxis::X : StripeAxis::Y,
                                     0.1 * m * rng.uniform()));
    check_invariants(bimodal_gaussian(g, {mean, Point{g.lx() - mean.x, g.ly() - mean.y}}, {c, c}));
  }
}

TEST_CASE("normalize is idempotent") {
  Rng rng(4);
  const Grid2D g(32, 32, 3.0, 7.0);
  const auto once = normalize(random_field(g, rng, 0.0, 5.0));
  const auto twice = normalize(once);
  CHECK(max_diff(once, twice) <= 1e-15 * once.max_abs());
}

TEST_CASE("target density refuses invalid fields") {
  const Grid2D g(8, 8);
  CHECK_THROWS_AS(TargetDensity(ScalarField(g, 0.0), "zero"), std::invalid_argument);
  ScalarField neg(g, 1.0);
  neg(2, 3) = -1e-9;
  CHECK_THROWS_AS(TargetDensity(neg, "neg"), std::invalid_argument);
  ScalarField nan(g, 1.0);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(TargetDensity(nan, "nan"), std::invalid_argument);
}

TEST_CASE("grid dump header layout") {
  const Grid2D g(8, 10, 1.5, 2.5);
  ScalarField f(g);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = static_cast<double>(k) * 0.25;
  const auto path = temp_path("layout.grid");
  write_grid(path, f);
  CHECK(std::filesystem::file_size(path) == kGridHeaderSize + 8 * 80);
  std::ifstream in(path, std::ios::binary);
  char magic[8];
  in.read(magic, 8);
  CHECK(std::memcmp(magic, "PMCOVGRD", 8) == 0);
  CHECK(in.get() == 1);
  const auto back = read_grid(path);
  CHECK(back.grid() == g);
  CHECK(max_diff(back, f) == 0.0);
}

TEST_CASE("density dump reloads identically") {
  const Grid2D g(32, 32, 2.0, 2.0);
  const auto d = unit_circle_square(g);
  const auto path = temp_path("density.grid");
  write_grid(path, d.field());
  const auto back = load_density(path);
  CHECK(max_diff(back.field(), d.field()) <= 1e-15 * d.field().max_abs());
  CHECK(load_density(path, g).grid() == g);
}

TEST_CASE("load_density errors") {
  const Grid2D g(8, 8);
  ScalarField bad(g, 1.0);
  bad(3, 3) = -0.5;
  const auto neg = temp_path("neg.grid");
  write_grid(neg, bad);
  CHECK_THROWS_AS(load_density(neg), IoError);

  const auto zero = temp_path("zero.grid");
  write_grid(zero, ScalarField(g, 0.0));
  CHECK_THROWS_AS(load_density(zero), IoError);

  const auto ok = temp_path("ok.grid");
  write_grid(ok, ScalarField(g, 1.0));
  CHECK_THROWS_AS(load_density(ok, Grid2D(16, 16)), IoError);

  CHECK_THROWS_AS(load_density(temp_path("missing.grid")), IoError);

  const auto junk = temp_path("junk.grid");
  std::ofstream(junk) << "not a grid";
  CHECK_THROWS_AS(load_density(junk), IoError);

  const auto cut = temp_path("cut.grid");
  write_grid(cut, ScalarField(g, 1.0));
  std::filesystem::resize_file(cut, kGridHeaderSize + 8 * 10);
  CHECK_THROWS_AS(read_grid(cut), IoError);
}

}
