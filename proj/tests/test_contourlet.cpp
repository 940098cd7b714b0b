#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "mfusion/contourlet.hpp"
#include "test_helpers.hpp"

using namespace mfusion;
using mfusion::testing::max_abs_diff;
using mfusion::testing::random_image;

TEST_CASE("laplacian pyramid of a constant image") {
  const Image img(32, 32, 7.5);
  const LaplacianPyramid pyr = lp_analysis(img, 2);
  for (double v : pyr.coarse.samples) CHECK(v == doctest::Approx(7.5).epsilon(1e-12));
  for (const Image& band : pyr.bandpass) {
    for (double v : band.samples) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("laplacian pyramid level shapes") {
  std::mt19937 rng(1);
  const Image img = random_image(64, 64, rng);
  const LaplacianPyramid pyr = lp_analysis(img, 2);
  CHECK(pyr.bandpass[0].height == 64);
  CHECK(pyr.bandpass[0].width == 64);
  CHECK(pyr.bandpass[1].height == 32);
  CHECK(pyr.bandpass[1].width == 32);
  CHECK(pyr.coarse.height == 16);
  CHECK(pyr.coarse.width == 16);
}

TEST_CASE("laplacian pyramid perfect reconstruction") {
  std::mt19937 rng(2);
  for (int levels : {1, 2, 3}) {
    const Image x = random_image(64, 64, rng);
    CHECK(max_abs_diff(lp_synthesis(lp_analysis(x, levels)), x) <= 1e-12);
  }
  // odd dims take the padding path
  const Image odd = random_image(53, 41, rng);
  CHECK(max_abs_diff(lp_synthesis(lp_analysis(odd, 2)), odd) <= 1e-12);
}

TEST_CASE("bandpass plus expanded coarse reconstructs the input") {
  std::mt19937 rng(3);
  const Image x = random_image(32, 32, rng);
  const LaplacianPyramid pyr = lp_analysis(x, 1);
  Image recon = lp_expand(pyr.coarse);
  for (std::size_t i = 0; i < recon.samples.size(); ++i) {
    recon.samples[i] += pyr.bandpass[0].samples[i];
  }
  // d = x - expand(c) by construction; e + (x - e) rounds, so only
  // float-level equality holds
  CHECK(max_abs_diff(recon, x) <= 1e-12);
}

TEST_CASE("zeroed coarse removes exactly the lowpass contribution") {
  std::mt19937 rng(4);
  const Image x = random_image(32, 32, rng);
  LaplacianPyramid pyr = lp_analysis(x, 1);
  const Image lowpass_part = lp_expand(pyr.coarse);
  for (double& v : pyr.coarse.samples) v = 0.0;
  const Image out = lp_synthesis(pyr);
  Image expected = x;
  for (std::size_t i = 0; i < expected.samples.size(); ++i) {
    expected.samples[i] -= lowpass_part.samples[i];
  }
  CHECK(max_abs_diff(out, expected) <= 1e-12);
}

TEST_CASE("fan split shapes and sample conservation") {
  std::mt19937 rng(5);
  const Image x = random_image(64, 64, rng);
  const auto [ch0, ch1] = fan_split(x);
  CHECK(ch0.height == 64);
  CHECK(ch0.width == 32);
  CHECK(ch1.height == 64);
  CHECK(ch1.width == 32);
  CHECK(ch0.samples.size() + ch1.samples.size() == x.samples.size());
  CHECK_THROWS_AS(fan_split(Image(4, 5)), DimensionError);
}

TEST_CASE("fan split/merge roundtrip and linearity") {
  std::mt19937 rng(6);
  const Image x = random_image(64, 64, rng);
  const Image y = random_image(64, 64, rng);
  {
    const auto [c0, c1] = fan_split(x);
    CHECK(max_abs_diff(fan_merge(c0, c1), x) <= 1e-12);
  }
  {
    Image sum(64, 64);
    for (std::size_t i = 0; i < sum.samples.size(); ++i) {
      sum.samples[i] = x.samples[i] + y.samples[i];
    }
    const auto [s0, s1] = fan_split(sum);
    const auto [x0, x1] = fan_split(x);
    const auto [y0, y1] = fan_split(y);
    CHECK(max_abs_diff(s0, [&] {
            Image z = x0;
            for (std::size_t i = 0; i < z.samples.size(); ++i) z.samples[i] += y0.samples[i];
            return z;
          }()) <= 1e-9);
    CHECK(max_abs_diff(s1, [&] {
            Image z = x1;
            for (std::size_t i = 0; i < z.samples.size(); ++i) z.samples[i] += y1.samples[i];
            return z;
          }()) <= 1e-9);
  }
  CHECK(max_abs_diff(fan_merge(Image(8, 4), Image(8, 4)), Image(8, 8)) == 0.0);
  CHECK_THROWS_AS(fan_merge(Image(8, 4), Image(8, 2)), StructureError);
}

TEST_CASE("dfb depth 0 returns the band unchanged") {
  std::mt19937 rng(7);
  const Image x = random_image(16, 16, rng);
  const auto bands = dfb_analysis(x, 0);
  REQUIRE(bands.size() == 1);
  CHECK(max_abs_diff(bands[0], x) == 0.0);
}

TEST_CASE("dfb leaf shapes at depth 3") {
  std::mt19937 rng(8);
  const Image x = random_image(64, 64, rng);
  const auto bands = dfb_analysis(x, 3);
  REQUIRE(bands.size() == 8);
  std::size_t total = 0;
  for (int i = 0; i < 4; ++i) {
    CHECK(bands[i].height == 16);
    CHECK(bands[i].width == 32);
  }
  for (int i = 4; i < 8; ++i) {
    CHECK(bands[i].height == 32);
    CHECK(bands[i].width == 16);
  }
  for (const Image& b : bands) total += b.samples.size();
  CHECK(total == 4096);
}

TEST_CASE("dfb roundtrip for depths 1..3") {
  std::mt19937 rng(9);
  for (int depth : {1, 2, 3}) {
    const Image x = random_image(64, 64, rng);
    CHECK(max_abs_diff(dfb_synthesis(dfb_analysis(x, depth)), x) <= 1e-9);
  }
  CHECK_THROWS_AS(dfb_analysis(random_image(60, 60, rng), 3), DimensionError);
  CHECK_THROWS_AS(dfb_synthesis(std::vector<Image>(3, Image(8, 8))), StructureError);
}

TEST_CASE("contourlet default config shapes") {
  std::mt19937 rng(10);
  const Image x = random_image(64, 64, rng);
  const ContourletDecomp d = ct_forward(x, 1, {3});
  CHECK(d.lowpass.height == 32);
  CHECK(d.lowpass.width == 32);
  REQUIRE(d.subbands.size() == 1);
  REQUIRE(d.subbands[0].size() == 8);
  std::size_t total = 0;
  for (const Image& b : d.subbands[0]) total += b.samples.size();
  CHECK(total == 4096);
}

TEST_CASE("contourlet of a constant image") {
  const Image img(64, 64, 9.0);
  const ContourletDecomp d = ct_forward(img, 1, {3});
  for (double v : d.lowpass.samples) CHECK(v == doctest::Approx(9.0).epsilon(1e-9));
  for (const auto& level : d.subbands) {
    for (const Image& band : level) {
      for (double v : band.samples) CHECK(std::abs(v) <= 1e-9);
    }
  }
}

TEST_CASE("contourlet perfect reconstruction and linearity") {
  std::mt19937 rng(11);
  const std::vector<std::pair<int, std::vector<int>>> configs = {{1, {3}}, {2, {2, 3}}};
  for (const auto& cfg : configs) {
    const Image x = random_image(64, 64, rng);
    CHECK(max_abs_diff(ct_inverse(ct_forward(x, cfg.first, cfg.second)), x) <= 1e-9);
  }
  {
    const Image x = random_image(64, 64, rng);
    const Image y = random_image(64, 64, rng);
    Image sum(64, 64);
    for (std::size_t i = 0; i < sum.samples.size(); ++i) {
      sum.samples[i] = x.samples[i] + y.samples[i];
    }
    const ContourletDecomp dx = ct_forward(x, 1, {3});
    const ContourletDecomp dy = ct_forward(y, 1, {3});
    const ContourletDecomp ds = ct_forward(sum, 1, {3});
    for (std::size_t i = 0; i < ds.lowpass.samples.size(); ++i) {
      CHECK(std::abs(ds.lowpass.samples[i] - dx.lowpass.samples[i] - dy.lowpass.samples[i]) <=
            1e-9);
    }
    for (std::size_t b = 0; b < 8; ++b) {
      CHECK(max_abs_diff(ds.subbands[0][b], [&] {
              Image z = dx.subbands[0][b];
              for (std::size_t i = 0; i < z.samples.size(); ++i) {
                z.samples[i] += dy.subbands[0][b].samples[i];
              }
              return z;
            }()) <= 1e-9);
    }
  }
}

TEST_CASE("per-level critical sampling of the DFB stage") {
  std::mt19937 rng(12);
  const Image x = random_image(96, 96, rng);  // forces padding for (2,[2,3])
  const std::vector<std::pair<int, std::vector<int>>> configs = {{1, {3}}, {2, {2, 3}}};
  for (const auto& cfg : configs) {
    const ContourletDecomp d = ct_forward(x, cfg.first, cfg.second);
    const LaplacianPyramid pyr =
        lp_analysis(x, cfg.first, *std::max_element(cfg.second.begin(), cfg.second.end()));
    for (int lvl = 0; lvl < cfg.first; ++lvl) {
      std::size_t total = 0;
      for (const Image& b : d.subbands[lvl]) total += b.samples.size();
      CHECK(total == pyr.bandpass[lvl].samples.size());
    }
    CHECK(d.lowpass.samples.size() == pyr.coarse.samples.size());
  }
}

TEST_CASE("config and structure errors") {
  CHECK_THROWS_AS(lp_analysis(Image(8, 8), 0), ConfigError);
  CHECK_THROWS_AS(ct_forward(Image(64, 64), 2, {3}), ConfigError);
  std::mt19937 rng(13);
  ContourletDecomp d = ct_forward(random_image(64, 64, rng), 1, {3});
  d.subbands[0].pop_back();
  CHECK_THROWS_AS(ct_inverse(d), StructureError);
}

// Reported, not asserted: which directional subband captures a 45-degree
// grating. Useful when eyeballing the wedge layout.
TEST_CASE("directional diagnostic for a 45-degree grating") {
  Image grating(64, 64);
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      grating.at(r, c) = std::sin(2.0 * std::numbers::pi * (r + c) / 8.0);
    }
  }
  const ContourletDecomp d = ct_forward(grating, 1, {3});
  std::size_t best = 0;
  double best_energy = -1.0;
  for (std::size_t b = 0; b < d.subbands[0].size(); ++b) {
    double e = 0.0;
    for (double v : d.subbands[0][b].samples) e += v * v;
    if (e > best_energy) {
      best_energy = e;
      best = b;
    }
  }
  MESSAGE("45-degree grating: max-energy directional subband is ", best, " (energy ",
          best_energy, ")");
  CHECK(best_energy > 0.0);
}
