#include <doctest.h>

#include <random>

#include "mfusion/wavelet.hpp"
#include "test_helpers.hpp"

using namespace mfusion;
using mfusion::testing::make_image;
using mfusion::testing::max_abs_diff;
using mfusion::testing::random_image;

TEST_CASE("haar 1-level on [[1,2],[3,4]] matches hand evaluation") {
  const Image img = make_image(2, 2, {1, 2, 3, 4});
  const WaveletDecomp d = dwt2(img, 1, WaveletFilter::Haar);
  CHECK(d.approx.at(0, 0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(d.details[0].vertical.at(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(d.details[0].horizontal.at(0, 0) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(d.details[0].diagonal.at(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("constant image maps to scaled LL, zero details") {
  const Image img(4, 4, 10.0);
  const WaveletDecomp d = dwt2(img, 1, WaveletFilter::Haar);
  for (double v : d.approx.samples) CHECK(v == doctest::Approx(20.0).epsilon(1e-12));
  for (double v : d.details[0].horizontal.samples) CHECK(std::abs(v) < 1e-12);
  for (double v : d.details[0].vertical.samples) CHECK(std::abs(v) < 1e-12);
  for (double v : d.details[0].diagonal.samples) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("perfect reconstruction") {
  std::mt19937 rng(42);
  for (int levels = 1; levels <= 3; ++levels) {
    const Image x = random_image(64, 64, rng);
    CHECK(max_abs_diff(idwt2(dwt2(x, levels, WaveletFilter::Haar)), x) <= 1e-9);
    CHECK(max_abs_diff(idwt2(dwt2(x, levels, WaveletFilter::Db4)), x) <= 1e-9);
  }
  // odd dims exercise the replicate-padding path
  const Image odd = random_image(37, 51, rng);
  CHECK(max_abs_diff(idwt2(dwt2(odd, 2)), odd) <= 1e-9);
}

TEST_CASE("linearity") {
  std::mt19937 rng(1);
  const Image x = random_image(32, 32, rng);
  const Image y = random_image(32, 32, rng);
  Image z(32, 32);
  for (std::size_t i = 0; i < z.samples.size(); ++i) {
    z.samples[i] = 2.5 * x.samples[i] - 0.75 * y.samples[i];
  }
  const WaveletDecomp dx = dwt2(x, 2), dy = dwt2(y, 2), dz = dwt2(z, 2);
  for (std::size_t i = 0; i < dz.approx.samples.size(); ++i) {
    CHECK(dz.approx.samples[i] ==
          doctest::Approx(2.5 * dx.approx.samples[i] - 0.75 * dy.approx.samples[i])
              .epsilon(1e-9));
  }
  for (int lvl = 0; lvl < 2; ++lvl) {
    for (std::size_t i = 0; i < dz.details[lvl].diagonal.samples.size(); ++i) {
      CHECK(dz.details[lvl].diagonal.samples[i] ==
            doctest::Approx(2.5 * dx.details[lvl].diagonal.samples[i] -
                            0.75 * dy.details[lvl].diagonal.samples[i])
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("energy conservation for orthonormal haar on even dims") {
  std::mt19937 rng(9);
  const Image x = random_image(64, 64, rng);
  const WaveletDecomp d = dwt2(x, 3, WaveletFilter::Haar);
  double pixel_energy = 0.0;
  for (double v : x.samples) pixel_energy += v * v;
  double coeff_energy = 0.0;
  for (double v : d.approx.samples) coeff_energy += v * v;
  for (const DetailTriple& t : d.details) {
    for (double v : t.horizontal.samples) coeff_energy += v * v;
    for (double v : t.vertical.samples) coeff_energy += v * v;
    for (double v : t.diagonal.samples) coeff_energy += v * v;
  }
  CHECK(coeff_energy == doctest::Approx(pixel_energy).epsilon(1e-9));
}

TEST_CASE("scaling LL changes only the lowpass contribution") {
  std::mt19937 rng(5);
  const Image x = random_image(16, 16, rng);
  WaveletDecomp d = dwt2(x, 1);
  const Image zero_detail_part = [&] {
    WaveletDecomp lowpass_only = d;
    for (Image* img : {&lowpass_only.details[0].horizontal, &lowpass_only.details[0].vertical,
                       &lowpass_only.details[0].diagonal}) {
      for (double& v : img->samples) v = 0.0;
    }
    return idwt2(lowpass_only);
  }();
  for (double& v : d.approx.samples) v *= 2.0;
  const Image scaled = idwt2(d);
  // doubling LL adds exactly one extra lowpass contribution
  Image expected = x;
  for (std::size_t i = 0; i < expected.samples.size(); ++i) {
    expected.samples[i] += zero_detail_part.samples[i];
  }
  CHECK(max_abs_diff(scaled, expected) <= 1e-9);
  CHECK(max_abs_diff(scaled, x) > 1.0);
}

TEST_CASE("structure and config errors") {
  CHECK_THROWS_AS(dwt2(Image(8, 8), 0), ConfigError);
  CHECK_THROWS_AS(wavelet_filter_from_name("sym9"), ConfigError);
  std::mt19937 rng(2);
  WaveletDecomp d = dwt2(random_image(16, 16, rng), 1);
  d.details[0].diagonal = Image(3, 3);
  CHECK_THROWS_AS(idwt2(d), StructureError);
}

TEST_CASE("idwt2 of a zero decomposition is a zero image") {
  WaveletDecomp d = dwt2(Image(8, 8, 0.0), 1);
  const Image out = idwt2(d);
  for (double v : out.samples) CHECK(std::abs(v) < 1e-12);
}
