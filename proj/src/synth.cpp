#include "mfusion/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace mfusion {

namespace {

// Half-sample symmetric extension (... x1 x0 | x0 x1 ... xn-1 | xn-1 ...);
// the resulting operator is doubly stochastic, so the image mean is
// preserved exactly.
int reflect(int i, int n) {
  const int period = 2 * n;
  i = ((i % period) + period) % period;
  return (i < n) ? i : period - 1 - i;
}

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

}  // namespace

FocusMask FocusMask::from_name(const std::string& name) {
  FocusMask m;
  if (name == "vhalf") {
    m.kind = Kind::VerticalHalf;
  } else if (name == "hhalf") {
    m.kind = Kind::HorizontalHalf;
  } else if (name == "disk") {
    m.kind = Kind::Disk;
  } else {
    throw ConfigError("unknown mask '" + name + "' (want vhalf, hhalf, or disk)");
  }
  return m;
}

double FocusMask::value(int r, int c, int height, int width) const {
  switch (kind) {
    case Kind::VerticalHalf:
      return (c < width / 2) ? 1.0 : 0.0;
    case Kind::HorizontalHalf:
      return (r < height / 2) ? 1.0 : 0.0;
    case Kind::Disk: {
      const double dr = r - center_row_frac * height;
      const double dc = c - center_col_frac * width;
      const double rad = radius_frac * std::min(height, width);
      return (dr * dr + dc * dc <= rad * rad) ? 1.0 : 0.0;
    }
  }
  return 0.0;
}

Image gaussian_blur(const Image& img, double sigma) {
  if (sigma < 0.0) throw ConfigError("sigma must be >= 0");
  if (sigma == 0.0) return img;
  const auto kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int H = img.height, W = img.width;

  Image tmp(H, W);
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * img.at(r, reflect(c + i, W));
      }
      tmp.at(r, c) = acc;
    }
  }
  Image out(H, W);
  for (int c = 0; c < W; ++c) {
    for (int r = 0; r < H; ++r) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * tmp.at(reflect(r + i, H), c);
      }
      out.at(r, c) = acc;
    }
  }
  return out;
}

std::pair<Image, Image> make_pair(const Image& gt, const FocusMask& mask, double sigma) {
  const Image blurred = gaussian_blur(gt, sigma);
  Image a(gt.height, gt.width), b(gt.height, gt.width);
  for (int r = 0; r < gt.height; ++r) {
    for (int c = 0; c < gt.width; ++c) {
      const double m = mask.value(r, c, gt.height, gt.width);
      a.at(r, c) = m * gt.at(r, c) + (1.0 - m) * blurred.at(r, c);
      b.at(r, c) = m * blurred.at(r, c) + (1.0 - m) * gt.at(r, c);
    }
  }
  return {std::move(a), std::move(b)};
}

Image test_chart(int height, int width, std::uint32_t seed) {
  if (height < 64 || width < 64) {
    throw ConfigError("test chart needs dims >= 64, got " + std::to_string(height) + "x" +
                      std::to_string(width));
  }
  Image img(height, width, 128.0);
  const int half_h = height / 2;
  const int half_w = width / 2;

  // Top-left quadrant: checkerboards at three cell sizes, stacked in
  // horizontal bands.
  for (int r = 0; r < half_h; ++r) {
    const int band = 3 * r / half_h;
    const int cell = 2 << band;  // 2, 4, 8
    for (int c = 0; c < half_w; ++c) {
      img.at(r, c) = (((r / cell) + (c / cell)) % 2) ? 220.0 : 35.0;
    }
  }

  // Top-right quadrant: sinusoidal gratings at 0, 45, 90, 135 degrees,
  // one per horizontal band.
  constexpr double kFreq = 2.0 * std::numbers::pi / 6.0;
  for (int r = 0; r < half_h; ++r) {
    const int band = std::min(3, 4 * r / half_h);
    for (int c = half_w; c < width; ++c) {
      const int u = c - half_w;
      double phase = 0.0;
      switch (band) {
        case 0: phase = kFreq * u; break;           // vertical bars
        case 1: phase = kFreq * (u + r) * 0.7071; break;
        case 2: phase = kFreq * r; break;           // horizontal bars
        case 3: phase = kFreq * (u - r) * 0.7071; break;
      }
      img.at(r, c) = 128.0 + 100.0 * std::sin(phase);
    }
  }

  // Bottom half: seeded random rectangles over a mid-gray field.
  // mt19937 output is fully specified, so the chart is reproducible
  // across platforms; distributions are avoided for the same reason.
  std::mt19937 rng(seed);
  auto draw = [&rng](int bound) { return static_cast<int>(rng() % static_cast<std::uint32_t>(bound)); };
  const int rects = 40;
  for (int i = 0; i < rects; ++i) {
    const int rh = 4 + draw(half_h / 3);
    const int rw = 4 + draw(half_w / 3);
    const int r0 = half_h + draw(std::max(1, height - half_h - rh));
    const int c0 = draw(std::max(1, width - rw));
    const double gray = static_cast<double>(draw(256));
    for (int r = r0; r < std::min(height, r0 + rh); ++r) {
      for (int c = c0; c < std::min(width, c0 + rw); ++c) img.at(r, c) = gray;
    }
  }

  for (double& v : img.samples) v = std::clamp(v, 0.0, 255.0);
  return img;
}

}  // namespace mfusion
