#include "mfusion/contourlet.hpp"

#include <array>
#include <cmath>

namespace mfusion {

namespace {

constexpr std::array<double, 5> kPyrKernel = {0.05, 0.25, 0.40, 0.25, 0.05};

// Whole-sample symmetric (mirror) index: ... 2 1 0 | 0..n-1 | n-1 n-2 ...
// without repeating the edge sample.
int reflect(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n - 2;
  i = ((i % period) + period) % period;
  return (i < n) ? i : period - i;
}

// Separable convolution with a symmetric odd-length kernel, mirror extension.
Image convolve_sep(const Image& in, const double* kernel, int radius) {
  const int H = in.height, W = in.width;
  Image tmp(H, W);
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * in.at(r, reflect(c + i, W));
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

Image lp_reduce(const Image& img) {
  const Image filtered = convolve_sep(img, kPyrKernel.data(), 2);
  Image out(img.height / 2, img.width / 2);
  for (int r = 0; r < out.height; ++r) {
    for (int c = 0; c < out.width; ++c) out.at(r, c) = filtered.at(2 * r, 2 * c);
  }
  return out;
}

int round_up(int v, int multiple) { return ((v + multiple - 1) / multiple) * multiple; }

Image transpose(const Image& in) {
  Image out(in.width, in.height);
  for (int r = 0; r < in.height; ++r) {
    for (int c = 0; c < in.width; ++c) out.at(c, r) = in.at(r, c);
  }
  return out;
}

// Periodic unimodular shear along columns: out(m,n) = in(m, (n + s*m) mod W).
Image shear_cols(const Image& in, int s) {
  const int H = in.height, W = in.width;
  Image out(H, W);
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      out.at(r, c) = in.at(r, ((c + s * r) % W + W) % W);
    }
  }
  return out;
}

Image shear_rows(const Image& in, int s) { return transpose(shear_cols(transpose(in), s)); }

enum class Axis { Cols, Rows };

// Stage axis for the standard tree: first stage splits along columns,
// second along rows, deeper stages continue the orientation of the
// half-tree (row-wedge subbands keep halving rows and vice versa).
Axis stage_axis(int stage, int path_first_bit) {
  if (stage == 1) return Axis::Cols;
  if (stage == 2) return Axis::Rows;
  return (path_first_bit == 0) ? Axis::Rows : Axis::Cols;
}

// Shear applied before the two-channel stage from the third stage on;
// the sign alternates with the branch taken at the previous stage so the
// four unimodular matrices [1 ±1; 0 1] / [1 0; ±1 1] are all exercised.
int stage_shear(int stage, int path_last_bit) {
  if (stage < 3) return 0;
  return (path_last_bit == 0) ? 1 : -1;
}

std::vector<Image> analyze_node(const Image& band, int stage, int depth, int path_first_bit,
                                int path_last_bit) {
  if (stage > depth) return {band};
  const Axis axis = stage_axis(stage, path_first_bit);
  const int s = stage_shear(stage, path_last_bit);

  Image work = band;
  if (s != 0) work = (axis == Axis::Cols) ? shear_rows(work, s) : shear_cols(work, s);

  std::pair<Image, Image> split;
  if (axis == Axis::Cols) {
    split = fan_split(work);
  } else {
    auto t = fan_split(transpose(work));
    split = {transpose(t.first), transpose(t.second)};
  }

  const int fb0 = (stage == 1) ? 0 : path_first_bit;
  const int fb1 = (stage == 1) ? 1 : path_first_bit;
  std::vector<Image> out = analyze_node(split.first, stage + 1, depth, fb0, 0);
  std::vector<Image> right = analyze_node(split.second, stage + 1, depth, fb1, 1);
  out.insert(out.end(), std::make_move_iterator(right.begin()),
             std::make_move_iterator(right.end()));
  return out;
}

Image synthesize_node(const std::vector<Image>& subbands, std::size_t begin, std::size_t count,
                      int stage, int depth, int path_first_bit, int path_last_bit) {
  if (stage > depth) return subbands[begin];
  const int half = static_cast<int>(count / 2);
  const int fb0 = (stage == 1) ? 0 : path_first_bit;
  const int fb1 = (stage == 1) ? 1 : path_first_bit;
  const Image ch0 = synthesize_node(subbands, begin, half, stage + 1, depth, fb0, 0);
  const Image ch1 = synthesize_node(subbands, begin + half, half, stage + 1, depth, fb1, 1);

  const Axis axis = stage_axis(stage, path_first_bit);
  Image merged;
  if (axis == Axis::Cols) {
    merged = fan_merge(ch0, ch1);
  } else {
    merged = transpose(fan_merge(transpose(ch0), transpose(ch1)));
  }

  const int s = stage_shear(stage, path_last_bit);
  if (s != 0) merged = (axis == Axis::Cols) ? shear_rows(merged, -s) : shear_cols(merged, -s);
  return merged;
}

}  // namespace

LaplacianPyramid lp_analysis(const Image& img, int levels, int extra_pow2) {
  if (levels < 1) throw ConfigError("pyramid levels must be >= 1");
  if (extra_pow2 < 0) throw ConfigError("extra divisibility exponent must be >= 0");

  LaplacianPyramid pyr;
  pyr.levels = levels;
  pyr.original_height = img.height;
  pyr.original_width = img.width;

  const int cell = 1 << (levels + extra_pow2);
  Image cur = pad_replicate(img, round_up(img.height, cell), round_up(img.width, cell));
  pyr.bandpass.reserve(levels);
  for (int lvl = 0; lvl < levels; ++lvl) {
    Image coarse = lp_reduce(cur);
    Image expanded = lp_expand(coarse);
    Image band(cur.height, cur.width);
    for (std::size_t i = 0; i < band.samples.size(); ++i) {
      band.samples[i] = cur.samples[i] - expanded.samples[i];
    }
    pyr.bandpass.push_back(std::move(band));
    cur = std::move(coarse);
  }
  pyr.coarse = std::move(cur);
  return pyr;
}

Image lp_expand(const Image& img) {
  // Zero-insertion upsample, then the pyramid kernel doubled per
  // dimension; mirror extension preserves the coset parity pattern so a
  // constant image expands to the same constant.
  Image up(2 * img.height, 2 * img.width);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) up.at(2 * r, 2 * c) = img.at(r, c);
  }
  std::array<double, 5> k2{};
  for (std::size_t i = 0; i < k2.size(); ++i) k2[i] = 2.0 * kPyrKernel[i];
  return convolve_sep(up, k2.data(), 2);
}

Image lp_synthesis(const LaplacianPyramid& pyr) {
  if (pyr.levels < 1 || static_cast<int>(pyr.bandpass.size()) != pyr.levels) {
    throw StructureError("pyramid level count inconsistent");
  }
  Image cur = pyr.coarse;
  for (int lvl = pyr.levels - 1; lvl >= 0; --lvl) {
    const Image& band = pyr.bandpass[lvl];
    if (band.height != 2 * cur.height || band.width != 2 * cur.width) {
      throw StructureError("bandpass level " + std::to_string(lvl) + " has shape " +
                           std::to_string(band.height) + "x" + std::to_string(band.width) +
                           ", expected " + std::to_string(2 * cur.height) + "x" +
                           std::to_string(2 * cur.width));
    }
    Image expanded = lp_expand(cur);
    for (std::size_t i = 0; i < expanded.samples.size(); ++i) {
      expanded.samples[i] += band.samples[i];
    }
    cur = std::move(expanded);
  }
  return crop(cur, pyr.original_height, pyr.original_width);
}

std::pair<Image, Image> fan_split(const Image& band) {
  const int H = band.height, W = band.width;
  if (W % 2 != 0) throw DimensionError("fan_split needs even width, got " + std::to_string(W));

  // Checkerboard modulation maps the fan passbands onto the quincunx
  // diamond/anti-diamond pair.
  Image mod(H, W);
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) mod.at(r, c) = band.at(r, c) * ((c % 2) ? -1.0 : 1.0);
  }

  // Predict the odd coset from its four lattice neighbors.
  Image residual = mod;  // odd sites overwritten below
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      if ((r + c) % 2 == 0) continue;
      const double pred = 0.25 * (mod.at(reflect(r - 1, H), c) + mod.at(reflect(r + 1, H), c) +
                                  mod.at(r, reflect(c - 1, W)) + mod.at(r, reflect(c + 1, W)));
      residual.at(r, c) = mod.at(r, c) - pred;
    }
  }
  // Update the even coset from the two horizontal residuals.
  Image updated = residual;
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      if ((r + c) % 2 != 0) continue;
      updated.at(r, c) = mod.at(r, c) + 0.125 * (residual.at(r, reflect(c - 1, W)) +
                                                 residual.at(r, reflect(c + 1, W)));
    }
  }

  // Pack each coset row-wise into an H x (W/2) raster.
  Image ch0(H, W / 2), ch1(H, W / 2);
  for (int r = 0; r < H; ++r) {
    const int even_off = r % 2;  // columns with (r+c) even
    for (int k = 0; k < W / 2; ++k) {
      ch0.at(r, k) = updated.at(r, 2 * k + even_off);
      ch1.at(r, k) = updated.at(r, 2 * k + 1 - even_off);
    }
  }
  return {std::move(ch0), std::move(ch1)};
}

Image fan_merge(const Image& ch0, const Image& ch1) {
  if (!ch0.same_dims(ch1)) {
    throw StructureError("fan_merge channel shapes differ: " + std::to_string(ch0.height) + "x" +
                         std::to_string(ch0.width) + " vs " + std::to_string(ch1.height) + "x" +
                         std::to_string(ch1.width));
  }
  const int H = ch0.height, W = 2 * ch0.width;

  Image updated(H, W);
  for (int r = 0; r < H; ++r) {
    const int even_off = r % 2;
    for (int k = 0; k < W / 2; ++k) {
      updated.at(r, 2 * k + even_off) = ch0.at(r, k);
      updated.at(r, 2 * k + 1 - even_off) = ch1.at(r, k);
    }
  }

  // Undo update, then predict, in reverse order of analysis.
  Image mod = updated;
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      if ((r + c) % 2 != 0) continue;
      mod.at(r, c) = updated.at(r, c) - 0.125 * (updated.at(r, reflect(c - 1, W)) +
                                                 updated.at(r, reflect(c + 1, W)));
    }
  }
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      if ((r + c) % 2 == 0) continue;
      const double pred = 0.25 * (mod.at(reflect(r - 1, H), c) + mod.at(reflect(r + 1, H), c) +
                                  mod.at(r, reflect(c - 1, W)) + mod.at(r, reflect(c + 1, W)));
      mod.at(r, c) = updated.at(r, c) + pred;
    }
  }

  Image out(H, W);
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) out.at(r, c) = mod.at(r, c) * ((c % 2) ? -1.0 : 1.0);
  }
  return out;
}

std::vector<Image> dfb_analysis(const Image& band, int depth) {
  if (depth < 0) throw ConfigError("DFB depth must be >= 0");
  if (depth == 0) return {band};
  const int cell = 1 << depth;
  if (band.height % cell != 0 || band.width % cell != 0) {
    throw DimensionError("band dims " + std::to_string(band.height) + "x" +
                         std::to_string(band.width) + " not divisible by 2^" +
                         std::to_string(depth));
  }
  return analyze_node(band, 1, depth, 0, 0);
}

Image dfb_synthesis(const std::vector<Image>& subbands) {
  const std::size_t n = subbands.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw StructureError("subband count " + std::to_string(n) + " is not a power of two");
  }
  int depth = 0;
  while ((std::size_t{1} << depth) < n) ++depth;
  return synthesize_node(subbands, 0, n, 1, depth, 0, 0);
}

ContourletDecomp ct_forward(const Image& img, int pyr_levels, const std::vector<int>& dfb_depths) {
  if (static_cast<int>(dfb_depths.size()) != pyr_levels) {
    throw ConfigError("dfb_depths length " + std::to_string(dfb_depths.size()) +
                      " != pyramid levels " + std::to_string(pyr_levels));
  }
  int max_depth = 0;
  for (int d : dfb_depths) {
    if (d < 0) throw ConfigError("DFB depth must be >= 0");
    max_depth = std::max(max_depth, d);
  }

  LaplacianPyramid pyr = lp_analysis(img, pyr_levels, max_depth);

  ContourletDecomp out;
  out.pyr_levels = pyr_levels;
  out.dfb_depths = dfb_depths;
  out.original_height = img.height;
  out.original_width = img.width;
  out.lowpass = std::move(pyr.coarse);
  out.subbands.reserve(pyr_levels);
  for (int lvl = 0; lvl < pyr_levels; ++lvl) {
    out.subbands.push_back(dfb_analysis(pyr.bandpass[lvl], dfb_depths[lvl]));
  }
  return out;
}

Image ct_inverse(const ContourletDecomp& d) {
  if (d.pyr_levels < 1 || static_cast<int>(d.subbands.size()) != d.pyr_levels ||
      static_cast<int>(d.dfb_depths.size()) != d.pyr_levels) {
    throw StructureError("contourlet decomposition level counts inconsistent");
  }
  LaplacianPyramid pyr;
  pyr.levels = d.pyr_levels;
  pyr.original_height = d.original_height;
  pyr.original_width = d.original_width;
  pyr.coarse = d.lowpass;
  pyr.bandpass.reserve(d.pyr_levels);
  for (int lvl = 0; lvl < d.pyr_levels; ++lvl) {
    pyr.bandpass.push_back(dfb_synthesis(d.subbands[lvl]));
  }
  return lp_synthesis(pyr);
}

}  // namespace mfusion
