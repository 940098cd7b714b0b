#include "mfusion/wavelet.hpp"

#include <cmath>

namespace mfusion {

namespace {

std::vector<double> lowpass_taps(WaveletFilter f) {
  const double s2 = std::sqrt(2.0);
  switch (f) {
    case WaveletFilter::Haar:
      return {1.0 / s2, 1.0 / s2};
    case WaveletFilter::Db4: {
      const double s3 = std::sqrt(3.0);
      const double k = 4.0 * s2;
      return {(1.0 + s3) / k, (3.0 + s3) / k, (3.0 - s3) / k, (1.0 - s3) / k};
    }
  }
  throw ConfigError("unknown wavelet filter");
}

std::vector<double> highpass_taps(const std::vector<double>& h) {
  // Quadrature mirror: g[i] = (-1)^i * h[L-1-i].
  std::vector<double> g(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    g[i] = ((i % 2) ? -1.0 : 1.0) * h[h.size() - 1 - i];
  }
  return g;
}

// One analysis pass along a periodic signal of even length n:
// lo[k] = sum_i h[i] x[(2k+i) mod n], hi[k] analogous with g.
void analyze_1d(const double* x, int n, int stride, const std::vector<double>& h,
                const std::vector<double>& g, double* lo, double* hi, int out_stride) {
  const int half = n / 2;
  const int taps = static_cast<int>(h.size());
  for (int k = 0; k < half; ++k) {
    double a = 0.0, d = 0.0;
    for (int i = 0; i < taps; ++i) {
      const double v = x[((2 * k + i) % n) * stride];
      a += h[i] * v;
      d += g[i] * v;
    }
    lo[k * out_stride] = a;
    hi[k * out_stride] = d;
  }
}

// Adjoint of analyze_1d; exact inverse for orthonormal taps.
void synthesize_1d(const double* lo, const double* hi, int half, int in_stride,
                   const std::vector<double>& h, const std::vector<double>& g, double* x,
                   int stride) {
  const int n = 2 * half;
  const int taps = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) x[i * stride] = 0.0;
  for (int k = 0; k < half; ++k) {
    const double a = lo[k * in_stride];
    const double d = hi[k * in_stride];
    for (int i = 0; i < taps; ++i) {
      x[((2 * k + i) % n) * stride] += h[i] * a + g[i] * d;
    }
  }
}

// Single-level 2D analysis: rows first, then columns.
void analyze_level(const Image& in, const std::vector<double>& h, const std::vector<double>& g,
                   Image& ll, DetailTriple& det) {
  const int H = in.height, W = in.width;
  Image row_lo(H, W / 2), row_hi(H, W / 2);
  for (int r = 0; r < H; ++r) {
    analyze_1d(&in.samples[static_cast<std::size_t>(r) * W], W, 1, h, g,
               &row_lo.samples[static_cast<std::size_t>(r) * (W / 2)],
               &row_hi.samples[static_cast<std::size_t>(r) * (W / 2)], 1);
  }
  ll = Image(H / 2, W / 2);
  det.horizontal = Image(H / 2, W / 2);
  det.vertical = Image(H / 2, W / 2);
  det.diagonal = Image(H / 2, W / 2);
  for (int c = 0; c < W / 2; ++c) {
    analyze_1d(&row_lo.samples[c], H, W / 2, h, g, &ll.samples[c], &det.horizontal.samples[c],
               W / 2);
    analyze_1d(&row_hi.samples[c], H, W / 2, h, g, &det.vertical.samples[c],
               &det.diagonal.samples[c], W / 2);
  }
}

Image synthesize_level(const Image& ll, const DetailTriple& det, const std::vector<double>& h,
                       const std::vector<double>& g) {
  const int hh = ll.height, hw = ll.width;
  if (!ll.same_dims(det.horizontal) || !ll.same_dims(det.vertical) ||
      !ll.same_dims(det.diagonal)) {
    throw StructureError("detail subband dims do not match approximation subband");
  }
  Image row_lo(2 * hh, hw), row_hi(2 * hh, hw);
  for (int c = 0; c < hw; ++c) {
    synthesize_1d(&ll.samples[c], &det.horizontal.samples[c], hh, hw, h, g, &row_lo.samples[c],
                  hw);
    synthesize_1d(&det.vertical.samples[c], &det.diagonal.samples[c], hh, hw, h, g,
                  &row_hi.samples[c], hw);
  }
  Image out(2 * hh, 2 * hw);
  for (int r = 0; r < 2 * hh; ++r) {
    synthesize_1d(&row_lo.samples[static_cast<std::size_t>(r) * hw],
                  &row_hi.samples[static_cast<std::size_t>(r) * hw], hw, 1, h, g,
                  &out.samples[static_cast<std::size_t>(r) * (2 * hw)], 1);
  }
  return out;
}

int round_up(int v, int multiple) { return ((v + multiple - 1) / multiple) * multiple; }

}  // namespace

WaveletFilter wavelet_filter_from_name(const std::string& name) {
  if (name == "haar") return WaveletFilter::Haar;
  if (name == "db4") return WaveletFilter::Db4;
  throw ConfigError("unknown wavelet filter '" + name + "' (want haar or db4)");
}

WaveletDecomp dwt2(const Image& img, int levels, WaveletFilter filter) {
  if (levels < 1) throw ConfigError("wavelet levels must be >= 1");
  const auto h = lowpass_taps(filter);
  const auto g = highpass_taps(h);

  WaveletDecomp d;
  d.levels = levels;
  d.filter = filter;
  d.original_height = img.height;
  d.original_width = img.width;

  const int cell = 1 << levels;
  Image cur = pad_replicate(img, round_up(img.height, cell), round_up(img.width, cell));
  d.details.resize(levels);
  for (int lvl = 0; lvl < levels; ++lvl) {
    Image ll;
    analyze_level(cur, h, g, ll, d.details[lvl]);
    cur = std::move(ll);
  }
  d.approx = std::move(cur);
  return d;
}

Image idwt2(const WaveletDecomp& d) {
  if (d.levels < 1 || static_cast<int>(d.details.size()) != d.levels) {
    throw StructureError("decomposition level count inconsistent");
  }
  const auto h = lowpass_taps(d.filter);
  const auto g = highpass_taps(h);

  Image cur = d.approx;
  for (int lvl = d.levels - 1; lvl >= 0; --lvl) {
    cur = synthesize_level(cur, d.details[lvl], h, g);
  }
  return crop(cur, d.original_height, d.original_width);
}

}  // namespace mfusion
