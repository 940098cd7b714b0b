#include "mfusion/metrics.hpp"

#include <cmath>

namespace mfusion {

SfValue spatial_frequency(const Image& block) {
  const int H = block.height, W = block.width;
  const double count = static_cast<double>(H) * W;
  double row_acc = 0.0;  // horizontal first differences
  double col_acc = 0.0;  // vertical first differences
  for (int r = 0; r < H; ++r) {
    for (int c = 1; c < W; ++c) {
      const double d = block.at(r, c) - block.at(r, c - 1);
      row_acc += d * d;
    }
  }
  for (int r = 1; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      const double d = block.at(r, c) - block.at(r - 1, c);
      col_acc += d * d;
    }
  }
  SfValue v;
  v.rf = std::sqrt(row_acc / count);
  v.cf = std::sqrt(col_acc / count);
  v.sf = std::sqrt(v.rf * v.rf + v.cf * v.cf);
  return v;
}

double rmse_pair(const Image& x, const Image& y) {
  if (!x.same_dims(y)) {
    throw DimensionError("rmse_pair dims differ: " + std::to_string(x.height) + "x" +
                         std::to_string(x.width) + " vs " + std::to_string(y.height) + "x" +
                         std::to_string(y.width));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < x.samples.size(); ++i) {
    const double d = x.samples[i] - y.samples[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(x.samples.size()));
}

MetricsReport fusion_rmse(const Image& a, const Image& b, const Image& fused) {
  MetricsReport rep;
  rep.rmse1 = rmse_pair(a, fused);
  rep.rmse2 = rmse_pair(b, fused);
  rep.rmse = 0.5 * (rep.rmse1 + rep.rmse2);
  return rep;
}

}  // namespace mfusion
