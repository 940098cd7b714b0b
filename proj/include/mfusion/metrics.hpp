#ifndef MFUSION_METRICS_HPP
#define MFUSION_METRICS_HPP

#include <optional>

#include "mfusion/imgcore.hpp"

namespace mfusion {

/// Spatial frequency of a block: sf = sqrt(rf^2 + cf^2), with rf/cf the
/// RMS of horizontal/vertical first differences (full-block divisor).
struct SfValue {
  double rf = 0.0;
  double cf = 0.0;
  double sf = 0.0;
};

struct MetricsReport {
  double rmse1 = 0.0;
  double rmse2 = 0.0;
  double rmse = 0.0;
  std::optional<double> rmse_gt;
  std::optional<SfValue> sf_a;
  std::optional<SfValue> sf_b;
  std::optional<SfValue> sf_fused;
};

SfValue spatial_frequency(const Image& block);

/// Root mean squared difference over all pixels; dims must match.
double rmse_pair(const Image& x, const Image& y);

/// rmse1 = rmse(a,f), rmse2 = rmse(b,f), rmse = their mean.
MetricsReport fusion_rmse(const Image& a, const Image& b, const Image& fused);

}  // namespace mfusion

#endif
