#ifndef MFUSION_SYNTH_HPP
#define MFUSION_SYNTH_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "mfusion/imgcore.hpp"

namespace mfusion {

/// Hard (0/1) focus region; models which part of the scene is sharp in
/// each half of a synthetic multifocus pair.
struct FocusMask {
  enum class Kind { VerticalHalf, HorizontalHalf, Disk };
  Kind kind = Kind::VerticalHalf;
  double center_row_frac = 0.5;
  double center_col_frac = 0.5;
  double radius_frac = 0.3;

  static FocusMask from_name(const std::string& name);

  /// 1.0 inside the in-focus-for-A region, 0.0 outside.
  double value(int r, int c, int height, int width) const;
};

/// Separable Gaussian, kernel truncated at radius ceil(3*sigma) and
/// renormalized, mirror boundary extension. sigma 0 is the identity.
Image gaussian_blur(const Image& img, double sigma);

/// A = gt inside the mask, blurred outside; B is the complement.
std::pair<Image, Image> make_pair(const Image& gt, const FocusMask& mask, double sigma);

/// Deterministic test chart: multi-scale checkerboards, oriented
/// gratings, seeded random rectangles; values in [0,255].
Image test_chart(int height, int width, std::uint32_t seed);

}  // namespace mfusion

#endif
