#ifndef MFUSION_WAVELET_HPP
#define MFUSION_WAVELET_HPP

#include <string>
#include <vector>

#include "mfusion/imgcore.hpp"

namespace mfusion {

enum class WaveletFilter { Haar, Db4 };

WaveletFilter wavelet_filter_from_name(const std::string& name);

/// One level of detail subbands. "Horizontal" detail means lowpass rows /
/// highpass columns; the naming is internal only.
struct DetailTriple {
  Image horizontal;
  Image vertical;
  Image diagonal;
};

/// Multi-level separable 2D DWT output. Subbands at level k have the
/// dims of the padded input divided by 2^k; approx is the coarsest LL.
struct WaveletDecomp {
  int levels = 0;
  WaveletFilter filter = WaveletFilter::Haar;
  Image approx;
  std::vector<DetailTriple> details;  // details[0] is the finest level
  int original_height = 0;
  int original_width = 0;
};

/// Forward transform. Input is replicate-padded to dims divisible by
/// 2^levels; filtering uses periodic boundary extension with orthonormal
/// normalization (a constant c maps to LL value 2^levels * c).
WaveletDecomp dwt2(const Image& img, int levels, WaveletFilter filter = WaveletFilter::Haar);

/// Synthesis mirror of dwt2, cropped back to the recorded original dims.
Image idwt2(const WaveletDecomp& d);

}  // namespace mfusion

#endif
