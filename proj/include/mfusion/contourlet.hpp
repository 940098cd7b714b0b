#ifndef MFUSION_CONTOURLET_HPP
#define MFUSION_CONTOURLET_HPP

#include <utility>
#include <vector>

#include "mfusion/imgcore.hpp"

namespace mfusion {

/// Multiscale split: bandpass[k] has the dims of pyramid level k
/// (padded input / 2^k); coarse is the lowpass residual at /2^levels.
/// Reconstruction is exact by construction.
struct LaplacianPyramid {
  int levels = 0;
  std::vector<Image> bandpass;
  Image coarse;
  int original_height = 0;
  int original_width = 0;
};

/// Contourlet coefficients: coarse lowpass plus, per pyramid level,
/// 2^{depth_k} directional subbands of that level's bandpass.
struct ContourletDecomp {
  Image lowpass;
  std::vector<std::vector<Image>> subbands;  // subbands[level][direction]
  int pyr_levels = 0;
  std::vector<int> dfb_depths;
  int original_height = 0;
  int original_width = 0;
};

/// Pyramid analysis with the separable 5-tap kernel
/// [0.05, 0.25, 0.40, 0.25, 0.05] and symmetric boundary extension.
/// Input is replicate-padded to dims divisible by 2^(levels + extra_pow2).
LaplacianPyramid lp_analysis(const Image& img, int levels, int extra_pow2 = 0);

/// Exact inverse: x_k = expand(x_{k+1}) + bandpass[k], cropped to the
/// original dims.
Image lp_synthesis(const LaplacianPyramid& pyr);

/// Upsamples by zero insertion then filters with the doubled pyramid
/// kernel. Exposed because lp_synthesis and the bandpass definition
/// share it.
Image lp_expand(const Image& img);

/// Two-channel fan analysis: checkerboard modulation, quincunx lifting
/// (predict 1/4, update 1/8), cosets packed as H x (W/2) rasters.
std::pair<Image, Image> fan_split(const Image& band);

/// Exact inverse of fan_split.
Image fan_merge(const Image& ch0, const Image& ch1);

/// Binary tree of fan stages with unimodular shear resampling, yielding
/// 2^depth critically sampled directional subbands. depth 0 returns the
/// band unchanged. Band dims must be divisible by 2^depth.
std::vector<Image> dfb_analysis(const Image& band, int depth);

/// Exact inverse of dfb_analysis; list length must be a power of two.
Image dfb_synthesis(const std::vector<Image>& subbands);

/// lp_analysis followed by dfb_analysis of each bandpass level.
/// dfb_depths.size() must equal pyr_levels.
ContourletDecomp ct_forward(const Image& img, int pyr_levels, const std::vector<int>& dfb_depths);

/// dfb_synthesis per level, then lp_synthesis.
Image ct_inverse(const ContourletDecomp& d);

}  // namespace mfusion

#endif
