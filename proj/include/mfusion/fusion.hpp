#ifndef MFUSION_FUSION_HPP
#define MFUSION_FUSION_HPP

#include <string>
#include <vector>

#include "mfusion/imgcore.hpp"
#include "mfusion/wavelet.hpp"

namespace mfusion {

enum class FusionMethod { WaveletMax, SpatialSf, WaveletSf, ContourletSf };
enum class Granularity { Block, Subband };
enum class SelectionChoice { TakeA, TakeB, Average };

FusionMethod fusion_method_from_name(const std::string& name);
std::string fusion_method_name(FusionMethod m);
Granularity granularity_from_name(const std::string& name);

struct FusionConfig {
  FusionMethod method = FusionMethod::ContourletSf;
  int block_rows = 8;          // M
  int block_cols = 8;          // N
  double threshold = 1.75;     // TH
  int wavelet_levels = 1;
  WaveletFilter wavelet_filter = WaveletFilter::Haar;
  int pyr_levels = 1;
  std::vector<int> dfb_depths = {3};
  Granularity granularity = Granularity::Block;

  void validate() const;
};

/// Threshold comparison of two activity values: TakeA when sfA exceeds
/// sfB by more than th, TakeB symmetrically, Average in the dead zone.
SelectionChoice select_by_sf(double sf_a, double sf_b, double th);

/// Max-magnitude rule on detail coefficients, averaged approximation.
Image fuse_wavelet_max(const Image& a, const Image& b, const FusionConfig& cfg);

/// Block-wise spatial-frequency selection in the pixel domain.
Image fuse_spatial_sf(const Image& a, const Image& b, const FusionConfig& cfg);

/// Spatial-frequency selection applied to wavelet detail subbands.
Image fuse_wavelet_sf(const Image& a, const Image& b, const FusionConfig& cfg);

/// Spatial-frequency selection applied to contourlet directional
/// subbands.
Image fuse_contourlet_sf(const Image& a, const Image& b, const FusionConfig& cfg);

/// Dispatch on cfg.method.
Image fuse(const Image& a, const Image& b, const FusionConfig& cfg);

}  // namespace mfusion

#endif
