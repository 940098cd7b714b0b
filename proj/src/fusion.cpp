#include "mfusion/fusion.hpp"

#include <cmath>

#include "mfusion/contourlet.hpp"
#include "mfusion/metrics.hpp"

namespace mfusion {

namespace {

void require_same_dims(const Image& a, const Image& b) {
  if (!a.same_dims(b)) {
    throw DimensionError("input dims differ: " + std::to_string(a.height) + "x" +
                         std::to_string(a.width) + " vs " + std::to_string(b.height) + "x" +
                         std::to_string(b.width));
  }
}

Image average_of(const Image& a, const Image& b) {
  Image out(a.height, a.width);
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = 0.5 * (a.samples[i] + b.samples[i]);
  }
  return out;
}

Image apply_choice(SelectionChoice choice, const Image& a, const Image& b) {
  switch (choice) {
    case SelectionChoice::TakeA:
      return a;
    case SelectionChoice::TakeB:
      return b;
    case SelectionChoice::Average:
      return average_of(a, b);
  }
  throw ConfigError("unreachable selection choice");
}

// SF selection over a coefficient raster, either per M x N block or with
// a single decision for the whole raster.
Image fuse_raster_sf(const Image& sa, const Image& sb, const FusionConfig& cfg) {
  if (cfg.granularity == Granularity::Subband) {
    const SelectionChoice choice =
        select_by_sf(spatial_frequency(sa).sf, spatial_frequency(sb).sf, cfg.threshold);
    return apply_choice(choice, sa, sb);
  }
  BlockGrid ga = partition_blocks(sa, cfg.block_rows, cfg.block_cols);
  const BlockGrid gb = partition_blocks(sb, cfg.block_rows, cfg.block_cols);
  for (std::size_t i = 0; i < ga.blocks.size(); ++i) {
    const SelectionChoice choice = select_by_sf(spatial_frequency(ga.blocks[i]).sf,
                                                spatial_frequency(gb.blocks[i]).sf, cfg.threshold);
    ga.blocks[i] = apply_choice(choice, ga.blocks[i], gb.blocks[i]);
  }
  return assemble_blocks(ga);
}

}  // namespace

void FusionConfig::validate() const {
  if (block_rows < 1 || block_cols < 1) {
    throw ConfigError("block dims must be >= 1, got " + std::to_string(block_rows) + "x" +
                      std::to_string(block_cols));
  }
  if (threshold < 0.0) throw ConfigError("threshold must be >= 0");
  if (wavelet_levels < 1) throw ConfigError("wavelet levels must be >= 1");
  if (pyr_levels < 1) throw ConfigError("pyramid levels must be >= 1");
  if (static_cast<int>(dfb_depths.size()) != pyr_levels) {
    throw ConfigError("dfb_depths length " + std::to_string(dfb_depths.size()) +
                      " != pyramid levels " + std::to_string(pyr_levels));
  }
  for (int d : dfb_depths) {
    if (d < 0) throw ConfigError("DFB depth must be >= 0");
  }
}

FusionMethod fusion_method_from_name(const std::string& name) {
  if (name == "wavelet") return FusionMethod::WaveletMax;
  if (name == "sf") return FusionMethod::SpatialSf;
  if (name == "wavelet-sf") return FusionMethod::WaveletSf;
  if (name == "contourlet-sf") return FusionMethod::ContourletSf;
  throw ConfigError("unknown fusion method '" + name +
                    "' (want wavelet, sf, wavelet-sf, or contourlet-sf)");
}

std::string fusion_method_name(FusionMethod m) {
  switch (m) {
    case FusionMethod::WaveletMax:
      return "wavelet";
    case FusionMethod::SpatialSf:
      return "sf";
    case FusionMethod::WaveletSf:
      return "wavelet-sf";
    case FusionMethod::ContourletSf:
      return "contourlet-sf";
  }
  throw ConfigError("unreachable fusion method");
}

Granularity granularity_from_name(const std::string& name) {
  if (name == "block") return Granularity::Block;
  if (name == "subband") return Granularity::Subband;
  throw ConfigError("unknown granularity '" + name + "' (want block or subband)");
}

SelectionChoice select_by_sf(double sf_a, double sf_b, double th) {
  if (sf_a > sf_b + th) return SelectionChoice::TakeA;
  if (sf_a < sf_b - th) return SelectionChoice::TakeB;
  return SelectionChoice::Average;
}

Image fuse_wavelet_max(const Image& a, const Image& b, const FusionConfig& cfg) {
  require_same_dims(a, b);
  WaveletDecomp da = dwt2(a, cfg.wavelet_levels, cfg.wavelet_filter);
  const WaveletDecomp db = dwt2(b, cfg.wavelet_levels, cfg.wavelet_filter);

  // Strict '>' keeps A's coefficient; ties fall to B's.
  auto merge_details = [](Image& x, const Image& y) {
    for (std::size_t i = 0; i < x.samples.size(); ++i) {
      if (!(std::abs(x.samples[i]) > std::abs(y.samples[i]))) x.samples[i] = y.samples[i];
    }
  };
  for (int lvl = 0; lvl < cfg.wavelet_levels; ++lvl) {
    merge_details(da.details[lvl].horizontal, db.details[lvl].horizontal);
    merge_details(da.details[lvl].vertical, db.details[lvl].vertical);
    merge_details(da.details[lvl].diagonal, db.details[lvl].diagonal);
  }
  da.approx = average_of(da.approx, db.approx);
  return idwt2(da);
}

Image fuse_spatial_sf(const Image& a, const Image& b, const FusionConfig& cfg) {
  require_same_dims(a, b);
  return fuse_raster_sf(a, b, cfg);
}

Image fuse_wavelet_sf(const Image& a, const Image& b, const FusionConfig& cfg) {
  require_same_dims(a, b);
  WaveletDecomp da = dwt2(a, cfg.wavelet_levels, cfg.wavelet_filter);
  const WaveletDecomp db = dwt2(b, cfg.wavelet_levels, cfg.wavelet_filter);

  for (int lvl = 0; lvl < cfg.wavelet_levels; ++lvl) {
    da.details[lvl].horizontal =
        fuse_raster_sf(da.details[lvl].horizontal, db.details[lvl].horizontal, cfg);
    da.details[lvl].vertical =
        fuse_raster_sf(da.details[lvl].vertical, db.details[lvl].vertical, cfg);
    da.details[lvl].diagonal =
        fuse_raster_sf(da.details[lvl].diagonal, db.details[lvl].diagonal, cfg);
  }
  da.approx = average_of(da.approx, db.approx);
  return idwt2(da);
}

Image fuse_contourlet_sf(const Image& a, const Image& b, const FusionConfig& cfg) {
  require_same_dims(a, b);
  ContourletDecomp da = ct_forward(a, cfg.pyr_levels, cfg.dfb_depths);
  const ContourletDecomp db = ct_forward(b, cfg.pyr_levels, cfg.dfb_depths);

  for (std::size_t lvl = 0; lvl < da.subbands.size(); ++lvl) {
    for (std::size_t dir = 0; dir < da.subbands[lvl].size(); ++dir) {
      da.subbands[lvl][dir] = fuse_raster_sf(da.subbands[lvl][dir], db.subbands[lvl][dir], cfg);
    }
  }
  da.lowpass = average_of(da.lowpass, db.lowpass);
  return ct_inverse(da);
}

Image fuse(const Image& a, const Image& b, const FusionConfig& cfg) {
  cfg.validate();
  switch (cfg.method) {
    case FusionMethod::WaveletMax:
      return fuse_wavelet_max(a, b, cfg);
    case FusionMethod::SpatialSf:
      return fuse_spatial_sf(a, b, cfg);
    case FusionMethod::WaveletSf:
      return fuse_wavelet_sf(a, b, cfg);
    case FusionMethod::ContourletSf:
      return fuse_contourlet_sf(a, b, cfg);
  }
  throw ConfigError("unknown fusion method");
}

}  // namespace mfusion
