#ifndef MFUSION_IMGCORE_HPP
#define MFUSION_IMGCORE_HPP

#include <string>
#include <vector>

#include "mfusion/errors.hpp"

namespace mfusion {

/// Grayscale raster of real-valued samples, row-major.
/// Nominal display range is [0,255] but samples are unbounded while an
/// image is passing through a transform.
struct Image {
  int height = 0;
  int width = 0;
  std::vector<double> samples;

  Image() = default;
  Image(int h, int w, double fill = 0.0)
      : height(h), width(w), samples(static_cast<std::size_t>(h) * w, fill) {}

  double& at(int r, int c) { return samples[static_cast<std::size_t>(r) * width + c]; }
  double at(int r, int c) const { return samples[static_cast<std::size_t>(r) * width + c]; }

  bool same_dims(const Image& o) const { return height == o.height && width == o.width; }
};

/// Tiling of an image into M x N blocks; edge blocks are truncated,
/// never padded, so reassembly reproduces the source raster exactly.
struct BlockGrid {
  int source_height = 0;
  int source_width = 0;
  int block_rows = 0;   // M
  int block_cols = 0;   // N
  int grid_rows = 0;    // ceil(H/M)
  int grid_cols = 0;    // ceil(W/N)
  std::vector<Image> blocks;  // row-major grid

  Image& block(int r, int c) { return blocks[static_cast<std::size_t>(r) * grid_cols + c]; }
  const Image& block(int r, int c) const {
    return blocks[static_cast<std::size_t>(r) * grid_cols + c];
  }
};

/// Reads a PGM/PPM file. P2/P5 grayscale are parsed directly; P3/P6
/// color is collapsed to Rec.601 luma. maxval must be <= 255.
Image load_pnm(const std::string& path);

/// Writes binary PGM (P5, maxval 255). Samples are rounded
/// half-away-from-zero and clamped to [0,255].
void save_pnm(const Image& img, const std::string& path);

/// Quantizes a single sample the way save_pnm does.
unsigned char quantize_sample(double v);

/// Grows an image to target dims by replicating the last row/column.
Image pad_replicate(const Image& img, int target_height, int target_width);

/// Returns the top-left sub-raster of the given dims.
Image crop(const Image& img, int height, int width);

Image crop(const Image& img, int height, int width, int row0, int col0);

/// Splits into ceil(H/M) x ceil(W/N) blocks of nominal size M x N.
BlockGrid partition_blocks(const Image& img, int block_rows, int block_cols);

/// Inverse of partition_blocks.
Image assemble_blocks(const BlockGrid& grid);

}  // namespace mfusion

#endif
