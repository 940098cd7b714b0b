#include "mfusion/imgcore.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mfusion {

namespace {

// Reads the next whitespace-separated header token, skipping '#' comments.
// Tracks the byte offset for error messages.
std::string next_token(std::istream& is, std::streamoff& offset) {
  std::string tok;
  int ch;
  while ((ch = is.get()) != EOF) {
    ++offset;
    if (ch == '#') {
      while ((ch = is.get()) != EOF) {
        ++offset;
        if (ch == '\n') break;
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) {
        is.unget();
        --offset;
        break;
      }
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

int parse_header_int(std::istream& is, std::streamoff& offset, const char* what) {
  const std::string tok = next_token(is, offset);
  if (tok.empty()) {
    throw FormatError(std::string("truncated header while reading ") + what +
                      " at byte offset " + std::to_string(offset));
  }
  try {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw FormatError(std::string("bad ") + what + " token '" + tok +
                      "' at byte offset " + std::to_string(offset));
  }
}

}  // namespace

Image load_pnm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "' for reading");

  std::streamoff offset = 0;
  const std::string magic = next_token(is, offset);
  const bool ascii = (magic == "P2" || magic == "P3");
  const bool binary = (magic == "P5" || magic == "P6");
  const bool color = (magic == "P3" || magic == "P6");
  if (!ascii && !binary) {
    throw FormatError("unsupported magic '" + magic + "' at byte offset 0 (want P2/P3/P5/P6)");
  }

  const int width = parse_header_int(is, offset, "width");
  const int height = parse_header_int(is, offset, "height");
  const int maxval = parse_header_int(is, offset, "maxval");
  if (width < 1 || height < 1) {
    throw FormatError("non-positive dimensions " + std::to_string(width) + "x" +
                      std::to_string(height) + " at byte offset " + std::to_string(offset));
  }
  if (maxval < 1 || maxval > 255) {
    throw FormatError("maxval " + std::to_string(maxval) + " out of range [1,255] at byte offset " +
                      std::to_string(offset));
  }

  const std::size_t channels = color ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  std::vector<double> raw(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the payload.
    const int sep = is.get();
    ++offset;
    if (sep == EOF || !std::isspace(sep)) {
      throw FormatError("missing payload separator at byte offset " + std::to_string(offset));
    }
    std::vector<unsigned char> bytes(count);
    is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(is.gcount()) != count) {
      throw FormatError("truncated payload at byte offset " +
                        std::to_string(offset + is.gcount()) + " (expected " +
                        std::to_string(count) + " bytes)");
    }
    for (std::size_t i = 0; i < count; ++i) raw[i] = bytes[i];
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = parse_header_int(is, offset, "sample");
      if (v < 0 || v > maxval) {
        throw FormatError("sample " + std::to_string(v) + " out of range at byte offset " +
                          std::to_string(offset));
      }
      raw[i] = v;
    }
  }

  Image img(height, width);
  if (color) {
    for (std::size_t i = 0; i < img.samples.size(); ++i) {
      img.samples[i] = 0.299 * raw[3 * i] + 0.587 * raw[3 * i + 1] + 0.114 * raw[3 * i + 2];
    }
  } else {
    img.samples = std::move(raw);
  }
  return img;
}

unsigned char quantize_sample(double v) {
  // Round half away from zero, then clamp to [0,255].
  const double r = (v >= 0.0) ? std::floor(v + 0.5) : std::ceil(v - 0.5);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<unsigned char>(r);
}

void save_pnm(const Image& img, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<unsigned char> bytes(img.samples.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = quantize_sample(img.samples[i]);
  os.write(reinterpret_cast<const char*>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("write failed for '" + path + "'");
}

Image pad_replicate(const Image& img, int target_height, int target_width) {
  if (target_height < img.height || target_width < img.width) {
    throw DimensionError("pad target " + std::to_string(target_height) + "x" +
                         std::to_string(target_width) + " smaller than source " +
                         std::to_string(img.height) + "x" + std::to_string(img.width));
  }
  Image out(target_height, target_width);
  for (int r = 0; r < target_height; ++r) {
    const int sr = std::min(r, img.height - 1);
    for (int c = 0; c < target_width; ++c) {
      out.at(r, c) = img.at(sr, std::min(c, img.width - 1));
    }
  }
  return out;
}

Image crop(const Image& img, int height, int width) { return crop(img, height, width, 0, 0); }

Image crop(const Image& img, int height, int width, int row0, int col0) {
  if (row0 + height > img.height || col0 + width > img.width || height < 0 || width < 0) {
    throw DimensionError("crop " + std::to_string(height) + "x" + std::to_string(width) +
                         "@(" + std::to_string(row0) + "," + std::to_string(col0) +
                         ") exceeds source " + std::to_string(img.height) + "x" +
                         std::to_string(img.width));
  }
  Image out(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) out.at(r, c) = img.at(row0 + r, col0 + c);
  }
  return out;
}

BlockGrid partition_blocks(const Image& img, int block_rows, int block_cols) {
  if (block_rows < 1 || block_cols < 1) {
    throw ConfigError("block dims must be >= 1, got " + std::to_string(block_rows) + "x" +
                      std::to_string(block_cols));
  }
  BlockGrid grid;
  grid.source_height = img.height;
  grid.source_width = img.width;
  grid.block_rows = block_rows;
  grid.block_cols = block_cols;
  grid.grid_rows = (img.height + block_rows - 1) / block_rows;
  grid.grid_cols = (img.width + block_cols - 1) / block_cols;
  grid.blocks.reserve(static_cast<std::size_t>(grid.grid_rows) * grid.grid_cols);
  for (int gr = 0; gr < grid.grid_rows; ++gr) {
    const int r0 = gr * block_rows;
    const int h = std::min(block_rows, img.height - r0);
    for (int gc = 0; gc < grid.grid_cols; ++gc) {
      const int c0 = gc * block_cols;
      const int w = std::min(block_cols, img.width - c0);
      grid.blocks.push_back(crop(img, h, w, r0, c0));
    }
  }
  return grid;
}

Image assemble_blocks(const BlockGrid& grid) {
  Image out(grid.source_height, grid.source_width);
  for (int gr = 0; gr < grid.grid_rows; ++gr) {
    const int r0 = gr * grid.block_rows;
    const int h = std::min(grid.block_rows, grid.source_height - r0);
    for (int gc = 0; gc < grid.grid_cols; ++gc) {
      const int c0 = gc * grid.block_cols;
      const int w = std::min(grid.block_cols, grid.source_width - c0);
      const Image& blk = grid.block(gr, gc);
      if (blk.height != h || blk.width != w) {
        throw StructureError("block (" + std::to_string(gr) + "," + std::to_string(gc) +
                             ") has shape " + std::to_string(blk.height) + "x" +
                             std::to_string(blk.width) + ", expected " + std::to_string(h) + "x" +
                             std::to_string(w));
      }
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) out.at(r0 + r, c0 + c) = blk.at(r, c);
      }
    }
  }
  return out;
}

}  // namespace mfusion
