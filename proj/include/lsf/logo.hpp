#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsf/tensor.hpp"

namespace lsf {

struct LogoAsset {
  Image pixels;  // h x w x 4, RGBA in [0,1]
  std::string id;

  int height() const { return pixels.height; }
  int width() const { return pixels.width; }
};

// Admission filter: rejects logos with any transparent pixel or with more
// than half of the pixels near white (min RGB channel > 0.9).
bool admit_logo(const LogoAsset& asset);

struct LogoSet {
  std::vector<LogoAsset> logos;
};

// Procedural 32x32 letter-glyph logos (1-3 glyphs from a 5x7 bitmap font,
// solid color on solid background). Every generated logo passes admit_logo.
LogoSet synthesize_logo_set(std::uint64_t seed, int count, int size = 32);

// PNG ingestion path; throws if the file cannot be decoded.
LogoAsset load_logo_png(const std::string& path, const std::string& id);

}  // namespace lsf
