#include "lsf/logo.hpp"

#include <algorithm>

#include "lsf/png_io.hpp"
#include "lsf/rng.hpp"

namespace lsf {

namespace {

// 5x7 bitmap font, A-Z; each glyph is 7 rows of 5 bits, MSB = left column.
constexpr unsigned char kFont[26][7] = {
    {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},  // A
    {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E},  // B
    {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E},  // C
    {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E},  // D
    {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F},  // E
    {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10},  // F
    {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F},  // G
    {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},  // H
    {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E},  // I
    {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C},  // J
    {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11},  // K
    {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F},  // L
    {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11},  // M
    {0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11},  // N
    {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},  // O
    {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10},  // P
    {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D},  // Q
    {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11},  // R
    {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E},  // S
    {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04},  // T
    {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},  // U
    {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04},  // V
    {0x11, 0x11, 0x11, 0x15, 0x15, 0x1B, 0x11},  // W
    {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11},  // X
    {0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04},  // Y
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F},  // Z
};

}  // namespace

bool admit_logo(const LogoAsset& asset) {
  const Image& img = asset.pixels;
  if (img.channels != 4) return false;
  std::int64_t near_white = 0;
  const std::int64_t total = std::int64_t(img.height) * img.width;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      if (img.at(y, x, 3) < 1.0f) return false;
      const float mn = std::min({img.at(y, x, 0), img.at(y, x, 1), img.at(y, x, 2)});
      if (mn > 0.9f) ++near_white;
    }
  return 2 * near_white <= total;
}

LogoSet synthesize_logo_set(std::uint64_t seed, int count, int size) {
  if (count < 1) throw DimensionError("synthesize_logo_set: count must be >= 1");
  LogoSet set;
  set.logos.reserve(std::size_t(count));
  for (int n = 0; n < count; ++n) {
    Rng rng(derive_seed(seed, "logo", std::uint64_t(n)));

    float bg[3], fg[3];
    for (float& c : bg) c = float(rng.next_double(0.05, 0.80));
    // one capped channel keeps the glyph off pure white; resample until the
    // glyph clearly contrasts with the background
    const int capped = int(rng.next_below(3));
    double dist = 0.0;
    do {
      for (int c = 0; c < 3; ++c)
        fg[c] = float(rng.next_double(0.05, c == capped ? 0.85 : 0.95));
      dist = std::abs(fg[0] - bg[0]) + std::abs(fg[1] - bg[1]) +
             std::abs(fg[2] - bg[2]);
    } while (dist < 0.75);

    int n_glyphs = 1 + int(rng.next_below(3));
    int scale = 0, gap = 0;
    while (n_glyphs >= 1) {
      gap = n_glyphs == 3 ? 1 : 2;
      scale = std::min((size - gap * (n_glyphs - 1)) / (5 * n_glyphs), size / 7);
      if (scale >= 1) break;
      --n_glyphs;  // canvas too small for this many glyphs
    }
    if (scale < 1) throw DimensionError("logo canvas too small for any glyph");
    const int glyph_w = 5 * scale, glyph_h = 7 * scale;
    const int total_w = n_glyphs * glyph_w + (n_glyphs - 1) * gap;
    const int x0 = (size - total_w) / 2;
    const int y0 = (size - glyph_h) / 2;

    LogoAsset asset;
    asset.pixels = Image(size, size, 4);
    asset.id = "logo-" + std::to_string(n) + "-";
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x) {
        for (int c = 0; c < 3; ++c) asset.pixels.at(y, x, c) = bg[c];
        asset.pixels.at(y, x, 3) = 1.0f;
      }
    for (int g = 0; g < n_glyphs; ++g) {
      const int letter = int(rng.next_below(26));
      asset.id += char('A' + letter);
      const int gx0 = x0 + g * (glyph_w + gap);
      for (int ry = 0; ry < 7; ++ry)
        for (int rx = 0; rx < 5; ++rx) {
          if (!((kFont[letter][ry] >> (4 - rx)) & 1)) continue;
          for (int sy = 0; sy < scale; ++sy)
            for (int sx = 0; sx < scale; ++sx) {
              const int y = y0 + ry * scale + sy;
              const int x = gx0 + rx * scale + sx;
              for (int c = 0; c < 3; ++c) asset.pixels.at(y, x, c) = fg[c];
            }
        }
    }
    set.logos.push_back(std::move(asset));
  }
  return set;
}

LogoAsset load_logo_png(const std::string& path, const std::string& id) {
  LogoAsset asset;
  asset.pixels = read_png(path);
  asset.id = id;
  return asset;
}

}  // namespace lsf
