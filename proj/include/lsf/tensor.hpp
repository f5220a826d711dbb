#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "lsf/error.hpp"

namespace lsf {

inline float clamp01(float x) { return std::min(1.0f, std::max(0.0f, x)); }

// h x w x c image, channels innermost, intensities in [0,1].
struct Image {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> data;

  Image() = default;
  Image(int h, int w, int c, float fill = 0.0f)
      : height(h), width(w), channels(c),
        data(std::size_t(h) * w * c, fill) {}

  std::size_t index(int y, int x, int ch) const {
    return (std::size_t(y) * width + x) * channels + ch;
  }
  float& at(int y, int x, int ch) { return data[index(y, x, ch)]; }
  float at(int y, int x, int ch) const { return data[index(y, x, ch)]; }
  std::size_t size() const { return data.size(); }
};

// T x H x W x C video, (t,h,w,c) row-major, intensities in [0,1].
struct VideoTensor {
  int frames = 0;
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> data;

  VideoTensor() = default;
  VideoTensor(int t, int h, int w, int c, float fill = 0.0f)
      : frames(t), height(h), width(w), channels(c),
        data(std::size_t(t) * h * w * c, fill) {
    if (t < 1 || h < 1 || w < 1 || c < 1)
      throw DimensionError("VideoTensor dims must be >= 1, got T=" +
                           std::to_string(t) + " H=" + std::to_string(h) +
                           " W=" + std::to_string(w) + " C=" + std::to_string(c));
  }

  std::size_t index(int t, int y, int x, int ch) const {
    return ((std::size_t(t) * height + y) * width + x) * channels + ch;
  }
  float& at(int t, int y, int x, int ch) { return data[index(t, y, x, ch)]; }
  float at(int t, int y, int x, int ch) const { return data[index(t, y, x, ch)]; }
  std::size_t size() const { return data.size(); }

  Image frame(int t) const {
    Image f(height, width, channels);
    std::copy_n(data.begin() + std::ptrdiff_t(index(t, 0, 0, 0)), f.size(),
                f.data.begin());
    return f;
  }
};

// Rectangular logo region, same on every frame and channel.
struct RegionMask {
  int u = 0;        // top row
  int v = 0;        // left column
  int mask_h = 0;   // floor(k * logo_h)
  int mask_w = 0;   // floor(k * logo_w)
  int frame_h = 0;
  int frame_w = 0;

  RegionMask() = default;
  RegionMask(int u_, int v_, int mask_h_, int mask_w_, int frame_h_, int frame_w_);

  // From the action parameterization: scaled dims are floored.
  static RegionMask from_action(int u, int v, double k, int logo_h, int logo_w,
                                int frame_h, int frame_w);

  bool contains(int y, int x) const {
    return y >= u && y < u + mask_h && x >= v && x < v + mask_w;
  }
  std::int64_t area() const { return std::int64_t(mask_h) * mask_w; }
};

enum class ResizeMode { kNearest, kBilinear };

// Output stays in [0,1] for inputs in [0,1]; identity when dims match.
Image resize(const Image& src, int target_h, int target_w, ResizeMode mode);

// Pixel replacement inside the mask rectangle on every frame; the result is
// clamped to [0,1]. logo dims must equal the mask's scaled dims.
VideoTensor superimpose(const VideoTensor& base, const Image& logo,
                        const RegionMask& mask);

// Expand a style block to video dims (nearest-neighbor) and replicate it
// across all frames.
VideoTensor expand_block(const Image& block, int frames, int height, int width);

struct LabelScore {
  int label = -1;
  double score = 0.0;  // in [0,1]
};

}  // namespace lsf
