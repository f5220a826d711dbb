#include "lsf/tensor.hpp"

#include <cmath>

namespace lsf {

RegionMask::RegionMask(int u_, int v_, int mask_h_, int mask_w_, int frame_h_,
                       int frame_w_)
    : u(u_), v(v_), mask_h(mask_h_), mask_w(mask_w_), frame_h(frame_h_),
      frame_w(frame_w_) {
  if (mask_h < 0 || mask_w < 0)
    throw DimensionError("RegionMask: negative mask dims");
  if (u < 0 || u > frame_h - mask_h)
    throw DimensionError("RegionMask: u=" + std::to_string(u) +
                         " outside [0, " + std::to_string(frame_h - mask_h) + "]");
  if (v < 0 || v > frame_w - mask_w)
    throw DimensionError("RegionMask: v=" + std::to_string(v) +
                         " outside [0, " + std::to_string(frame_w - mask_w) + "]");
}

RegionMask RegionMask::from_action(int u, int v, double k, int logo_h,
                                   int logo_w, int frame_h, int frame_w) {
  const int mh = int(std::floor(k * logo_h));
  const int mw = int(std::floor(k * logo_w));
  return RegionMask(u, v, mh, mw, frame_h, frame_w);
}

Image resize(const Image& src, int target_h, int target_w, ResizeMode mode) {
  if (target_h < 1 || target_w < 1)
    throw DimensionError("resize: target dims must be >= 1");
  if (target_h == src.height && target_w == src.width) return src;

  Image dst(target_h, target_w, src.channels);
  const double sy = double(src.height) / target_h;
  const double sx = double(src.width) / target_w;

  if (mode == ResizeMode::kNearest) {
    for (int y = 0; y < target_h; ++y) {
      int ys = std::min(src.height - 1, int((y + 0.5) * sy));
      for (int x = 0; x < target_w; ++x) {
        int xs = std::min(src.width - 1, int((x + 0.5) * sx));
        for (int c = 0; c < src.channels; ++c)
          dst.at(y, x, c) = src.at(ys, xs, c);
      }
    }
    return dst;
  }

  for (int y = 0; y < target_h; ++y) {
    double fy = std::max(0.0, (y + 0.5) * sy - 0.5);
    int y0 = std::min(src.height - 1, int(fy));
    int y1 = std::min(src.height - 1, y0 + 1);
    double wy = fy - y0;
    for (int x = 0; x < target_w; ++x) {
      double fx = std::max(0.0, (x + 0.5) * sx - 0.5);
      int x0 = std::min(src.width - 1, int(fx));
      int x1 = std::min(src.width - 1, x0 + 1);
      double wx = fx - x0;
      for (int c = 0; c < src.channels; ++c) {
        double top = (1.0 - wx) * src.at(y0, x0, c) + wx * src.at(y0, x1, c);
        double bot = (1.0 - wx) * src.at(y1, x0, c) + wx * src.at(y1, x1, c);
        dst.at(y, x, c) = float((1.0 - wy) * top + wy * bot);
      }
    }
  }
  return dst;
}

VideoTensor superimpose(const VideoTensor& base, const Image& logo,
                        const RegionMask& mask) {
  if (mask.frame_h != base.height || mask.frame_w != base.width)
    throw DimensionError("superimpose: mask frame dims (" +
                         std::to_string(mask.frame_h) + "x" +
                         std::to_string(mask.frame_w) +
                         ") do not match video HxW");
  if (mask.mask_h == 0 || mask.mask_w == 0) return base;
  if (logo.height != mask.mask_h)
    throw DimensionError("superimpose: logo height " +
                         std::to_string(logo.height) + " != mask height " +
                         std::to_string(mask.mask_h));
  if (logo.width != mask.mask_w)
    throw DimensionError("superimpose: logo width " +
                         std::to_string(logo.width) + " != mask width " +
                         std::to_string(mask.mask_w));
  if (logo.channels != base.channels)
    throw DimensionError("superimpose: logo channels " +
                         std::to_string(logo.channels) + " != video channels " +
                         std::to_string(base.channels));

  VideoTensor out = base;
  for (int t = 0; t < base.frames; ++t)
    for (int y = 0; y < mask.mask_h; ++y)
      for (int x = 0; x < mask.mask_w; ++x)
        for (int c = 0; c < base.channels; ++c)
          out.at(t, mask.u + y, mask.v + x, c) = clamp01(logo.at(y, x, c));
  return out;
}

VideoTensor expand_block(const Image& block, int frames, int height, int width) {
  Image full = resize(block, height, width, ResizeMode::kNearest);
  VideoTensor out(frames, height, width, block.channels);
  for (int t = 0; t < frames; ++t)
    std::copy(full.data.begin(), full.data.end(),
              out.data.begin() + std::ptrdiff_t(out.index(t, 0, 0, 0)));
  return out;
}

}  // namespace lsf
