#pragma once

#include <string>

#include "lsf/tensor.hpp"

namespace lsf {

// LSFV1 container: magic 4C 53 46 56 01, then T,H,W,C as little-endian u32,
// then T*H*W*C IEEE-754 LE f32 in (t,h,w,c) row-major order.
void write_video(const std::string& path, const VideoTensor& video);
VideoTensor read_video(const std::string& path);

}  // namespace lsf
