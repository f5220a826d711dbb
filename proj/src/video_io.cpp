#include "lsf/video_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

namespace lsf {

namespace {

constexpr unsigned char kMagic[5] = {0x4C, 0x53, 0x46, 0x56, 0x01};

void put_u32le(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v),
                        static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32le(std::istream& is, const char* what) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4))
    throw IoError(std::string("LSFV1: truncated header reading ") + what);
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
         std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
}

}  // namespace

void write_video(const std::string& path, const VideoTensor& v) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for write: " + path);
  os.write(reinterpret_cast<const char*>(kMagic), 5);
  put_u32le(os, std::uint32_t(v.frames));
  put_u32le(os, std::uint32_t(v.height));
  put_u32le(os, std::uint32_t(v.width));
  put_u32le(os, std::uint32_t(v.channels));
  static_assert(sizeof(float) == 4);
  // f32 little-endian; this lab targets little-endian hosts
  os.write(reinterpret_cast<const char*>(v.data.data()),
           std::streamsize(v.data.size() * 4));
  if (!os) throw IoError("short write: " + path);
}

VideoTensor read_video(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for read: " + path);
  unsigned char magic[5];
  if (!is.read(reinterpret_cast<char*>(magic), 5) ||
      std::memcmp(magic, kMagic, 5) != 0)
    throw IoError("LSFV1: bad magic in " + path);

  const std::uint32_t t = get_u32le(is, "T");
  const std::uint32_t h = get_u32le(is, "H");
  const std::uint32_t w = get_u32le(is, "W");
  const std::uint32_t c = get_u32le(is, "C");
  if (t == 0 || h == 0 || w == 0 || c == 0)
    throw IoError("LSFV1: zero dimension in header of " + path);

  const std::uint64_t count = std::uint64_t(t) * h * w * c;
  // 1 GiB of floats is far beyond desk scale; treat as corrupt
  if (count > (std::uint64_t(1) << 28))
    throw IoError("LSFV1: dim overflow (" + std::to_string(count) +
                  " elements) in " + path);

  VideoTensor v{int(t), int(h), int(w), int(c)};
  if (!is.read(reinterpret_cast<char*>(v.data.data()),
               std::streamsize(count * 4)))
    throw IoError("LSFV1: truncated payload in " + path);
  return v;
}

}  // namespace lsf
