#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "lsf/png_io.hpp"
#include "lsf/rng.hpp"
#include "lsf/tensor.hpp"
#include "lsf/video_io.hpp"

using namespace lsf;

namespace {

VideoTensor random_video(Rng& rng, int t, int h, int w, int c) {
  VideoTensor v(t, h, w, c);
  for (float& x : v.data) x = float(rng.next_double());
  return v;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("superimpose: zero-area mask is the identity") {
  VideoTensor base(2, 8, 8, 3, 0.25f);
  RegionMask mask = RegionMask::from_action(3, 3, 0.0, 32, 32, 8, 8);
  CHECK(mask.area() == 0);
  VideoTensor out = superimpose(base, Image(0, 0, 3), mask);
  CHECK(out.data == base.data);
}

TEST_CASE("superimpose: white logo on black base fills exactly the mask") {
  const int H = 8, W = 8, h = 4, w = 4, T = 3;
  VideoTensor base(T, H, W, 3, 0.0f);
  Image logo(h, w, 3, 1.0f);
  RegionMask mask = RegionMask::from_action(0, 0, 1.0, h, w, H, W);
  VideoTensor out = superimpose(base, logo, mask);
  for (int t = 0; t < T; ++t)
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < W; ++x)
        for (int c = 0; c < 3; ++c) {
          float expect = (y < h && x < w) ? 1.0f : 0.0f;
          CHECK(out.at(t, y, x, c) == expect);
        }
}

TEST_CASE("superimpose: masked pixel count for k=0.75 on a 32x32 logo") {
  // floor(0.75*32)^2 = 24*24 = 576
  RegionMask mask = RegionMask::from_action(10, 10, 0.75, 32, 32, 64, 64);
  CHECK(mask.mask_h == 24);
  CHECK(mask.mask_w == 24);
  CHECK(mask.area() == 576);

  VideoTensor base(2, 64, 64, 3, 0.5f);
  Image logo(24, 24, 3, 0.9f);
  VideoTensor out = superimpose(base, logo, mask);
  for (int c = 0; c < 3; ++c) {
    int changed = 0;
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x)
        if (out.at(0, y, x, c) != base.at(0, y, x, c)) ++changed;
    CHECK(changed == 576);
  }
}

TEST_CASE("superimpose: never touches elements outside the mask") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    VideoTensor base = random_video(rng, 2, 6, 7, 2);
    int mh = int(rng.next_below(6));
    int mw = int(rng.next_below(7));
    int u = int(rng.next_below(std::uint64_t(6 - mh + 1)));
    int v = int(rng.next_below(std::uint64_t(7 - mw + 1)));
    RegionMask mask(u, v, mh, mw, 6, 7);
    Image logo(mh, mw, 2, 0.123f);
    VideoTensor out = superimpose(base, logo, mask);
    for (int t = 0; t < 2; ++t)
      for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 7; ++x)
          for (int c = 0; c < 2; ++c) {
            if (mask.contains(y, x))
              CHECK(out.at(t, y, x, c) == 0.123f);
            else
              CHECK(out.at(t, y, x, c) == base.at(t, y, x, c));
          }
  }
}

TEST_CASE("superimpose: dimension mismatch names the offending axis") {
  VideoTensor base(1, 8, 8, 3);
  RegionMask mask = RegionMask::from_action(0, 0, 1.0, 4, 4, 8, 8);
  CHECK_THROWS_WITH_AS(superimpose(base, Image(3, 4, 3), mask),
                       doctest::Contains("height"), DimensionError);
  CHECK_THROWS_WITH_AS(superimpose(base, Image(4, 5, 3), mask),
                       doctest::Contains("width"), DimensionError);
  CHECK_THROWS_WITH_AS(superimpose(base, Image(4, 4, 1), mask),
                       doctest::Contains("channels"), DimensionError);
}

TEST_CASE("mask area equals floor(k h) * floor(k w) across the k menu") {
  const double k_menu[5] = {0.75, 0.8125, 0.875, 0.9375, 1.0};
  for (double k : k_menu) {
    RegionMask m = RegionMask::from_action(0, 0, k, 32, 32, 64, 64);
    CHECK(m.area() == std::int64_t(std::floor(k * 32)) *
                          std::int64_t(std::floor(k * 32)));
  }
}

TEST_CASE("resize: identity when dims match") {
  Image img(2, 2, 1);
  img.data = {0.1f, 0.2f, 0.3f, 0.4f};
  for (ResizeMode m : {ResizeMode::kNearest, ResizeMode::kBilinear}) {
    Image out = resize(img, 2, 2, m);
    CHECK(out.data == img.data);
  }
}

TEST_CASE("resize: constant preservation from 1x1") {
  Image img(1, 1, 1, 0.5f);
  for (ResizeMode m : {ResizeMode::kNearest, ResizeMode::kBilinear}) {
    Image out = resize(img, 4, 4, m);
    for (float v : out.data) CHECK(v == 0.5f);
  }
}

TEST_CASE("resize: nearest maps each source pixel to a block") {
  Image img(2, 2, 1);
  img.data = {0.0f, 1.0f, 1.0f, 0.0f};
  Image out = resize(img, 4, 4, ResizeMode::kNearest);
  // independent nearest-index map: src = floor((dst + 0.5) * 2/4)
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      int ys = int((y + 0.5) * 0.5);
      int xs = int((x + 0.5) * 0.5);
      CHECK(out.at(y, x, 0) == img.at(ys, xs, 0));
    }
}

TEST_CASE("resize: output stays in [0,1]") {
  Rng rng(7);
  Image img(5, 9, 3);
  for (float& v : img.data) v = float(rng.next_double());
  for (ResizeMode m : {ResizeMode::kNearest, ResizeMode::kBilinear}) {
    Image out = resize(img, 13, 4, m);
    for (float v : out.data) {
      CHECK(v >= 0.0f);
      CHECK(v <= 1.0f);
    }
  }
}

TEST_CASE("LSFV1: round-trip is bit exact") {
  Rng rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    int t = 1 + int(rng.next_below(4));
    int h = 1 + int(rng.next_below(9));
    int w = 1 + int(rng.next_below(9));
    int c = 1 + int(rng.next_below(4));
    VideoTensor v = random_video(rng, t, h, w, c);
    std::string path = temp_path("lsf_roundtrip.lsfv");
    write_video(path, v);
    VideoTensor back = read_video(path);
    CHECK(back.frames == t);
    CHECK(back.height == h);
    CHECK(back.width == w);
    CHECK(back.channels == c);
    CHECK(back.data == v.data);
    std::remove(path.c_str());
  }
}

TEST_CASE("LSFV1: file size is header plus T*H*W*C*4 payload") {
  Rng rng(5);
  VideoTensor v = random_video(rng, 16, 64, 64, 3);
  std::string path = temp_path("lsf_size.lsfv");
  write_video(path, v);
  CHECK(std::filesystem::file_size(path) ==
        5 + 16 + std::uintmax_t(16) * 64 * 64 * 3 * 4);
  std::remove(path.c_str());
}

TEST_CASE("LSFV1: malformed files raise distinct errors") {
  std::string path = temp_path("lsf_bad.lsfv");

  {  // bad magic
    std::ofstream os(path, std::ios::binary);
    os.write("JUNKJUNKJUNKJUNKJUNKJUNK", 24);
  }
  CHECK_THROWS_WITH_AS(read_video(path), doctest::Contains("magic"), IoError);

  {  // valid magic+dims, no payload
    Rng rng(1);
    VideoTensor v = random_video(rng, 2, 3, 3, 1);
    write_video(path, v);
    std::filesystem::resize_file(path, 21);  // header only
  }
  CHECK_THROWS_WITH_AS(read_video(path), doctest::Contains("truncated"), IoError);

  {  // zero dim
    std::ofstream os(path, std::ios::binary);
    const unsigned char magic[5] = {0x4C, 0x53, 0x46, 0x56, 0x01};
    os.write(reinterpret_cast<const char*>(magic), 5);
    const unsigned char zeros[16] = {};
    os.write(reinterpret_cast<const char*>(zeros), 16);
  }
  CHECK_THROWS_WITH_AS(read_video(path), doctest::Contains("zero"), IoError);

  {  // absurd dims
    std::ofstream os(path, std::ios::binary);
    const unsigned char magic[5] = {0x4C, 0x53, 0x46, 0x56, 0x01};
    os.write(reinterpret_cast<const char*>(magic), 5);
    const unsigned char big[16] = {0xFF, 0xFF, 0xFF, 0x0F, 1, 0, 0, 0,
                                   0xFF, 0xFF, 0xFF, 0x0F, 1, 0, 0, 0};
    os.write(reinterpret_cast<const char*>(big), 16);
  }
  CHECK_THROWS_WITH_AS(read_video(path), doctest::Contains("overflow"), IoError);
  std::remove(path.c_str());
}

TEST_CASE("PNG: round-trip on the 8-bit grid") {
  Image img(5, 4, 4);
  Rng rng(3);
  for (float& v : img.data) v = float(rng.next_below(256)) / 255.0f;
  std::string path = temp_path("lsf_logo.png");
  write_png(path, img);
  Image back = read_png(path);
  CHECK(back.height == 5);
  CHECK(back.width == 4);
  CHECK(back.channels == 4);
  for (std::size_t i = 0; i < img.data.size(); ++i)
    CHECK(back.data[i] == doctest::Approx(img.data[i]).epsilon(1e-6));

  // RGB input comes back with alpha = 1
  Image rgb(2, 2, 3, 0.5f);
  write_png(path, rgb);
  Image rgba = read_png(path);
  CHECK(rgba.channels == 4);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) CHECK(rgba.at(y, x, 3) == 1.0f);
  std::remove(path.c_str());
}

TEST_CASE("expand_block replicates the nearest-upscaled block on all frames") {
  Image block(2, 2, 3);
  Rng rng(11);
  for (float& v : block.data) v = float(rng.next_double());
  VideoTensor v = expand_block(block, 3, 8, 8);
  CHECK(v.frames == 3);
  for (int t = 1; t < 3; ++t)
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x)
        for (int c = 0; c < 3; ++c)
          CHECK(v.at(t, y, x, c) == v.at(0, y, x, c));
}
