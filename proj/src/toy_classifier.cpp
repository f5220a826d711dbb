#include "lsf/toy_classifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "lsf/rng.hpp"

namespace lsf {

namespace {

// identity, 4 edge detectors (rectified downstream), 3 box filters
const double kIdentity[9] = {0, 0, 0, 0, 1, 0, 0, 0, 0};
const double kEdgeX[9] = {-1. / 8, 0, 1. / 8, -2. / 8, 0, 2. / 8, -1. / 8, 0, 1. / 8};
const double kEdgeY[9] = {-1. / 8, -2. / 8, -1. / 8, 0, 0, 0, 1. / 8, 2. / 8, 1. / 8};
const double kEdgeD1[9] = {0, 1. / 8, 2. / 8, -1. / 8, 0, 1. / 8, -2. / 8, -1. / 8, 0};
// cross derivative: silent on axis-aligned step edges, fires on curved ones
const double kEdgeD2[9] = {1. / 4, 0, -1. / 4, 0, 0, 0, -1. / 4, 0, 1. / 4};
const double kBox[9] = {1. / 9, 1. / 9, 1. / 9, 1. / 9, 1. / 9,
                        1. / 9, 1. / 9, 1. / 9, 1. / 9};

void conv3(const std::vector<double>& src, int h, int w, const double* k,
           bool take_abs, std::vector<double>& dst) {
  dst.assign(std::size_t(h) * w, 0.0);
  auto checked = [&](int y, int x) {
    double s = 0.0;
    for (int dy = -1; dy <= 1; ++dy) {
      const int yy = y + dy;
      if (yy < 0 || yy >= h) continue;
      for (int dx = -1; dx <= 1; ++dx) {
        const int xx = x + dx;
        if (xx < 0 || xx >= w) continue;
        s += k[(dy + 1) * 3 + (dx + 1)] * src[std::size_t(yy) * w + xx];
      }
    }
    dst[std::size_t(y) * w + x] = take_abs ? std::abs(s) : s;
  };
  for (int x = 0; x < w; ++x) {
    checked(0, x);
    checked(h - 1, x);
  }
  for (int y = 1; y + 1 < h; ++y) {
    checked(y, 0);
    checked(y, w - 1);
    const double* r0 = src.data() + std::size_t(y - 1) * w;
    const double* r1 = r0 + w;
    const double* r2 = r1 + w;
    double* out = dst.data() + std::size_t(y) * w;
    for (int x = 1; x + 1 < w; ++x) {
      double s = k[0] * r0[x - 1] + k[1] * r0[x] + k[2] * r0[x + 1] +
                 k[3] * r1[x - 1] + k[4] * r1[x] + k[5] * r1[x + 1] +
                 k[6] * r2[x - 1] + k[7] * r2[x] + k[8] * r2[x + 1];
      out[x] = take_abs ? std::abs(s) : s;
    }
  }
}

// rectified maps for the four edge kernels (bank slots 1..4), single pass
void conv3_edges4(const std::vector<double>& src, int h, int w,
                  const std::vector<double>& kernels,
                  std::array<std::vector<double>, 4>& out) {
  const double* k1 = kernels.data() + 9;
  const double* k2 = kernels.data() + 18;
  const double* k3 = kernels.data() + 27;
  const double* k4 = kernels.data() + 36;
  for (auto& m : out) m.assign(std::size_t(h) * w, 0.0);

  auto checked = [&](int y, int x) {
    double s[4] = {0, 0, 0, 0};
    for (int dy = -1; dy <= 1; ++dy) {
      const int yy = y + dy;
      if (yy < 0 || yy >= h) continue;
      for (int dx = -1; dx <= 1; ++dx) {
        const int xx = x + dx;
        if (xx < 0 || xx >= w) continue;
        const double v = src[std::size_t(yy) * w + xx];
        const int tap = (dy + 1) * 3 + (dx + 1);
        s[0] += k1[tap] * v;
        s[1] += k2[tap] * v;
        s[2] += k3[tap] * v;
        s[3] += k4[tap] * v;
      }
    }
    const std::size_t at = std::size_t(y) * w + x;
    for (int f = 0; f < 4; ++f) out[std::size_t(f)][at] = std::abs(s[f]);
  };
  for (int x = 0; x < w; ++x) {
    checked(0, x);
    checked(h - 1, x);
  }
  for (int y = 1; y + 1 < h; ++y) {
    checked(y, 0);
    checked(y, w - 1);
    const double* r0 = src.data() + std::size_t(y - 1) * w;
    const double* r1 = r0 + w;
    const double* r2 = r1 + w;
    const std::size_t row_at = std::size_t(y) * w;
    for (int x = 1; x + 1 < w; ++x) {
      const double v0 = r0[x - 1], v1 = r0[x], v2 = r0[x + 1];
      const double v3 = r1[x - 1], v4 = r1[x], v5 = r1[x + 1];
      const double v6 = r2[x - 1], v7 = r2[x], v8 = r2[x + 1];
      out[0][row_at + x] = std::abs(k1[0] * v0 + k1[1] * v1 + k1[2] * v2 +
                                    k1[3] * v3 + k1[4] * v4 + k1[5] * v5 +
                                    k1[6] * v6 + k1[7] * v7 + k1[8] * v8);
      out[1][row_at + x] = std::abs(k2[0] * v0 + k2[1] * v1 + k2[2] * v2 +
                                    k2[3] * v3 + k2[4] * v4 + k2[5] * v5 +
                                    k2[6] * v6 + k2[7] * v7 + k2[8] * v8);
      out[2][row_at + x] = std::abs(k3[0] * v0 + k3[1] * v1 + k3[2] * v2 +
                                    k3[3] * v3 + k3[4] * v4 + k3[5] * v5 +
                                    k3[6] * v6 + k3[7] * v7 + k3[8] * v8);
      out[3][row_at + x] = std::abs(k4[0] * v0 + k4[1] * v1 + k4[2] * v2 +
                                    k4[3] * v3 + k4[4] * v4 + k4[5] * v5 +
                                    k4[6] * v6 + k4[7] * v7 + k4[8] * v8);
    }
  }
}

void softmax_inplace(std::vector<double>& v) {
  double mx = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double& x : v) {
    x = std::exp(x - mx);
    sum += x;
  }
  for (double& x : v) x /= sum;
}

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
    throw IoError(std::string("LSFC1: truncated reading ") + what);
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
         std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
}

void write_f32s(std::ostream& os, const float* p, std::size_t n) {
  os.write(reinterpret_cast<const char*>(p), std::streamsize(n * 4));
}

void read_f32s(std::istream& is, float* p, std::size_t n, const char* what) {
  if (!is.read(reinterpret_cast<char*>(p), std::streamsize(n * 4)))
    throw IoError(std::string("LSFC1: truncated reading ") + what);
}

}  // namespace

ToyClassifier::ToyClassifier(int frames, int height, int width)
    : frames_(frames), height_(height), width_(width) {
  if (frames < 2) throw DimensionError("ToyClassifier: frames must be >= 2");
  if (height % (2 * kGrid) != 0 || width % (2 * kGrid) != 0)
    throw DimensionError("ToyClassifier: H and W must be multiples of " +
                         std::to_string(2 * kGrid));
  half_h_ = height / 2;
  half_w_ = width / 2;
  feature_count_ = kFilters * kGrid * kGrid * 2;

  kernels_.resize(std::size_t(kFilters) * 9);
  const double* banks[kFilters] = {kIdentity, kEdgeX, kEdgeY, kEdgeD1,
                                   kEdgeD2,   kBox,   kBox,   kBox};
  for (int f = 0; f < kFilters; ++f)
    std::copy_n(banks[f], 9, kernels_.begin() + std::ptrdiff_t(f) * 9);

  weights.assign(std::size_t(kClasses) * feature_count_, 0.0f);
  bias.assign(kClasses, 0.0f);
  feat_mean.assign(std::size_t(feature_count_), 0.0f);
  feat_std.assign(std::size_t(feature_count_), 1.0f);
}

std::vector<double> ToyClassifier::features(const VideoTensor& v) const {
  if (v.frames != frames_ || v.height != height_ || v.width != width_ ||
      v.channels != 3)
    throw DimensionError("ToyClassifier: video dims do not match model");

  const int hh = half_h_, hw = half_w_;
  const int cell_h = hh / kGrid, cell_w = hw / kGrid;
  const int cells = kGrid * kGrid;

  std::vector<double> plane_r(std::size_t(hh) * hw), plane_g(plane_r.size()),
      plane_b(plane_r.size()), luma(plane_r.size());
  std::vector<double> map(plane_r.size());
  std::array<std::vector<double>, 4> edge_maps;
  std::vector<double> pooled(std::size_t(kFilters) * cells);
  std::vector<double> prev_pooled(pooled.size());
  std::vector<double> sum_mean(pooled.size(), 0.0), sum_absdiff(pooled.size(), 0.0);

  for (int t = 0; t < frames_; ++t) {
    // 2x2 box downsample per channel
    for (int y = 0; y < hh; ++y) {
      const float* row0 = v.data.data() + v.index(t, 2 * y, 0, 0);
      const float* row1 = v.data.data() + v.index(t, 2 * y + 1, 0, 0);
      for (int x = 0; x < hw; ++x) {
        const float* p00 = row0 + std::size_t(2 * x) * 3;
        const float* p10 = row1 + std::size_t(2 * x) * 3;
        const double r = (double(p00[0]) + p00[3] + p10[0] + p10[3]) / 4.0;
        const double g = (double(p00[1]) + p00[4] + p10[1] + p10[4]) / 4.0;
        const double b = (double(p00[2]) + p00[5] + p10[2] + p10[5]) / 4.0;
        const std::size_t at = std::size_t(y) * hw + x;
        plane_r[at] = r;
        plane_g[at] = g;
        plane_b[at] = b;
        luma[at] = 0.299 * r + 0.587 * g + 0.114 * b;
      }
    }

    // all four luma edge maps in one pass over the rows
    conv3_edges4(luma, hh, hw, kernels_, edge_maps);
    for (int f = 0; f < kFilters; ++f) {
      const std::vector<double>* src = &luma;
      if (f >= 1 && f <= 4) src = &edge_maps[std::size_t(f - 1)];
      if (f == 5) {
        conv3(plane_r, hh, hw, kBox, false, map);
        src = &map;
      } else if (f == 6) {
        conv3(plane_g, hh, hw, kBox, false, map);
        src = &map;
      } else if (f == 7) {
        conv3(plane_b, hh, hw, kBox, false, map);
        src = &map;
      }
      // pool to grid cells
      for (int gy = 0; gy < kGrid; ++gy)
        for (int gx = 0; gx < kGrid; ++gx) {
          double s = 0.0;
          for (int y = gy * cell_h; y < (gy + 1) * cell_h; ++y)
            for (int x = gx * cell_w; x < (gx + 1) * cell_w; ++x)
              s += (*src)[std::size_t(y) * hw + x];
          pooled[std::size_t(f) * cells + gy * kGrid + gx] =
              s / (double(cell_h) * cell_w);
        }
    }

    for (std::size_t i = 0; i < pooled.size(); ++i) {
      sum_mean[i] += pooled[i];
      if (t > 0) sum_absdiff[i] += std::abs(pooled[i] - prev_pooled[i]);
    }
    std::swap(prev_pooled, pooled);
  }

  std::vector<double> out(std::size_t(feature_count_), 0.0);
  for (int f = 0; f < kFilters; ++f)
    for (int g = 0; g < cells; ++g) {
      const std::size_t p = std::size_t(f) * cells + g;
      out[p * 2] = sum_mean[p] / frames_;
      out[p * 2 + 1] = sum_absdiff[p] / (frames_ - 1);
    }
  return out;
}

std::vector<double> ToyClassifier::standardize(const std::vector<double>& raw) const {
  std::vector<double> z(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double sd = std::max(double(feat_std[i]), kStdFloor);
    double val = (raw[i] - double(feat_mean[i])) / sd;
    z[i] = std::clamp(val, -kZClip, kZClip);
  }
  return z;
}

std::vector<double> ToyClassifier::logits(const std::vector<double>& z) const {
  std::vector<double> out(kClasses);
  for (int c = 0; c < kClasses; ++c) {
    const float* w = weights.data() + std::size_t(c) * feature_count_;
    double s = double(bias[c]);
    for (int k = 0; k < feature_count_; ++k) s += double(w[k]) * z[k];
    out[c] = s;
  }
  return out;
}

std::vector<double> ToyClassifier::scores(const VideoTensor& video) const {
  std::vector<double> l = logits(standardize(features(video)));
  softmax_inplace(l);
  return l;
}

LabelScore ToyClassifier::top1(const VideoTensor& video) const {
  std::vector<double> p = scores(video);
  int best = 0;
  for (int c = 1; c < kClasses; ++c)
    if (p[c] > p[best]) best = c;
  return LabelScore{best, p[best]};
}

void ToyClassifier::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for write: " + path);
  os.write("LSFC1", 5);
  put_u32le(os, kFilters);
  put_u32le(os, kClasses);
  put_u32le(os, std::uint32_t(frames_));
  put_u32le(os, std::uint32_t(height_));
  put_u32le(os, std::uint32_t(width_));
  std::vector<float> kern32(kernels_.begin(), kernels_.end());
  write_f32s(os, kern32.data(), kern32.size());
  write_f32s(os, feat_mean.data(), feat_mean.size());
  write_f32s(os, feat_std.data(), feat_std.size());
  write_f32s(os, weights.data(), weights.size());
  write_f32s(os, bias.data(), bias.size());
  if (!os) throw IoError("short write: " + path);
}

ToyClassifier ToyClassifier::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for read: " + path);
  char magic[5];
  if (!is.read(magic, 5) || std::memcmp(magic, "LSFC1", 5) != 0)
    throw IoError("LSFC1: bad magic in " + path);
  const std::uint32_t f = get_u32le(is, "F");
  const std::uint32_t classes = get_u32le(is, "classes");
  if (f != kFilters || classes != kClasses)
    throw IoError("LSFC1: unsupported layout in " + path);
  const std::uint32_t t = get_u32le(is, "T");
  const std::uint32_t h = get_u32le(is, "H");
  const std::uint32_t w = get_u32le(is, "W");

  ToyClassifier model{int(t), int(h), int(w)};
  std::vector<float> kern32(std::size_t(kFilters) * 9);
  read_f32s(is, kern32.data(), kern32.size(), "filter bank");
  // bank is fixed; file copy is informational
  read_f32s(is, model.feat_mean.data(), model.feat_mean.size(), "feature means");
  read_f32s(is, model.feat_std.data(), model.feat_std.size(), "feature stds");
  read_f32s(is, model.weights.data(), model.weights.size(), "weights");
  read_f32s(is, model.bias.data(), model.bias.size(), "bias");
  return model;
}

// ---- synthetic dataset ----

std::string class_name(int label) {
  static const char* shapes[2] = {"circle", "square"};
  static const char* dirs[4] = {"left", "right", "up", "down"};
  return std::string(shapes[(label / 4) & 1]) + "-" + dirs[label % 4];
}

SyntheticSample generate_sample(std::uint64_t seed, int label,
                                const DatasetSpec& spec) {
  if (label < 0 || label >= 8) throw DimensionError("label outside [0,8)");
  Rng rng(seed);
  const Shape shape = Shape(label / 4);
  const Direction dir = Direction(label % 4);
  const int T = spec.frames, H = spec.height, W = spec.width;

  SyntheticSample s;
  s.label = label;
  for (int c = 0; c < 3; ++c) s.background[c] = float(rng.next_double(0.25, 0.60));

  // at least one channel bright so shapes stand out from the background
  float color[3];
  const std::uint64_t pattern = rng.next_below(7) + 1;
  for (int c = 0; c < 3; ++c)
    color[c] = (pattern >> c) & 1 ? float(rng.next_double(0.75, 0.95))
                                  : float(rng.next_double(0.05, 0.20));

  const double radius = rng.next_double(8.0, 11.0);
  const double speed = rng.next_double(1.5, 2.3);

  double dy = 0, dx = 0;
  switch (dir) {
    case Direction::kLeft: dx = -1; break;
    case Direction::kRight: dx = 1; break;
    case Direction::kUp: dy = -1; break;
    case Direction::kDown: dy = 1; break;
  }
  // starts near the center and travels outward, so the time-averaged
  // occupancy separates opposite directions; the shape may leave the frame
  // partially in the last frames
  double cy = H / 2.0 + rng.next_double(-3.0, 3.0);
  double cx = W / 2.0 + rng.next_double(-3.0, 3.0);
  if (dx != 0) cy += rng.next_double(-6.0, 6.0);
  if (dy != 0) cx += rng.next_double(-6.0, 6.0);

  s.video = VideoTensor(T, H, W, 3);
  s.center_row.resize(std::size_t(T));
  s.center_col.resize(std::size_t(T));
  for (int t = 0; t < T; ++t) {
    const double ry = cy + dy * speed * t;
    const double rx = cx + dx * speed * t;
    s.center_row[std::size_t(t)] = ry;
    s.center_col[std::size_t(t)] = rx;
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < W; ++x) {
        const double py = y + 0.5 - ry, px = x + 0.5 - rx;
        bool inside = shape == Shape::kCircle
                          ? py * py + px * px <= radius * radius
                          : std::max(std::abs(py), std::abs(px)) <= radius;
        for (int c = 0; c < 3; ++c) {
          float val;
          if (inside) {
            val = color[c];
          } else {
            val = s.background[c] +
                  float(rng.next_double(-spec.noise_amplitude, spec.noise_amplitude));
          }
          s.video.at(t, y, x, c) = clamp01(val);
        }
      }
  }
  return s;
}

SyntheticDataset generate_dataset(std::uint64_t seed, int n_per_class,
                                  const DatasetSpec& spec) {
  if (n_per_class < 1) throw DimensionError("n_per_class must be >= 1");
  SyntheticDataset ds;
  ds.spec = spec;
  ds.n_per_class = n_per_class;
  ds.samples.reserve(std::size_t(8) * n_per_class);
  for (int label = 0; label < 8; ++label)
    for (int i = 0; i < n_per_class; ++i)
      ds.samples.push_back(generate_sample(
          derive_seed(seed, "dataset-sample", std::uint64_t(label) * 1000000 + i),
          label, spec));
  return ds;
}

// ---- training ----

double training_loss(const ToyClassifier& model,
                     const std::vector<std::vector<double>>& features,
                     const std::vector<int>& labels,
                     const std::vector<double>& w, const std::vector<double>& b) {
  const int K = model.num_classes(), F = model.feature_count();
  double loss = 0.0;
  for (std::size_t n = 0; n < features.size(); ++n) {
    std::vector<double> l(std::size_t(K), 0.0);
    for (int c = 0; c < K; ++c) {
      double s = b[std::size_t(c)];
      const double* wc = w.data() + std::size_t(c) * F;
      for (int k = 0; k < F; ++k) s += wc[k] * features[n][std::size_t(k)];
      l[std::size_t(c)] = s;
    }
    double mx = *std::max_element(l.begin(), l.end());
    double sum = 0.0;
    for (double v : l) sum += std::exp(v - mx);
    loss += std::log(sum) + mx - l[std::size_t(labels[n])];
  }
  return loss / double(features.size());
}

void training_gradient(const ToyClassifier& model,
                       const std::vector<std::vector<double>>& features,
                       const std::vector<int>& labels,
                       const std::vector<double>& w, const std::vector<double>& b,
                       std::vector<double>& grad_w, std::vector<double>& grad_b) {
  const int K = model.num_classes(), F = model.feature_count();
  grad_w.assign(w.size(), 0.0);
  grad_b.assign(b.size(), 0.0);
  for (std::size_t n = 0; n < features.size(); ++n) {
    std::vector<double> p(std::size_t(K), 0.0);
    for (int c = 0; c < K; ++c) {
      double s = b[std::size_t(c)];
      const double* wc = w.data() + std::size_t(c) * F;
      for (int k = 0; k < F; ++k) s += wc[k] * features[n][std::size_t(k)];
      p[std::size_t(c)] = s;
    }
    softmax_inplace(p);
    p[std::size_t(labels[n])] -= 1.0;
    for (int c = 0; c < K; ++c) {
      grad_b[std::size_t(c)] += p[std::size_t(c)];
      double* gw = grad_w.data() + std::size_t(c) * F;
      for (int k = 0; k < F; ++k)
        gw[k] += p[std::size_t(c)] * features[n][std::size_t(k)];
    }
  }
  const double inv = 1.0 / double(features.size());
  for (double& g : grad_w) g *= inv;
  for (double& g : grad_b) g *= inv;
}

TrainResult train_classifier(const SyntheticDataset& dataset, int epochs,
                             double lr, std::uint64_t seed) {
  if (dataset.samples.empty()) throw DimensionError("dataset is empty");
  const DatasetSpec& sp = dataset.spec;
  ToyClassifier model(sp.frames, sp.height, sp.width);
  const int F = model.feature_count();

  // stratified split: last n/5 per class held out
  std::vector<std::size_t> train_idx, hold_idx;
  const int n = dataset.n_per_class;
  const int hold_per_class = n / 5;
  for (int c = 0; c < 8; ++c)
    for (int i = 0; i < n; ++i) {
      std::size_t at = std::size_t(c) * n + i;
      (i < n - hold_per_class ? train_idx : hold_idx).push_back(at);
    }

  std::vector<std::vector<double>> raw(dataset.samples.size());
  for (std::size_t i = 0; i < dataset.samples.size(); ++i)
    raw[i] = model.features(dataset.samples[i].video);

  // standardization from the train split
  std::vector<double> mean(std::size_t(F), 0.0), var(std::size_t(F), 0.0);
  for (std::size_t i : train_idx)
    for (int k = 0; k < F; ++k) mean[std::size_t(k)] += raw[i][std::size_t(k)];
  for (double& m : mean) m /= double(train_idx.size());
  for (std::size_t i : train_idx)
    for (int k = 0; k < F; ++k) {
      double d = raw[i][std::size_t(k)] - mean[std::size_t(k)];
      var[std::size_t(k)] += d * d;
    }
  for (int k = 0; k < F; ++k) {
    model.feat_mean[std::size_t(k)] = float(mean[std::size_t(k)]);
    model.feat_std[std::size_t(k)] =
        float(std::sqrt(var[std::size_t(k)] / double(train_idx.size())));
  }

  auto standardized = [&](std::size_t i) {
    return model.standardize(raw[i]);
  };
  std::vector<std::vector<double>> ztrain(train_idx.size());
  for (std::size_t i = 0; i < train_idx.size(); ++i)
    ztrain[i] = standardized(train_idx[i]);

  std::vector<double> w(std::size_t(model.num_classes()) * F, 0.0), b(8, 0.0);
  Rng rng(derive_seed(seed, "train-shuffle"));
  std::vector<std::size_t> order(train_idx.size());
  std::iota(order.begin(), order.end(), 0);

  constexpr int kBatch = 16;
  std::vector<std::vector<double>> batch_f;
  std::vector<int> batch_y;
  std::vector<double> gw, gb;
  for (int e = 0; e < epochs; ++e) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += kBatch) {
      batch_f.clear();
      batch_y.clear();
      for (std::size_t i = start; i < std::min(order.size(), start + kBatch); ++i) {
        batch_f.push_back(ztrain[order[i]]);
        batch_y.push_back(dataset.samples[train_idx[order[i]]].label);
      }
      training_gradient(model, batch_f, batch_y, w, b, gw, gb);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lr * gw[i];
      for (std::size_t i = 0; i < b.size(); ++i) b[i] -= lr * gb[i];
    }
  }

  for (std::size_t i = 0; i < w.size(); ++i) model.weights[i] = float(w[i]);
  for (std::size_t i = 0; i < b.size(); ++i) model.bias[i] = float(b[i]);

  TrainResult result{std::move(model), 0.0, int(hold_idx.size())};
  if (!hold_idx.empty()) {
    int correct = 0;
    for (std::size_t i : hold_idx) {
      std::vector<double> l =
          result.model.logits(result.model.standardize(raw[i]));
      int best = 0;
      for (int c = 1; c < 8; ++c)
        if (l[std::size_t(c)] > l[std::size_t(best)]) best = c;
      if (best == dataset.samples[i].label) ++correct;
    }
    result.holdout_accuracy = double(correct) / double(hold_idx.size());
  }
  return result;
}

}  // namespace lsf
