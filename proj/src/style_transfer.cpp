#include "lsf/style_transfer.hpp"

#include <cmath>

namespace lsf {

namespace {

constexpr int kC1 = 3;  // input channels
constexpr int kC = BankActivations::kChannels;

// spatial prototypes
constexpr double kIdent[9] = {0, 0, 0, 0, 1, 0, 0, 0, 0};
constexpr double kBox[9] = {1. / 9, 1. / 9, 1. / 9, 1. / 9, 1. / 9,
                            1. / 9, 1. / 9, 1. / 9, 1. / 9};
constexpr double kSobelX[9] = {-1. / 8, 0, 1. / 8, -2. / 8, 0,
                               2. / 8,  -1. / 8, 0, 1. / 8};
constexpr double kSobelY[9] = {-1. / 8, -2. / 8, -1. / 8, 0, 0,
                               0,       1. / 8,  2. / 8,  1. / 8};
constexpr double kCross[9] = {1. / 4, 0, -1. / 4, 0, 0, 0, -1. / 4, 0, 1. / 4};

struct BankWeights {
  // w1[f][tap][ci], w2[f][tap][cf]
  double w1[kC][9][kC1] = {};
  double w2[kC][9][kC] = {};

  BankWeights() {
    const double luma[3] = {0.299, 0.587, 0.114};
    const double rg[3] = {1.0, -1.0, 0.0};
    const double byl[3] = {-0.5, -0.5, 1.0};
    const double rb[3] = {1.0, 0.0, -1.0};

    auto set1 = [&](int f, const double* spatial, const double* chan) {
      for (int tap = 0; tap < 9; ++tap)
        for (int ci = 0; ci < kC1; ++ci) w1[f][tap][ci] = spatial[tap] * chan[ci];
    };
    set1(0, kBox, luma);
    set1(1, kSobelX, luma);
    set1(2, kSobelY, luma);
    set1(3, kCross, luma);
    set1(4, kIdent, rg);
    set1(5, kIdent, byl);
    set1(6, kBox, rb);
    set1(7, kIdent, luma);

    auto set2 = [&](int f, const double* spatial, int src, double scale) {
      for (int tap = 0; tap < 9; ++tap) w2[f][tap][src] += spatial[tap] * scale;
    };
    set2(0, kBox, 0, 1.0);
    set2(1, kSobelX, 7, 1.0);
    set2(2, kSobelY, 7, 1.0);
    set2(3, kBox, 1, 0.5);
    set2(3, kBox, 2, 0.5);
    set2(4, kIdent, 3, 1.0);
    set2(5, kBox, 4, 1.0);
    set2(6, kBox, 5, 1.0);
    set2(7, kCross, 0, 1.0);
  }
};

const BankWeights& bank() {
  static const BankWeights w;
  return w;
}

std::vector<double> image_to_rgb_pixels(const Image& img) {
  std::vector<double> out(std::size_t(img.height) * img.width * 3);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c)
        out[(std::size_t(y) * img.width + x) * 3 + c] = img.at(y, x, c);
  return out;
}

}  // namespace

BankActivations bank_forward(const std::vector<double>& pixels, int h, int w) {
  if (pixels.size() != std::size_t(h) * w * kC1)
    throw DimensionError("bank_forward: pixel buffer size mismatch");
  const BankWeights& bw = bank();
  BankActivations acts;
  acts.h1 = h;
  acts.w1 = w;
  acts.h2 = (h + 1) / 2;
  acts.w2 = (w + 1) / 2;
  acts.layer1.assign(std::size_t(h) * w * kC, 0.0);
  acts.layer2.assign(std::size_t(acts.h2) * acts.w2 * kC, 0.0);

  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int f = 0; f < kC; ++f) {
        double s = 0.0;
        for (int ky = 0; ky < 3; ++ky) {
          const int yy = y + ky - 1;
          if (yy < 0 || yy >= h) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int xx = x + kx - 1;
            if (xx < 0 || xx >= w) continue;
            const double* px = pixels.data() + (std::size_t(yy) * w + xx) * kC1;
            const double* wt = bw.w1[f][ky * 3 + kx];
            s += wt[0] * px[0] + wt[1] * px[1] + wt[2] * px[2];
          }
        }
        acts.layer1[(std::size_t(y) * w + x) * kC + f] = s > 0.0 ? s : 0.0;
      }

  for (int y = 0; y < acts.h2; ++y)
    for (int x = 0; x < acts.w2; ++x)
      for (int f = 0; f < kC; ++f) {
        double s = 0.0;
        for (int ky = 0; ky < 3; ++ky) {
          const int yy = 2 * y + ky - 1;
          if (yy < 0 || yy >= h) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int xx = 2 * x + kx - 1;
            if (xx < 0 || xx >= w) continue;
            const double* a = acts.layer1.data() + (std::size_t(yy) * w + xx) * kC;
            const double* wt = bw.w2[f][ky * 3 + kx];
            for (int cf = 0; cf < kC; ++cf) s += wt[cf] * a[cf];
          }
        }
        acts.layer2[(std::size_t(y) * acts.w2 + x) * kC + f] = s > 0.0 ? s : 0.0;
      }
  return acts;
}

std::vector<double> gram_matrix(const std::vector<double>& acts, int h, int w,
                                int c) {
  std::vector<double> g(std::size_t(c) * c, 0.0);
  const double norm = 1.0 / (double(h) * w * c);
  for (std::size_t p = 0; p < std::size_t(h) * w; ++p) {
    const double* a = acts.data() + p * c;
    for (int c1 = 0; c1 < c; ++c1)
      for (int c2 = c1; c2 < c; ++c2) g[std::size_t(c1) * c + c2] += a[c1] * a[c2];
  }
  for (int c1 = 0; c1 < c; ++c1)
    for (int c2 = c1; c2 < c; ++c2) {
      g[std::size_t(c1) * c + c2] *= norm;
      g[std::size_t(c2) * c + c1] = g[std::size_t(c1) * c + c2];
    }
  return g;
}

StyleTransfer::StyleTransfer(const LogoAsset& logo, const Image& style_image) {
  h_ = logo.height();
  w_ = logo.width();
  alpha_source_ = logo.pixels;
  init_pixels_ = image_to_rgb_pixels(logo.pixels);
  content_acts_ = bank_forward(init_pixels_, h_, w_);

  Image style = resize(style_image, h_, w_, ResizeMode::kBilinear);
  std::vector<double> style_px = image_to_rgb_pixels(style);
  BankActivations sa = bank_forward(style_px, h_, w_);
  style_gram1_ = gram_matrix(sa.layer1, sa.h1, sa.w1, kC);
  style_gram2_ = gram_matrix(sa.layer2, sa.h2, sa.w2, kC);
}

StyleLosses StyleTransfer::losses(const std::vector<double>& pixels) const {
  BankActivations a = bank_forward(pixels, h_, w_);
  StyleLosses out;

  const std::size_t n2 = a.layer2.size();
  for (std::size_t i = 0; i < n2; ++i) {
    const double d = a.layer2[i] - content_acts_.layer2[i];
    out.content += d * d;
  }
  out.content /= double(n2);

  std::vector<double> g1 = gram_matrix(a.layer1, a.h1, a.w1, kC);
  std::vector<double> g2 = gram_matrix(a.layer2, a.h2, a.w2, kC);
  for (std::size_t i = 0; i < g1.size(); ++i) {
    const double d1 = g1[i] - style_gram1_[i];
    const double d2 = g2[i] - style_gram2_[i];
    out.style += d1 * d1 + d2 * d2;
  }

  for (int y = 0; y < h_; ++y)
    for (int x = 0; x < w_; ++x)
      for (int c = 0; c < 3; ++c) {
        const double v = pixels[(std::size_t(y) * w_ + x) * 3 + c];
        if (x + 1 < w_) {
          const double d = pixels[(std::size_t(y) * w_ + x + 1) * 3 + c] - v;
          out.tv += d * d;
        }
        if (y + 1 < h_) {
          const double d = pixels[(std::size_t(y + 1) * w_ + x) * 3 + c] - v;
          out.tv += d * d;
        }
      }
  return out;
}

double StyleTransfer::loss_and_gradient(const std::vector<double>& pixels,
                                        const StyleTransferConfig& cfg,
                                        std::vector<double>& grad) const {
  const BankWeights& bw = bank();
  BankActivations a = bank_forward(pixels, h_, w_);
  const int h2 = a.h2, w2 = a.w2;

  StyleLosses parts;

  // layer-2 upstream gradient: content + style terms, then the ReLU mask
  std::vector<double> d2(a.layer2.size(), 0.0);
  const double inv_n2 = 1.0 / double(a.layer2.size());
  for (std::size_t i = 0; i < a.layer2.size(); ++i) {
    const double d = a.layer2[i] - content_acts_.layer2[i];
    parts.content += d * d * inv_n2;
    d2[i] = cfg.lambda_content * 2.0 * inv_n2 * d;
  }

  std::vector<double> g1 = gram_matrix(a.layer1, a.h1, a.w1, kC);
  std::vector<double> g2 = gram_matrix(a.layer2, h2, w2, kC);
  std::vector<double> dg1(g1.size()), dg2(g2.size());
  for (std::size_t i = 0; i < g1.size(); ++i) {
    const double e1 = g1[i] - style_gram1_[i];
    const double e2 = g2[i] - style_gram2_[i];
    parts.style += e1 * e1 + e2 * e2;
    dg1[i] = e1;
    dg2[i] = e2;
  }
  // d/da[p][c] of ||G - G*||_F^2 with G normalized by h*w*C:
  // 4/(h*w*C) * sum_c2 (G - G*)[c][c2] * a[p][c2]
  const double s2 = 4.0 / (double(h2) * w2 * kC);
  for (std::size_t p = 0; p < std::size_t(h2) * w2; ++p) {
    const double* ap = a.layer2.data() + p * kC;
    double* dp = d2.data() + p * kC;
    for (int c1 = 0; c1 < kC; ++c1) {
      double s = 0.0;
      for (int c2 = 0; c2 < kC; ++c2) s += dg2[std::size_t(c1) * kC + c2] * ap[c2];
      dp[c1] += cfg.lambda_style * s2 * s;
    }
  }
  for (std::size_t i = 0; i < d2.size(); ++i)
    if (a.layer2[i] <= 0.0) d2[i] = 0.0;

  // through conv2 into layer 1
  std::vector<double> d1(a.layer1.size(), 0.0);
  for (int y = 0; y < h2; ++y)
    for (int x = 0; x < w2; ++x)
      for (int f = 0; f < kC; ++f) {
        const double d = d2[(std::size_t(y) * w2 + x) * kC + f];
        if (d == 0.0) continue;
        for (int ky = 0; ky < 3; ++ky) {
          const int yy = 2 * y + ky - 1;
          if (yy < 0 || yy >= h_) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int xx = 2 * x + kx - 1;
            if (xx < 0 || xx >= w_) continue;
            double* t = d1.data() + (std::size_t(yy) * w_ + xx) * kC;
            const double* wt = bw.w2[f][ky * 3 + kx];
            for (int cf = 0; cf < kC; ++cf) t[cf] += wt[cf] * d;
          }
        }
      }

  // layer-1 style term
  const double s1 = 4.0 / (double(h_) * w_ * kC);
  for (std::size_t p = 0; p < std::size_t(h_) * w_; ++p) {
    const double* ap = a.layer1.data() + p * kC;
    double* dp = d1.data() + p * kC;
    for (int c1 = 0; c1 < kC; ++c1) {
      double s = 0.0;
      for (int c2 = 0; c2 < kC; ++c2) s += dg1[std::size_t(c1) * kC + c2] * ap[c2];
      dp[c1] += cfg.lambda_style * s1 * s;
    }
  }
  for (std::size_t i = 0; i < d1.size(); ++i)
    if (a.layer1[i] <= 0.0) d1[i] = 0.0;

  // through conv1 into pixels
  grad.assign(pixels.size(), 0.0);
  for (int y = 0; y < h_; ++y)
    for (int x = 0; x < w_; ++x)
      for (int f = 0; f < kC; ++f) {
        const double d = d1[(std::size_t(y) * w_ + x) * kC + f];
        if (d == 0.0) continue;
        for (int ky = 0; ky < 3; ++ky) {
          const int yy = y + ky - 1;
          if (yy < 0 || yy >= h_) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int xx = x + kx - 1;
            if (xx < 0 || xx >= w_) continue;
            double* t = grad.data() + (std::size_t(yy) * w_ + xx) * kC1;
            const double* wt = bw.w1[f][ky * 3 + kx];
            t[0] += wt[0] * d;
            t[1] += wt[1] * d;
            t[2] += wt[2] * d;
          }
        }
      }

  // total variation term
  for (int y = 0; y < h_; ++y)
    for (int x = 0; x < w_; ++x)
      for (int c = 0; c < 3; ++c) {
        const std::size_t at = (std::size_t(y) * w_ + x) * 3 + c;
        const double v = pixels[at];
        if (x + 1 < w_) {
          const double d = pixels[(std::size_t(y) * w_ + x + 1) * 3 + c] - v;
          parts.tv += d * d;
          grad[at] -= cfg.lambda_tv * 2.0 * d;
          grad[(std::size_t(y) * w_ + x + 1) * 3 + c] += cfg.lambda_tv * 2.0 * d;
        }
        if (y + 1 < h_) {
          const double d = pixels[(std::size_t(y + 1) * w_ + x) * 3 + c] - v;
          parts.tv += d * d;
          grad[at] -= cfg.lambda_tv * 2.0 * d;
          grad[(std::size_t(y + 1) * w_ + x) * 3 + c] += cfg.lambda_tv * 2.0 * d;
        }
      }

  return parts.total(cfg);
}

LogoAsset StyleTransfer::run(const StyleTransferConfig& cfg) const {
  if (cfg.iterations < 1) throw DimensionError("iterations must be >= 1");
  std::vector<double> pixels = init_pixels_;
  std::vector<double> grad, candidate;
  double loss = losses(pixels).total(cfg);

  for (int it = 0; it < cfg.iterations; ++it) {
    const double here = loss_and_gradient(pixels, cfg, grad);
    if (!std::isfinite(here))
      throw Error("style transfer: non-finite loss at iteration " +
                  std::to_string(it));
    loss = here;

    double step = cfg.init_step;
    bool accepted = false;
    while (step > 1e-12) {
      candidate = pixels;
      for (std::size_t i = 0; i < candidate.size(); ++i)
        candidate[i] -= step * grad[i];
      const double cand_loss = losses(candidate).total(cfg);
      if (std::isfinite(cand_loss) && cand_loss < loss) {
        pixels.swap(candidate);
        loss = cand_loss;
        accepted = true;
        break;
      }
      step *= cfg.shrink;
    }
    if (!accepted) break;  // no descent step left
  }

  LogoAsset out;
  out.id = "stylized";
  out.pixels = alpha_source_;
  for (int y = 0; y < h_; ++y)
    for (int x = 0; x < w_; ++x)
      for (int c = 0; c < 3; ++c)
        out.pixels.at(y, x, c) =
            clamp01(float(pixels[(std::size_t(y) * w_ + x) * 3 + c]));
  return out;
}

StyleLosses style_losses(const std::vector<double>& candidate_pixels,
                         const LogoAsset& logo, const Image& style_image) {
  StyleTransfer st(logo, style_image);
  return st.losses(candidate_pixels);
}

LogoAsset stylize_logo(const LogoAsset& logo, const Image& style_image,
                       const StyleTransferConfig& cfg) {
  StyleTransfer st(logo, style_image);
  return st.run(cfg);
}

}  // namespace lsf
