#pragma once

#include <vector>

#include "lsf/logo.hpp"
#include "lsf/tensor.hpp"

namespace lsf {

// Two fixed convolution layers with ReLU stand in for a perceptual network:
// layer 1 has 8 filters 3x3x3 stride 1, layer 2 has 8 filters 3x3x8 stride 2.
// The filters are hand-specified constants (edge/color/blur kernels) and are
// never trained, so every gradient below is hand-derived and checkable.
struct BankActivations {
  int h1 = 0, w1 = 0;
  int h2 = 0, w2 = 0;
  static constexpr int kChannels = 8;
  std::vector<double> layer1;  // h1 x w1 x 8, post-ReLU
  std::vector<double> layer2;  // h2 x w2 x 8, post-ReLU
};

// pixels: h x w x 3 doubles, channel innermost.
BankActivations bank_forward(const std::vector<double>& pixels, int h, int w);

// Gram matrix of an activation map, normalized by the element count h*w*c.
std::vector<double> gram_matrix(const std::vector<double>& acts, int h, int w,
                                int c);

struct StyleTransferConfig {
  double lambda_content = 1.0;
  double lambda_style = 10.0;
  double lambda_tv = 1e-3;
  int iterations = 200;
  double init_step = 1.0;   // backtracking line search start
  double shrink = 0.5;
};

struct StyleLosses {
  double content = 0.0;
  double style = 0.0;
  double tv = 0.0;

  double total(const StyleTransferConfig& cfg) const {
    return cfg.lambda_content * content + cfg.lambda_style * style +
           cfg.lambda_tv * tv;
  }
};

// One (logo, style image) pairing with precomputed targets: content
// activations of the logo and Gram targets of the style image resized to
// logo dims.
class StyleTransfer {
 public:
  StyleTransfer(const LogoAsset& logo, const Image& style_image);

  int height() const { return h_; }
  int width() const { return w_; }
  const std::vector<double>& initial_pixels() const { return init_pixels_; }

  StyleLosses losses(const std::vector<double>& pixels) const;
  // total loss; grad gets d(total)/d(pixel), same layout as pixels
  double loss_and_gradient(const std::vector<double>& pixels,
                           const StyleTransferConfig& cfg,
                           std::vector<double>& grad) const;

  // Gradient descent with backtracking line search from the logo itself.
  // The internal loss sequence is non-increasing; the result is clipped to
  // [0,1] and keeps the logo's alpha.
  LogoAsset run(const StyleTransferConfig& cfg) const;

 private:
  int h_, w_;
  Image alpha_source_;
  std::vector<double> init_pixels_;
  BankActivations content_acts_;
  std::vector<double> style_gram1_, style_gram2_;
};

// Convenience wrappers for the operation-level API.
StyleLosses style_losses(const std::vector<double>& candidate_pixels,
                         const LogoAsset& logo, const Image& style_image);
LogoAsset stylize_logo(const LogoAsset& logo, const Image& style_image,
                       const StyleTransferConfig& cfg);

}  // namespace lsf
