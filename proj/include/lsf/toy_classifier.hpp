#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsf/oracle.hpp"
#include "lsf/tensor.hpp"

namespace lsf {

// Fixed-filter video classifier standing in for a real recognition model.
// Frames are 2x box-downsampled, passed through 8 hand-specified 3x3 filters
// (identity on luma, 4 rectified edge detectors on luma, 3 box filters on
// R/G/B), average-pooled to an 8x8 grid, and reduced over time to per-cell
// mean and mean absolute frame difference. A linear softmax layer on the
// standardized features is the only trained part.
class ToyClassifier {
 public:
  static constexpr int kFilters = 8;
  static constexpr int kGrid = 8;
  static constexpr int kClasses = 8;
  static constexpr double kZClip = 8.0;
  static constexpr double kStdFloor = 1e-3;

  ToyClassifier(int frames, int height, int width);

  int frames() const { return frames_; }
  int height() const { return height_; }
  int width() const { return width_; }
  int feature_count() const { return feature_count_; }
  int num_classes() const { return kClasses; }

  // ---- white-box test/training ports ----
  std::vector<double> features(const VideoTensor& video) const;
  std::vector<double> standardize(const std::vector<double>& raw) const;
  std::vector<double> logits(const std::vector<double>& z) const;
  std::vector<double> scores(const VideoTensor& video) const;  // softmax

  LabelScore top1(const VideoTensor& video) const;

  // linear layer + feature affine, trained/assigned by the trainer
  std::vector<float> weights;   // kClasses x feature_count
  std::vector<float> bias;      // kClasses
  std::vector<float> feat_mean; // feature_count
  std::vector<float> feat_std;  // feature_count

  void save(const std::string& path) const;
  static ToyClassifier load(const std::string& path);

  // 3x3 kernels, row-major, one per filter (white-box port; the bank itself
  // is fixed at construction).
  const std::vector<double>& kernels() const { return kernels_; }

 private:
  int frames_, height_, width_;
  int half_h_, half_w_;
  int feature_count_;
  std::vector<double> kernels_;  // kFilters x 9
};

// Black-box wrapper; this is what attacks see.
class ToyOracle final : public Oracle {
 public:
  explicit ToyOracle(ToyClassifier model) : model_(std::move(model)) {}
  int num_classes() const override { return model_.num_classes(); }
  const ToyClassifier& model() const { return model_; }  // white-box test port

 protected:
  OracleResponse respond(const VideoTensor& video, int watch_label) const override {
    std::vector<double> p = model_.scores(video);
    int best = 0;
    for (int c = 1; c < int(p.size()); ++c)
      if (p[std::size_t(c)] > p[std::size_t(best)]) best = c;
    OracleResponse r;
    r.top1 = LabelScore{best, p[std::size_t(best)]};
    if (watch_label >= 0 && watch_label < int(p.size()))
      r.goal_score = p[std::size_t(watch_label)];
    return r;
  }

 private:
  ToyClassifier model_;
};

// ---- synthetic moving-shapes dataset ----

enum class Shape { kCircle = 0, kSquare = 1 };
enum class Direction { kLeft = 0, kRight = 1, kUp = 2, kDown = 3 };

inline int class_id(Shape s, Direction d) { return int(s) * 4 + int(d); }
std::string class_name(int label);

struct SyntheticSample {
  VideoTensor video;
  int label = 0;
  // generator ground truth, used by contract tests
  std::vector<double> center_row;
  std::vector<double> center_col;
  float background[3] = {0, 0, 0};
};

struct DatasetSpec {
  int frames = 16;
  int height = 64;
  int width = 64;
  float noise_amplitude = 0.05f;
};

SyntheticSample generate_sample(std::uint64_t seed, int label,
                                const DatasetSpec& spec = {});

struct SyntheticDataset {
  DatasetSpec spec;
  std::vector<SyntheticSample> samples;  // grouped by class, n per class
  int n_per_class = 0;
};

// Deterministic in seed; 8 * n_per_class samples.
SyntheticDataset generate_dataset(std::uint64_t seed, int n_per_class,
                                  const DatasetSpec& spec = {});

struct TrainResult {
  ToyClassifier model;
  double holdout_accuracy = 0.0;
  int holdout_count = 0;
};

// Minibatch SGD on softmax cross-entropy over the linear layer, deterministic
// in seed. Stratified 80/20 train/holdout split.
TrainResult train_classifier(const SyntheticDataset& dataset, int epochs = 30,
                             double lr = 0.1, std::uint64_t seed = 0);

// Training loss and its linear-layer gradient on a batch of (featurized)
// samples; the finite-difference suites check this pairing.
double training_loss(const ToyClassifier& model,
                     const std::vector<std::vector<double>>& features,
                     const std::vector<int>& labels,
                     const std::vector<double>& w, const std::vector<double>& b);
void training_gradient(const ToyClassifier& model,
                       const std::vector<std::vector<double>>& features,
                       const std::vector<int>& labels,
                       const std::vector<double>& w, const std::vector<double>& b,
                       std::vector<double>& grad_w, std::vector<double>& grad_b);

}  // namespace lsf
