#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lsf/logo.hpp"
#include "lsf/oracle.hpp"
#include "lsf/rng.hpp"
#include "lsf/style_search.hpp"
#include "lsf/style_transfer.hpp"
#include "lsf/tensor.hpp"

namespace lsf {

// Search space of the 5-step action sequence (k, u, v, logo, style). k comes
// first so the u and v heads can be masked to the exact valid range.
struct ActionSpace {
  int frame_h = 64, frame_w = 64;
  int logo_h = 32, logo_w = 32;
  std::vector<double> k_menu = {0.75, 0.8125, 0.875, 0.9375, 1.0};
  int n_logos = 100;
  int n_styles = 5;

  int scaled_h(int k_index) const;
  int scaled_w(int k_index) const;
  int u_max(int k_index) const { return frame_h - scaled_h(k_index); }
  int v_max(int k_index) const { return frame_w - scaled_w(k_index); }
  // head cardinalities (u, v sized for the smallest k in the menu)
  int u_cardinality() const;
  int v_cardinality() const;
  int cardinality(int step) const;  // step 0..4 = k,u,v,logo,style
};

struct ActionSequence {
  int k_index = 0;
  int u = 0;
  int v = 0;
  int logo_index = 0;
  int style_index = 0;

  int at(int step) const;
  bool operator==(const ActionSequence&) const = default;
};

// Recurrent policy: learned start token and action embeddings feed an LSTM
// cell (hidden 64); one linear head per step outputs that action's
// categorical distribution.
class PolicyNetwork {
 public:
  static constexpr int kHidden = 64;
  static constexpr int kEmbed = 16;
  static constexpr double kInitRange = 0.08;

  PolicyNetwork(const ActionSpace& space, std::uint64_t seed);

  const ActionSpace& space() const { return space_; }
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

  struct SampleResult {
    ActionSequence actions;
    double log_prob = 0.0;
    // per-step probability vectors (masked entries are exactly 0)
    std::vector<std::vector<double>> step_probs;
  };

  SampleResult sample(Rng& rng) const;
  double log_prob(const ActionSequence& actions) const;  // replay
  // replay + backward; returns log_prob and writes d(log_prob)/d(params)
  double log_prob_gradient(const ActionSequence& actions,
                           std::vector<double>& grad) const;

  // test port: set a head bias so one action dominates (degenerate policy)
  void force_head_choice(int step, int action, double logit = 1e4);

 public:
  struct Layout;

 private:
  const Layout& layout() const { return *layout_; }

  ActionSpace space_;
  std::shared_ptr<const Layout> layout_;
  std::vector<double> params_;
};

struct RewardParams {
  double mu_area = 0.004;
  double mu_dist = 0.2;
  double probability_floor = 1e-12;
};

// Shortest distance from the logo rectangle's corners to the frame corners;
// k enters unfloored, matching the penalty formula.
double corner_distance(const ActionSequence& a, const ActionSpace& space);

// log goal-probability minus area and corner-distance penalties. The caller
// passes the observed goal probability: p(y_t) for targeted (0 when the
// target is not top-1), p(y_0) for untargeted.
double reward(double goal_probability, bool targeted, const ActionSequence& a,
              const ActionSpace& space, const RewardParams& params);

// One REINFORCE step with a mean-reward baseline.
void reinforce_update(PolicyNetwork& policy,
                      const std::vector<ActionSequence>& sequences,
                      const std::vector<double>& rewards, double lr);

struct Stage2Config {
  int batch = 30;  // Omega: 30 untargeted, 50 targeted
  int max_iterations = 50;
  int plateau_patience = 5;
  double lr = 0.01;
  RewardParams reward_params;
  StyleTransferConfig style_cfg;
  std::uint64_t seed = 0;
};

struct Stage2Record {
  int iteration = 0;
  ActionSequence actions;
  int label = -1;
  double score = 0.0;
  double reward = 0.0;
  bool goal_met = false;
  std::uint64_t cumulative_queries = 0;
};

struct Stage2Result {
  VideoTensor best_video;
  RegionMask best_mask;
  ActionSequence best_actions;
  double best_reward = 0.0;
  bool goal_met = false;       // the returned video satisfies the goal
  bool exhausted = false;      // budget died mid-iteration
  int iterations = 0;
  std::vector<Stage2Record> records;
};

// Stage 2 driver: sample a batch, stylize (cached), superimpose, query,
// update the policy; stops on goal success, reward plateau, or the iteration
// cap. The returned video is the argmax-reward sample, restricted to
// goal-satisfying samples once any exists.
Stage2Result direct_stage2(QueryGate& gate, const VideoTensor& x0,
                           const StyleSet& styles, const LogoSet& logos,
                           const AttackGoal& goal, const Stage2Config& cfg);

}  // namespace lsf
