#pragma once

#include <cstdint>
#include <vector>

#include "lsf/oracle.hpp"
#include "lsf/tensor.hpp"

namespace lsf {

class StyleSearchFailed : public Error {
 public:
  using Error::Error;
};

// Adversarial style image: a small block that classifies as the goal once
// expanded to video dims.
struct StyleImage {
  Image block;  // stored clipped to [0,1]
  std::uint64_t seed = 0;
  std::uint64_t queries = 0;
};

struct StyleSet {
  std::vector<StyleImage> images;
};

struct StyleSearchConfig {
  int block_h = 16;
  int block_w = 16;
  double step = 0.3;              // pixel-space step, magnitude-unrestricted
  std::uint64_t query_cap = 5000; // per style
  int retries = 3;                // per member in build_style_set
};

// Objective values at accepted steps, for monotone-acceptance audits.
struct StyleSearchTrace {
  std::vector<double> accepted_objectives;
  std::uint64_t queries = 0;
};

// SimBA over block coordinates: propose +step then -step per coordinate in a
// seeded shuffled order (reshuffled each round), keep strictly improving
// moves, stop as soon as the expanded block satisfies the goal.
StyleImage find_style(QueryGate& gate, const AttackGoal& goal,
                      std::uint64_t seed, const StyleSearchConfig& cfg,
                      int frames, int height, int width,
                      StyleSearchTrace* trace = nullptr);

// Exactly n_styles members, with per-member seeds derived from master_seed;
// failed members are retried cfg.retries times before giving up.
StyleSet build_style_set(QueryGate& gate, const AttackGoal& goal, int n_styles,
                         std::uint64_t master_seed, const StyleSearchConfig& cfg,
                         int frames, int height, int width,
                         std::vector<StyleSearchTrace>* traces = nullptr);

}  // namespace lsf
