#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "lsf/error.hpp"
#include "lsf/tensor.hpp"

namespace lsf {

struct OracleResponse {
  LabelScore top1;
  // p(watch_label | x); present only when the episode registered a watch
  // label (targeted attacks name y_t up front, as in the score oracles this
  // attack family builds on)
  std::optional<double> goal_score;
};

struct QueryBudget {
  std::uint64_t limit = 300000;
  std::uint64_t used = 0;
};

// Black-box surface: the top-1 label and score, plus the score of one
// pre-registered watch label. Every call charges the budget. Model internals
// stay behind the concrete types (white-box test ports), which attack code
// never touches.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual int num_classes() const = 0;

  OracleResponse query(const VideoTensor& video, QueryBudget& budget,
                       int watch_label = -1) const {
    if (budget.used >= budget.limit)
      throw BudgetExhausted(budget.used, budget.limit);
    ++budget.used;
    return respond(video, watch_label);
  }

 protected:
  virtual OracleResponse respond(const VideoTensor& video,
                                 int watch_label) const = 0;
};

enum class AttackStage { kStyle = 0, kDirector = 1, kOptimizer = 2 };

// Per-episode accounting gate. All attack queries flow through here so the
// per-stage counts add up to budget.used exactly.
class QueryGate {
 public:
  QueryGate(const Oracle& oracle, std::uint64_t limit) : oracle_(oracle) {
    budget_.limit = limit;
  }

  void set_stage(AttackStage stage) { stage_ = stage; }
  void set_watch_label(int label) { watch_label_ = label; }
  int watch_label() const { return watch_label_; }

  OracleResponse query(const VideoTensor& video) {
    OracleResponse r = oracle_.query(video, budget_, watch_label_);
    ++per_stage_[std::size_t(stage_)];
    return r;
  }

  std::uint64_t used() const { return budget_.used; }
  std::uint64_t limit() const { return budget_.limit; }
  std::uint64_t remaining() const { return budget_.limit - budget_.used; }
  std::uint64_t stage_queries(AttackStage stage) const {
    return per_stage_[std::size_t(stage)];
  }
  const Oracle& oracle() const { return oracle_; }

 private:
  const Oracle& oracle_;
  QueryBudget budget_;
  std::array<std::uint64_t, 3> per_stage_{};
  AttackStage stage_ = AttackStage::kStyle;
  int watch_label_ = -1;
};

// Attack objective: reach the target label (targeted) or leave the original
// label (untargeted).
struct AttackGoal {
  bool targeted = false;
  int label = 0;  // y_t when targeted, y_0 otherwise

  bool met(const OracleResponse& r) const {
    return targeted ? r.top1.label == label : r.top1.label != label;
  }

  // Scalar hill-climbing objective; higher is better. Targeted episodes read
  // the watched target score p(y_t|x); untargeted ones push the original
  // class's top-1 score down (once another label tops, the goal is met).
  double observable(const OracleResponse& r) const {
    if (targeted) {
      if (!r.goal_score)
        throw Error("targeted objective requires a watch label on the gate");
      return *r.goal_score;
    }
    return r.top1.label == label ? -r.top1.score : r.top1.score;
  }
};

}  // namespace lsf
