#include "lsf/style_search.hpp"

#include <numeric>

#include "lsf/rng.hpp"

namespace lsf {

namespace {

VideoTensor expand_clipped(const Image& block, int frames, int height, int width) {
  Image clipped = block;
  for (float& v : clipped.data) v = clamp01(v);
  return expand_block(clipped, frames, height, width);
}

Image clip_image(const Image& img) {
  Image out = img;
  for (float& v : out.data) v = clamp01(v);
  return out;
}

}  // namespace

StyleImage find_style(QueryGate& gate, const AttackGoal& goal,
                      std::uint64_t seed, const StyleSearchConfig& cfg,
                      int frames, int height, int width,
                      StyleSearchTrace* trace) {
  gate.set_watch_label(goal.targeted ? goal.label : -1);
  Rng rng(seed);
  Image block(cfg.block_h, cfg.block_w, 3);
  for (float& v : block.data) v = float(rng.next_double());

  std::uint64_t queries = 0;
  auto ask = [&](const Image& b) {
    if (queries >= cfg.query_cap)
      throw StyleSearchFailed("style search hit the per-style query cap of " +
                              std::to_string(cfg.query_cap));
    OracleResponse r = gate.query(expand_clipped(b, frames, height, width));
    ++queries;
    return r;
  };

  OracleResponse resp = ask(block);
  if (trace) trace->accepted_objectives.push_back(goal.observable(resp));
  if (goal.met(resp)) {
    if (trace) trace->queries = queries;
    return StyleImage{clip_image(block), seed, queries};
  }
  double objective = goal.observable(resp);

  std::vector<std::size_t> coords(block.data.size());
  std::iota(coords.begin(), coords.end(), 0);

  for (;;) {
    rng.shuffle(coords);
    for (std::size_t coord : coords) {
      for (double sign : {1.0, -1.0}) {
        Image candidate = block;
        candidate.data[coord] += float(sign * cfg.step);
        OracleResponse r = ask(candidate);
        if (goal.met(r)) {
          if (trace) {
            trace->accepted_objectives.push_back(goal.observable(r));
            trace->queries = queries;
          }
          return StyleImage{clip_image(candidate), seed, queries};
        }
        const double cand_obj = goal.observable(r);
        if (cand_obj > objective) {
          block = std::move(candidate);
          objective = cand_obj;
          if (trace) trace->accepted_objectives.push_back(cand_obj);
          break;  // skip the opposite sign
        }
      }
    }
  }
}

StyleSet build_style_set(QueryGate& gate, const AttackGoal& goal, int n_styles,
                         std::uint64_t master_seed, const StyleSearchConfig& cfg,
                         int frames, int height, int width,
                         std::vector<StyleSearchTrace>* traces) {
  if (n_styles < 1) throw DimensionError("n_styles must be >= 1");
  StyleSet set;
  set.images.reserve(std::size_t(n_styles));
  for (int i = 0; i < n_styles; ++i) {
    bool found = false;
    for (int attempt = 0; attempt < cfg.retries && !found; ++attempt) {
      const std::uint64_t seed = derive_seed(
          master_seed, "style-member", std::uint64_t(i) * 97 + attempt);
      StyleSearchTrace trace;
      try {
        StyleImage img = find_style(gate, goal, seed, cfg, frames, height,
                                    width, &trace);
        set.images.push_back(std::move(img));
        if (traces) traces->push_back(std::move(trace));
        found = true;
      } catch (const StyleSearchFailed&) {
        if (attempt + 1 == cfg.retries) throw StyleSearchFailed(
            "style member " + std::to_string(i) + " failed after " +
            std::to_string(cfg.retries) + " attempts");
      }
    }
  }
  return set;
}

}  // namespace lsf
