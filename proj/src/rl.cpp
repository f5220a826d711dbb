#include "lsf/rl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <limits>

namespace lsf {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Image rgb_of(const LogoAsset& asset) {
  Image out(asset.height(), asset.width(), 3);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = asset.pixels.at(y, x, c);
  return out;
}

}  // namespace

int ActionSpace::scaled_h(int k_index) const {
  return int(std::floor(k_menu[std::size_t(k_index)] * logo_h));
}
int ActionSpace::scaled_w(int k_index) const {
  return int(std::floor(k_menu[std::size_t(k_index)] * logo_w));
}
int ActionSpace::u_cardinality() const {
  int min_h = scaled_h(0);
  for (std::size_t i = 1; i < k_menu.size(); ++i)
    min_h = std::min(min_h, scaled_h(int(i)));
  return frame_h - min_h + 1;
}
int ActionSpace::v_cardinality() const {
  int min_w = scaled_w(0);
  for (std::size_t i = 1; i < k_menu.size(); ++i)
    min_w = std::min(min_w, scaled_w(int(i)));
  return frame_w - min_w + 1;
}
int ActionSpace::cardinality(int step) const {
  switch (step) {
    case 0: return int(k_menu.size());
    case 1: return u_cardinality();
    case 2: return v_cardinality();
    case 3: return n_logos;
    case 4: return n_styles;
    default: throw DimensionError("action step outside [0,5)");
  }
}

int ActionSequence::at(int step) const {
  switch (step) {
    case 0: return k_index;
    case 1: return u;
    case 2: return v;
    case 3: return logo_index;
    case 4: return style_index;
    default: throw DimensionError("action step outside [0,5)");
  }
}

// ---- parameter layout ----

struct PolicyNetwork::Layout {
  static constexpr int H = kHidden;
  static constexpr int E = kEmbed;

  std::size_t start_embed = 0;
  std::size_t embed[4] = {};   // tables for actions consumed as inputs
  std::size_t lstm_wx = 0;     // 4H x E
  std::size_t lstm_wh = 0;     // 4H x H
  std::size_t lstm_b = 0;      // 4H
  std::size_t head_w[5] = {};  // card x H
  std::size_t head_b[5] = {};  // card
  std::size_t total = 0;
  int card[5] = {};

  explicit Layout(const ActionSpace& space) {
    std::size_t at = 0;
    start_embed = at;
    at += E;
    for (int s = 0; s < 5; ++s) card[s] = space.cardinality(s);
    for (int s = 0; s < 4; ++s) {
      embed[s] = at;
      at += std::size_t(card[s]) * E;
    }
    lstm_wx = at;
    at += std::size_t(4 * H) * E;
    lstm_wh = at;
    at += std::size_t(4 * H) * H;
    lstm_b = at;
    at += std::size_t(4 * H);
    for (int s = 0; s < 5; ++s) {
      head_w[s] = at;
      at += std::size_t(card[s]) * H;
      head_b[s] = at;
      at += std::size_t(card[s]);
    }
    total = at;
  }
};

namespace {

// forward state of one LSTM+head step, kept for the backward pass
struct StepCache {
  std::vector<double> x, h_prev, c_prev;
  std::vector<double> gi, gf, gg, go, c, tanh_c, h;
  std::vector<double> probs;
  int valid = 0;  // leading entries with nonzero probability
  int action = -1;
};

}  // namespace

PolicyNetwork::PolicyNetwork(const ActionSpace& space, std::uint64_t seed)
    : space_(space), layout_(std::make_shared<Layout>(space)) {
  params_.resize(layout_->total);
  Rng rng(seed);
  for (double& p : params_) p = rng.next_double(-kInitRange, kInitRange);
}

void PolicyNetwork::force_head_choice(int step, int action, double logit) {
  const Layout& lay = layout();
  if (step < 0 || step >= 5 || action < 0 || action >= lay.card[step])
    throw DimensionError("force_head_choice: bad step or action");
  for (int a = 0; a < lay.card[step]; ++a)
    params_[lay.head_b[step] + std::size_t(a)] = (a == action) ? logit : 0.0;
  for (std::size_t i = 0; i < std::size_t(lay.card[step]) * kHidden; ++i)
    params_[lay.head_w[step] + i] = 0.0;
}

namespace {

// one LSTM cell step in the flat-parameter world
void lstm_step(const std::vector<double>& params,
               const PolicyNetwork::Layout& lay, StepCache& sc) {
  constexpr int H = PolicyNetwork::kHidden;
  constexpr int E = PolicyNetwork::kEmbed;
  sc.gi.resize(H);
  sc.gf.resize(H);
  sc.gg.resize(H);
  sc.go.resize(H);
  sc.c.resize(H);
  sc.tanh_c.resize(H);
  sc.h.resize(H);
  for (int j = 0; j < 4 * H; ++j) {
    double pre = params[lay.lstm_b + std::size_t(j)];
    const double* wx = params.data() + lay.lstm_wx + std::size_t(j) * E;
    for (int e = 0; e < E; ++e) pre += wx[e] * sc.x[std::size_t(e)];
    const double* wh = params.data() + lay.lstm_wh + std::size_t(j) * H;
    for (int k = 0; k < H; ++k) pre += wh[k] * sc.h_prev[std::size_t(k)];
    const int unit = j % H;
    switch (j / H) {
      case 0: sc.gi[std::size_t(unit)] = sigmoid(pre); break;
      case 1: sc.gf[std::size_t(unit)] = sigmoid(pre); break;
      case 2: sc.gg[std::size_t(unit)] = std::tanh(pre); break;
      case 3: sc.go[std::size_t(unit)] = sigmoid(pre); break;
    }
  }
  for (int k = 0; k < H; ++k) {
    sc.c[std::size_t(k)] = sc.gf[std::size_t(k)] * sc.c_prev[std::size_t(k)] +
                           sc.gi[std::size_t(k)] * sc.gg[std::size_t(k)];
    sc.tanh_c[std::size_t(k)] = std::tanh(sc.c[std::size_t(k)]);
    sc.h[std::size_t(k)] = sc.go[std::size_t(k)] * sc.tanh_c[std::size_t(k)];
  }
}

// head probabilities over the valid prefix [0, valid)
void head_probs(const std::vector<double>& params,
                const PolicyNetwork::Layout& lay, int step,
                const std::vector<double>& h, int valid, StepCache& sc) {
  constexpr int H = PolicyNetwork::kHidden;
  const int card = lay.card[step];
  sc.probs.assign(std::size_t(card), 0.0);
  sc.valid = valid;
  double mx = -1e300;
  std::vector<double> logits(std::size_t(valid), 0.0);
  for (int a = 0; a < valid; ++a) {
    double s = params[lay.head_b[step] + std::size_t(a)];
    const double* w = params.data() + lay.head_w[step] + std::size_t(a) * H;
    for (int k = 0; k < H; ++k) s += w[k] * h[std::size_t(k)];
    logits[std::size_t(a)] = s;
    mx = std::max(mx, s);
  }
  double sum = 0.0;
  for (int a = 0; a < valid; ++a) {
    logits[std::size_t(a)] = std::exp(logits[std::size_t(a)] - mx);
    sum += logits[std::size_t(a)];
  }
  for (int a = 0; a < valid; ++a) sc.probs[std::size_t(a)] = logits[std::size_t(a)] / sum;
}

}  // namespace

// shared forward pass; when actions == nullptr, samples with rng
static double policy_forward(const PolicyNetwork& policy,
                             const std::vector<double>& params,
                             const PolicyNetwork::Layout& lay,
                             const ActionSpace& space,
                             const ActionSequence* actions, Rng* rng,
                             std::vector<StepCache>& steps,
                             ActionSequence& out) {
  (void)policy;
  constexpr int H = PolicyNetwork::kHidden;
  constexpr int E = PolicyNetwork::kEmbed;
  steps.assign(5, StepCache{});
  double log_prob = 0.0;
  std::vector<double> h(H, 0.0), c(H, 0.0);
  int k_index = -1;

  for (int step = 0; step < 5; ++step) {
    StepCache& sc = steps[std::size_t(step)];
    sc.x.resize(E);
    if (step == 0) {
      for (int e = 0; e < E; ++e) sc.x[std::size_t(e)] = params[lay.start_embed + std::size_t(e)];
    } else {
      const int prev = out.at(step - 1);
      const std::size_t base = lay.embed[step - 1] + std::size_t(prev) * E;
      for (int e = 0; e < E; ++e) sc.x[std::size_t(e)] = params[base + std::size_t(e)];
    }
    sc.h_prev = h;
    sc.c_prev = c;
    lstm_step(params, lay, sc);
    h = sc.h;
    c = sc.c;

    int valid = lay.card[step];
    if (step == 1) valid = space.u_max(k_index) + 1;
    if (step == 2) valid = space.v_max(k_index) + 1;
    head_probs(params, lay, step, h, valid, sc);

    int a;
    if (actions) {
      a = actions->at(step);
      if (a < 0 || a >= valid)
        throw DimensionError("replayed action outside the valid range at step " +
                             std::to_string(step));
    } else {
      const double r = rng->next_double();
      double cum = 0.0;
      a = valid - 1;
      for (int i = 0; i < valid; ++i) {
        cum += sc.probs[std::size_t(i)];
        if (r < cum) {
          a = i;
          break;
        }
      }
    }
    sc.action = a;
    log_prob += std::log(sc.probs[std::size_t(a)]);
    switch (step) {
      case 0: out.k_index = a; k_index = a; break;
      case 1: out.u = a; break;
      case 2: out.v = a; break;
      case 3: out.logo_index = a; break;
      case 4: out.style_index = a; break;
    }
  }
  return log_prob;
}

PolicyNetwork::SampleResult PolicyNetwork::sample(Rng& rng) const {
  std::vector<StepCache> steps;
  SampleResult res;
  res.log_prob = policy_forward(*this, params_, layout(), space_, nullptr,
                                &rng, steps, res.actions);
  res.step_probs.reserve(5);
  for (const StepCache& sc : steps) res.step_probs.push_back(sc.probs);
  return res;
}

double PolicyNetwork::log_prob(const ActionSequence& actions) const {
  std::vector<StepCache> steps;
  ActionSequence replay;
  return policy_forward(*this, params_, layout(), space_, &actions, nullptr,
                        steps, replay);
}

double PolicyNetwork::log_prob_gradient(const ActionSequence& actions,
                                        std::vector<double>& grad) const {
  constexpr int H = kHidden;
  constexpr int E = kEmbed;
  const Layout& lay = layout();
  std::vector<StepCache> steps;
  ActionSequence replay;
  const double lp = policy_forward(*this, params_, lay, space_, &actions,
                                   nullptr, steps, replay);

  grad.assign(params_.size(), 0.0);
  std::vector<double> dh(H, 0.0), dc(H, 0.0);
  std::vector<double> dpre(4 * H, 0.0), dx(E, 0.0);

  for (int step = 4; step >= 0; --step) {
    const StepCache& sc = steps[std::size_t(step)];

    // head: d log p[a] / d logits = onehot(a) - p (over the valid prefix)
    for (int a = 0; a < sc.valid; ++a) {
      const double dlogit = (a == sc.action ? 1.0 : 0.0) - sc.probs[std::size_t(a)];
      grad[lay.head_b[step] + std::size_t(a)] += dlogit;
      double* gw = grad.data() + lay.head_w[step] + std::size_t(a) * H;
      const double* w = params_.data() + lay.head_w[step] + std::size_t(a) * H;
      for (int k = 0; k < H; ++k) {
        gw[k] += dlogit * sc.h[std::size_t(k)];
        dh[std::size_t(k)] += dlogit * w[k];
      }
    }

    // LSTM cell backward
    for (int k = 0; k < H; ++k) {
      const double tc = sc.tanh_c[std::size_t(k)];
      const double dco = dh[std::size_t(k)] * sc.go[std::size_t(k)] * (1.0 - tc * tc) +
                         dc[std::size_t(k)];
      const double d_go = dh[std::size_t(k)] * tc;
      const double d_gi = dco * sc.gg[std::size_t(k)];
      const double d_gg = dco * sc.gi[std::size_t(k)];
      const double d_gf = dco * sc.c_prev[std::size_t(k)];
      dc[std::size_t(k)] = dco * sc.gf[std::size_t(k)];  // for the previous step
      dpre[std::size_t(k)] = d_gi * sc.gi[std::size_t(k)] * (1.0 - sc.gi[std::size_t(k)]);
      dpre[std::size_t(H + k)] = d_gf * sc.gf[std::size_t(k)] * (1.0 - sc.gf[std::size_t(k)]);
      dpre[std::size_t(2 * H + k)] = d_gg * (1.0 - sc.gg[std::size_t(k)] * sc.gg[std::size_t(k)]);
      dpre[std::size_t(3 * H + k)] = d_go * sc.go[std::size_t(k)] * (1.0 - sc.go[std::size_t(k)]);
    }
    std::fill(dh.begin(), dh.end(), 0.0);
    std::fill(dx.begin(), dx.end(), 0.0);
    for (int j = 0; j < 4 * H; ++j) {
      const double d = dpre[std::size_t(j)];
      if (d == 0.0) continue;
      grad[lay.lstm_b + std::size_t(j)] += d;
      double* gwx = grad.data() + lay.lstm_wx + std::size_t(j) * E;
      const double* wx = params_.data() + lay.lstm_wx + std::size_t(j) * E;
      for (int e = 0; e < E; ++e) {
        gwx[e] += d * sc.x[std::size_t(e)];
        dx[std::size_t(e)] += d * wx[e];
      }
      double* gwh = grad.data() + lay.lstm_wh + std::size_t(j) * H;
      const double* wh = params_.data() + lay.lstm_wh + std::size_t(j) * H;
      for (int k = 0; k < H; ++k) {
        gwh[k] += d * sc.h_prev[std::size_t(k)];
        dh[std::size_t(k)] += d * wh[k];
      }
    }

    // input embedding gradient
    std::size_t base = step == 0
                           ? lay.start_embed
                           : lay.embed[step - 1] +
                                 std::size_t(steps[std::size_t(step - 1)].action) * E;
    for (int e = 0; e < E; ++e) grad[base + std::size_t(e)] += dx[std::size_t(e)];
  }
  return lp;
}

// ---- reward ----

double corner_distance(const ActionSequence& a, const ActionSpace& space) {
  const double k = space.k_menu[std::size_t(a.k_index)];
  const double kh = k * space.logo_h;
  const double kw = k * space.logo_w;
  const double H = space.frame_h, W = space.frame_w;
  const double u = a.u, v = a.v;
  const double d1 = std::hypot(u, v);
  const double d2 = std::hypot(u, v + kw - W);
  const double d3 = std::hypot(u + kh - H, v);
  const double d4 = std::hypot(u + kh - H, v + kw - W);
  return std::min({d1, d2, d3, d4});
}

double reward(double goal_probability, bool targeted, const ActionSequence& a,
              const ActionSpace& space, const RewardParams& params) {
  const double k = space.k_menu[std::size_t(a.k_index)];
  const double area_penalty = params.mu_area * k * k * space.logo_h * space.logo_w;
  const double dist_penalty = params.mu_dist * corner_distance(a, space);
  const double p = targeted ? goal_probability : 1.0 - goal_probability;
  const double log_term = std::log(std::max(p, params.probability_floor));
  return log_term - area_penalty - dist_penalty;
}

void reinforce_update(PolicyNetwork& policy,
                      const std::vector<ActionSequence>& sequences,
                      const std::vector<double>& rewards, double lr) {
  if (sequences.empty() || sequences.size() != rewards.size())
    throw DimensionError("reinforce_update: bad batch");
  double baseline = 0.0;
  for (double r : rewards) baseline += r;
  baseline /= double(rewards.size());

  std::vector<double> total(policy.params().size(), 0.0), g;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const double w = rewards[i] - baseline;
    if (w == 0.0) continue;
    policy.log_prob_gradient(sequences[i], g);
    for (std::size_t p = 0; p < total.size(); ++p) total[p] += w * g[p];
  }
  const double scale = lr / double(sequences.size());
  for (std::size_t p = 0; p < total.size(); ++p) {
    const double delta = scale * total[p];
    if (!std::isfinite(delta))
      throw Error("reinforce_update: non-finite gradient");
    policy.params()[p] += delta;  // ascent on E[R]
  }
}

// ---- stage 2 driver ----

Stage2Result direct_stage2(QueryGate& gate, const VideoTensor& x0,
                           const StyleSet& styles, const LogoSet& logos,
                           const AttackGoal& goal, const Stage2Config& cfg) {
  if (styles.images.empty() || logos.logos.empty())
    throw DimensionError("direct_stage2: empty style or logo set");
  ActionSpace space;
  space.frame_h = x0.height;
  space.frame_w = x0.width;
  space.logo_h = logos.logos[0].height();
  space.logo_w = logos.logos[0].width();
  space.n_logos = int(logos.logos.size());
  space.n_styles = int(styles.images.size());

  PolicyNetwork policy(space, derive_seed(cfg.seed, "policy-init"));
  Rng rng(derive_seed(cfg.seed, "stage2-sampling"));

  std::vector<std::optional<LogoAsset>> stylized(
      std::size_t(space.n_logos) * space.n_styles);
  auto stylize_cached = [&](int l, int s) -> const LogoAsset& {
    auto& slot = stylized[std::size_t(l) * space.n_styles + s];
    if (!slot)
      slot = stylize_logo(logos.logos[std::size_t(l)],
                          styles.images[std::size_t(s)].block, cfg.style_cfg);
    return *slot;
  };

  Stage2Result res;
  res.best_video = x0;
  res.best_mask = RegionMask(0, 0, 0, 0, x0.height, x0.width);
  res.best_reward = -std::numeric_limits<double>::infinity();
  bool have_any = false;

  int plateau = 0;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const double best_before = res.best_reward;
    const bool success_before = res.goal_met;
    std::vector<ActionSequence> seqs;
    std::vector<double> rewards;

    for (int omega = 0; omega < cfg.batch; ++omega) {
      PolicyNetwork::SampleResult sample = policy.sample(rng);
      const ActionSequence& a = sample.actions;
      const LogoAsset& sty = stylize_cached(a.logo_index, a.style_index);
      RegionMask mask = RegionMask::from_action(
          a.u, a.v, space.k_menu[std::size_t(a.k_index)], space.logo_h,
          space.logo_w, space.frame_h, space.frame_w);
      Image scaled = resize(rgb_of(sty), mask.mask_h, mask.mask_w,
                            ResizeMode::kBilinear);
      VideoTensor video = superimpose(x0, scaled, mask);

      OracleResponse resp;
      try {
        resp = gate.query(video);
      } catch (const BudgetExhausted&) {
        res.exhausted = true;
        res.iterations = iter + 1;
        return res;
      }
      const bool met = goal.met(resp);
      const double goal_prob = resp.top1.label == goal.label ? resp.top1.score : 0.0;
      const double r = reward(goal_prob, goal.targeted, a, space,
                              cfg.reward_params);

      res.records.push_back({iter, a, resp.top1.label, resp.top1.score, r, met,
                             gate.used()});
      seqs.push_back(a);
      rewards.push_back(r);

      // success-dominant argmax of the reward
      bool better = false;
      if (met && !res.goal_met)
        better = true;
      else if (met == res.goal_met && (!have_any || r > res.best_reward))
        better = true;
      if (better) {
        res.best_video = std::move(video);
        res.best_mask = mask;
        res.best_actions = a;
        res.best_reward = r;
        res.goal_met = met;
        have_any = true;
      }
    }
    res.iterations = iter + 1;

    if (res.goal_met) break;
    if (res.goal_met == success_before && res.best_reward <= best_before) {
      if (++plateau >= cfg.plateau_patience) break;
    } else {
      plateau = 0;
    }
    if (iter + 1 < cfg.max_iterations)
      reinforce_update(policy, seqs, rewards, cfg.lr);
  }
  return res;
}

}  // namespace lsf
