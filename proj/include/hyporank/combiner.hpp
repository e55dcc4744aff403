#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hyporank/detail/parallel.hpp"
#include "hyporank/detail/random.hpp"
#include "hyporank/error.hpp"
#include "hyporank/roc.hpp"
#include "hyporank/scoring.hpp"

namespace hyporank {

/// Metrics combined by PolyMultiple, in parameter order.
inline constexpr std::array<Metric, 6> kPolyMetrics = {
    Metric::l2,         Metric::best_centr_l2, Metric::best_topic_per_word,
    Metric::topic_corr, Metric::top_walk_btwn, Metric::top_net_ccoef,
};

inline constexpr double kAlphaMin = -1.0, kAlphaMax = 1.0;
inline constexpr double kBetaMin = 1.0, kBetaMax = 3.0;

struct PolyTerm {
  double alpha = 0.0;  // [-1, 1]
  double beta = 1.0;   // [1, 3]

  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

struct PolyParams {
  std::array<PolyTerm, 6> terms{};

  friend bool operator==(const PolyParams&, const PolyParams&) = default;
};

/// sum_i alpha_i * x_i^beta_i over the six combined metrics of an
/// already-scaled metric vector.
inline double poly_eval(const PolyParams& p, const MetricVector& scaled) {
  double s = 0.0;
  for (std::size_t i = 0; i < kPolyMetrics.size(); ++i)
    s += p.terms[i].alpha * std::pow(scaled[kPolyMetrics[i]], p.terms[i].beta);
  return s;
}

/// The six single-metric configurations: alpha = +1 or -1 following the
/// metric's directionality, beta = 1, every other term zero.
inline std::array<PolyParams, 6> corner_params() {
  std::array<PolyParams, 6> out{};
  for (std::size_t i = 0; i < kPolyMetrics.size(); ++i)
    out[i].terms[i] = PolyTerm{lower_is_published(kPolyMetrics[i]) ? -1.0 : 1.0, 1.0};
  return out;
}

struct SearchConfig {
  std::uint64_t total_budget = 100'000;
  std::uint64_t round_size = 10'000;
  double shrink_factor = 0.5;
  std::uint64_t rng_seed = 0;
  double train_fraction = 0.5;
  unsigned threads = 1;  // does not affect results
};

inline void validate(const SearchConfig& cfg) {
  if (cfg.total_budget < 7) throw DomainError("search budget must be at least 7 (six corner seeds plus one sample)");
  if (cfg.round_size == 0 || cfg.round_size > cfg.total_budget)
    throw DomainError("round size must be in [1, budget]");
  if (!(cfg.shrink_factor > 0.0 && cfg.shrink_factor < 1.0)) throw DomainError("shrink factor must be in (0, 1)");
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction <= 1.0))
    throw DomainError("train fraction must be in (0, 1]");
}

struct DataSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> holdout;
};

/// Seeded split stratified by label: each class is shuffled and its first
/// round(fraction * size) members (at least one) go to training. Indices
/// come back sorted.
inline DataSplit split_data(std::span<const std::uint8_t> labels, double train_fraction, std::uint64_t seed) {
  DataSplit out;
  detail::Rng rng(seed);
  for (std::uint8_t cls : {std::uint8_t{1}, std::uint8_t{0}}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if ((labels[i] != 0) == (cls != 0)) idx.push_back(i);
    rng.shuffle(idx.begin(), idx.end());
    auto take = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(idx.size())));
    take = std::clamp<std::size_t>(take, std::min<std::size_t>(1, idx.size()), idx.size());
    out.train.insert(out.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
    out.holdout.insert(out.holdout.end(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.holdout.begin(), out.holdout.end());
  return out;
}

struct SearchResult {
  PolyParams params;
  ScaleParams scale;  // fitted on the training split
  double train_auc = 0.0;
  std::optional<double> holdout_auc;  // when the holdout holds both classes
  DataSplit split;
  std::vector<double> incumbent_auc;  // best train AUC after each round
  std::uint64_t evaluations = 0;
};

namespace detail {

inline bool has_both_classes(std::span<const std::uint8_t> labels) {
  bool pos = false, neg = false;
  for (auto l : labels) (l ? pos : neg) = true;
  return pos && neg;
}

inline std::vector<double> poly_scores(const PolyParams& p, std::span<const MetricVector> scaled) {
  std::vector<double> s(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) s[i] = poly_eval(p, scaled[i]);
  return s;
}

inline PolyParams sample_params(Rng& rng, const std::array<double, 6>& a_lo, const std::array<double, 6>& a_hi,
                                const std::array<double, 6>& b_lo, const std::array<double, 6>& b_hi) {
  PolyParams p;
  for (std::size_t i = 0; i < 6; ++i) {
    p.terms[i].alpha = rng.uniform(a_lo[i], a_hi[i]);
    p.terms[i].beta = rng.uniform(b_lo[i], b_hi[i]);
  }
  return p;
}

}  // namespace detail

/// AUC of PolyMultiple scores for already-scaled metric vectors.
inline double poly_auc(const PolyParams& p, std::span<const MetricVector> scaled, std::span<const std::uint8_t> labels) {
  return auc_score(detail::poly_scores(p, scaled), labels);
}

/// Stochastic search for PolyMultiple parameters maximizing training AUC.
///
/// Round one evaluates the six corner configurations followed by uniform
/// samples from the full alpha/beta box. Every later round samples
/// uniformly from a box centred on the incumbent whose half-widths are the
/// full half-widths times shrink^round, intersected with the legal box.
/// Candidates are generated sequentially from the seed and only evaluated in
/// parallel, and the incumbent changes only on a strict improvement, so the
/// earliest best sample wins and results do not depend on `threads`.
inline SearchResult optimize_poly(std::span<const MetricVector> metrics, std::span<const std::uint8_t> labels,
                                  const SearchConfig& cfg) {
  validate(cfg);
  if (metrics.size() != labels.size()) throw DomainError("metrics and labels differ in length");
  if (!detail::has_both_classes(labels)) throw DomainError("optimization needs both published and noise examples");

  SearchResult res;
  res.split = split_data(labels, cfg.train_fraction, detail::mix_seed(cfg.rng_seed, 0));

  std::vector<MetricVector> train_raw;
  std::vector<std::uint8_t> train_labels;
  for (auto i : res.split.train) {
    train_raw.push_back(metrics[i]);
    train_labels.push_back(labels[i]);
  }
  res.scale = fit_scaler(train_raw);
  std::vector<MetricVector> train;
  for (const auto& v : train_raw) train.push_back(apply_scaler(res.scale, v));

  detail::Rng rng(detail::mix_seed(cfg.rng_seed, 1));
  std::array<double, 6> a_lo, a_hi, b_lo, b_hi;
  a_lo.fill(kAlphaMin);
  a_hi.fill(kAlphaMax);
  b_lo.fill(kBetaMin);
  b_hi.fill(kBetaMax);

  bool have_incumbent = false;
  double best_auc = 0.0;
  std::uint64_t spent = 0;
  for (std::uint64_t round = 0; spent < cfg.total_budget; ++round) {
    const auto quota = std::min(cfg.round_size, cfg.total_budget - spent);
    std::vector<PolyParams> cand;
    if (round == 0) {
      for (const auto& c : corner_params()) cand.push_back(c);
    } else {
      const double scale = std::pow(cfg.shrink_factor, static_cast<double>(round));
      const double a_half = (kAlphaMax - kAlphaMin) / 2.0 * scale;
      const double b_half = (kBetaMax - kBetaMin) / 2.0 * scale;
      for (std::size_t i = 0; i < 6; ++i) {
        const auto& t = res.params.terms[i];
        a_lo[i] = std::max(kAlphaMin, t.alpha - a_half);
        a_hi[i] = std::min(kAlphaMax, t.alpha + a_half);
        b_lo[i] = std::max(kBetaMin, t.beta - b_half);
        b_hi[i] = std::min(kBetaMax, t.beta + b_half);
      }
    }
    // Round one always holds at least one uniform sample after the corners.
    const auto target = round == 0 ? std::min<std::uint64_t>(std::max<std::uint64_t>(quota, 7), cfg.total_budget) : quota;
    while (cand.size() < target) cand.push_back(detail::sample_params(rng, a_lo, a_hi, b_lo, b_hi));

    std::vector<double> aucs(cand.size());
    detail::parallel_for(cand.size(), cfg.threads,
                         [&](std::size_t i) { aucs[i] = poly_auc(cand[i], train, train_labels); });
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (!have_incumbent || aucs[i] > best_auc) {
        have_incumbent = true;
        best_auc = aucs[i];
        res.params = cand[i];
      }
    spent += cand.size();
    res.incumbent_auc.push_back(best_auc);
  }
  res.evaluations = spent;
  res.train_auc = best_auc;

  if (!res.split.holdout.empty()) {
    std::vector<MetricVector> hold;
    std::vector<std::uint8_t> hold_labels;
    for (auto i : res.split.holdout) {
      hold.push_back(apply_scaler(res.scale, metrics[i]));
      hold_labels.push_back(labels[i]);
    }
    if (detail::has_both_classes(hold_labels)) res.holdout_auc = poly_auc(res.params, hold, hold_labels);
  }
  return res;
}

}  // namespace hyporank
