#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "hyporank/error.hpp"

namespace hyporank {

struct RocPoint {
  double fpr;
  double tpr;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last
  double auc = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

namespace detail {

inline void check_roc_input(std::span<const double> scores, std::span<const std::uint8_t> labels,
                            std::size_t& n_pos, std::size_t& n_neg) {
  if (scores.size() != labels.size()) throw DomainError("scores and labels differ in length");
  n_pos = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) throw DomainError("NaN score");
    if (labels[i]) ++n_pos;
  }
  n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw DomainError("ROC needs both positive and negative labels");
}

}  // namespace detail

/// Mann-Whitney AUC: the probability that a random positive outscores a
/// random negative, ties credited one half. Computed from mid-ranks in
/// exact integer arithmetic.
inline double auc_score(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  std::size_t n_pos, n_neg;
  detail::check_roc_input(scores, labels, n_pos, n_neg);
  const auto n = scores.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Twice the rank sum of the positives; a tie group spanning ranks
  // [lo+1, hi] gives every member the mid-rank (lo+1+hi)/2.
  std::int64_t twice_rank_sum = 0;
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo;
    std::int64_t pos = 0;
    while (hi < n && scores[idx[hi]] == scores[idx[lo]]) pos += labels[idx[hi++]] ? 1 : 0;
    twice_rank_sum += pos * static_cast<std::int64_t>(lo + 1 + hi);
    lo = hi;
  }
  const auto p = static_cast<std::int64_t>(n_pos);
  const std::int64_t twice_u = twice_rank_sum - p * (p + 1);
  return static_cast<double>(twice_u) / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

/// ROC curve swept over descending score thresholds. With
/// `lower_is_positive` the scores are negated first. The trapezoidal area is
/// cross-checked against the Mann-Whitney statistic.
inline RocCurve roc_curve(std::span<const double> scores, std::span<const std::uint8_t> labels,
                          bool lower_is_positive = false) {
  RocCurve curve;
  detail::check_roc_input(scores, labels, curve.n_pos, curve.n_neg);
  std::vector<double> s(scores.begin(), scores.end());
  if (lower_is_positive)
    for (auto& x : s) x = -x;

  const auto n = s.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });

  const double P = static_cast<double>(curve.n_pos), N = static_cast<double>(curve.n_neg);
  std::int64_t tp = 0, fp = 0, twice_area = 0;
  curve.points.push_back({0.0, 0.0});
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo;
    std::int64_t dtp = 0, dfp = 0;
    while (hi < n && s[idx[hi]] == s[idx[lo]]) {
      if (labels[idx[hi]])
        ++dtp;
      else
        ++dfp;
      ++hi;
    }
    twice_area += dfp * (2 * tp + dtp);
    tp += dtp;
    fp += dfp;
    curve.points.push_back({static_cast<double>(fp) / N, static_cast<double>(tp) / P});
    lo = hi;
  }
  curve.auc = static_cast<double>(twice_area) / (2.0 * P * N);

  const double mw = auc_score(s, labels);
  if (std::abs(mw - curve.auc) > 1e-12) throw std::logic_error("trapezoidal AUC disagrees with Mann-Whitney AUC");
  return curve;
}

/// Trapezoidal area under an arbitrary point sequence.
inline double trapezoid_area(std::span<const RocPoint> pts) {
  double a = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) a += (pts[i].fpr - pts[i - 1].fpr) * (pts[i].tpr + pts[i - 1].tpr) / 2.0;
  return a;
}

}  // namespace hyporank
