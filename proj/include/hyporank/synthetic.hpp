#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "hyporank/detail/random.hpp"
#include "hyporank/embedding.hpp"
#include "hyporank/io.hpp"
#include "hyporank/topic_metrics.hpp"
#include "hyporank/validation.hpp"

// Planted-structure data for end-to-end checks. Terms live in Gaussian
// clusters; clusters 2i and 2i+1 are "linked" (their centres are close).
// Topic models for linked pairs contain a bridge topic whose centroid sits
// near the midpoint of a and c, which is the signal every metric looks for.
namespace hyporank::synthetic {

struct UniverseConfig {
  std::size_t dimension = 32;
  std::size_t clusters = 40;  // rounded up to even
  std::size_t terms_per_cluster = 20;
  double center_scale = 1.0;   // per-coordinate sd of cluster centres
  double link_offset = 4.0;    // distance between linked centres
  double term_spread = 0.5;    // per-coordinate sd of terms around a centre
};

struct Universe {
  EmbeddingSpace space{1};
  std::vector<std::size_t> cluster_of;  // by term index
  std::vector<std::vector<std::size_t>> members;

  std::size_t cluster(const std::string& term) const;
  bool linked(const std::string& x, const std::string& y) const {
    return (cluster(x) ^ 1) == cluster(y);
  }
};

inline std::string term_name(std::size_t cluster, std::size_t i) {
  auto pad = [](std::size_t v, std::size_t width) {
    auto s = std::to_string(v);
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
  };
  return "k" + pad(cluster, 3) + "_t" + pad(i, 3);
}

inline std::size_t Universe::cluster(const std::string& term) const {
  const auto& terms = space.terms();
  // Names are generated in order, so the index is recoverable by search.
  auto it = std::lower_bound(terms.begin(), terms.end(), term);
  if (it == terms.end() || *it != term) throw UnknownTermError(term);
  return cluster_of[static_cast<std::size_t>(it - terms.begin())];
}

inline Universe make_universe(const UniverseConfig& cfg, std::uint64_t seed) {
  detail::Rng rng(detail::mix_seed(seed, 100));
  const std::size_t k = cfg.clusters + (cfg.clusters % 2);
  std::vector<Vector> centers(k, Vector(cfg.dimension));
  for (std::size_t c = 0; c < k; c += 2) {
    for (auto& x : centers[c]) x = cfg.center_scale * rng.normal();
    Vector dir(cfg.dimension);
    for (auto& x : dir) x = rng.normal();
    const double n = norm(dir);
    for (std::size_t j = 0; j < cfg.dimension; ++j) centers[c + 1][j] = centers[c][j] + cfg.link_offset * dir[j] / n;
  }
  Universe u;
  u.space = EmbeddingSpace(cfg.dimension);
  u.members.resize(k);
  Vector v(cfg.dimension);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < cfg.terms_per_cluster; ++i) {
      for (std::size_t j = 0; j < cfg.dimension; ++j) v[j] = centers[c][j] + cfg.term_spread * rng.normal();
      u.members[c].push_back(u.space.size());
      u.cluster_of.push_back(c);
      u.space.add(term_name(c, i), v);
    }
  return u;
}

struct TopicConfig {
  std::size_t topics = 10;
  std::size_t words_per_topic = 8;
  std::size_t bridge_topics = 1;  // added for linked pairs
};

namespace detail_ {

inline Topic cluster_topic(const Universe& u, const std::vector<std::size_t>& clusters, std::size_t words,
                           detail::Rng& rng) {
  Topic t;
  double total = 0.0;
  for (std::size_t w = 0; w < words; ++w) {
    const auto& m = u.members[clusters[w % clusters.size()]];
    const auto term = m[rng.below(m.size())];
    const double p = 0.1 + rng.uniform();
    t.entries.push_back({u.space.terms()[term], p});
    total += p;
  }
  for (auto& e : t.entries) e.probability /= total;
  return t;
}

}  // namespace detail_

/// A topic model for (a, c): topics drawn around random clusters, plus
/// bridge topics mixing a's and c's clusters when the pair is linked.
inline Hypothesis make_hypothesis(const Universe& u, const std::string& a, const std::string& c,
                                  const TopicConfig& cfg, detail::Rng& rng) {
  Hypothesis h{a, c, {}};
  const auto ca = u.cluster(a), cc = u.cluster(c);
  const std::size_t bridges = u.linked(a, c) ? std::min(cfg.bridge_topics, cfg.topics) : 0;
  for (std::size_t i = 0; i < bridges; ++i) h.topics.push_back(detail_::cluster_topic(u, {ca, cc}, cfg.words_per_topic, rng));
  for (std::size_t i = bridges; i < cfg.topics; ++i)
    h.topics.push_back(detail_::cluster_topic(u, {rng.below(u.members.size())}, cfg.words_per_topic, rng));
  // Keep the bridge topic from always being first.
  rng.shuffle(h.topics.begin(), h.topics.end());
  return h;
}

inline std::string random_member(const Universe& u, std::size_t cluster, detail::Rng& rng) {
  const auto& m = u.members[cluster];
  return u.space.terms()[m[rng.below(m.size())]];
}

/// Published pairs come from linked clusters; noise pairs from clusters
/// that are neither equal nor linked. Published first, then noise.
inline std::vector<QueryDocument> planted_dataset(const Universe& u, std::size_t n_published, std::size_t n_noise,
                                                  const TopicConfig& tcfg, std::uint64_t seed) {
  detail::Rng rng(detail::mix_seed(seed, 200));
  const std::size_t k = u.members.size();
  std::vector<QueryDocument> out;
  std::set<TermPair> used;
  auto emit = [&](bool published) {
    for (;;) {
      const auto p = rng.below(k);
      std::size_t q;
      if (published) {
        q = p ^ 1;
      } else {
        q = rng.below(k);
        if (q == p || q == (p ^ 1)) continue;
      }
      auto a = random_member(u, p, rng), c = random_member(u, q, rng);
      if (!used.insert(TermPair(a, c)).second) continue;
      out.push_back({make_hypothesis(u, a, c, tcfg, rng), published ? "published" : "noise"});
      return;
    }
  };
  for (std::size_t i = 0; i < n_published; ++i) emit(true);
  for (std::size_t i = 0; i < n_noise; ++i) emit(false);
  return out;
}

struct LiteratureConfig {
  std::size_t records = 600;
  int first_year = 1995;
  int last_year = 2018;
  double linked_share = 0.6;     // rows joining linked clusters
  double same_share = 0.3;       // rows inside one cluster; the rest are random
  double unknown_citations = 0.1;
};

/// Writes a predicate TSV whose pairs mostly follow the planted structure.
inline void write_literature(std::ostream& out, const Universe& u, const LiteratureConfig& cfg, std::uint64_t seed) {
  detail::Rng rng(detail::mix_seed(seed, 300));
  const std::size_t k = u.members.size();
  static const char* verbs[] = {"TREATS", "INTERACTS_WITH", "ASSOCIATED_WITH", "STIMULATES", "INHIBITS"};
  for (std::size_t r = 0; r < cfg.records; ++r) {
    const auto p = rng.below(k);
    const double roll = rng.uniform();
    std::size_t q = roll < cfg.linked_share ? (p ^ 1) : roll < cfg.linked_share + cfg.same_share ? p : rng.below(k);
    auto a = random_member(u, p, rng), c = random_member(u, q, rng);
    if (a == c) continue;
    const int year = cfg.first_year + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.last_year - cfg.first_year + 1)));
    out << a << '\t' << verbs[rng.below(5)] << '\t' << c << '\t' << year << '\t';
    if (rng.uniform() >= cfg.unknown_citations) out << static_cast<long>(std::exp(rng.uniform(0.0, std::log(1000.0))));
    out << '\n';
  }
}

}  // namespace hyporank::synthetic
