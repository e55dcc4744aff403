#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hyporank/detail/random.hpp"
#include "hyporank/detail/text.hpp"
#include "hyporank/error.hpp"

namespace hyporank {

/// Unordered term pair, stored canonically with first < second.
struct TermPair {
  std::string first;
  std::string second;

  TermPair() = default;
  TermPair(std::string x, std::string y) {
    if (y < x) std::swap(x, y);
    first = std::move(x);
    second = std::move(y);
  }

  friend auto operator<=>(const TermPair&, const TermPair&) = default;
  friend bool operator==(const TermPair&, const TermPair&) = default;
};

struct PairRecord {
  int first_year = 0;
  std::optional<std::int64_t> citations;  // of the earliest record
};

/// Canonical pairs with the year they first appear.
struct PredicateDB {
  std::map<TermPair, PairRecord> pairs;

  bool contains(const TermPair& p) const { return pairs.contains(p); }
  const PairRecord* find(const TermPair& p) const {
    auto it = pairs.find(p);
    return it == pairs.end() ? nullptr : &it->second;
  }
};

struct IngestReport {
  PredicateDB db;
  std::size_t rows = 0;     // non-blank input rows
  std::size_t skipped = 0;  // malformed rows
  std::vector<std::string> diagnostics;
};

/// Reads `subject<TAB>verb<TAB>object<TAB>year[<TAB>citations]` rows.
/// The verb is ignored. Each pair keeps its minimum year and the citation
/// count of the first row carrying that year. Malformed rows are skipped
/// and reported; an input without any rows is an error.
inline IngestReport ingest_predicates(std::istream& in) {
  IngestReport rep;
  std::string raw;
  std::size_t line_no = 0;
  auto skip = [&](const std::string& why) {
    ++rep.skipped;
    rep.diagnostics.push_back("line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::strip_cr(raw);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    ++rep.rows;
    auto f = detail::split_exact(line, '\t');
    if (f.size() != 4 && f.size() != 5) {
      skip("expected 4 or 5 tab-separated fields, found " + std::to_string(f.size()));
      continue;
    }
    if (f[0].empty() || f[2].empty()) {
      skip("empty subject or object");
      continue;
    }
    if (f[0] == f[2]) {
      skip("subject equals object");
      continue;
    }
    const bool four_digits = f[3].size() == 4 && std::all_of(f[3].begin(), f[3].end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    if (!four_digits) {
      skip("year \"" + std::string(f[3]) + "\" is not a 4-digit integer");
      continue;
    }
    const int year = *detail::parse_int<int>(f[3]);
    std::optional<std::int64_t> cites;
    if (f.size() == 5 && !f[4].empty()) {
      cites = detail::parse_int<std::int64_t>(f[4]);
      if (!cites || *cites < 0) {
        skip("citations \"" + std::string(f[4]) + "\" is not a non-negative integer");
        continue;
      }
    }
    TermPair key{std::string(f[0]), std::string(f[2])};
    auto [it, inserted] = rep.db.pairs.try_emplace(std::move(key), PairRecord{year, cites});
    if (!inserted && year < it->second.first_year) it->second = PairRecord{year, cites};
  }
  if (rep.rows == 0) throw ParseError("empty predicate input");
  return rep;
}

/// Normalized dump: `term_a<TAB>term_b<TAB>first_year<TAB>citations` in
/// pair order; unknown citations are left empty.
inline void write_predicate_db(std::ostream& out, const PredicateDB& db) {
  for (const auto& [p, r] : db.pairs) {
    out << p.first << '\t' << p.second << '\t' << r.first_year << '\t';
    if (r.citations) out << *r.citations;
    out << '\n';
  }
}

/// Ordered, de-duplicated term set.
class Vocabulary {
public:
  Vocabulary() = default;
  explicit Vocabulary(const std::vector<std::string>& terms) {
    for (const auto& t : terms) add(t);
  }

  void add(const std::string& t) {
    if (set_.insert(t).second) terms_.push_back(t);
  }
  bool contains(const std::string& t) const { return set_.contains(t); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }

private:
  std::vector<std::string> terms_;
  std::unordered_set<std::string> set_;
};

/// One term per line; surrounding whitespace trimmed, blank lines skipped.
inline Vocabulary load_vocabulary(std::istream& in) {
  Vocabulary v;
  std::string raw;
  while (std::getline(in, raw)) {
    auto f = detail::split_ws(detail::strip_cr(raw));
    if (f.empty()) continue;
    if (f.size() != 1) throw ParseError("vocabulary terms may not contain whitespace");
    v.add(std::string(f[0]));
  }
  return v;
}

/// Pairs first published after the cut year with both terms in the
/// vocabulary, in lexicographic order.
inline std::vector<TermPair> build_published_set(const PredicateDB& db, int cut_year, const Vocabulary& vocab) {
  if (vocab.size() == 0) throw DomainError("vocabulary is empty");
  std::vector<TermPair> out;
  for (const auto& [p, r] : db.pairs)
    if (r.first_year > cut_year && vocab.contains(p.first) && vocab.contains(p.second)) out.push_back(p);
  return out;
}

/// Published pairs whose first publication was cited strictly more than
/// `threshold` times. Unknown citation counts are excluded.
inline std::vector<TermPair> build_highly_cited_set(const std::vector<TermPair>& published, const PredicateDB& db,
                                                    std::int64_t threshold = 100) {
  if (threshold < 0) throw DomainError("citation threshold must be non-negative");
  std::vector<TermPair> out;
  for (const auto& p : published) {
    const auto* r = db.find(p);
    if (r && r->citations && *r->citations > threshold) out.push_back(p);
  }
  return out;
}

/// Number of vocabulary pairs that never occur in the database.
inline std::uint64_t absent_pair_count(const Vocabulary& vocab, const PredicateDB& db) {
  const std::uint64_t v = vocab.size();
  std::uint64_t present = 0;
  for (const auto& [p, r] : db.pairs)
    if (vocab.contains(p.first) && vocab.contains(p.second)) ++present;
  return v * (v - (v > 0 ? 1 : 0)) / 2 - present;
}

/// Draws n distinct vocabulary pairs absent from the database, uniformly
/// without replacement by seeded rejection sampling. The draw depends only
/// on the vocabulary order, n and the seed. Returned in lexicographic order.
inline std::vector<TermPair> sample_noise(const Vocabulary& vocab, const PredicateDB& db, std::size_t n,
                                          std::uint64_t seed) {
  if (n == 0) return {};
  const auto absent = absent_pair_count(vocab, db);
  if (n > absent)
    throw InfeasibleError("requested " + std::to_string(n) + " noise pairs but only " + std::to_string(absent) +
                          " absent pairs exist");
  detail::Rng rng(seed);
  std::set<TermPair> chosen;
  const auto& terms = vocab.terms();
  const std::uint64_t v = terms.size();
  while (chosen.size() < n) {
    const auto i = rng.below(v);
    auto j = rng.below(v - 1);
    if (j >= i) ++j;
    TermPair p(terms[i], terms[j]);
    if (db.contains(p)) continue;
    chosen.insert(std::move(p));
  }
  return {chosen.begin(), chosen.end()};
}

/// Seeded uniform subsample of size min(n, pairs.size()), in input order.
inline std::vector<TermPair> subsample(const std::vector<TermPair>& pairs, std::size_t n, std::uint64_t seed) {
  if (n >= pairs.size()) return pairs;
  std::vector<std::size_t> idx(pairs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  detail::Rng rng(seed);
  rng.shuffle(idx.begin(), idx.end());
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  std::vector<TermPair> out;
  for (auto i : idx) out.push_back(pairs[i]);
  return out;
}

enum class Label { published, highly_cited, noise };

inline std::string_view to_string(Label l) {
  switch (l) {
    case Label::published:
      return "published";
    case Label::highly_cited:
      return "highly_cited";
    case Label::noise:
      return "noise";
  }
  return "";
}

inline std::optional<Label> label_from_string(std::string_view s) {
  if (s == "published") return Label::published;
  if (s == "highly_cited") return Label::highly_cited;
  if (s == "noise") return Label::noise;
  return std::nullopt;
}

struct LabeledPair {
  TermPair pair;
  Label label;
};

/// Query-set TSV: `a<TAB>c<TAB>label`.
inline void write_query_set(std::ostream& out, const std::vector<TermPair>& pairs, Label label) {
  for (const auto& p : pairs) out << p.first << '\t' << p.second << '\t' << to_string(label) << '\n';
}

inline std::vector<LabeledPair> read_query_set(std::istream& in) {
  std::vector<LabeledPair> out;
  std::set<TermPair> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::strip_cr(raw);
    if (line.empty()) continue;
    auto f = detail::split_exact(line, '\t');
    if (f.size() != 3) throw ParseError("query-set rows are `a<TAB>c<TAB>label`", line_no);
    auto label = label_from_string(f[2]);
    if (!label) throw ParseError("unknown label \"" + std::string(f[2]) + "\"", line_no);
    if (f[0].empty() || f[1].empty() || f[0] == f[1]) throw ParseError("invalid term pair", line_no);
    TermPair p{std::string(f[0]), std::string(f[1])};
    if (!seen.insert(p).second) throw ParseError("duplicate pair", line_no);
    out.push_back({std::move(p), *label});
  }
  return out;
}

}  // namespace hyporank
