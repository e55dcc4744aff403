#include <algorithm>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "hyporank/validation.hpp"
#include "oracles.hpp"

using namespace hyporank;

namespace {

IngestReport ingest(const std::string& s) {
  std::istringstream in(s);
  return ingest_predicates(in);
}

}  // namespace

TEST(IngestPredicates, KeepsEarliestYearAcrossOrientations) {
  auto r = ingest("A\tt\tB\t2008\t\nB\tt\tA\t2012\t\n");
  ASSERT_EQ(r.db.pairs.size(), 1u);
  const auto* rec = r.db.find(TermPair("B", "A"));
  ASSERT_NE(rec, nullptr);
  EXPECT_EQ(rec->first_year, 2008);
  EXPECT_EQ(r.db.pairs.begin()->first.first, "A");
}

TEST(IngestPredicates, CitationCountOfEarliestRecord) {
  auto r = ingest("A\tt\tB\t2012\t150\n");
  const auto* rec = r.db.find(TermPair("A", "B"));
  ASSERT_NE(rec, nullptr);
  EXPECT_EQ(rec->first_year, 2012);
  EXPECT_EQ(rec->citations, 150);

  auto later = ingest("A\tt\tB\t2014\t7\nA\tt\tB\t2012\t150\nB\tt\tA\t2013\t999\n");
  EXPECT_EQ(later.db.find(TermPair("A", "B"))->citations, 150);
  EXPECT_EQ(later.db.find(TermPair("A", "B"))->first_year, 2012);
}

TEST(IngestPredicates, MalformedRowsAreSkippedWithDiagnostics) {
  auto r = ingest("A\tt\tB\t20x2\t1\nA\tt\tC\t2001\nonly\tthree\tfields\nD\tt\tD\t2000\nA\tt\tE\t2001\t-4\n");
  EXPECT_EQ(r.rows, 5u);
  EXPECT_EQ(r.skipped, 4u);
  ASSERT_EQ(r.diagnostics.size(), 4u);
  EXPECT_EQ(r.diagnostics[0], "line 1: year \"20x2\" is not a 4-digit integer");
  EXPECT_EQ(r.db.pairs.size(), 1u);
  EXPECT_FALSE(r.db.find(TermPair("A", "C"))->citations);
}

TEST(IngestPredicates, EmptyInputIsAnError) {
  EXPECT_THROW(ingest(""), ParseError);
  EXPECT_THROW(ingest("\n  \n"), ParseError);
}

TEST(PublishedSet, CutYearAndVocabulary) {
  auto r = ingest("A\tt\tB\t2008\t\nA\tt\tC\t2012\t\nB\tt\tZ\t2012\t\nB\tt\tC\t2010\t\n");
  Vocabulary v({"A", "B", "C"});
  auto pub = build_published_set(r.db, 2010, v);
  EXPECT_EQ(pub, (std::vector<TermPair>{TermPair("A", "C")}));
  EXPECT_THROW(build_published_set(r.db, 2010, Vocabulary{}), DomainError);
}

TEST(HighlyCitedSet, StrictThresholdAndUnknownCitations) {
  auto r = ingest("A\tt\tB\t2012\t150\nA\tt\tC\t2012\t100\nB\tt\tC\t2012\t\n");
  Vocabulary v({"A", "B", "C"});
  auto pub = build_published_set(r.db, 2010, v);
  EXPECT_EQ(pub.size(), 3u);
  EXPECT_EQ(build_highly_cited_set(pub, r.db), (std::vector<TermPair>{TermPair("A", "B")}));
  EXPECT_EQ(build_highly_cited_set(pub, r.db, 99).size(), 2u);
}

TEST(SampleNoise, Examples) {
  auto r = ingest("A\tt\tB\t2000\t\n");
  Vocabulary abc({"A", "B", "C"});
  EXPECT_EQ(sample_noise(abc, r.db, 2, 0), (std::vector<TermPair>{TermPair("A", "C"), TermPair("B", "C")}));
  EXPECT_TRUE(sample_noise(abc, r.db, 0, 0).empty());
  EXPECT_THROW(sample_noise(Vocabulary({"A", "B"}), r.db, 1, 0), InfeasibleError);
}

TEST(SampleNoise, ExcludesDatabaseAndIsDeterministic) {
  oracle::Rng rng(1);
  std::vector<std::string> terms;
  for (int i = 0; i < 30; ++i) terms.push_back("t" + std::to_string(i));
  Vocabulary v(terms);
  std::ostringstream tsv;
  for (int i = 0; i < 200; ++i) {
    const auto a = rng.below(30), b = rng.below(30);
    if (a != b) tsv << terms[a] << "\tx\t" << terms[b] << "\t2001\t\n";
  }
  auto r = ingest(tsv.str());
  const auto absent = absent_pair_count(v, r.db);
  EXPECT_EQ(absent, 435u - r.db.pairs.size());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = sample_noise(v, r.db, 100, seed);
    EXPECT_EQ(s, sample_noise(v, r.db, 100, seed));
    EXPECT_EQ(s.size(), 100u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    for (const auto& p : s) {
      EXPECT_FALSE(r.db.contains(p));
      EXPECT_TRUE(v.contains(p.first) && v.contains(p.second));
    }
  }
  // Taking every absent pair is feasible; one more is not.
  EXPECT_EQ(sample_noise(v, r.db, absent, 3).size(), absent);
  EXPECT_THROW(sample_noise(v, r.db, absent + 1, 3), InfeasibleError);
}

TEST(SampleNoise, RoughlyUniformOverAbsentPairs) {
  // 5 terms, 2 pairs in the database, 8 absent pairs; draw one pair per
  // seed and check each absent pair's share with a chi-square bound.
  auto r = ingest("a\tt\tb\t2000\t\nc\tt\td\t2000\t\n");
  Vocabulary v({"a", "b", "c", "d", "e"});
  std::map<TermPair, int> counts;
  const int draws = 8000;
  for (int s = 0; s < draws; ++s) ++counts[sample_noise(v, r.db, 1, static_cast<std::uint64_t>(s)).front()];
  ASSERT_EQ(counts.size(), 8u);
  double chi2 = 0.0;
  for (const auto& [p, c] : counts) chi2 += (c - draws / 8.0) * (c - draws / 8.0) / (draws / 8.0);
  EXPECT_LT(chi2, 24.3);  // p = 0.001 at 7 degrees of freedom
}

TEST(Subsample, SizeOrderAndDeterminism) {
  std::vector<TermPair> pairs;
  for (int i = 0; i < 50; ++i) pairs.emplace_back("a" + std::to_string(i), "z");
  auto s = subsample(pairs, 10, 5);
  EXPECT_EQ(s.size(), 10u);
  EXPECT_EQ(s, subsample(pairs, 10, 5));
  // input order is kept
  std::vector<std::size_t> pos;
  for (const auto& p : s) pos.push_back(static_cast<std::size_t>(std::find(pairs.begin(), pairs.end(), p) - pairs.begin()));
  EXPECT_TRUE(std::is_sorted(pos.begin(), pos.end()));
  EXPECT_EQ(std::adjacent_find(pos.begin(), pos.end()), pos.end());
  EXPECT_NE(s, subsample(pairs, 10, 6));
  EXPECT_EQ(subsample(pairs, 80, 5), pairs);
}

TEST(QuerySets, RoundTripAndErrors) {
  std::ostringstream out;
  write_query_set(out, {TermPair("b", "a"), TermPair("c", "d")}, Label::highly_cited);
  EXPECT_EQ(out.str(), "a\tb\thighly_cited\nc\td\thighly_cited\n");
  std::istringstream in(out.str());
  auto back = read_query_set(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].pair, TermPair("c", "d"));
  EXPECT_EQ(back[1].label, Label::highly_cited);

  std::istringstream dup("a\tb\tnoise\nb\ta\tnoise\n");
  EXPECT_THROW(read_query_set(dup), ParseError);
  std::istringstream bad("a\tb\tmaybe\n");
  EXPECT_THROW(read_query_set(bad), ParseError);
}

TEST(Vocabulary, LoadTrimsAndDeduplicates) {
  std::istringstream in("  b \r\na\n\nb\n");
  auto v = load_vocabulary(in);
  EXPECT_EQ(v.terms(), (std::vector<std::string>{"b", "a"}));
  std::istringstream bad("two words\n");
  EXPECT_THROW(load_vocabulary(bad), ParseError);
}
