#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "hyporank/embedding.hpp"
#include "oracles.hpp"

using namespace hyporank;

namespace {

EmbeddingSpace parse(const std::string& s) {
  std::istringstream in(s);
  return load_embeddings(in);
}

std::string parse_error(const std::string& s) {
  try {
    parse(s);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(LoadEmbeddings, TwoTerms) {
  auto space = parse("2 2\na 1.0 0.0\nc 0.0 1.0\n");
  EXPECT_EQ(space.dimension(), 2u);
  EXPECT_EQ(space.size(), 2u);
  auto a = space.vector_of("a");
  auto c = space.vector_of("c");
  EXPECT_EQ(std::vector<double>(a.begin(), a.end()), (std::vector<double>{1, 0}));
  EXPECT_EQ(std::vector<double>(c.begin(), c.end()), (std::vector<double>{0, 1}));
}

TEST(LoadEmbeddings, WrongComponentCountNamesLine) {
  EXPECT_EQ(parse_error("1 3\na 1.0 2.0\n"), "line 2: 2 components, expected 3");
}

TEST(LoadEmbeddings, DuplicateTermNamesLine) {
  EXPECT_EQ(parse_error("2 2\na 1 0\na 0 1\n"), "line 3: duplicate term \"a\"");
}

TEST(LoadEmbeddings, CrlfAndTrailingBlankLines) {
  auto space = parse("1 2\r\nx 0.5 -2\r\n\r\n");
  auto x = space.vector_of("x");
  EXPECT_EQ(x[0], 0.5);
  EXPECT_EQ(x[1], -2.0);
}

TEST(LoadEmbeddings, RejectsMalformedInput) {
  EXPECT_NE(parse_error(""), "");
  EXPECT_NE(parse_error("2 2\na 1 0\n"), "");            // fewer entries than declared
  EXPECT_NE(parse_error("1 2\na 1 0\nb 0 1\n"), "");     // more entries than declared
  EXPECT_NE(parse_error("1 2\na 1 nan\n"), "");
  EXPECT_NE(parse_error("1 2\na 1 zz\n"), "");
  EXPECT_NE(parse_error("x 2\n"), "");
  EXPECT_NE(parse_error("1 0\n"), "");
}

TEST(LoadEmbeddings, RoundTripIsExact) {
  oracle::Rng rng(5);
  EmbeddingSpace s(7);
  for (int i = 0; i < 30; ++i) s.add("t" + std::to_string(i), oracle::gaussian(rng, 7, 1e3));
  std::ostringstream out;
  write_embeddings(out, s);
  auto back = parse(out.str());
  ASSERT_EQ(back.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(back.terms()[i], s.terms()[i]);
    for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(back.row(i)[j], s.row(i)[j]);
  }
}

TEST(VectorOf, LookupAndUnknownTerm) {
  auto space = parse("2 2\na 1.0 0.0\nc 0.0 1.0\n");
  EXPECT_EQ(space.vector_of("a")[0], 1.0);
  EXPECT_EQ(space.vector_of("c")[1], 1.0);
  EXPECT_THROW(space.vector_of("z"), UnknownTermError);
  EXPECT_TRUE(space.find("z").empty());
}

TEST(Csim, Examples) {
  EXPECT_EQ(csim(Vector{1, 0}, Vector{1, 0}), 1.0);
  EXPECT_EQ(csim(Vector{1, 0}, Vector{0, 1}), 0.0);
  EXPECT_NEAR(csim(Vector{1, 2}, Vector{2, 1}), 0.8, 1e-12);
  EXPECT_THROW(csim(Vector{0, 0}, Vector{1, 0}), DomainError);
}

TEST(L2, Examples) {
  EXPECT_EQ(l2(Vector{3, -1}, Vector{3, -1}), 0.0);
  EXPECT_NEAR(l2(Vector{0, 0}, Vector{3, 4}), 5.0, 1e-12);
  EXPECT_NEAR(l2(Vector{1, 0}, Vector{0, 1}), std::sqrt(2.0), 1e-12);
}

TEST(Csim, PropertiesOnRandomVectors) {
  oracle::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto dim = 1 + rng.below(40);
    auto u = oracle::gaussian(rng, dim), v = oracle::gaussian(rng, dim);
    const double s = csim(u, v);
    EXPECT_GE(s, -1.0);
    EXPECT_LE(s, 1.0);
    EXPECT_EQ(s, csim(v, u));
    EXPECT_NEAR(csim(u, u), 1.0, 1e-12);
    EXPECT_EQ(l2(u, v), l2(v, u));
    // triangle inequality
    auto w = oracle::gaussian(rng, dim);
    EXPECT_LE(l2(u, w), l2(u, v) + l2(v, w) + 1e-12);
  }
}
