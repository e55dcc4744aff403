#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyporank/detail/text.hpp"
#include "hyporank/error.hpp"

namespace hyporank {

using Vector = std::vector<double>;
using VectorView = std::span<const double>;

/// Immutable term -> vector table. Vectors are stored contiguously in
/// insertion order, so a loaded space can be written back verbatim.
class EmbeddingSpace {
public:
  explicit EmbeddingSpace(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw DomainError("embedding dimension must be positive");
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }

  bool contains(std::string_view term) const { return index_.contains(std::string(term)); }

  /// Returns an empty span when the term is unknown.
  VectorView find(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return {};
    return row(it->second);
  }

  /// The stored vector; throws UnknownTermError for terms not in the space.
  VectorView vector_of(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) throw UnknownTermError(std::string(term));
    return row(it->second);
  }

  VectorView row(std::size_t i) const { return {data_.data() + i * dimension_, dimension_}; }

  /// Adds a term. Throws on duplicates, wrong length, or non-finite values.
  void add(std::string term, VectorView values) {
    if (term.empty()) throw DomainError("empty term");
    if (values.size() != dimension_)
      throw DomainError("vector for \"" + term + "\" has " + std::to_string(values.size()) +
                        " components, expected " + std::to_string(dimension_));
    for (double v : values)
      if (!std::isfinite(v)) throw DomainError("non-finite value in vector for \"" + term + "\"");
    if (index_.contains(term)) throw DomainError("duplicate term \"" + term + "\"");
    index_.emplace(term, terms_.size());
    terms_.push_back(std::move(term));
    data_.insert(data_.end(), values.begin(), values.end());
  }

private:
  std::size_t dimension_;
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
};

/// Parses the plain-text word-vector format: a `<count> <dimension>` header
/// followed by `count` lines of `<term> <v1> ... <vd>`. LF and CRLF endings
/// are accepted; blank lines after the last entry are ignored.
inline EmbeddingSpace load_embeddings(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;

  auto next_line = [&](std::string_view& out) {
    if (!std::getline(in, raw)) return false;
    ++line_no;
    out = detail::strip_cr(raw);
    return true;
  };

  std::string_view line;
  if (!next_line(line)) throw ParseError("empty embedding stream", 1);
  auto header = detail::split_ws(line);
  if (header.size() != 2) throw ParseError("header must be `<count> <dimension>`", line_no);
  auto count = detail::parse_int<std::size_t>(header[0]);
  auto dim = detail::parse_int<std::size_t>(header[1]);
  if (!count || !dim || *dim == 0) throw ParseError("header must be `<count> <dimension>`", line_no);

  EmbeddingSpace space(*dim);
  Vector values(*dim);
  while (space.size() < *count) {
    if (!next_line(line))
      throw ParseError("expected " + std::to_string(*count) + " entries, found " +
                           std::to_string(space.size()),
                       line_no + 1);
    auto fields = detail::split_ws(line);
    if (fields.empty()) throw ParseError("blank line inside embedding table", line_no);
    if (fields.size() - 1 != *dim)
      throw ParseError(std::to_string(fields.size() - 1) + " components, expected " + std::to_string(*dim),
                       line_no);
    for (std::size_t j = 0; j < *dim; ++j) {
      auto v = detail::parse_double(fields[j + 1]);
      if (!v) throw ParseError("bad number \"" + std::string(fields[j + 1]) + "\"", line_no);
      if (!std::isfinite(*v)) throw ParseError("non-finite value", line_no);
      values[j] = *v;
    }
    std::string term(fields[0]);
    if (space.contains(term)) throw ParseError("duplicate term \"" + term + "\"", line_no);
    space.add(std::move(term), values);
  }
  while (next_line(line)) {
    if (!detail::split_ws(line).empty())
      throw ParseError("more entries than the declared count " + std::to_string(*count), line_no);
  }
  return space;
}

/// Writes the space in the same text format, with shortest round-trip digits.
inline void write_embeddings(std::ostream& out, const EmbeddingSpace& space) {
  out << space.size() << ' ' << space.dimension() << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << space.terms()[i];
    for (double v : space.row(i)) out << ' ' << detail::format_double(v);
    out << '\n';
  }
}

inline double dot(VectorView u, VectorView v) {
  if (u.size() != v.size()) throw DomainError("vector length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline double norm(VectorView u) { return std::sqrt(dot(u, u)); }

/// Cosine similarity, clamped to [-1, 1].
inline double csim(VectorView u, VectorView v) {
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw DomainError("cosine similarity of a zero-norm vector");
  return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

/// Euclidean distance.
inline double l2(VectorView u, VectorView v) {
  if (u.size() != v.size()) throw DomainError("vector length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace hyporank
