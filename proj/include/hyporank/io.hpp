#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyporank/combiner.hpp"
#include "hyporank/detail/text.hpp"
#include "hyporank/error.hpp"
#include "hyporank/scoring.hpp"
#include "hyporank/topic_metrics.hpp"

namespace hyporank {

// ---------------------------------------------------------------------------
// Topic-model query files
//
//   {"a": "<term>", "c": "<term>", "topics": [[["<term>", <prob>], ...], ...]}
//
// Optional keys: "label" (published | highly_cited | noise) and "k", the
// declared topic count, which must match the length of "topics".

struct QueryDocument {
  Hypothesis hypothesis;
  std::string label;  // empty when the file carries none
};

inline QueryDocument parse_query_document(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  QueryDocument doc;
  try {
    if (!j.is_object()) throw ParseError("query document must be a JSON object");
    if (!j.contains("a") || !j.contains("c") || !j.contains("topics"))
      throw ParseError("query document needs \"a\", \"c\" and \"topics\"");
    doc.hypothesis.a = j.at("a").get<std::string>();
    doc.hypothesis.c = j.at("c").get<std::string>();
    if (doc.hypothesis.a.empty() || doc.hypothesis.c.empty()) throw ParseError("empty query term");
    if (doc.hypothesis.a == doc.hypothesis.c) throw ParseError("query terms must differ");
    if (j.contains("label")) doc.label = j.at("label").get<std::string>();
    const auto& topics = j.at("topics");
    if (!topics.is_array() || topics.empty()) throw ParseError("\"topics\" must be a non-empty array");
    if (j.contains("k") && j.at("k").get<std::size_t>() != topics.size())
      throw ParseError("declared k=" + std::to_string(j.at("k").get<std::size_t>()) + " but file has " +
                       std::to_string(topics.size()) + " topics");
    for (std::size_t t = 0; t < topics.size(); ++t) {
      Topic topic;
      if (!topics[t].is_array()) throw ParseError("topic " + std::to_string(t) + " is not an array");
      for (const auto& entry : topics[t]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_number())
          throw ParseError("topic " + std::to_string(t) + ": entries must be [term, probability]");
        topic.entries.push_back({entry[0].get<std::string>(), entry[1].get<double>()});
      }
      try {
        normalize_topic(topic);
      } catch (const DomainError& e) {
        throw ParseError("topic " + std::to_string(t) + ": " + e.what());
      }
      doc.hypothesis.topics.push_back(std::move(topic));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed query document: ") + e.what());
  }
  return doc;
}

inline void write_query_document(std::ostream& out, const QueryDocument& doc) {
  nlohmann::json j;
  j["a"] = doc.hypothesis.a;
  j["c"] = doc.hypothesis.c;
  if (!doc.label.empty()) j["label"] = doc.label;
  auto topics = nlohmann::json::array();
  for (const auto& t : doc.hypothesis.topics) {
    auto arr = nlohmann::json::array();
    for (const auto& e : t.entries) arr.push_back({e.term, e.probability});
    topics.push_back(std::move(arr));
  }
  j["topics"] = std::move(topics);
  out << j.dump() << '\n';
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

/// Splits one CSV record (no embedded newlines).
inline std::vector<std::string> parse_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field");
  out.push_back(std::move(cur));
  return out;
}

// ---------------------------------------------------------------------------
// Metric CSV: a,c,label,<eleven metrics>

struct MetricRow {
  std::string a;
  std::string c;
  std::string label;
  MetricVector values;
};

inline std::string metric_csv_header() {
  std::string h = "a,c,label";
  for (auto m : kAllMetrics) {
    h += ',';
    h += name(m);
  }
  return h;
}

inline void write_metric_row(std::ostream& out, const MetricRow& r) {
  out << csv_field(r.a) << ',' << csv_field(r.c) << ',' << csv_field(r.label);
  for (double v : r.values.values) out << ',' << detail::format_double(v);
  out << '\n';
}

inline std::vector<MetricRow> read_metric_csv(std::istream& in) {
  std::string raw;
  if (!std::getline(in, raw) || detail::strip_cr(raw) != metric_csv_header())
    throw ParseError("metric CSV header must be `" + metric_csv_header() + "`", 1);
  std::vector<MetricRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::strip_cr(raw);
    if (line.empty()) continue;
    std::vector<std::string> f;
    try {
      f = parse_csv_line(line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (f.size() != 3 + kMetricCount)
      throw ParseError("expected " + std::to_string(3 + kMetricCount) + " fields, found " + std::to_string(f.size()),
                       line_no);
    MetricRow r{f[0], f[1], f[2], {}};
    for (std::size_t i = 0; i < kMetricCount; ++i) {
      auto v = detail::parse_double(f[3 + i]);
      if (!v || !std::isfinite(*v)) throw ParseError("bad value \"" + f[3 + i] + "\"", line_no);
      r.values.values[i] = *v;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Trained combiner: {"poly": {metric: {alpha, beta}}, "scale": {metric: {min, max}}}

struct TrainedCombiner {
  PolyParams params;
  ScaleParams scale;
};

inline nlohmann::json to_json(const TrainedCombiner& tc) {
  nlohmann::json j;
  nlohmann::json poly = nlohmann::json::object();
  for (std::size_t i = 0; i < kPolyMetrics.size(); ++i)
    poly[std::string(name(kPolyMetrics[i]))] = {{"alpha", tc.params.terms[i].alpha}, {"beta", tc.params.terms[i].beta}};
  nlohmann::json scale = nlohmann::json::object();
  for (auto m : kAllMetrics) {
    const auto i = static_cast<std::size_t>(m);
    scale[std::string(name(m))] = {{"min", tc.scale.min[i]}, {"max", tc.scale.max[i]}};
  }
  j["poly"] = std::move(poly);
  j["scale"] = std::move(scale);
  return j;
}

inline TrainedCombiner combiner_from_json(const nlohmann::json& j) {
  TrainedCombiner tc;
  try {
    for (std::size_t i = 0; i < kPolyMetrics.size(); ++i) {
      const auto& t = j.at("poly").at(std::string(name(kPolyMetrics[i])));
      tc.params.terms[i] = {t.at("alpha").get<double>(), t.at("beta").get<double>()};
      if (tc.params.terms[i].alpha < kAlphaMin || tc.params.terms[i].alpha > kAlphaMax ||
          tc.params.terms[i].beta < kBetaMin || tc.params.terms[i].beta > kBetaMax)
        throw ParseError("combiner parameter outside the alpha/beta box");
    }
    for (auto m : kAllMetrics) {
      const auto i = static_cast<std::size_t>(m);
      const auto& s = j.at("scale").at(std::string(name(m)));
      tc.scale.min[i] = s.at("min").get<double>();
      tc.scale.max[i] = s.at("max").get<double>();
      if (tc.scale.max[i] < tc.scale.min[i]) throw ParseError("scale max below min");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed combiner file: ") + e.what());
  }
  return tc;
}

}  // namespace hyporank
