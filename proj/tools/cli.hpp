#pragma once

#include <glob.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "digest.hpp"
#include "hyporank/combiner.hpp"
#include "hyporank/detail/parallel.hpp"
#include "hyporank/embedding.hpp"
#include "hyporank/io.hpp"
#include "hyporank/roc.hpp"
#include "hyporank/scoring.hpp"
#include "hyporank/synthetic.hpp"
#include "hyporank/topic_network.hpp"
#include "hyporank/validation.hpp"

namespace hyporank::cli {

namespace fs = std::filesystem;

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kInfeasible = 3,
  kScoringFailed = 4,
};

// Raised inside a command to stop with a specific exit code.
struct Exit {
  int code;
  std::string message;
};

/// One manifest.json per output directory: tool version, input digests,
/// seeds and every configuration value in effect. Inputs are keyed by file
/// name so reruns from another directory produce the same bytes.
class Manifest {
public:
  explicit Manifest(std::string command) {
    doc_["tool"] = "hyporank";
    doc_["version"] = kVersion;
    doc_["command"] = std::move(command);
    doc_["inputs"] = nlohmann::json::object();
    doc_["seeds"] = nlohmann::json::object();
    doc_["config"] = nlohmann::json::object();
  }

  void input(const fs::path& p) { doc_["inputs"][p.filename().string()] = sha256_file(p); }
  void input_as(const std::string& key, const fs::path& p) { doc_["inputs"][key] = sha256_file(p); }
  template <class T>
  void seed(const std::string& key, const T& v) {
    doc_["seeds"][key] = v;
  }
  template <class T>
  void config(const std::string& key, const T& v) {
    doc_["config"][key] = v;
  }

  void write(const fs::path& dir) const {
    std::ofstream out(dir / "manifest.json");
    out << doc_.dump(2) << '\n';
  }

private:
  nlohmann::json doc_;
};

// ---------------------------------------------------------------------------
// helpers

inline std::ifstream open_input(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Exit{kInputError, "cannot open " + p.string()};
  return in;
}

inline std::ofstream open_output(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Exit{kInputError, "cannot write " + p.string()};
  return out;
}

inline void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Exit{kInputError, "cannot create " + p.string() + ": " + ec.message()};
}

inline unsigned resolve_threads(unsigned t) { return t ? t : std::max(1u, std::thread::hardware_concurrency()); }

inline std::vector<fs::path> expand_globs(const std::vector<std::string>& patterns) {
  std::vector<fs::path> out;
  for (const auto& pat : patterns) {
    glob_t g{};
    if (::glob(pat.c_str(), 0, nullptr, &g) == 0)
      for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    ::globfree(&g);
  }
  return out;
}

inline PredicateDB load_predicates(const fs::path& p, std::ostream& err) {
  auto in = open_input(p);
  IngestReport rep;
  try {
    rep = ingest_predicates(in);
  } catch (const ParseError& e) {
    throw Exit{kInputError, p.string() + ": " + e.what()};
  }
  for (const auto& d : rep.diagnostics) err << p.string() << ": " << d << " (skipped)\n";
  return std::move(rep.db);
}

// Table-1 row order: the combiner first, then the single metrics.
inline const std::vector<std::string>& summary_order() {
  static const std::vector<std::string> order = {
      "poly_multiple",       "l2",         "csim",          "best_centr_l2",
      "best_centr_csim",     "best_topic_per_word", "topic_corr", "top_walk_length",
      "top_walk_btwn",       "top_walk_eigen",      "top_net_ccoef", "top_net_mod",
  };
  return order;
}

struct LabeledMetrics {
  std::vector<MetricVector> metrics;
  std::vector<std::uint8_t> labels;
  std::size_t ignored = 0;
};

/// Rows labelled `positive` are positives and rows labelled noise are
/// negatives. With positive = published, highly_cited rows also count as
/// positive since that set is a subset of the published set.
inline LabeledMetrics select_labeled(const std::vector<MetricRow>& rows, const std::string& positive) {
  LabeledMetrics out;
  for (const auto& r : rows) {
    const bool pos = r.label == positive || (positive == "published" && r.label == "highly_cited");
    if (pos || r.label == "noise") {
      out.metrics.push_back(r.values);
      out.labels.push_back(pos ? 1 : 0);
    } else {
      ++out.ignored;
    }
  }
  return out;
}

inline void write_roc(const fs::path& dir, const std::string& stem, const RocCurve& curve) {
  auto csv = open_output(dir / (stem + ".csv"));
  csv << "fpr,tpr\n";
  for (const auto& p : curve.points) csv << detail::format_double(p.fpr) << ',' << detail::format_double(p.tpr) << '\n';
  auto txt = open_output(dir / (stem + ".txt"));
  txt << "auc=" << detail::format_double(curve.auc) << " n_pos=" << curve.n_pos << " n_neg=" << curve.n_neg << '\n';
}

template <class T>
std::vector<T> gather(const std::vector<T>& xs, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(xs[i]);
  return out;
}

inline bool both_classes(const std::vector<std::uint8_t>& labels) {
  return std::find(labels.begin(), labels.end(), 1) != labels.end() &&
         std::find(labels.begin(), labels.end(), 0) != labels.end();
}

/// ROC curves for every single metric (directionality applied) and for the
/// combiner on one subset. Returns metric name -> curve; absent when the
/// subset lacks a class.
inline std::map<std::string, RocCurve> evaluate_subset(const std::vector<MetricVector>& metrics,
                                                       const std::vector<std::uint8_t>& labels,
                                                       const TrainedCombiner& tc) {
  std::map<std::string, RocCurve> out;
  if (!both_classes(labels)) return out;
  std::vector<double> scores(metrics.size());
  for (auto m : kAllMetrics) {
    for (std::size_t i = 0; i < metrics.size(); ++i) scores[i] = metrics[i][m];
    out[std::string(name(m))] = roc_curve(scores, labels, lower_is_published(m));
  }
  for (std::size_t i = 0; i < metrics.size(); ++i) scores[i] = poly_eval(tc.params, apply_scaler(tc.scale, metrics[i]));
  out["poly_multiple"] = roc_curve(scores, labels, false);
  return out;
}

inline std::string auc_cell(const std::map<std::string, RocCurve>& curves, const std::string& metric) {
  auto it = curves.find(metric);
  return it == curves.end() ? "NA" : detail::format_double(it->second.auc);
}

inline std::string reversed_flag(const std::string& metric) {
  auto m = metric_from_name(metric);
  return m && lower_is_published(*m) ? "yes" : "no";
}

// ---------------------------------------------------------------------------
// commands

struct IngestOptions {
  std::string predicates;
  std::string out;
};

inline int cmd_ingest(const IngestOptions& o, std::ostream& log, std::ostream& err) {
  const fs::path out(o.out);
  ensure_dir(out);
  auto in = open_input(o.predicates);
  IngestReport rep;
  try {
    rep = ingest_predicates(in);
  } catch (const ParseError& e) {
    throw Exit{kInputError, o.predicates + ": " + e.what()};
  }
  {
    auto f = open_output(out / "pairs.tsv");
    write_predicate_db(f, rep.db);
  }
  {
    auto f = open_output(out / "ingest_stats.txt");
    f << "rows=" << rep.rows << "\nskipped=" << rep.skipped << "\npairs=" << rep.db.pairs.size() << '\n';
    auto d = open_output(out / "ingest_diagnostics.txt");
    for (const auto& line : rep.diagnostics) d << line << '\n';
  }
  for (const auto& line : rep.diagnostics) err << o.predicates << ": " << line << " (skipped)\n";
  Manifest m("ingest");
  m.input(o.predicates);
  m.write(out);
  log << "ingested " << rep.rows << " rows into " << rep.db.pairs.size() << " pairs (" << rep.skipped
      << " skipped)\n";
  return kOk;
}

struct MakeSetsOptions {
  std::string predicates;
  std::string vocab;
  int cut_year = 2010;
  std::int64_t citation_threshold = 100;
  std::uint64_t seed = 0;
  std::size_t published_limit = 0;  // 0 keeps every published pair
  std::string out;
};

inline int cmd_make_sets(const MakeSetsOptions& o, std::ostream& log, std::ostream& err) {
  const fs::path out(o.out);
  const auto db = load_predicates(o.predicates, err);
  Vocabulary vocab;
  {
    auto in = open_input(o.vocab);
    try {
      vocab = load_vocabulary(in);
    } catch (const ParseError& e) {
      throw Exit{kInputError, o.vocab + ": " + e.what()};
    }
  }
  if (vocab.size() == 0) throw Exit{kInputError, o.vocab + ": vocabulary is empty"};
  ensure_dir(out);

  auto published_all = build_published_set(db, o.cut_year, vocab);
  auto highly_cited = build_highly_cited_set(published_all, db, o.citation_threshold);
  auto published = o.published_limit ? subsample(published_all, o.published_limit, detail::mix_seed(o.seed, 2))
                                     : published_all;
  std::vector<TermPair> noise_pvn, noise_hcvn;
  try {
    noise_pvn = sample_noise(vocab, db, published.size(), detail::mix_seed(o.seed, 0));
    noise_hcvn = sample_noise(vocab, db, highly_cited.size(), detail::mix_seed(o.seed, 1));
  } catch (const InfeasibleError& e) {
    throw Exit{kInfeasible, e.what()};
  }

  auto write = [&](const char* file, const std::vector<TermPair>& pairs, Label label) {
    auto f = open_output(out / file);
    write_query_set(f, pairs, label);
  };
  write("published.tsv", published, Label::published);
  write("highly_cited.tsv", highly_cited, Label::highly_cited);
  write("noise_pvn.tsv", noise_pvn, Label::noise);
  write("noise_hcvn.tsv", noise_hcvn, Label::noise);

  Manifest m("make-sets");
  m.input(o.predicates);
  m.input(o.vocab);
  m.seed("seed", o.seed);
  m.config("cut_year", o.cut_year);
  m.config("citation_threshold", o.citation_threshold);
  m.config("published_limit", o.published_limit);
  m.write(out);

  log << "published=" << published.size() << " (of " << published_all.size() << ") highly_cited=" << highly_cited.size()
      << " noise_pvn=" << noise_pvn.size() << " noise_hcvn=" << noise_hcvn.size() << '\n';
  if (published.empty()) {
    err << "warning: no pair was first published after " << o.cut_year << '\n';
    return kInfeasible;
  }
  return kOk;
}

struct ScoreOptions {
  std::string embeddings;
  std::vector<std::string> queries;
  std::vector<std::string> sets;
  std::string out;
  unsigned threads = 0;
  bool dump_networks = false;
};

inline int cmd_score(const ScoreOptions& o, std::ostream& log, std::ostream& err) {
  const fs::path out(o.out);
  EmbeddingSpace space(1);
  {
    auto in = open_input(o.embeddings);
    try {
      space = load_embeddings(in);
    } catch (const ParseError& e) {
      throw Exit{kInputError, o.embeddings + ": " + e.what()};
    }
  }
  std::map<TermPair, std::string> set_labels;
  for (const auto& s : o.sets) {
    auto in = open_input(s);
    try {
      for (const auto& lp : read_query_set(in)) set_labels.try_emplace(lp.pair, std::string(to_string(lp.label)));
    } catch (const ParseError& e) {
      throw Exit{kInputError, s + ": " + e.what()};
    }
  }
  const auto files = expand_globs(o.queries);
  ensure_dir(out);
  if (o.dump_networks) ensure_dir(out / "networks");

  struct Outcome {
    MetricRow row;
    std::string error;
  };
  std::vector<Outcome> results(files.size());
  detail::parallel_for(files.size(), resolve_threads(o.threads), [&](std::size_t i) {
    auto& r = results[i];
    try {
      std::ifstream in(files[i], std::ios::binary);
      if (!in) throw ParseError("cannot open " + files[i].string());
      auto doc = parse_query_document(in);
      r.row.a = doc.hypothesis.a;
      r.row.c = doc.hypothesis.c;
      r.row.label = doc.label;
      if (r.row.label.empty()) {
        auto it = set_labels.find(TermPair(r.row.a, r.row.c));
        if (it != set_labels.end()) r.row.label = it->second;
      }
      const auto resolved = resolve(doc.hypothesis, space);
      r.row.values = compute_metric_vector(resolved);
      if (o.dump_networks) {
        const auto net = build_topic_network(resolved);
        const auto stem = files[i].stem().string();
        std::ofstream edges(out / "networks" / (stem + ".edges.txt"));
        write_edge_list(edges, net);
        std::ofstream nodes(out / "networks" / (stem + ".nodes.txt"));
        write_node_table(nodes, net);
      }
    } catch (const std::exception& e) {
      r.error = files[i].filename().string() + ": " + e.what();
    }
  });

  std::size_t failed = 0;
  {
    auto csv = open_output(out / "metrics.csv");
    auto errs = open_output(out / "errors.csv");
    csv << metric_csv_header() << '\n';
    errs << "a,c,reason\n";
    for (const auto& r : results) {
      if (r.error.empty()) {
        write_metric_row(csv, r.row);
      } else {
        ++failed;
        errs << csv_field(r.row.a) << ',' << csv_field(r.row.c) << ',' << csv_field(r.error) << '\n';
      }
    }
  }

  Manifest m("score");
  m.input(o.embeddings);
  for (const auto& f : files) m.input_as("queries/" + f.filename().string(), f);
  for (const auto& s : o.sets) m.input(s);
  m.config("query_files", files.size());
  m.config("dump_networks", o.dump_networks);
  m.write(out);

  log << "scored " << files.size() - failed << " of " << files.size() << " hypotheses\n";
  if (files.empty()) {
    err << "warning: no query files matched\n";
    return kOk;
  }
  if (failed == files.size()) {
    err << "error: every hypothesis failed; see " << (out / "errors.csv").string() << '\n';
    return kScoringFailed;
  }
  return kOk;
}

struct TrainOptions {
  std::string metrics;
  std::string params;  // evaluate only
  std::string positive = "published";
  SearchConfig search;
  std::string out;
};

inline LabeledMetrics load_labeled(const TrainOptions& o, std::ostream& err) {
  auto in = open_input(o.metrics);
  std::vector<MetricRow> rows;
  try {
    rows = read_metric_csv(in);
  } catch (const ParseError& e) {
    throw Exit{kInputError, o.metrics + ": " + e.what()};
  }
  auto data = select_labeled(rows, o.positive);
  if (data.ignored) err << "note: ignored " << data.ignored << " rows with other labels\n";
  if (!both_classes(data.labels))
    throw Exit{kInputError, o.metrics + ": need both " + o.positive + " and noise rows"};
  return data;
}

inline void search_manifest(Manifest& m, const TrainOptions& o) {
  m.seed("seed", o.search.rng_seed);
  m.config("budget", o.search.total_budget);
  m.config("round_size", o.search.round_size);
  m.config("shrink", o.search.shrink_factor);
  m.config("train_fraction", o.search.train_fraction);
  m.config("positive", o.positive);
}

inline SearchResult run_search(const TrainOptions& o, const LabeledMetrics& data, const fs::path& out) {
  SearchResult res;
  try {
    res = optimize_poly(data.metrics, data.labels, o.search);
  } catch (const DomainError& e) {
    throw Exit{kUsage, e.what()};
  }
  auto j = to_json(TrainedCombiner{res.params, res.scale});
  j["train_auc"] = res.train_auc;
  j["holdout_auc"] = res.holdout_auc ? nlohmann::json(*res.holdout_auc) : nlohmann::json(nullptr);
  j["evaluations"] = res.evaluations;
  auto f = open_output(out / "params.json");
  f << j.dump(2) << '\n';
  return res;
}

inline int cmd_optimize(const TrainOptions& o, std::ostream& log, std::ostream& err) {
  try {
    validate(o.search);
  } catch (const DomainError& e) {
    throw Exit{kUsage, e.what()};
  }
  const fs::path out(o.out);
  const auto data = load_labeled(o, err);
  ensure_dir(out);
  const auto res = run_search(o, data, out);
  Manifest m("optimize");
  m.input(o.metrics);
  search_manifest(m, o);
  m.write(out);
  log << "train_auc=" << detail::format_double(res.train_auc)
      << " holdout_auc=" << (res.holdout_auc ? detail::format_double(*res.holdout_auc) : "NA") << '\n';
  return kOk;
}

inline int cmd_evaluate(const TrainOptions& o, std::ostream& log, std::ostream& err) {
  const fs::path out(o.out);
  const auto data = load_labeled(o, err);
  TrainedCombiner tc;
  {
    auto in = open_input(o.params);
    try {
      tc = combiner_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw Exit{kInputError, o.params + ": " + e.what()};
    } catch (const ParseError& e) {
      throw Exit{kInputError, o.params + ": " + e.what()};
    }
  }
  ensure_dir(out / "roc");
  const auto curves = evaluate_subset(data.metrics, data.labels, tc);
  for (const auto& [metric, curve] : curves) write_roc(out / "roc", metric, curve);
  {
    auto f = open_output(out / "summary.csv");
    f << "metric,reversed,auc\n";
    for (const auto& metric : summary_order()) f << metric << ',' << reversed_flag(metric) << ',' << auc_cell(curves, metric) << '\n';
  }
  Manifest m("evaluate");
  m.input(o.metrics);
  m.input(o.params);
  m.config("positive", o.positive);
  m.write(out);
  log << "poly_multiple auc=" << auc_cell(curves, "poly_multiple") << '\n';
  return kOk;
}

inline int cmd_train_and_evaluate(const TrainOptions& o, std::ostream& log, std::ostream& err) {
  try {
    validate(o.search);
  } catch (const DomainError& e) {
    throw Exit{kUsage, e.what()};
  }
  const fs::path out(o.out);
  const auto data = load_labeled(o, err);
  ensure_dir(out / "roc");
  const auto res = run_search(o, data, out);
  const TrainedCombiner tc{res.params, res.scale};

  const auto train = evaluate_subset(gather(data.metrics, res.split.train), gather(data.labels, res.split.train), tc);
  const auto hold = evaluate_subset(gather(data.metrics, res.split.holdout), gather(data.labels, res.split.holdout), tc);
  for (const auto& [metric, curve] : train) write_roc(out / "roc", metric + "_train", curve);
  for (const auto& [metric, curve] : hold) write_roc(out / "roc", metric + "_holdout", curve);
  {
    auto f = open_output(out / "summary.csv");
    f << "metric,reversed,train_auc,holdout_auc\n";
    for (const auto& metric : summary_order())
      f << metric << ',' << reversed_flag(metric) << ',' << auc_cell(train, metric) << ',' << auc_cell(hold, metric)
        << '\n';
  }
  Manifest m("train-and-evaluate");
  m.input(o.metrics);
  search_manifest(m, o);
  m.write(out);
  log << "poly_multiple train_auc=" << auc_cell(train, "poly_multiple")
      << " holdout_auc=" << auc_cell(hold, "poly_multiple") << '\n';
  return kOk;
}

struct ReportOptions {
  std::vector<std::string> inputs;  // name=path
  std::string column;               // default: last column of each summary
  std::string out;
};

inline int cmd_report(const ReportOptions& o, std::ostream& log, std::ostream&) {
  std::vector<std::string> names;
  std::map<std::string, std::map<std::string, std::string>> table;  // metric -> run -> value
  for (const auto& item : o.inputs) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Exit{kUsage, "--input expects name=path, got " + item};
    const auto run = item.substr(0, eq);
    const auto path = item.substr(eq + 1);
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw Exit{kInputError, path + ": empty summary"};
    const auto header = parse_csv_line(detail::strip_cr(line));
    std::size_t col = header.size() - 1;
    if (!o.column.empty()) {
      auto it = std::find(header.begin(), header.end(), o.column);
      if (it == header.end()) throw Exit{kInputError, path + ": no column " + o.column};
      col = static_cast<std::size_t>(it - header.begin());
    }
    names.push_back(run);
    while (std::getline(in, line)) {
      auto f = parse_csv_line(detail::strip_cr(line));
      if (f.size() != header.size()) throw Exit{kInputError, path + ": ragged summary row"};
      table[f[0]][run] = f[col];
    }
  }
  auto f = open_output(o.out);
  f << "metric";
  for (const auto& n : names) f << ',' << csv_field(n);
  f << '\n';
  for (const auto& metric : summary_order()) {
    if (!table.contains(metric)) continue;
    f << metric << (reversed_flag(metric) == "yes" ? "*" : "");
    for (const auto& n : names) {
      auto it = table[metric].find(n);
      f << ',' << (it == table[metric].end() ? "NA" : it->second);
    }
    f << '\n';
  }
  log << "wrote " << o.out << '\n';
  return kOk;
}

struct SynthOptions {
  synthetic::UniverseConfig universe;
  synthetic::LiteratureConfig literature;
  synthetic::TopicConfig topics;
  std::vector<std::string> sets;  // synth-topics only
  std::uint64_t seed = 0;
  std::string out;
};

inline void universe_manifest(Manifest& m, const SynthOptions& o) {
  m.seed("seed", o.seed);
  m.config("dimension", o.universe.dimension);
  m.config("clusters", o.universe.clusters);
  m.config("terms_per_cluster", o.universe.terms_per_cluster);
}

inline int cmd_synth(const SynthOptions& o, std::ostream& log, std::ostream&) {
  const fs::path out(o.out);
  ensure_dir(out);
  const auto u = synthetic::make_universe(o.universe, o.seed);
  {
    auto f = open_output(out / "embeddings.txt");
    write_embeddings(f, u.space);
  }
  {
    auto f = open_output(out / "vocab.txt");
    for (const auto& t : u.space.terms()) f << t << '\n';
  }
  {
    auto f = open_output(out / "predicates.tsv");
    synthetic::write_literature(f, u, o.literature, o.seed);
  }
  Manifest m("synth");
  universe_manifest(m, o);
  m.config("records", o.literature.records);
  m.write(out);
  log << "wrote " << u.space.size() << " terms and " << o.literature.records << " predicate rows\n";
  return kOk;
}

inline int cmd_synth_topics(const SynthOptions& o, std::ostream& log, std::ostream&) {
  const fs::path out(o.out);
  const auto u = synthetic::make_universe(o.universe, o.seed);
  std::vector<LabeledPair> pairs;
  std::set<TermPair> seen;
  for (const auto& s : o.sets) {
    auto in = open_input(s);
    try {
      for (auto& lp : read_query_set(in))
        if (seen.insert(lp.pair).second) pairs.push_back(std::move(lp));
    } catch (const ParseError& e) {
      throw Exit{kInputError, s + ": " + e.what()};
    }
  }
  ensure_dir(out / "queries");
  detail::Rng rng(detail::mix_seed(o.seed, 400));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    QueryDocument doc;
    try {
      doc.hypothesis = synthetic::make_hypothesis(u, pairs[i].pair.first, pairs[i].pair.second, o.topics, rng);
    } catch (const UnknownTermError& e) {
      throw Exit{kInputError, std::string("pair not in the synthetic universe: ") + e.what()};
    }
    doc.label = std::string(to_string(pairs[i].label));
    std::ostringstream name;
    name << "q" << std::setw(6) << std::setfill('0') << i << ".json";
    auto f = open_output(out / "queries" / name.str());
    write_query_document(f, doc);
  }
  Manifest m("synth-topics");
  universe_manifest(m, o);
  for (const auto& s : o.sets) m.input(s);
  m.config("topics", o.topics.topics);
  m.config("words_per_topic", o.topics.words_per_topic);
  m.write(out);
  log << "wrote " << pairs.size() << " topic-model files\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// entry point

inline void add_search_flags(CLI::App* sub, TrainOptions& o) {
  sub->add_option("--seed", o.search.rng_seed, "RNG seed for the split and the search")->capture_default_str();
  sub->add_option("--budget", o.search.total_budget, "Total parameter evaluations")->capture_default_str();
  sub->add_option("--round-size", o.search.round_size, "Evaluations per search round")->capture_default_str();
  sub->add_option("--shrink", o.search.shrink_factor, "Per-round box shrink factor")->capture_default_str();
  sub->add_option("--train-fraction", o.search.train_fraction, "Share of each class used for training")
      ->capture_default_str();
  sub->add_option("--threads", o.search.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

inline void add_universe_flags(CLI::App* sub, SynthOptions& o) {
  sub->add_option("--seed", o.seed)->capture_default_str();
  sub->add_option("--dim", o.universe.dimension)->capture_default_str();
  sub->add_option("--clusters", o.universe.clusters)->capture_default_str();
  sub->add_option("--terms-per-cluster", o.universe.terms_per_cluster)->capture_default_str();
  sub->add_option("--out", o.out)->required();
}

/// Runs the CLI with the given arguments; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Rank and validate literature-based hypotheses from topic models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  IngestOptions ingest;
  auto* s_ingest = app.add_subcommand("ingest", "Normalize a predicate TSV into first-occurrence pairs");
  s_ingest->add_option("--predicates", ingest.predicates)->required();
  s_ingest->add_option("--out", ingest.out)->required();

  MakeSetsOptions sets;
  auto* s_sets = app.add_subcommand("make-sets", "Build published, highly-cited and noise query sets");
  s_sets->add_option("--predicates", sets.predicates)->required();
  s_sets->add_option("--vocab", sets.vocab)->required();
  s_sets->add_option("--cut-year", sets.cut_year)->capture_default_str();
  s_sets->add_option("--citation-threshold", sets.citation_threshold)->capture_default_str();
  s_sets->add_option("--seed", sets.seed)->capture_default_str();
  s_sets->add_option("--published-limit", sets.published_limit, "Seeded subsample size (0 = all)")
      ->capture_default_str();
  s_sets->add_option("--out", sets.out)->required();

  ScoreOptions score;
  auto* s_score = app.add_subcommand("score", "Compute the eleven metrics for topic-model query files");
  s_score->add_option("--embeddings", score.embeddings)->required();
  s_score->add_option("--queries", score.queries, "Query file paths or glob patterns")->required();
  s_score->add_option("--sets", score.sets, "Query-set TSVs supplying labels");
  s_score->add_option("--threads", score.threads, "Worker threads (0 = all cores)")->capture_default_str();
  s_score->add_flag("--dump-networks", score.dump_networks, "Write each topic network as edge/node tables");
  s_score->add_option("--out", score.out)->required();

  TrainOptions train;
  auto add_train = [&](const char* name, const char* help, bool search, bool params) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--metrics", train.metrics, "Metric CSV from `score`")->required();
    sub->add_option("--positive", train.positive, "Positive label: published or highly_cited")
        ->check(CLI::IsMember({"published", "highly_cited"}))
        ->capture_default_str();
    if (search) add_search_flags(sub, train);
    if (params) sub->add_option("--params", train.params, "params.json from `optimize`")->required();
    sub->add_option("--out", train.out)->required();
    return sub;
  };
  auto* s_tae = add_train("train-and-evaluate", "Train the combiner and write ROC curves and a summary", true, false);
  auto* s_opt = add_train("optimize", "Train the combiner only", true, false);
  auto* s_eval = add_train("evaluate", "Evaluate a trained combiner and every metric", false, true);

  ReportOptions report;
  auto* s_report = app.add_subcommand("report", "Merge summaries into one table");
  s_report->add_option("--input", report.inputs, "name=summary.csv")->required();
  s_report->add_option("--column", report.column, "Summary column to take (default: last)");
  s_report->add_option("--out", report.out)->required();

  SynthOptions synth;
  auto* s_synth = app.add_subcommand("synth", "Write a planted synthetic corpus (embeddings, predicates, vocabulary)");
  add_universe_flags(s_synth, synth);
  s_synth->add_option("--records", synth.literature.records)->capture_default_str();
  auto* s_synth_topics = app.add_subcommand("synth-topics", "Write planted topic models for query-set pairs into <out>/queries");
  add_universe_flags(s_synth_topics, synth);
  s_synth_topics->add_option("--sets", synth.sets)->required();
  s_synth_topics->add_option("--topics", synth.topics.topics)->capture_default_str();
  s_synth_topics->add_option("--words-per-topic", synth.topics.words_per_topic)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, log, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*s_ingest) return cmd_ingest(ingest, log, err);
    if (*s_sets) return cmd_make_sets(sets, log, err);
    if (*s_score) return cmd_score(score, log, err);
    if (*s_tae) return cmd_train_and_evaluate(train, log, err);
    if (*s_opt) return cmd_optimize(train, log, err);
    if (*s_eval) return cmd_evaluate(train, log, err);
    if (*s_report) return cmd_report(report, log, err);
    if (*s_synth) return cmd_synth(synth, log, err);
    if (*s_synth_topics) return cmd_synth_topics(synth, log, err);
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace hyporank::cli
