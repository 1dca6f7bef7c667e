#include "threadsum/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "threadsum/error.hpp"
#include "threadsum/eval.hpp"
#include "threadsum/parallel.hpp"
#include "threadsum/resources.hpp"

namespace threadsum::cli {
namespace {

template <class Int>
Int parse_int(std::string_view key, std::string_view value) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
    throw std::invalid_argument("config: '" + std::string(key) + "' expects an integer, got '" +
                                std::string(value) + "'");
  return v;
}

double parse_real(std::string_view key, std::string_view value) {
  const std::string s(value);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw std::invalid_argument("config: '" + std::string(key) + "' expects a number, got '" + s + "'");
  return v;
}

std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Setting {
  std::string_view key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define INT_SETTING(name, field, type)                                                        \
  Setting {                                                                                   \
    name, [](RunConfig& c, std::string_view v) { c.field = parse_int<type>(name, v); },       \
        [](const RunConfig& c) { return std::to_string(c.field); }                            \
  }
#define REAL_SETTING(name, field)                                                            \
  Setting {                                                                                  \
    name, [](RunConfig& c, std::string_view v) { c.field = parse_real(name, v); },           \
        [](const RunConfig& c) { return real_text(c.field); }                                \
  }

// Kept sorted by key; describe() emits in table order.
const std::vector<Setting>& settings() {
  static const std::vector<Setting> table = {
      INT_SETTING("budget_words", summary.budget_words, int),
      INT_SETTING("classifier_dim", classifier.dim, std::size_t),
      INT_SETTING("classifier_epochs", classifier.epochs, int),
      REAL_SETTING("classifier_eta0", classifier.eta0),
      REAL_SETTING("classifier_lambda", classifier.lambda),
      REAL_SETTING("coherence_min", opinio.coherence_min),
      REAL_SETTING("damping", summary.damping),
      REAL_SETTING("epsilon", summary.epsilon),
      REAL_SETTING("kl_smoothing", summary.kl_smoothing),
      REAL_SETTING("lexrank_threshold", summary.lexrank_threshold),
      INT_SETTING("max_iterations", summary.max_iterations, int),
      INT_SETTING("max_unsupported_sentences", filter.max_unsupported_sentences, int),
      INT_SETTING("min_answers", filter.min_answers, int),
      INT_SETTING("min_best_answer_words", filter.min_best_answer_words, int),
      INT_SETTING("min_candidate_words", filter.min_candidate_words, int),
      INT_SETTING("min_sentence_words", summary.min_sentence_words, int),
      INT_SETTING("reference_words", filter.reference_words, int),
      INT_SETTING("seed", seed, std::uint64_t),
      REAL_SETTING("support_threshold", filter.support_threshold),
      REAL_SETTING("tiling_k", opinio.tiling.k),
      INT_SETTING("tiling_w", opinio.tiling.w, int),
  };
  return table;
}

#undef INT_SETTING
#undef REAL_SETTING

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

std::string slurp(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_companion(const std::string& artifact, std::string_view command, const RunConfig& config) {
  auto out = open_out(artifact + ".config");
  out << "# threadsum " << command << '\n';
  for (const auto& [k, v] : describe(config)) out << k << '=' << v << '\n';
}

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "key=value configuration file");
  sub->add_option("--set", c.sets, "override one setting, key=value (repeatable)");
  sub->add_option("--seed", c.seed, "random seed for stochastic components");
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

RunConfig resolve(const Common& c) {
  RunConfig config;
  if (!c.config_path.empty()) apply_config_text(config, slurp(c.config_path));
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + s + "'");
    apply_setting(config, trim(std::string_view(s).substr(0, eq)), trim(std::string_view(s).substr(eq + 1)));
  }
  if (c.seed) config.seed = *c.seed;
  validate(config);
  config.classifier.seed = config.seed;
  return config;
}

struct SummaryLine {
  std::string id;
  std::string algorithm;
  Summary summary;
};

std::string summary_json(const SummaryLine& s) {
  nlohmann::ordered_json j;
  j["id"] = s.id;
  j["algorithm"] = s.algorithm;
  j["summary"] = s.summary.text;
  auto picks = nlohmann::ordered_json::array();
  for (const auto& [d, i] : s.summary.picks) picks.push_back({d, i});
  j["picks"] = picks;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::vector<SummaryRecord> read_summaries(const std::string& path) {
  auto in = open_in(path);
  std::vector<SummaryRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string where = path + " line " + std::to_string(lineno);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + ": " + e.what());
    }
    if (!j.is_object()) throw DataError(where + ": expected an object");
    for (const char* key : {"id", "algorithm", "summary"})
      if (!j.contains(key) || !j[key].is_string())
        throw DataError(where + ": missing string field '" + key + "'");
    out.push_back({j["id"].get<std::string>(), j["algorithm"].get<std::string>(),
                   j["summary"].get<std::string>()});
  }
  return out;
}

bool has_content(std::span<const Sentence> sentences) {
  for (const Sentence& s : sentences)
    if (!bag_of_words(std::span<const Token>(s.tokens)).empty()) return true;
  return false;
}

std::vector<SummaryInstance> load_corpus(const std::string& path) {
  auto in = open_in(path);
  return read_corpus(in);
}

int cmd_build_corpus(const Common& common, const std::string& input, const std::string& output,
                     std::ostream& out) {
  const RunConfig config = resolve(common);
  auto in = open_in(input);
  CorpusStats stats;
  {
    auto sink = open_out(output);
    stats = build_corpus(in, config.filter, sink, common.jobs);
    if (!sink) throw DataError("write failed for '" + output + "'");
  }
  write_companion(output, "build-corpus", config);
  write_stats(stats, out, true);
  return 0;
}

int cmd_stats(const Common& common, const std::string& input, std::ostream& out) {
  resolve(common);
  const auto corpus = load_corpus(input);
  write_stats(corpus_statistics(corpus), out);
  return 0;
}

int cmd_summarize(const Common& common, const std::string& algo, const std::string& input,
                  const std::string& output, const std::string& model_path,
                  const std::string& lexicon_path) {
  const RunConfig config = resolve(common);
  const auto corpus = load_corpus(input);

  std::optional<FactOpinionModel> model;
  std::optional<SentimentLexicon> lexicon;
  if (algo == "opiniosumm") {
    if (!model_path.empty()) {
      auto in = open_in(model_path);
      model = FactOpinionModel::load(in);
    } else {
      std::istringstream in{std::string(resources::fact_opinion_training)};
      model = FactOpinionModel::train(read_labeled(in), config.classifier);
    }
    lexicon = lexicon_path.empty() ? SentimentLexicon::bundled() : SentimentLexicon::parse(slurp(lexicon_path));
  }

  auto summarize_one = [&](const SummaryInstance& inst) {
    SummaryLine line{inst.id, algo, {}};
    const auto sentences = analyze_documents(inst.candidates);
    if (!has_content(sentences)) return line;
    if (algo == "lexrank") line.summary = lexrank(sentences, config.summary);
    else if (algo == "textrank") line.summary = textrank(sentences, config.summary);
    else if (algo == "sumbasic") line.summary = sumbasic(sentences, config.summary);
    else if (algo == "klsum") line.summary = klsum_greedy(sentences, config.summary);
    else line.summary = opiniosumm(inst, *model, *lexicon, config.opinio, config.summary);
    return line;
  };
  const auto lines = ordered_map(std::span<const SummaryInstance>(corpus), common.jobs, summarize_one);
  {
    auto sink = open_out(output);
    for (const auto& l : lines) sink << summary_json(l) << '\n';
    if (!sink) throw DataError("write failed for '" + output + "'");
  }
  write_companion(output, "summarize --algo " + algo, config);
  return 0;
}

int cmd_upper_bound(const Common& common, const std::string& input, const std::string& output) {
  const RunConfig config = resolve(common);
  const auto corpus = load_corpus(input);
  const auto lines = ordered_map(std::span<const SummaryInstance>(corpus), common.jobs,
                                 [&](const SummaryInstance& inst) {
                                   const auto sentences = analyze_documents(inst.candidates);
                                   const auto ub = greedy_upper_bound(sentences, inst.reference,
                                                                      config.summary.budget_words);
                                   return SummaryLine{inst.id, "upper-bound", ub.summary};
                                 });
  {
    auto sink = open_out(output);
    for (const auto& l : lines) sink << summary_json(l) << '\n';
    if (!sink) throw DataError("write failed for '" + output + "'");
  }
  write_companion(output, "upper-bound", config);
  return 0;
}

int cmd_evaluate(const Common& common, const std::string& corpus_path,
                 const std::vector<std::string>& summary_paths, const std::string& report_path) {
  const RunConfig config = resolve(common);
  std::vector<ReferenceRecord> refs;
  for (auto& inst : load_corpus(corpus_path)) refs.push_back({inst.id, inst.reference});
  std::vector<SummaryRecord> summaries;
  for (const auto& p : summary_paths) {
    auto part = read_summaries(p);
    summaries.insert(summaries.end(), part.begin(), part.end());
  }
  const EvalReport report = evaluate_corpus(refs, summaries);
  {
    auto sink = open_out(report_path);
    write_report_tsv(report, sink);
    if (!sink) throw DataError("write failed for '" + report_path + "'");
  }
  write_companion(report_path, "evaluate", config);
  return 0;
}

int cmd_train(const Common& common, const std::string& input, const std::string& output) {
  const RunConfig config = resolve(common);
  std::vector<LabeledText> examples;
  if (input.empty()) {
    std::istringstream in{std::string(resources::fact_opinion_training)};
    examples = read_labeled(in);
  } else {
    auto in = open_in(input);
    examples = read_labeled(in);
  }
  const auto model = FactOpinionModel::train(examples, config.classifier);
  {
    auto sink = open_out(output);
    model.save(sink);
    if (!sink) throw DataError("write failed for '" + output + "'");
  }
  write_companion(output, "train-classifier", config);
  return 0;
}

}  // namespace

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  for (const auto& s : settings())
    if (s.key == key) {
      s.set(config, value);
      return;
    }
  throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    apply_setting(config, trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
  }
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : settings()) out.emplace_back(std::string(s.key), s.get(config));
  return out;
}

void validate(const RunConfig& config) {
  const FilterConfig& f = config.filter;
  if (f.min_answers < 0 || f.min_best_answer_words < 0 || f.min_candidate_words < 0)
    throw std::invalid_argument("config: filter thresholds must be non-negative");
  if (f.reference_words <= 0) throw std::invalid_argument("config: reference_words must be positive");
  if (!(f.support_threshold >= 0.0 && f.support_threshold <= 1.0))
    throw std::invalid_argument("config: support_threshold must lie in [0,1]");
  if (f.max_unsupported_sentences < 0)
    throw std::invalid_argument("config: max_unsupported_sentences must be non-negative");
  config.summary.validate();
  config.opinio.validate();
  config.classifier.validate();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Community question-answering summarization toolkit", "threadsum"};
  app.require_subcommand(1);

  Common common;
  std::string input, output, algo, model_path, lexicon_path, corpus_path, report_path;
  std::vector<std::string> summary_paths;

  auto* build = app.add_subcommand("build-corpus", "filter L6 XML into a JSON-lines corpus");
  build->add_option("--input", input, "L6 XML file")->required();
  build->add_option("--output", output, "corpus JSONL to write")->required();
  add_common(build, common);

  auto* stats = app.add_subcommand("stats", "print corpus statistics");
  stats->add_option("--input", input, "corpus JSONL")->required();
  add_common(stats, common);

  auto* summarize = app.add_subcommand("summarize", "summarize every corpus instance");
  summarize->add_option("--algo", algo, "summarizer")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kAlgorithms), std::end(kAlgorithms))));
  summarize->add_option("--input", input, "corpus JSONL")->required();
  summarize->add_option("--output", output, "summaries JSONL to write")->required();
  summarize->add_option("--model", model_path, "fact/opinion model (opiniosumm)");
  summarize->add_option("--lexicon", lexicon_path, "sentiment lexicon TSV (opiniosumm)");
  add_common(summarize, common);

  auto* evaluate = app.add_subcommand("evaluate", "ROUGE-1/2 report for summaries");
  evaluate->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  evaluate->add_option("--summaries", summary_paths, "summaries JSONL (repeatable)")->required();
  evaluate->add_option("--report", report_path, "TSV report to write")->required();
  add_common(evaluate, common);

  auto* upper = app.add_subcommand("upper-bound", "greedy ROUGE-1 extractive oracle");
  upper->add_option("--input", input, "corpus JSONL")->required();
  upper->add_option("--output", output, "summaries JSONL to write")->required();
  add_common(upper, common);

  auto* train = app.add_subcommand("train-classifier", "train the fact/opinion model");
  train->add_option("--input", input, "labelled TSV (default: bundled data)");
  train->add_option("--output", output, "model file to write")->required();
  add_common(train, common);

  std::vector<const char*> argv{"threadsum"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (build->parsed()) return cmd_build_corpus(common, input, output, out);
    if (stats->parsed()) return cmd_stats(common, input, out);
    if (summarize->parsed())
      return cmd_summarize(common, algo, input, output, model_path, lexicon_path);
    if (evaluate->parsed()) return cmd_evaluate(common, corpus_path, summary_paths, report_path);
    if (upper->parsed()) return cmd_upper_bound(common, input, output);
    if (train->parsed()) return cmd_train(common, input, output);
  } catch (const std::invalid_argument& e) {
    err << "threadsum: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "threadsum: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace threadsum::cli
