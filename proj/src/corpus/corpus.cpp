#include "threadsum/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "threadsum/error.hpp"
#include "threadsum/parallel.hpp"
#include "threadsum/summarize.hpp"

namespace threadsum {
namespace {

bool is_english(std::string_view language) {
  const std::string lang = to_lower(language);
  return lang.empty() || lang.rfind("en", 0) == 0 || lang == "english";
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string question_text(const QuestionThread& t) {
  return t.content.empty() ? t.subject : t.subject + "\n" + t.content;
}

}  // namespace

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::TooFewAnswers: return "TooFewAnswers";
    case RejectReason::BestAnswerTooShort: return "BestAnswerTooShort";
    case RejectReason::CandidatesTooShort: return "CandidatesTooShort";
    case RejectReason::NotUniqueBest: return "NotUniqueBest";
    case RejectReason::ReferenceUnsupported: return "ReferenceUnsupported";
    case RejectReason::NonEnglish: return "NonEnglish";
    case RejectReason::Malformed: return "Malformed";
  }
  return "Unknown";
}

FilterOutcome filter_thread(const QuestionThread& thread, const FilterConfig& config) {
  if (thread.answers.size() < static_cast<std::size_t>(std::max(config.min_answers, 0)))
    return FilterOutcome::reject(RejectReason::TooFewAnswers);
  if (word_count(thread.best_answer) < static_cast<std::size_t>(std::max(config.min_best_answer_words, 0)))
    return FilterOutcome::reject(RejectReason::BestAnswerTooShort);
  std::size_t words = 0;
  for (const auto& a : thread.answers) words += word_count(a);
  if (words < static_cast<std::size_t>(std::max(config.min_candidate_words, 0)))
    return FilterOutcome::reject(RejectReason::CandidatesTooShort);
  if (!is_english(thread.language)) return FilterOutcome::reject(RejectReason::NonEnglish);
  return FilterOutcome::accept();
}

double sentence_priority(const Sentence& sentence) {
  double score = sentence.paragraph_initial ? 1.0 : 0.0;
  bool question = false;
  for (const Token& t : sentence.tokens) {
    if (t.pos == Pos::ProperNoun) score += 1.0;
    else if (t.pos == Pos::CommonNoun) score += 0.25;
    else if (t.pos == Pos::QuestionWord) question = true;
  }
  return question ? score + 1.0 : score;
}

std::string build_reference(std::string_view best_answer, int budget_words) {
  if (budget_words <= 0) throw std::invalid_argument("build_reference: budget must be positive");
  const auto budget = static_cast<std::size_t>(budget_words);
  if (word_count(best_answer) < budget) return std::string(best_answer);

  const std::vector<Sentence> sentences = analyze(best_answer);
  std::vector<double> priority(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) priority[i] = sentence_priority(sentences[i]);
  std::vector<std::size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return priority[a] > priority[b]; });

  std::vector<std::size_t> picked;
  std::size_t words = 0;
  for (std::size_t i : order) {
    if (words >= budget) break;
    picked.push_back(i);
    words += sentences[i].word_count();
  }
  std::sort(picked.begin(), picked.end());
  std::vector<Sentence> chosen;
  chosen.reserve(picked.size());
  for (std::size_t i : picked) chosen.push_back(sentences[i]);
  return select_until_budget(chosen, budget_words).text;
}

std::vector<AnswerScore> cumulative_correlation(const QuestionThread& thread) {
  std::vector<TermBag> bags;
  bags.reserve(thread.answers.size() + 1);
  bags.push_back(bag_of_words(std::string_view(thread.best_answer)));
  for (const auto& a : thread.answers) bags.push_back(bag_of_words(std::string_view(a)));

  std::vector<AnswerScore> scores(bags.size());
  for (std::size_t i = 0; i < bags.size(); ++i) scores[i] = {i, 0.0};
  const bool any_terms = std::any_of(bags.begin(), bags.end(), [](const TermBag& b) { return !b.empty(); });
  if (!any_terms) return scores;

  const auto vectors = tfidf_vectors(bags);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const double c = cosine(vectors[i], vectors[j]);
      scores[i].score += c;
      scores[j].score += c;
    }
  return scores;
}

bool validate_unique_best(const QuestionThread& thread) {
  const auto scores = cumulative_correlation(thread);
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i].score >= scores[0].score - 1e-12) return false;
  return true;
}

std::vector<double> reference_support(std::string_view reference,
                                      std::span<const std::string> candidates) {
  std::vector<TermBag> docs;
  docs.reserve(candidates.size() + 1);
  docs.push_back(bag_of_words(reference));
  for (const auto& c : candidates) docs.push_back(bag_of_words(std::string_view(c)));
  const IdfTable idf(docs);
  std::vector<TermVector> cand_vectors;
  cand_vectors.reserve(candidates.size());
  for (std::size_t i = 1; i < docs.size(); ++i) cand_vectors.push_back(idf.vectorize(docs[i]));

  std::vector<double> support;
  for (const Sentence& s : split_sentences(reference)) {
    const TermVector v = idf.vectorize(bag_of_words(std::span<const Token>(s.tokens)));
    double best = 0.0;
    for (const auto& c : cand_vectors) best = std::max(best, cosine(v, c));
    support.push_back(best);
  }
  return support;
}

bool check_reference_support(std::string_view reference, std::span<const std::string> candidates,
                             double threshold, int max_unsupported) {
  const auto support = reference_support(reference, candidates);
  const auto unsupported =
      std::count_if(support.begin(), support.end(), [&](double s) { return s <= threshold; });
  return unsupported <= max_unsupported;
}

ThreadResult process_thread(const QuestionThread& thread, const FilterConfig& config) {
  ThreadResult result;
  result.outcome = filter_thread(thread, config);
  if (!result.outcome.accepted) return result;

  std::string reference = build_reference(thread.best_answer, config.reference_words);
  if (!validate_unique_best(thread)) {
    result.outcome = FilterOutcome::reject(RejectReason::NotUniqueBest);
    return result;
  }
  if (!check_reference_support(reference, thread.answers, config.support_threshold,
                               config.max_unsupported_sentences)) {
    result.outcome = FilterOutcome::reject(RejectReason::ReferenceUnsupported);
    return result;
  }
  result.instance = SummaryInstance{thread.id, question_text(thread), std::move(reference),
                                    thread.answers, thread.maincat};
  return result;
}

CorpusStats corpus_statistics(std::span<const SummaryInstance> corpus) {
  CorpusStats stats;
  std::size_t answer_words = 0;
  std::size_t reference_words = 0;
  for (const auto& inst : corpus) {
    ++stats.threads;
    stats.answers += inst.candidates.size();
    for (const auto& c : inst.candidates) answer_words += word_count(c);
    reference_words += word_count(inst.reference);
  }
  if (stats.threads > 0) {
    stats.answers_per_thread = static_cast<double>(stats.answers) / static_cast<double>(stats.threads);
    stats.words_per_reference = static_cast<double>(reference_words) / static_cast<double>(stats.threads);
  }
  if (stats.answers > 0)
    stats.words_per_answer = static_cast<double>(answer_words) / static_cast<double>(stats.answers);
  return stats;
}

void write_stats(const CorpusStats& stats, std::ostream& out, bool include_rejections) {
  out << "threads: " << stats.threads << '\n'
      << "answers: " << stats.answers << '\n'
      << "answers_per_thread: " << fixed3(stats.answers_per_thread) << '\n'
      << "words_per_answer: " << fixed3(stats.words_per_answer) << '\n'
      << "words_per_reference: " << fixed3(stats.words_per_reference) << '\n';
  if (!include_rejections) return;
  out << "records_read: " << stats.records_read << '\n';
  for (RejectReason r : {RejectReason::TooFewAnswers, RejectReason::BestAnswerTooShort,
                         RejectReason::CandidatesTooShort, RejectReason::NotUniqueBest,
                         RejectReason::ReferenceUnsupported, RejectReason::NonEnglish,
                         RejectReason::Malformed}) {
    auto it = stats.rejected.find(r);
    out << "rejected_" << to_string(r) << ": " << (it == stats.rejected.end() ? 0 : it->second) << '\n';
  }
}

CorpusStats build_corpus(std::istream& xml, const FilterConfig& config, std::ostream& jsonl,
                         int jobs) {
  if (jobs < 1) throw std::invalid_argument("build_corpus: jobs must be at least 1");
  const std::size_t batch_size = 64 * static_cast<std::size_t>(jobs);
  L6Reader reader(xml);
  std::vector<SummaryInstance> accepted;
  CorpusStats stats;
  std::map<RejectReason, std::size_t> rejected;
  std::size_t read = 0;

  bool more = true;
  while (more) {
    std::vector<ParsedRecord> batch;
    while (batch.size() < batch_size) {
      auto rec = reader.next();
      if (!rec) {
        more = false;
        break;
      }
      batch.push_back(std::move(*rec));
    }
    read += batch.size();
    auto results = ordered_map(std::span<const ParsedRecord>(batch), jobs, [&](const ParsedRecord& r) {
      if (const auto* t = std::get_if<QuestionThread>(&r)) return process_thread(*t, config);
      return ThreadResult{FilterOutcome::reject(RejectReason::Malformed), std::nullopt};
    });
    for (auto& res : results) {
      if (!res.outcome.accepted) {
        ++rejected[*res.outcome.reason];
        continue;
      }
      jsonl << to_json_line(*res.instance) << '\n';
      accepted.push_back(std::move(*res.instance));
    }
  }
  stats = corpus_statistics(accepted);
  stats.records_read = read;
  stats.rejected = std::move(rejected);
  return stats;
}

std::string to_json_line(const SummaryInstance& instance) {
  nlohmann::ordered_json j;
  j["id"] = instance.id;
  j["question"] = instance.question;
  j["reference"] = instance.reference;
  j["candidates"] = instance.candidates;
  j["category"] = instance.category;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

SummaryInstance instance_from_json(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  auto str = [&](const char* key, bool required) -> std::string {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
      if (required) throw DataError(std::string("missing field '") + key + "'");
      return {};
    }
    if (!it->is_string()) throw DataError(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
  };
  if (!j.is_object()) throw DataError("corpus record must be a JSON object");
  SummaryInstance inst;
  inst.id = str("id", true);
  inst.question = str("question", false);
  inst.reference = str("reference", true);
  inst.category = str("category", false);
  auto it = j.find("candidates");
  if (it == j.end() || !it->is_array()) throw DataError("field 'candidates' must be an array");
  for (const auto& c : *it) {
    if (!c.is_string()) throw DataError("candidates must be strings");
    inst.candidates.push_back(c.get<std::string>());
  }
  return inst;
}

std::vector<SummaryInstance> read_corpus(std::istream& in) {
  std::vector<SummaryInstance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(instance_from_json(line));
    } catch (const DataError& e) {
      throw DataError("corpus line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace threadsum
