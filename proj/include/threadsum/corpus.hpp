#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "threadsum/textcore.hpp"

namespace threadsum {

struct QuestionThread {
  std::string id;
  std::string subject;
  std::string content;
  std::string best_answer;
  std::vector<std::string> answers;  // other answers; exact copies of best_answer dropped
  std::string maincat;
  std::string subcat;
  std::string language;
  std::string date;
};

struct SummaryInstance {
  std::string id;
  std::string question;
  std::string reference;
  std::vector<std::string> candidates;
  std::string category;
};

struct FilterConfig {
  int min_answers = 5;
  int min_best_answer_words = 100;
  int min_candidate_words = 200;
  int reference_words = 100;
  double support_threshold = 0.5;
  int max_unsupported_sentences = 2;
};

enum class RejectReason {
  TooFewAnswers,
  BestAnswerTooShort,
  CandidatesTooShort,
  NotUniqueBest,
  ReferenceUnsupported,
  NonEnglish,
  Malformed,
};

std::string_view to_string(RejectReason reason);

struct FilterOutcome {
  bool accepted = true;
  std::optional<RejectReason> reason;  // set exactly when !accepted

  static FilterOutcome accept() { return {}; }
  static FilterOutcome reject(RejectReason r) { return {false, r}; }
};

/// A document element that lacked a mandatory field.
struct MalformedRecord {
  std::string id;
  std::string message;
};

using ParsedRecord = std::variant<QuestionThread, MalformedRecord>;

/// Pull-style reader over a Yahoo! Answers L6 style XML stream
/// (vespaadd/document elements, with or without an enclosing root). Input is
/// consumed in fixed-size chunks, so memory stays bounded by the largest
/// record. Throws DataError when the XML itself is not well formed.
class L6Reader {
 public:
  explicit L6Reader(std::istream& in);
  ~L6Reader();
  L6Reader(const L6Reader&) = delete;
  L6Reader& operator=(const L6Reader&) = delete;

  /// Next record in input order, or nullopt at end of stream.
  std::optional<ParsedRecord> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Reads a whole stream; convenience for small inputs and tests.
std::vector<ParsedRecord> parse_l6(std::istream& in);

/// Length filters and the language check; first failure wins.
FilterOutcome filter_thread(const QuestionThread& thread, const FilterConfig& config);

/// 1 per proper noun + 0.25 per common noun + 1 if paragraph-initial
/// + 1 if any question word.
double sentence_priority(const Sentence& sentence);

/// Compresses a best answer to at most `budget_words` words: sentences are
/// taken by descending priority until the budget is reached, restored to
/// document order, and the result is cut after the budget-th word. Shorter
/// answers are returned verbatim.
std::string build_reference(std::string_view best_answer, int budget_words = 100);

struct AnswerScore {
  std::size_t index;  // 0 = best answer, i = answers[i-1]
  double score;
};

/// Sum of tf-idf cosines from each answer to every other answer, with idf
/// over {best answer} + answers.
std::vector<AnswerScore> cumulative_correlation(const QuestionThread& thread);

/// True iff the best answer has the strictly largest cumulative correlation.
bool validate_unique_best(const QuestionThread& thread);

/// Per reference sentence, the highest cosine to any candidate (idf over the
/// reference and the candidates).
std::vector<double> reference_support(std::string_view reference,
                                      std::span<const std::string> candidates);

/// False when more than `max_unsupported` reference sentences have no
/// candidate with cosine above `threshold`.
bool check_reference_support(std::string_view reference, std::span<const std::string> candidates,
                             double threshold = 0.5, int max_unsupported = 2);

/// Full per-thread pipeline: filter, reference, uniqueness, support. The
/// instance is set only when the outcome is Accepted.
struct ThreadResult {
  FilterOutcome outcome;
  std::optional<SummaryInstance> instance;
};

ThreadResult process_thread(const QuestionThread& thread, const FilterConfig& config);

struct CorpusStats {
  std::size_t records_read = 0;
  std::map<RejectReason, std::size_t> rejected;
  std::size_t threads = 0;
  std::size_t answers = 0;
  double answers_per_thread = 0.0;
  double words_per_answer = 0.0;
  double words_per_reference = 0.0;
};

/// Question-thread statistics over instances already in the corpus.
CorpusStats corpus_statistics(std::span<const SummaryInstance> corpus);

/// Plain-text key: value report in corpus-table order. Rejection counts are
/// appended when `include_rejections` is set.
void write_stats(const CorpusStats& stats, std::ostream& out, bool include_rejections = false);

/// Parse -> filter -> reference -> uniqueness -> support, writing one JSON
/// line per accepted thread in input order. `jobs` bounds worker threads;
/// output does not depend on it.
CorpusStats build_corpus(std::istream& xml, const FilterConfig& config, std::ostream& jsonl,
                         int jobs = 1);

std::string to_json_line(const SummaryInstance& instance);
SummaryInstance instance_from_json(std::string_view line);

/// Reads a JSON-lines corpus. Throws DataError naming the bad line.
std::vector<SummaryInstance> read_corpus(std::istream& in);

}  // namespace threadsum
