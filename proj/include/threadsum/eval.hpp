#pragma once

#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "threadsum/summarize.hpp"

namespace threadsum {

struct RougeScore {
  int n = 1;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

/// n-gram keys over stemmed Word tokens (stopwords kept), with counts.
std::map<std::vector<std::string>, int> ngram_counts(std::string_view text, int n);

/// Clipped n-gram overlap. Throws std::invalid_argument unless n is 1 or 2;
/// all fields are 0 when the reference has no n-grams.
RougeScore rouge_n(std::string_view candidate, std::string_view reference, int n);

struct ReferenceRecord {
  std::string id;
  std::string reference;
};

struct SummaryRecord {
  std::string id;
  std::string algorithm;
  std::string summary;
};

struct EvalRow {
  std::string id;
  std::string algorithm;
  RougeScore rouge1;
  RougeScore rouge2;
};

struct EvalReport {
  std::vector<EvalRow> per_instance;  // sorted by (id, algorithm)
  std::vector<EvalRow> aggregates;    // id "__mean__", one per algorithm, sorted
};

/// Scores every summary against its instance reference. Throws DataError
/// when a summary id has no reference.
EvalReport evaluate_corpus(std::span<const ReferenceRecord> corpus,
                           std::span<const SummaryRecord> summaries);

/// TSV with header
/// id algorithm rouge1_r rouge1_p rouge1_f rouge2_r rouge2_p rouge2_f,
/// per-instance rows followed by the `__mean__` rows.
void write_report_tsv(const EvalReport& report, std::ostream& out);

struct UpperBound {
  Summary summary;
  RougeScore rouge1;
  std::vector<double> recall_trace;  // ROUGE-1 recall after each greedy pick
};

/// Greedy extractive oracle: repeatedly adds the sentence giving the highest
/// ROUGE-1 recall of the budget-truncated summary (ties: fewer words, then
/// (doc_index, sent_index)); stops when nothing improves recall or the budget
/// is used up.
UpperBound greedy_upper_bound(std::span<const Sentence> candidates, std::string_view reference,
                              int budget_words);

}  // namespace threadsum
