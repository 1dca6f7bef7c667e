#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "threadsum/textcore.hpp"

namespace threadsum {

struct SummaryConfig {
  int budget_words = 100;
  double lexrank_threshold = 0.1;
  double damping = 0.85;
  double epsilon = 1e-6;
  int max_iterations = 100;
  double kl_smoothing = 1e-3;
  /// Sentences with fewer Word tokens are not extraction candidates.
  int min_sentence_words = 3;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

using SentenceId = std::pair<std::size_t, std::size_t>;  // (doc_index, sent_index)

struct Summary {
  std::vector<SentenceId> picks;
  std::string text;
  std::size_t word_count = 0;
};

/// Dense row-major square matrix of non-negative edge weights.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t n) : rows_(n), cols_(n), data_(n * n, 0.0) {}
  WeightMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// PageRank by power iteration. Rows of `adjacency` are normalised to
/// out-link probabilities (all-zero rows jump uniformly) and
///   v <- (1 - d)/n + d * M^T v
/// is iterated from the uniform vector until the L1 change drops below
/// `epsilon` or `max_iterations` is reached. Throws std::invalid_argument on
/// a non-square matrix, a negative entry, or damping outside (0,1).
std::vector<double> power_iteration(const WeightMatrix& adjacency, double damping,
                                    double epsilon, int max_iterations);

/// Appends sentences in the given order until the running word count reaches
/// the budget; the last sentence is cut after the word that fills it.
Summary select_until_budget(std::span<const Sentence> ranked, int budget_words);

/// Sentences eligible for extraction (enough words), falling back to all
/// sentences when none qualify.
std::vector<Sentence> candidate_sentences(std::span<const Sentence> sentences,
                                          const SummaryConfig& config);

/// Orders sentences by score (descending), ties by (doc_index, sent_index).
/// Scores equal to 12 decimal places count as ties.
std::vector<Sentence> rank_by_score(std::span<const Sentence> sentences,
                                    std::span<const double> scores);

/// One SumBasic selection step: the word whose probability drove the pick,
/// the picked sentence, and the distribution after the squaring update.
struct SumBasicStep {
  std::string top_word;
  SentenceId pick;
  std::map<std::string, double> probabilities_after;
};

std::map<std::string, double> word_probabilities(std::span<const Sentence> sentences);

/// Full SumBasic pick trace until the budget is covered or sentences run out.
std::vector<SumBasicStep> sumbasic_trace(std::span<const Sentence> sentences,
                                         const SummaryConfig& config);

Summary sumbasic(std::span<const Sentence> sentences, const SummaryConfig& config);

/// KL(p || q) over the support of p. Terms missing from q contribute +inf.
double kl_divergence(const std::map<std::string, double>& p,
                     const std::map<std::string, double>& q);

/// Additively smoothed unigram distribution of `bag` over `vocabulary`.
std::map<std::string, double> smoothed_distribution(const TermBag& bag,
                                                    const TermBag& vocabulary, double smoothing);

/// Greedy KL-Sum. When `objective_trace` is given it receives
/// KL(P || Q_summary) after each pick.
Summary klsum_greedy(std::span<const Sentence> sentences, const SummaryConfig& config,
                     std::vector<double>* objective_trace = nullptr);

/// Stationary LexRank scores over the thresholded binary cosine graph.
std::vector<double> lexrank_scores(std::span<const Sentence> sentences, const SummaryConfig& config);
Summary lexrank(std::span<const Sentence> sentences, const SummaryConfig& config);

/// |shared non-stop stems| / (ln|s_i| + ln|s_j|), |s| = Word token count;
/// 0 when either sentence has at most one word.
double textrank_similarity(const Sentence& a, const Sentence& b);
std::vector<double> textrank_scores(std::span<const Sentence> sentences, const SummaryConfig& config);
Summary textrank(std::span<const Sentence> sentences, const SummaryConfig& config);

/// Splits and tags each candidate document; doc_index is the position in
/// `documents`.
std::vector<Sentence> analyze_documents(std::span<const std::string> documents);

}  // namespace threadsum
