#include "threadsum/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <iterator>
#include <stdexcept>
#include <tuple>

namespace threadsum {
namespace {

bool by_id(const Sentence& a, const Sentence& b) {
  return std::tie(a.doc_index, a.sent_index) < std::tie(b.doc_index, b.sent_index);
}

// Score rounded to 12 decimals so that sums that differ only by
// floating-point association order still tie.
long long tie_key(double score) { return std::llround(score * 1e12); }

std::vector<std::string> stems_of(const Sentence& s) {
  std::vector<std::string> out;
  for (const Token& t : s.tokens)
    if (t.kind == TokenKind::Word && !t.is_stopword) out.push_back(t.stem);
  return out;
}

std::set<std::string> distinct_stems(const Sentence& s) {
  auto v = stems_of(s);
  return {v.begin(), v.end()};
}

}  // namespace

void SummaryConfig::validate() const {
  if (budget_words <= 0) throw std::invalid_argument("budget_words must be positive");
  if (!(damping > 0.0 && damping < 1.0)) throw std::invalid_argument("damping must lie in (0,1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (max_iterations <= 0) throw std::invalid_argument("max_iterations must be positive");
  if (!(kl_smoothing > 0.0)) throw std::invalid_argument("kl_smoothing must be positive");
  if (lexrank_threshold < 0.0) throw std::invalid_argument("lexrank_threshold must be non-negative");
  if (min_sentence_words < 0) throw std::invalid_argument("min_sentence_words must be non-negative");
}

std::vector<double> power_iteration(const WeightMatrix& adjacency, double damping, double epsilon,
                                    int max_iterations) {
  if (adjacency.rows() != adjacency.cols())
    throw std::invalid_argument("power_iteration: adjacency matrix is not square");
  if (!(damping > 0.0 && damping < 1.0))
    throw std::invalid_argument("power_iteration: damping must lie in (0,1)");
  const std::size_t n = adjacency.rows();
  if (n == 0) return {};

  // Row-normalised transition matrix.
  WeightMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = adjacency(i, j);
      if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("power_iteration: negative or non-finite weight");
      row += w;
    }
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = row > 0.0 ? adjacency(i, j) / row : 1.0 / static_cast<double>(n);
  }

  const double teleport = (1.0 - damping) / static_cast<double>(n);
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int it = 0; it < max_iterations; ++it) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += v[i] * m(i, j);
      next[j] = teleport + damping * acc;
    }
    double change = 0.0;
    for (std::size_t j = 0; j < n; ++j) change += std::abs(next[j] - v[j]);
    v.swap(next);
    if (change < epsilon) break;
  }
  return v;
}

Summary select_until_budget(std::span<const Sentence> ranked, int budget_words) {
  Summary out;
  const auto budget = static_cast<std::size_t>(std::max(budget_words, 0));
  for (const Sentence& s : ranked) {
    if (out.word_count >= budget) break;
    const std::size_t remaining = budget - out.word_count;
    std::size_t words = s.word_count();
    std::string piece = s.raw;
    if (words > remaining) {
      std::size_t seen = 0;
      for (const Token& t : s.tokens) {
        if (t.kind != TokenKind::Word) continue;
        if (++seen == remaining) {
          piece = s.raw.substr(0, t.char_offset + t.surface.size());
          break;
        }
      }
      words = remaining;
    }
    if (!out.text.empty()) out.text += ' ';
    out.text += piece;
    out.word_count += words;
    out.picks.emplace_back(s.doc_index, s.sent_index);
  }
  return out;
}

std::vector<Sentence> candidate_sentences(std::span<const Sentence> sentences,
                                          const SummaryConfig& config) {
  std::vector<Sentence> out;
  for (const Sentence& s : sentences)
    if (s.word_count() >= static_cast<std::size_t>(config.min_sentence_words)) out.push_back(s);
  if (out.empty()) out.assign(sentences.begin(), sentences.end());
  std::stable_sort(out.begin(), out.end(), by_id);
  return out;
}

std::vector<Sentence> rank_by_score(std::span<const Sentence> sentences,
                                    std::span<const double> scores) {
  if (sentences.size() != scores.size())
    throw std::invalid_argument("rank_by_score: size mismatch");
  std::vector<std::size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const long long ka = tie_key(scores[a]);
    const long long kb = tie_key(scores[b]);
    if (ka != kb) return ka > kb;
    return by_id(sentences[a], sentences[b]);
  });
  std::vector<Sentence> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(sentences[i]);
  return out;
}

std::vector<Sentence> analyze_documents(std::span<const std::string> documents) {
  std::vector<Sentence> out;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    auto doc = analyze(documents[d], d);
    std::move(doc.begin(), doc.end(), std::back_inserter(out));
  }
  return out;
}

// ---------------------------------------------------------------- SumBasic

std::map<std::string, double> word_probabilities(std::span<const Sentence> sentences) {
  TermBag counts = bag_of_words(sentences);
  double total = 0.0;
  for (const auto& [w, n] : counts) total += n;
  std::map<std::string, double> p;
  for (const auto& [w, n] : counts) p[w] = static_cast<double>(n) / total;
  return p;
}

std::vector<SumBasicStep> sumbasic_trace(std::span<const Sentence> sentences,
                                         const SummaryConfig& config) {
  const auto cands = candidate_sentences(sentences, config);
  auto p = word_probabilities(cands);
  if (p.empty()) throw std::invalid_argument("sumbasic: no sentence has a content word");

  // Ties between equally probable words go to the one seen first.
  std::map<std::string, std::size_t> first_seen;
  std::vector<std::vector<std::string>> stems(cands.size());
  std::vector<std::set<std::string>> distinct(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    stems[i] = stems_of(cands[i]);
    distinct[i] = {stems[i].begin(), stems[i].end()};
    for (const auto& w : stems[i]) first_seen.emplace(w, first_seen.size());
  }

  std::vector<bool> picked(cands.size(), false);
  std::vector<SumBasicStep> steps;
  std::size_t words = 0;
  const auto budget = static_cast<std::size_t>(config.budget_words);
  while (words < budget) {
    // Highest-probability word that still has an unpicked sentence.
    const std::string* top = nullptr;
    for (const auto& [w, prob] : p) {
      bool available = false;
      for (std::size_t i = 0; i < cands.size() && !available; ++i)
        available = !picked[i] && distinct[i].contains(w);
      if (!available) continue;
      if (top == nullptr || tie_key(prob) > tie_key(p.at(*top)) ||
          (tie_key(prob) == tie_key(p.at(*top)) && first_seen.at(w) < first_seen.at(*top)))
        top = &w;
    }
    if (top == nullptr) break;

    std::size_t best = cands.size();
    double best_score = -1.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (picked[i] || !distinct[i].contains(*top)) continue;
      double score = 0.0;
      for (const auto& w : stems[i]) score += p.at(w);
      score /= static_cast<double>(stems[i].size());
      if (best == cands.size() || tie_key(score) > tie_key(best_score)) {
        best = i;
        best_score = score;
      }
    }

    SumBasicStep step;
    step.top_word = *top;
    picked[best] = true;
    words += cands[best].word_count();
    step.pick = {cands[best].doc_index, cands[best].sent_index};
    for (const auto& w : distinct[best]) p[w] = p[w] * p[w];
    step.probabilities_after = p;
    steps.push_back(std::move(step));
  }
  return steps;
}

namespace {

Summary assemble(std::span<const Sentence> cands, std::span<const SentenceId> picks, int budget) {
  std::vector<Sentence> ordered;
  for (const SentenceId& id : picks)
    for (const Sentence& s : cands)
      if (s.doc_index == id.first && s.sent_index == id.second) ordered.push_back(s);
  return select_until_budget(ordered, budget);
}

}  // namespace

Summary sumbasic(std::span<const Sentence> sentences, const SummaryConfig& config) {
  config.validate();
  const auto steps = sumbasic_trace(sentences, config);
  std::vector<SentenceId> picks;
  for (const auto& s : steps) picks.push_back(s.pick);
  return assemble(candidate_sentences(sentences, config), picks, config.budget_words);
}

// ------------------------------------------------------------------ KL-Sum

double kl_divergence(const std::map<std::string, double>& p,
                     const std::map<std::string, double>& q) {
  double kl = 0.0;
  for (const auto& [w, pw] : p) {
    if (pw <= 0.0) continue;
    auto it = q.find(w);
    if (it == q.end() || it->second <= 0.0) return std::numeric_limits<double>::infinity();
    kl += pw * std::log(pw / it->second);
  }
  return kl;
}

std::map<std::string, double> smoothed_distribution(const TermBag& bag, const TermBag& vocabulary,
                                                    double smoothing) {
  double total = 0.0;
  for (const auto& [w, n] : bag)
    if (vocabulary.contains(w)) total += n;
  const double denom = total + smoothing * static_cast<double>(vocabulary.size());
  std::map<std::string, double> q;
  for (const auto& [w, unused] : vocabulary) {
    auto it = bag.find(w);
    const double n = it == bag.end() ? 0.0 : static_cast<double>(it->second);
    q[w] = (n + smoothing) / denom;
  }
  return q;
}

Summary klsum_greedy(std::span<const Sentence> sentences, const SummaryConfig& config,
                     std::vector<double>* objective_trace) {
  config.validate();
  std::vector<Sentence> cands;
  for (const Sentence& s : candidate_sentences(sentences, config))
    if (!bag_of_words(s.tokens).empty()) cands.push_back(s);
  if (cands.empty()) throw std::invalid_argument("klsum: no sentence has a content word");

  const TermBag vocabulary = bag_of_words(cands);
  double total = 0.0;
  for (const auto& [w, n] : vocabulary) total += n;
  std::map<std::string, double> target;
  for (const auto& [w, n] : vocabulary) target[w] = static_cast<double>(n) / total;

  std::vector<TermBag> bags;
  for (const Sentence& s : cands) bags.push_back(bag_of_words(s.tokens));

  TermBag summary_bag;
  std::vector<bool> picked(cands.size(), false);
  std::vector<SentenceId> picks;
  std::size_t words = 0;
  const auto budget = static_cast<std::size_t>(config.budget_words);
  while (words < budget && picks.size() < cands.size()) {
    std::size_t best = cands.size();
    double best_kl = 0.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (picked[i]) continue;
      TermBag trial = summary_bag;
      for (const auto& [w, n] : bags[i]) trial[w] += n;
      const double kl =
          kl_divergence(target, smoothed_distribution(trial, vocabulary, config.kl_smoothing));
      if (best == cands.size() || tie_key(kl) < tie_key(best_kl)) {
        best = i;
        best_kl = kl;
      }
    }
    picked[best] = true;
    for (const auto& [w, n] : bags[best]) summary_bag[w] += n;
    picks.emplace_back(cands[best].doc_index, cands[best].sent_index);
    words += cands[best].word_count();
    if (objective_trace) objective_trace->push_back(best_kl);
  }
  return assemble(cands, picks, config.budget_words);
}

// ----------------------------------------------------------------- LexRank

std::vector<double> lexrank_scores(std::span<const Sentence> sentences, const SummaryConfig& config) {
  std::vector<TermBag> bags;
  for (const Sentence& s : sentences) bags.push_back(bag_of_words(s.tokens));
  const IdfTable idf(bags);
  std::vector<TermVector> vectors;
  for (const TermBag& b : bags) vectors.push_back(idf.vectorize(b));

  const std::size_t n = sentences.size();
  WeightMatrix adjacency(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = cosine(vectors[i], vectors[j]);
      if (c > 0.0 && c >= config.lexrank_threshold) adjacency(i, j) = adjacency(j, i) = 1.0;
    }
  return power_iteration(adjacency, config.damping, config.epsilon, config.max_iterations);
}

Summary lexrank(std::span<const Sentence> sentences, const SummaryConfig& config) {
  config.validate();
  const auto cands = candidate_sentences(sentences, config);
  const auto scores = lexrank_scores(cands, config);
  return select_until_budget(rank_by_score(cands, scores), config.budget_words);
}

// ---------------------------------------------------------------- TextRank

double textrank_similarity(const Sentence& a, const Sentence& b) {
  const auto la = a.word_count();
  const auto lb = b.word_count();
  if (la <= 1 || lb <= 1) return 0.0;
  const auto sa = distinct_stems(a);
  const auto sb = distinct_stems(b);
  std::size_t shared = 0;
  for (const auto& w : sa) shared += sb.contains(w) ? 1 : 0;
  return static_cast<double>(shared) /
         (std::log(static_cast<double>(la)) + std::log(static_cast<double>(lb)));
}

std::vector<double> textrank_scores(std::span<const Sentence> sentences, const SummaryConfig& config) {
  const std::size_t n = sentences.size();
  WeightMatrix weights(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      weights(i, j) = weights(j, i) = textrank_similarity(sentences[i], sentences[j]);
  return power_iteration(weights, config.damping, config.epsilon, config.max_iterations);
}

Summary textrank(std::span<const Sentence> sentences, const SummaryConfig& config) {
  config.validate();
  const auto cands = candidate_sentences(sentences, config);
  const auto scores = textrank_scores(cands, config);
  return select_until_budget(rank_by_score(cands, scores), config.budget_words);
}

}  // namespace threadsum
