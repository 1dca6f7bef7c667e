#include "threadsum/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <tuple>

#include "threadsum/error.hpp"

namespace threadsum {
namespace {

std::vector<std::string> rouge_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(text))
    if (t.kind == TokenKind::Word) out.push_back(t.stem);
  return out;
}

double f_measure(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

}  // namespace

std::map<std::vector<std::string>, int> ngram_counts(std::string_view text, int n) {
  std::map<std::vector<std::string>, int> out;
  const auto toks = rouge_tokens(text);
  const auto len = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + len <= toks.size(); ++i)
    ++out[std::vector<std::string>(toks.begin() + static_cast<std::ptrdiff_t>(i),
                                   toks.begin() + static_cast<std::ptrdiff_t>(i + len))];
  return out;
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference, int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("rouge_n: n must be 1 or 2");
  RougeScore score;
  score.n = n;
  const auto ref = ngram_counts(reference, n);
  const auto cand = ngram_counts(candidate, n);
  long ref_total = 0;
  long cand_total = 0;
  long overlap = 0;
  for (const auto& [g, c] : ref) {
    ref_total += c;
    auto it = cand.find(g);
    if (it != cand.end()) overlap += std::min(c, it->second);
  }
  for (const auto& [g, c] : cand) cand_total += c;
  if (ref_total == 0) return score;
  score.recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
  score.precision = cand_total > 0 ? static_cast<double>(overlap) / static_cast<double>(cand_total) : 0.0;
  score.f1 = f_measure(score.precision, score.recall);
  return score;
}

EvalReport evaluate_corpus(std::span<const ReferenceRecord> corpus,
                           std::span<const SummaryRecord> summaries) {
  std::map<std::string, const std::string*> refs;
  for (const auto& r : corpus) refs[r.id] = &r.reference;

  EvalReport report;
  for (const auto& s : summaries) {
    auto it = refs.find(s.id);
    if (it == refs.end()) throw DataError("no reference for summary id '" + s.id + "'");
    report.per_instance.push_back(
        {s.id, s.algorithm, rouge_n(s.summary, *it->second, 1), rouge_n(s.summary, *it->second, 2)});
  }
  std::stable_sort(report.per_instance.begin(), report.per_instance.end(),
                   [](const EvalRow& a, const EvalRow& b) {
                     return std::tie(a.id, a.algorithm) < std::tie(b.id, b.algorithm);
                   });

  std::map<std::string, std::vector<const EvalRow*>> by_algo;
  for (const auto& row : report.per_instance) by_algo[row.algorithm].push_back(&row);
  for (const auto& [algo, rows] : by_algo) {
    EvalRow mean{"__mean__", algo, {1}, {2}};
    for (const EvalRow* r : rows) {
      mean.rouge1.recall += r->rouge1.recall;
      mean.rouge1.precision += r->rouge1.precision;
      mean.rouge1.f1 += r->rouge1.f1;
      mean.rouge2.recall += r->rouge2.recall;
      mean.rouge2.precision += r->rouge2.precision;
      mean.rouge2.f1 += r->rouge2.f1;
    }
    const auto k = static_cast<double>(rows.size());
    for (RougeScore* s : {&mean.rouge1, &mean.rouge2}) {
      s->recall /= k;
      s->precision /= k;
      s->f1 /= k;
    }
    report.aggregates.push_back(mean);
  }
  return report;
}

void write_report_tsv(const EvalReport& report, std::ostream& out) {
  out << "id\talgorithm\trouge1_r\trouge1_p\trouge1_f\trouge2_r\trouge2_p\trouge2_f\n";
  auto write = [&](const EvalRow& r) {
    out << r.id << '\t' << r.algorithm << '\t' << fmt(r.rouge1.recall) << '\t'
        << fmt(r.rouge1.precision) << '\t' << fmt(r.rouge1.f1) << '\t' << fmt(r.rouge2.recall)
        << '\t' << fmt(r.rouge2.precision) << '\t' << fmt(r.rouge2.f1) << '\n';
  };
  for (const auto& r : report.per_instance) write(r);
  for (const auto& r : report.aggregates) write(r);
}

UpperBound greedy_upper_bound(std::span<const Sentence> candidates, std::string_view reference,
                              int budget_words) {
  std::vector<Sentence> pool(candidates.begin(), candidates.end());
  std::stable_sort(pool.begin(), pool.end(), [](const Sentence& a, const Sentence& b) {
    return std::tie(a.doc_index, a.sent_index) < std::tie(b.doc_index, b.sent_index);
  });

  UpperBound out;
  std::vector<Sentence> chosen;
  std::vector<bool> used(pool.size(), false);
  double current = 0.0;
  const auto budget = static_cast<std::size_t>(budget_words);
  std::size_t words = 0;
  while (words < budget) {
    std::size_t best = pool.size();
    double best_recall = current;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      chosen.push_back(pool[i]);
      const double r = rouge_n(select_until_budget(chosen, budget_words).text, reference, 1).recall;
      chosen.pop_back();
      if (r <= current + 1e-12) continue;
      const bool better =
          best == pool.size() || r > best_recall + 1e-12 ||
          (r >= best_recall - 1e-12 && pool[i].word_count() < pool[best].word_count());
      if (better) {
        best = i;
        best_recall = r;
      }
    }
    if (best == pool.size()) break;
    used[best] = true;
    chosen.push_back(pool[best]);
    words += pool[best].word_count();
    current = best_recall;
    out.recall_trace.push_back(current);
  }
  out.summary = select_until_budget(chosen, budget_words);
  out.rouge1 = rouge_n(out.summary.text, reference, 1);
  return out;
}

}  // namespace threadsum
