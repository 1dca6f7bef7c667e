#pragma once

// Reference computations used only by tests. They deliberately avoid the
// library code paths they check: n-grams are matched pairwise instead of
// through count maps, and stationary distributions are solved directly.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "threadsum/summarize.hpp"
#include "threadsum/textcore.hpp"

namespace oracle {

struct Rouge {
  double recall = 0.0;
  double precision = 0.0;
};

inline std::vector<std::vector<std::string>> ngrams(std::string_view text, int n) {
  std::vector<std::string> stems;
  for (const auto& t : threadsum::tokenize(text))
    if (t.kind == threadsum::TokenKind::Word) stems.push_back(t.stem);
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= stems.size(); ++i)
    out.emplace_back(stems.begin() + static_cast<std::ptrdiff_t>(i),
                     stems.begin() + static_cast<std::ptrdiff_t>(i) + n);
  return out;
}

/// Clipped overlap by pairing each reference n-gram with an unused identical
/// candidate n-gram.
inline Rouge rouge(std::string_view candidate, std::string_view reference, int n) {
  const auto ref = ngrams(reference, n);
  const auto cand = ngrams(candidate, n);
  std::vector<bool> used(cand.size(), false);
  std::size_t matched = 0;
  for (const auto& g : ref)
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (!used[j] && cand[j] == g) {
        used[j] = true;
        ++matched;
        break;
      }
  Rouge r;
  if (ref.empty()) return r;
  r.recall = static_cast<double>(matched) / static_cast<double>(ref.size());
  r.precision = cand.empty() ? 0.0 : static_cast<double>(matched) / static_cast<double>(cand.size());
  return r;
}

/// Solves (I - d M^T) v = (1 - d)/n by Gaussian elimination with partial
/// pivoting, M being the row-normalised adjacency (empty rows uniform).
inline std::vector<double> stationary(const std::vector<std::vector<double>>& adj, double d) {
  const std::size_t n = adj.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (double x : adj[i]) row += x;
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = row > 0.0 ? adj[i][j] / row : 1.0 / static_cast<double>(n);
  }
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - d * m[j][i];
    a[i][n] = (1.0 - d) / static_cast<double>(n);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    std::swap(a[c], a[pivot]);
    if (std::fabs(a[c][c]) < 1e-15) throw std::runtime_error("singular system");
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a[i][n] / a[i][i];
  return v;
}

inline threadsum::WeightMatrix to_matrix(const std::vector<std::vector<double>>& adj) {
  threadsum::WeightMatrix m(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (std::size_t j = 0; j < adj.size(); ++j) m(i, j) = adj[i][j];
  return m;
}

/// True when `needle` sentences (by raw text) occur in `hay` in order, the
/// last one allowed to be a word-prefix of its match.
inline bool ordered_subsequence(const std::vector<threadsum::Sentence>& needle,
                                const std::vector<threadsum::Sentence>& hay) {
  std::size_t h = 0;
  for (std::size_t i = 0; i < needle.size(); ++i) {
    const bool last = i + 1 == needle.size();
    bool found = false;
    for (; h < hay.size(); ++h) {
      const std::string& full = hay[h].raw;
      const std::string& part = needle[i].raw;
      if (full == part || (last && full.compare(0, part.size(), part) == 0)) {
        found = true;
        ++h;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace oracle
