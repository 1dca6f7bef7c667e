#include <cmath>
#include <limits>
#include <stdexcept>

#include "threadsum/opinio.hpp"

namespace threadsum {
namespace {

std::vector<std::string> stem_stream(std::span<const Sentence> sentences,
                                     std::vector<std::size_t>* sentence_ends) {
  std::vector<std::string> stems;
  for (const Sentence& s : sentences) {
    for (const Token& t : s.tokens)
      if (t.kind == TokenKind::Word && !t.is_stopword) stems.push_back(t.stem);
    if (sentence_ends) sentence_ends->push_back(stems.size());
  }
  return stems;
}

std::string join_raw(std::span<const Sentence> sentences, std::size_t first, std::size_t last) {
  std::string text;
  for (std::size_t i = first; i <= last; ++i) {
    if (!text.empty()) text += ' ';
    text += sentences[i].raw;
  }
  return text;
}

}  // namespace

void TilingConfig::validate() const {
  if (w <= 0) throw std::invalid_argument("tiling: w must be positive");
  if (!std::isfinite(k)) throw std::invalid_argument("tiling: k must be finite");
}

std::vector<TokenSequence> token_sequences(std::span<const Sentence> sentences, int w) {
  if (w <= 0) throw std::invalid_argument("token_sequences: w must be positive");
  const auto stems = stem_stream(sentences, nullptr);
  const auto width = static_cast<std::size_t>(w);
  std::vector<TokenSequence> out;
  for (std::size_t start = 0; start < stems.size(); start += width) {
    const std::size_t end = std::min(stems.size(), start + width);
    out.push_back({std::vector<std::string>(stems.begin() + static_cast<std::ptrdiff_t>(start),
                                            stems.begin() + static_cast<std::ptrdiff_t>(end)),
                   start});
  }
  return out;
}

double gap_score(const TokenSequence& left, const TokenSequence& right,
                 const std::set<std::string>& seen_before, int w) {
  if (w <= 0) throw std::invalid_argument("gap_score: w must be positive");
  std::set<std::string> seen = seen_before;
  std::size_t fresh = 0;
  for (const auto& s : left.stems)
    if (seen.insert(s).second) ++fresh;
  for (const auto& s : right.stems)
    if (seen.insert(s).second) ++fresh;
  return static_cast<double>(fresh) / (2.0 * w);
}

std::vector<double> gap_profile(std::span<const Sentence> sentences, int w) {
  const auto seqs = token_sequences(sentences, w);
  std::vector<double> scores;
  std::set<std::string> seen;
  for (std::size_t i = 0; i + 1 < seqs.size(); ++i) {
    scores.push_back(gap_score(seqs[i], seqs[i + 1], seen, w));
    seen.insert(seqs[i].stems.begin(), seqs[i].stems.end());
  }
  return scores;
}

std::vector<Tile> tile_text(std::span<const Sentence> sentences, const TilingConfig& config) {
  config.validate();
  std::vector<Tile> tiles;
  if (sentences.empty()) return tiles;

  std::vector<std::size_t> ends;
  const auto stems = stem_stream(sentences, &ends);
  const auto width = static_cast<std::size_t>(config.w);
  std::vector<std::size_t> cuts;  // index of the last sentence of each non-final tile

  if (stems.size() >= 2 * width) {
    const auto scores = gap_profile(sentences, config.w);
    double mean = 0.0;
    for (double s : scores) mean += s;
    mean /= static_cast<double>(scores.size());
    double var = 0.0;
    for (double s : scores) var += (s - mean) * (s - mean);
    const double sd = std::sqrt(var / static_cast<double>(scores.size()));

    if (sd >= 1e-9) {
      const double threshold = mean + config.k * sd;
      const double lowest = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < scores.size(); ++i) {
        const double prev = i > 0 ? scores[i - 1] : lowest;
        const double next = i + 1 < scores.size() ? scores[i + 1] : lowest;
        if (scores[i] <= threshold || scores[i] < prev || scores[i] <= next) continue;
        // A shift of topic shows up as a run of new stems starting with the
        // left sequence of the peak gap, so the cut goes before that sequence.
        const std::size_t position = i * width;
        if (position == 0) continue;
        std::size_t best = 0;
        for (std::size_t j = 1; j < ends.size(); ++j) {
          const auto dist = [&](std::size_t k) {
            return ends[k] > position ? ends[k] - position : position - ends[k];
          };
          if (dist(j) < dist(best)) best = j;
        }
        if (best + 1 >= sentences.size()) continue;
        if (cuts.empty() || cuts.back() < best) cuts.push_back(best);
      }
    }
  }

  std::size_t first = 0;
  cuts.push_back(sentences.size() - 1);
  for (std::size_t last : cuts) {
    Tile t;
    t.first = first;
    t.last = last;
    t.text = join_raw(sentences, first, last);
    tiles.push_back(std::move(t));
    first = last + 1;
  }
  return tiles;
}

}  // namespace threadsum
