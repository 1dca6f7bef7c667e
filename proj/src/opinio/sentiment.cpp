#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "threadsum/error.hpp"
#include "threadsum/opinio.hpp"
#include "threadsum/resources.hpp"

namespace threadsum {
namespace {

constexpr double kStrongAbove = 0.4;

bool unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

std::string_view to_string(TileKind kind) { return kind == TileKind::Fact ? "fact" : "opinion"; }

std::string_view to_string(Polarity polarity) {
  switch (polarity) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Neutral: return "neutral";
  }
  return "neutral";
}

std::string_view to_string(Strength strength) { return strength == Strength::Strong ? "strong" : "weak"; }

SentimentLexicon::SentimentLexicon(std::map<std::string, SentimentEntry> entries)
    : entries_(std::move(entries)) {
  for (const auto& [stem, e] : entries_)
    if (!unit_interval(e.pos) || !unit_interval(e.neg))
      throw std::invalid_argument("sentiment lexicon: scores for '" + stem + "' outside [0,1]");
}

SentimentLexicon SentimentLexicon::parse(std::string_view text) {
  std::map<std::string, SentimentEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string stem, pos, neg;
    if (!std::getline(fields, stem, '\t') || !std::getline(fields, pos, '\t') ||
        !std::getline(fields, neg, '\t'))
      throw DataError("sentiment lexicon line " + std::to_string(lineno) + ": expected stem, pos, neg");
    char* end_pos = nullptr;
    char* end_neg = nullptr;
    const double p = std::strtod(pos.c_str(), &end_pos);
    const double n = std::strtod(neg.c_str(), &end_neg);
    if (pos.empty() || neg.empty() || *end_pos != '\0' || *end_neg != '\0')
      throw DataError("sentiment lexicon line " + std::to_string(lineno) + ": bad score");
    if (!unit_interval(p) || !unit_interval(n))
      throw DataError("sentiment lexicon line " + std::to_string(lineno) + ": score outside [0,1]");
    entries[stem] = {p, n};
  }
  return SentimentLexicon(std::move(entries));
}

SentimentLexicon SentimentLexicon::load(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

SentimentLexicon SentimentLexicon::bundled() { return parse(resources::sentiment_lexicon); }

const SentimentEntry* SentimentLexicon::find(const std::string& stem) const {
  auto it = entries_.find(stem);
  return it == entries_.end() ? nullptr : &it->second;
}

Sentiment sentence_sentiment(const SentimentLexicon& lexicon, const Sentence& sentence) {
  double pos = 0.0;
  double neg = 0.0;
  std::size_t matched = 0;
  for (const Token& t : sentence.tokens) {
    if (t.kind != TokenKind::Word) continue;
    if (const SentimentEntry* e = lexicon.find(t.stem)) {
      pos += e->pos;
      neg += e->neg;
      ++matched;
    }
  }
  if (matched == 0) return {};
  pos /= static_cast<double>(matched);
  neg /= static_cast<double>(matched);
  if (pos > neg && pos > kStrongAbove) return {Polarity::Positive, Strength::Strong};
  if (neg > pos && neg > kStrongAbove) return {Polarity::Negative, Strength::Strong};
  return {};
}

Sentiment tile_polarity(std::span<const Sentiment> sentences) {
  std::size_t count[3] = {0, 0, 0};
  std::size_t strong[3] = {0, 0, 0};
  for (const Sentiment& s : sentences) {
    const auto p = static_cast<std::size_t>(s.polarity);
    ++count[p];
    if (s.strength == Strength::Strong) ++strong[p];
  }
  const std::size_t top = std::max({count[0], count[1], count[2]});
  if (top == 0) return {};
  std::size_t winners = 0;
  std::size_t winner = 0;
  for (std::size_t p = 0; p < 3; ++p)
    if (count[p] == top) {
      ++winners;
      winner = p;
    }
  if (winners > 1) return {};
  const Strength strength = 2 * strong[winner] > sentences.size() ? Strength::Strong : Strength::Weak;
  return {static_cast<Polarity>(winner), strength};
}

}  // namespace threadsum
