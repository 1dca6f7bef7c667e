#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "threadsum/opinio.hpp"

namespace threadsum {

void OpinioConfig::validate() const {
  tiling.validate();
  if (!(coherence_min >= 0.0 && coherence_min <= 1.0))
    throw std::invalid_argument("opinio: coherence_min must lie in [0,1]");
}

double cluster_coherence(std::span<const std::string> cluster, std::span<const std::string> all_tiles) {
  if (cluster.size() < 2) return 1.0;
  std::vector<TermBag> docs;
  for (const auto& t : all_tiles) docs.push_back(bag_of_words(std::string_view(t)));
  const IdfTable idf(docs);
  std::vector<TermVector> vecs;
  for (const auto& t : cluster) vecs.push_back(idf.vectorize(bag_of_words(std::string_view(t))));
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i + 1; j < vecs.size(); ++j) {
      total += cosine(vecs[i], vecs[j]);
      ++pairs;
    }
  return total / static_cast<double>(pairs);
}

OpinioPlan opinio_plan(const SummaryInstance& instance, const FactOpinionModel& model,
                       const SentimentLexicon& lexicon, const OpinioConfig& config) {
  config.validate();
  OpinioPlan plan;
  std::vector<std::vector<Sentence>> originals;
  for (std::size_t d = 0; d < instance.candidates.size(); ++d) {
    originals.push_back(analyze(instance.candidates[d], d));
    const auto resolved = resolve_document(originals.back());
    for (Tile& tile : tile_text(resolved, config.tiling)) {
      tile.kind = model.classify(tile.text);
      if (tile.kind == TileKind::Opinion) {
        std::vector<Sentiment> sentiments;
        for (std::size_t i = tile.first; i <= tile.last; ++i)
          sentiments.push_back(sentence_sentiment(lexicon, resolved[i]));
        const Sentiment s = tile_polarity(sentiments);
        tile.polarity = s.polarity;
        tile.strength = s.strength;
      }
      plan.tiles.push_back({d, std::move(tile)});
    }
  }

  // The question is scored as a single unit, whatever its sentence count.
  Sentence question;
  question.raw = instance.question;
  question.tokens = tokenize(instance.question);
  plan.question = sentence_sentiment(lexicon, question);

  std::vector<std::size_t> all(plan.tiles.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  if (plan.question.strength == Strength::Weak) {
    plan.branch = OpinioBranch::FactAndWeak;
    for (std::size_t i = 0; i < plan.tiles.size(); ++i) {
      const Tile& t = plan.tiles[i].tile;
      if (t.kind == TileKind::Fact || t.strength == Strength::Weak) plan.selected.push_back(i);
    }
  } else {
    plan.branch = OpinioBranch::AllTiles;
    std::size_t opinions = 0;
    std::size_t strong = 0;
    for (const auto& ot : plan.tiles) {
      if (ot.tile.kind != TileKind::Opinion) continue;
      ++opinions;
      if (ot.tile.strength == Strength::Strong) ++strong;
    }
    if (opinions > 0 && 2 * strong > opinions) {
      std::array<std::vector<std::size_t>, 3> clusters;
      for (std::size_t i = 0; i < plan.tiles.size(); ++i)
        clusters[static_cast<std::size_t>(plan.tiles[i].tile.polarity)].push_back(i);
      std::size_t top = 0;
      for (const auto& c : clusters) top = std::max(top, c.size());
      const auto leaders = std::count_if(clusters.begin(), clusters.end(),
                                         [&](const auto& c) { return c.size() == top; });
      if (leaders == 1) {
        const auto& lead = *std::find_if(clusters.begin(), clusters.end(),
                                         [&](const auto& c) { return c.size() == top; });
        std::vector<std::string> texts, lead_texts;
        for (const auto& ot : plan.tiles) texts.push_back(ot.tile.text);
        for (std::size_t i : lead) lead_texts.push_back(plan.tiles[i].tile.text);
        if (cluster_coherence(lead_texts, texts) >= config.coherence_min) {
          plan.branch = OpinioBranch::LeadingCluster;
          plan.selected = lead;
        }
      }
    }
    if (plan.branch == OpinioBranch::AllTiles) plan.selected = all;
  }
  if (plan.selected.empty()) {
    plan.branch = OpinioBranch::AllTiles;
    plan.selected = all;
  }

  for (std::size_t i : plan.selected) {
    const OpinioTile& ot = plan.tiles[i];
    for (std::size_t s = ot.tile.first; s <= ot.tile.last; ++s)
      plan.sentences.push_back(originals[ot.doc_index][s]);
  }
  return plan;
}

Summary opiniosumm(const SummaryInstance& instance, const FactOpinionModel& model,
                   const SentimentLexicon& lexicon, const OpinioConfig& opinio,
                   const SummaryConfig& summary) {
  const OpinioPlan plan = opinio_plan(instance, model, lexicon, opinio);
  return textrank(plan.sentences, summary);
}

}  // namespace threadsum
