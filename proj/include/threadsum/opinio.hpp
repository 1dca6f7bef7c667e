#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "threadsum/corpus.hpp"
#include "threadsum/summarize.hpp"
#include "threadsum/textcore.hpp"

namespace threadsum {

// ---- anaphora ---------------------------------------------------------------

/// Replaces third-person pronouns with the nearest preceding proper noun in
/// the paragraph. Pronouns without an antecedent are left alone. Token
/// offsets and `raw` are rewritten to match.
std::vector<Sentence> resolve_anaphora(std::span<const Sentence> paragraph);

/// Applies resolve_anaphora to each paragraph (runs starting at a
/// paragraph-initial sentence).
std::vector<Sentence> resolve_document(std::span<const Sentence> document);

// ---- tiling -----------------------------------------------------------------

struct TokenSequence {
  std::vector<std::string> stems;  // non-stop stems, at most w
  std::size_t start_offset = 0;    // position in the document's stem stream
};

/// Cuts the non-stop stem stream of a document into consecutive blocks of w.
std::vector<TokenSequence> token_sequences(std::span<const Sentence> sentences, int w);

/// (new stems in left + new stems in right) / 2w, where "new" means absent
/// from everything before that sequence. Each distinct stem counts once.
double gap_score(const TokenSequence& left, const TokenSequence& right,
                 const std::set<std::string>& seen_before, int w);

enum class TileKind { Fact, Opinion };
enum class Polarity { Positive, Negative, Neutral };
enum class Strength { Strong, Weak };

std::string_view to_string(TileKind kind);
std::string_view to_string(Polarity polarity);
std::string_view to_string(Strength strength);

struct Tile {
  std::size_t first = 0;  // inclusive sentence indices into the tiled document
  std::size_t last = 0;
  std::string text;
  TileKind kind = TileKind::Fact;
  Polarity polarity = Polarity::Neutral;
  Strength strength = Strength::Weak;
};

struct TilingConfig {
  int w = 20;
  double k = 0.5;  // boundary threshold = mean + k * stddev of gap scores

  void validate() const;
};

/// Gap scores between consecutive token sequences; entry i scores the gap
/// between sequences i and i+1.
std::vector<double> gap_profile(std::span<const Sentence> sentences, int w);

/// Splits a document into tiles at vocabulary-introduction peaks above the
/// threshold, snapped to sentence ends. Documents with fewer than 2w stems
/// form one tile.
std::vector<Tile> tile_text(std::span<const Sentence> sentences, const TilingConfig& config = {});

// ---- fact / opinion classifier ----------------------------------------------

struct LabeledText {
  std::string text;
  TileKind label;
};

/// Parses `fact|opinion<TAB>text` lines; blank and '#' lines are skipped.
std::vector<LabeledText> read_labeled(std::istream& in);

struct ClassifierSpec {
  std::size_t dim = std::size_t{1} << 18;
  std::uint64_t seed = 0;
  std::vector<int> orders{1, 2, 3};
  int epochs = 20;
  double eta0 = 0.1;
  double lambda = 1e-4;

  void validate() const;
};

using SparseFeatures = std::vector<std::pair<std::size_t, double>>;  // sorted by index

/// Hashed n-gram stem counts plus part-of-speech counts, L2-normalised.
SparseFeatures extract_features(std::string_view text, const ClassifierSpec& spec);

class FactOpinionModel {
 public:
  FactOpinionModel() = default;
  FactOpinionModel(ClassifierSpec spec, std::vector<double> weights, double bias);

  /// Hinge-loss SGD with L2 decay; Opinion is the positive class. Throws
  /// std::invalid_argument unless both labels are present.
  static FactOpinionModel train(std::span<const LabeledText> examples, const ClassifierSpec& spec);

  double score(std::string_view text) const;
  /// Fact when score <= 0.
  TileKind classify(std::string_view text) const;

  void save(std::ostream& out) const;
  /// Throws DataError on a malformed or version-mismatched model.
  static FactOpinionModel load(std::istream& in);

  const ClassifierSpec& spec() const { return spec_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

 private:
  ClassifierSpec spec_;
  std::vector<double> weights_;
  double bias_ = 0.0;
};

/// Model trained on the bundled labelled sentences.
FactOpinionModel bundled_model(std::uint64_t seed = 0);

// ---- sentiment --------------------------------------------------------------

struct SentimentEntry {
  double pos = 0.0;
  double neg = 0.0;
};

class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  /// Throws std::invalid_argument when a score is outside [0,1].
  explicit SentimentLexicon(std::map<std::string, SentimentEntry> entries);

  /// Parses `stem<TAB>pos<TAB>neg` lines. Throws DataError on bad lines.
  static SentimentLexicon parse(std::string_view text);
  static SentimentLexicon load(std::istream& in);
  static SentimentLexicon bundled();

  const SentimentEntry* find(const std::string& stem) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, SentimentEntry> entries_;
};

struct Sentiment {
  Polarity polarity = Polarity::Neutral;
  Strength strength = Strength::Weak;

  friend bool operator==(const Sentiment&, const Sentiment&) = default;
};

/// Mean pos and neg over lexicon-matched stems; the larger class wins and is
/// Strong when above 0.4, otherwise the sentence is (Neutral, Weak).
Sentiment sentence_sentiment(const SentimentLexicon& lexicon, const Sentence& sentence);

/// Majority polarity (tie -> Neutral); Strong iff more than half of the
/// sentences are Strong with that polarity.
Sentiment tile_polarity(std::span<const Sentiment> sentences);

// ---- OpinioSumm -------------------------------------------------------------

struct OpinioConfig {
  TilingConfig tiling;
  double coherence_min = 0.2;

  void validate() const;
};

enum class OpinioBranch { FactAndWeak, LeadingCluster, AllTiles };

struct OpinioTile {
  std::size_t doc_index = 0;
  Tile tile;
};

struct OpinioPlan {
  Sentiment question;
  std::vector<OpinioTile> tiles;      // document order
  std::vector<std::size_t> selected;  // indices into tiles, ascending
  OpinioBranch branch = OpinioBranch::AllTiles;
  std::vector<Sentence> sentences;    // original sentences of the selected tiles
};

/// Mean pairwise cosine of the tiles' tf-idf vectors (idf over `all_tiles`);
/// 1 for a single tile.
double cluster_coherence(std::span<const std::string> cluster, std::span<const std::string> all_tiles);

OpinioPlan opinio_plan(const SummaryInstance& instance, const FactOpinionModel& model,
                       const SentimentLexicon& lexicon, const OpinioConfig& config);

Summary opiniosumm(const SummaryInstance& instance, const FactOpinionModel& model,
                   const SentimentLexicon& lexicon, const OpinioConfig& opinio,
                   const SummaryConfig& summary);

}  // namespace threadsum
