#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace threadsum {

enum class TokenKind { Word, Number, Punct };

enum class Pos { ProperNoun, CommonNoun, Pronoun, QuestionWord, Other };

struct Token {
  std::string surface;
  std::string stem;  // empty unless kind == Word
  TokenKind kind = TokenKind::Punct;
  bool is_stopword = false;
  Pos pos = Pos::Other;
  std::size_t char_offset = 0;
};

/// One extraction unit. Token offsets are relative to `raw`.
struct Sentence {
  std::vector<Token> tokens;
  std::string raw;
  std::size_t doc_index = 0;
  std::size_t sent_index = 0;
  bool paragraph_initial = false;

  std::size_t word_count() const;
};

std::size_t word_count(std::span<const Token> tokens);
std::size_t word_count(std::string_view text);

/// Splits on terminal punctuation (. ! ?) followed by whitespace, a closing
/// quote/bracket, end of text, or a glued capitalised word ("DRMed.On").
/// Abbreviations from a fixed guard list and decimal points never split.
/// Two or more consecutive newlines end a sentence and mark the next one
/// paragraph-initial; the first sentence of a text is paragraph-initial.
std::vector<Sentence> split_sentences(std::string_view text, std::size_t doc_index = 0);

/// Word tokens are maximal alphabetic runs (bytes >= 0x80 count as letters so
/// UTF-8 words stay whole), Number tokens are digit runs with embedded
/// '.'/',' separators, every other non-space byte is a one-byte Punct token.
std::vector<Token> tokenize(std::string_view text);

/// Porter stemmer on a lowercased word.
std::string stem(std::string_view word);

std::string to_lower(std::string_view s);

bool is_stopword(std::string_view lowercase_word);
bool in_noun_lexicon(std::string_view stem);
bool is_pronoun(std::string_view lowercase_word);
bool is_third_person_pronoun(std::string_view lowercase_word);
bool is_question_word(std::string_view lowercase_word);

/// Pluggable part-of-speech tagger. Taggers see a whole document so that the
/// sentence-initial capitalisation rule can look at other sentences.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual void tag(std::span<Sentence> document) const = 0;
};

/// Rule-based tagger:
///  - QuestionWord / Pronoun from the fixed lists,
///  - ProperNoun for a capitalised word that is not sentence-initial, or is
///    sentence-initial but appears capitalised mid-sentence elsewhere in the
///    document,
///  - CommonNoun for a lowercase word whose stem is in the noun lexicon,
///  - Other for everything else (including all non-Word tokens).
class HeuristicTagger final : public PosTagger {
 public:
  void tag(std::span<Sentence> document) const override;
};

/// Tags a single sentence as its own document.
Sentence tag_pos(Sentence sentence);
void tag_document(std::span<Sentence> document);

/// Splits and tags a whole text.
std::vector<Sentence> analyze(std::string_view text, std::size_t doc_index = 0);

/// Sparse non-negative weights keyed by stem. Zero weights are never stored.
class TermVector {
 public:
  TermVector() = default;
  explicit TermVector(std::map<std::string, double> weights);

  const std::map<std::string, double>& weights() const { return weights_; }
  double norm() const { return norm_; }
  bool empty() const { return weights_.empty(); }
  double weight(const std::string& term) const;

  TermVector scaled(double k) const;

 private:
  std::map<std::string, double> weights_;
  double norm_ = 0.0;
};

/// Stem counts of non-stopword Word tokens.
using TermBag = std::map<std::string, int>;

TermBag bag_of_words(std::span<const Token> tokens);
TermBag bag_of_words(std::span<const Sentence> sentences);
TermBag bag_of_words(std::string_view text);

/// Document frequency table over a collection of bags.
class IdfTable {
 public:
  explicit IdfTable(std::span<const TermBag> documents);

  /// ln(N / df); terms unseen in the collection get 0.
  double idf(const std::string& term) const;
  std::size_t document_count() const { return n_; }

  /// tf(t) * idf(t) with raw counts; stopwords are already absent from bags.
  TermVector vectorize(const TermBag& bag) const;

 private:
  std::map<std::string, int> df_;
  std::size_t n_ = 0;
};

/// tf-idf with tf = raw count and idf = ln(N/df). Throws
/// std::invalid_argument when `documents` is empty or every bag is empty.
std::vector<TermVector> tfidf_vectors(std::span<const TermBag> documents);

/// dot(a,b) / (|a| |b|), 0 when either norm is 0. Symmetric bit-for-bit.
double cosine(const TermVector& a, const TermVector& b);

}  // namespace threadsum
