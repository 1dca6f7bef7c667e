#include "threadsum/textcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "threadsum/resources.hpp"

namespace threadsum {
namespace {

bool ascii_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool ascii_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool ascii_lower(unsigned char c) { return c >= 'a' && c <= 'z'; }
bool ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// One decoded UTF-8 code point. Invalid sequences decode as a single byte
// with cp = 0xFFFD.
struct CodePoint {
  char32_t cp;
  std::size_t length;
};

CodePoint decode_utf8(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {0xFFFD, 1};
  }
  if (i + len > s.size()) return {0xFFFD, 1};
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

bool unicode_space(char32_t cp) {
  return cp == 0xA0 || (cp >= 0x2000 && cp <= 0x200B) || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000;
}

bool unicode_letter(char32_t cp) {
  if (cp < 0x80) return ascii_alpha(static_cast<unsigned char>(cp));
  if (cp == 0xFFFD) return false;
  if (cp <= 0xBF || cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE10 && cp <= 0xFE6F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF20) return false;
  return true;
}

std::unordered_set<std::string> load_set(std::string_view text) {
  std::unordered_set<std::string> out;
  for (auto& line : resources::lines(text)) out.insert(to_lower(line));
  return out;
}

const std::unordered_set<std::string>& stopword_set() {
  static const auto set = load_set(resources::stopwords);
  return set;
}

const std::unordered_set<std::string>& noun_set() {
  static const auto set = load_set(resources::noun_lexicon);
  return set;
}

constexpr std::array<std::string_view, 31> kPronouns{
    "i",    "me",      "my",      "mine",   "myself", "you",        "your",  "yours",
    "yourself", "yourselves", "he", "him",  "his",    "himself",    "she",   "her",
    "hers", "herself", "it",      "its",    "itself", "we",         "us",    "our",
    "ours", "ourselves", "they",  "them",   "their",  "theirs",     "themselves",
};

constexpr std::array<std::string_view, 16> kThirdPerson{
    "he", "him",    "his",  "himself", "she",  "her",    "hers",   "herself",
    "it", "its",    "itself", "they",  "them", "their",  "theirs", "themselves",
};

constexpr std::array<std::string_view, 7> kQuestionWords{
    "who", "what", "when", "where", "why", "how", "which",
};

// Lowercased words (without the final period) that never end a sentence.
constexpr std::array<std::string_view, 37> kAbbreviations{
    "mr",  "mrs", "ms",  "dr",  "prof", "sr",  "jr",   "st",  "vs",  "etc",
    "inc", "ltd", "co",  "corp", "jan", "feb", "mar",  "apr", "jun", "jul",
    "aug", "sep", "sept", "oct", "nov", "dec", "approx", "fig", "mt",
    "ft",  "e.g", "i.e", "u.s", "a.m", "p.m", "cf",   "al",
};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& list, std::string_view word) {
  return std::find(list.begin(), list.end(), word) != list.end();
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}'; }

// Text from `end` backwards over letters and periods, e.g. "e.g" before the
// final period of "e.g.".
std::string word_before(std::string_view text, std::size_t end) {
  std::size_t begin = end;
  while (begin > 0) {
    const auto c = static_cast<unsigned char>(text[begin - 1]);
    if (!ascii_alpha(c) && c != '.') break;
    --begin;
  }
  return std::string(text.substr(begin, end - begin));
}

bool guarded_period(std::string_view text, std::size_t period) {
  std::string word = word_before(text, period);
  if (word.empty()) return false;
  if (word.size() == 1 && ascii_upper(static_cast<unsigned char>(word[0]))) return true;
  return contains(kAbbreviations, to_lower(word));
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && ascii_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && ascii_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

namespace resources {

std::vector<std::string> lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    if (!line.empty() && line.front() != '#') out.emplace_back(line);
    pos = nl + 1;
  }
  return out;
}

}  // namespace resources

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (ascii_upper(static_cast<unsigned char>(c))) c = static_cast<char>(c - 'A' + 'a');
  return out;
}

bool is_stopword(std::string_view lowercase_word) {
  return stopword_set().contains(std::string(lowercase_word));
}
bool in_noun_lexicon(std::string_view s) { return noun_set().contains(std::string(s)); }
bool is_pronoun(std::string_view w) { return contains(kPronouns, w); }
bool is_third_person_pronoun(std::string_view w) { return contains(kThirdPerson, w); }
bool is_question_word(std::string_view w) { return contains(kQuestionWords, w); }

std::size_t Sentence::word_count() const { return threadsum::word_count(tokens); }

std::size_t word_count(std::span<const Token> tokens) {
  return static_cast<std::size_t>(std::count_if(
      tokens.begin(), tokens.end(), [](const Token& t) { return t.kind == TokenKind::Word; }));
}

std::size_t word_count(std::string_view text) { return word_count(tokenize(text)); }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const CodePoint first = decode_utf8(text, i);
    if ((first.cp < 0x80 && ascii_space(static_cast<unsigned char>(first.cp))) ||
        unicode_space(first.cp)) {
      i += first.length;
      continue;
    }
    Token tok;
    tok.char_offset = i;
    std::size_t j = i;
    if (unicode_letter(first.cp)) {
      while (j < text.size()) {
        const CodePoint c = decode_utf8(text, j);
        if (!unicode_letter(c.cp)) break;
        j += c.length;
      }
      tok.kind = TokenKind::Word;
      tok.surface = std::string(text.substr(i, j - i));
      const std::string lower = to_lower(tok.surface);
      tok.stem = stem(lower);
      tok.is_stopword = is_stopword(lower);
    } else if (ascii_digit(static_cast<unsigned char>(text[i]))) {
      while (j < text.size()) {
        const auto c = static_cast<unsigned char>(text[j]);
        if (ascii_digit(c)) {
          ++j;
        } else if ((c == '.' || c == ',') && j + 1 < text.size() &&
                   ascii_digit(static_cast<unsigned char>(text[j + 1]))) {
          j += 2;
        } else {
          break;
        }
      }
      tok.kind = TokenKind::Number;
      tok.surface = std::string(text.substr(i, j - i));
    } else {
      j = i + first.length;
      tok.kind = TokenKind::Punct;
      tok.surface = std::string(text.substr(i, j - i));
    }
    out.push_back(std::move(tok));
    i = j;
  }
  return out;
}

std::vector<Sentence> split_sentences(std::string_view text, std::size_t doc_index) {
  std::vector<Sentence> out;
  bool next_paragraph_initial = true;

  auto emit = [&](std::size_t begin, std::size_t end) {
    std::string_view raw = trim(text.substr(begin, end - begin));
    if (raw.empty()) return;
    Sentence s;
    s.raw = std::string(raw);
    s.tokens = tokenize(s.raw);
    s.doc_index = doc_index;
    s.sent_index = out.size();
    s.paragraph_initial = next_paragraph_initial;
    next_paragraph_initial = false;
    out.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (ascii_space(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      int newlines = 0;
      while (j < text.size() && ascii_space(static_cast<unsigned char>(text[j]))) {
        if (text[j] == '\n') ++newlines;
        ++j;
      }
      if (newlines >= 2) {
        emit(start, i);
        if (!out.empty()) next_paragraph_initial = true;
        start = j;
      }
      i = j;
      continue;
    }
    if (!is_terminal(c)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_terminal(text[j])) ++j;
    const bool single_period = (j - i == 1 && c == '.');
    while (j < text.size() && is_closer(text[j])) ++j;

    bool split = false;
    if (j >= text.size()) {
      split = true;
    } else {
      const auto next = static_cast<unsigned char>(text[j]);
      if (ascii_space(next)) {
        split = !(single_period && guarded_period(text, i));
      } else if (j == i + 1 && ascii_alpha(next)) {
        // Glued sentence boundary such as "DRMed.On" or "shouldnt!there".
        if (c != '.') {
          split = true;
        } else if (ascii_upper(next) && i >= 2 &&
                   ascii_lower(static_cast<unsigned char>(text[i - 1])) &&
                   ascii_lower(static_cast<unsigned char>(text[i - 2]))) {
          split = !guarded_period(text, i);
        }
      }
    }
    if (split) {
      emit(start, j);
      start = j;
    }
    i = j;
  }
  emit(start, text.size());
  return out;
}

void HeuristicTagger::tag(std::span<Sentence> document) const {
  // Lowercased surfaces seen capitalised somewhere other than sentence start.
  std::unordered_set<std::string> mid_capitalised;
  std::vector<std::vector<bool>> initial(document.size());
  for (std::size_t s = 0; s < document.size(); ++s) {
    auto& toks = document[s].tokens;
    initial[s].assign(toks.size(), false);
    bool seen_word = false;
    for (std::size_t t = 0; t < toks.size(); ++t) {
      if (toks[t].kind != TokenKind::Word) continue;
      if (!seen_word) {
        initial[s][t] = true;
        seen_word = true;
      } else if (ascii_upper(static_cast<unsigned char>(toks[t].surface[0]))) {
        mid_capitalised.insert(to_lower(toks[t].surface));
      }
    }
  }

  for (std::size_t s = 0; s < document.size(); ++s) {
    auto& toks = document[s].tokens;
    for (std::size_t t = 0; t < toks.size(); ++t) {
      Token& tok = toks[t];
      tok.pos = Pos::Other;
      if (tok.kind != TokenKind::Word) continue;
      const std::string lower = to_lower(tok.surface);
      const bool capitalised = ascii_upper(static_cast<unsigned char>(tok.surface[0]));
      if (is_question_word(lower)) {
        tok.pos = Pos::QuestionWord;
      } else if (is_pronoun(lower)) {
        tok.pos = Pos::Pronoun;
      } else if (capitalised && (!initial[s][t] || mid_capitalised.contains(lower))) {
        tok.pos = Pos::ProperNoun;
      } else if ((!capitalised || initial[s][t]) && in_noun_lexicon(tok.stem)) {
        tok.pos = Pos::CommonNoun;
      }
    }
  }
}

void tag_document(std::span<Sentence> document) { HeuristicTagger{}.tag(document); }

Sentence tag_pos(Sentence sentence) {
  tag_document(std::span<Sentence>(&sentence, 1));
  return sentence;
}

std::vector<Sentence> analyze(std::string_view text, std::size_t doc_index) {
  auto sentences = split_sentences(text, doc_index);
  tag_document(sentences);
  return sentences;
}

TermVector::TermVector(std::map<std::string, double> weights) {
  for (auto it = weights.begin(); it != weights.end();) {
    if (it->second < 0.0) throw std::invalid_argument("TermVector: negative weight");
    if (it->second == 0.0) {
      it = weights.erase(it);
    } else {
      ++it;
    }
  }
  weights_ = std::move(weights);
  double sq = 0.0;
  for (const auto& [term, w] : weights_) sq += w * w;
  norm_ = std::sqrt(sq);
}

double TermVector::weight(const std::string& term) const {
  auto it = weights_.find(term);
  return it == weights_.end() ? 0.0 : it->second;
}

TermVector TermVector::scaled(double k) const {
  auto w = weights_;
  for (auto& [term, v] : w) v *= k;
  return TermVector(std::move(w));
}

TermBag bag_of_words(std::span<const Token> tokens) {
  TermBag bag;
  for (const Token& t : tokens)
    if (t.kind == TokenKind::Word && !t.is_stopword) ++bag[t.stem];
  return bag;
}

TermBag bag_of_words(std::span<const Sentence> sentences) {
  TermBag bag;
  for (const Sentence& s : sentences)
    for (const auto& [term, n] : bag_of_words(s.tokens)) bag[term] += n;
  return bag;
}

TermBag bag_of_words(std::string_view text) { return bag_of_words(tokenize(text)); }

IdfTable::IdfTable(std::span<const TermBag> documents) : n_(documents.size()) {
  for (const TermBag& bag : documents)
    for (const auto& [term, count] : bag)
      if (count > 0) ++df_[term];
}

double IdfTable::idf(const std::string& term) const {
  auto it = df_.find(term);
  if (it == df_.end()) return 0.0;
  return std::log(static_cast<double>(n_) / static_cast<double>(it->second));
}

TermVector IdfTable::vectorize(const TermBag& bag) const {
  std::map<std::string, double> w;
  for (const auto& [term, count] : bag) {
    const double v = static_cast<double>(count) * idf(term);
    if (v > 0.0) w.emplace(term, v);
  }
  return TermVector(std::move(w));
}

std::vector<TermVector> tfidf_vectors(std::span<const TermBag> documents) {
  if (documents.empty()) throw std::invalid_argument("tfidf_vectors: no documents");
  const bool all_empty = std::all_of(documents.begin(), documents.end(),
                                     [](const TermBag& b) { return b.empty(); });
  if (all_empty) throw std::invalid_argument("tfidf_vectors: all documents empty after stopword removal");
  IdfTable idf(documents);
  std::vector<TermVector> out;
  out.reserve(documents.size());
  for (const TermBag& bag : documents) out.push_back(idf.vectorize(bag));
  return out;
}

double cosine(const TermVector& a, const TermVector& b) {
  if (a.norm() == 0.0 || b.norm() == 0.0) return 0.0;
  // Merge walk in key order: the same products are summed in the same order
  // whichever argument comes first.
  double dot = 0.0;
  auto ia = a.weights().begin();
  auto ib = b.weights().begin();
  while (ia != a.weights().end() && ib != b.weights().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  const double c = dot / (a.norm() * b.norm());
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace threadsum
