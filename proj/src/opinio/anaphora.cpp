#include <optional>
#include <utility>

#include "threadsum/opinio.hpp"

namespace threadsum {
namespace {

bool capitalised(const Token& t) {
  const auto c = static_cast<unsigned char>(t.surface.empty() ? 0 : t.surface[0]);
  return c >= 'A' && c <= 'Z';
}

// Sentence-initial capitals are tagged conservatively (they might be any
// word), so a name opening a sentence is accepted here when it is not a
// known function word or common noun.
bool antecedent(const Token& t, bool sentence_initial) {
  if (t.kind != TokenKind::Word) return false;
  if (t.pos == Pos::ProperNoun) return true;
  if (!sentence_initial || !capitalised(t)) return false;
  const std::string lower = to_lower(t.surface);
  return !t.is_stopword && !is_pronoun(lower) && !is_question_word(lower) && !in_noun_lexicon(t.stem);
}

struct Antecedent {
  std::string surface;
  std::string stem;
};

}  // namespace

std::vector<Sentence> resolve_anaphora(std::span<const Sentence> paragraph) {
  std::vector<Sentence> out(paragraph.begin(), paragraph.end());
  std::optional<Antecedent> last;
  for (Sentence& s : out) {
    std::string raw;
    std::size_t copied = 0;
    std::ptrdiff_t shift = 0;
    bool first_word = true;
    for (Token& t : s.tokens) {
      const std::size_t original = t.char_offset;
      t.char_offset = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(original) + shift);
      if (t.kind != TokenKind::Word) continue;
      const bool initial = std::exchange(first_word, false);
      if (last && is_third_person_pronoun(to_lower(t.surface))) {
        raw.append(s.raw, copied, original - copied);
        raw.append(last->surface);
        copied = original + t.surface.size();
        shift += static_cast<std::ptrdiff_t>(last->surface.size()) -
                 static_cast<std::ptrdiff_t>(t.surface.size());
        t.surface = last->surface;
        t.stem = last->stem;
        t.pos = Pos::ProperNoun;
        t.is_stopword = is_stopword(to_lower(t.surface));
      } else if (antecedent(t, initial)) {
        last = Antecedent{t.surface, t.stem};
      }
    }
    if (copied > 0) {
      raw.append(s.raw, copied, std::string::npos);
      s.raw = std::move(raw);
    }
  }
  return out;
}

std::vector<Sentence> resolve_document(std::span<const Sentence> document) {
  std::vector<Sentence> out;
  out.reserve(document.size());
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= document.size(); ++i) {
    if (i < document.size() && !document[i].paragraph_initial) continue;
    auto resolved = resolve_anaphora(document.subspan(begin, i - begin));
    for (auto& s : resolved) out.push_back(std::move(s));
    begin = i;
  }
  return out;
}

}  // namespace threadsum
