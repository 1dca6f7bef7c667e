#pragma once

// Seeded generators for the synthetic test sets.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "threadsum/corpus.hpp"
#include "threadsum/opinio.hpp"

namespace synth {

/// Pseudo-words built from consonant-vowel syllables and ending in 'o', which
/// no suffix rule of the stemmer touches, so every word is its own stem.
inline std::vector<std::string> vocabulary(std::mt19937_64& rng, std::size_t size, std::string_view tag) {
  static constexpr char consonants[] = "bdfgklmnprstvz";
  static constexpr char vowels[] = "aeiu";
  std::uniform_int_distribution<int> c(0, sizeof consonants - 2);
  std::uniform_int_distribution<int> v(0, sizeof vowels - 2);
  std::vector<std::string> out;
  while (out.size() < size) {
    std::string w(tag);
    for (int s = 0; s < 2; ++s) {
      w += consonants[c(rng)];
      w += vowels[v(rng)];
    }
    w += consonants[c(rng)];
    w += 'o';
    bool dup = false;
    for (const auto& x : out) dup = dup || x == w;
    if (!dup) out.push_back(w);
  }
  return out;
}

struct TwoTopicDocument {
  std::string text;
  std::size_t junction = 0;  // stem position where topic B starts
};

/// Topic A for `len_a` stems then topic B for `len_b` stems, vocabularies
/// disjoint, each sentence 6-14 words drawn with replacement from a 25-word
/// topic vocabulary.
inline TwoTopicDocument two_topic_document(std::mt19937_64& rng, std::size_t len_a, std::size_t len_b) {
  const auto va = vocabulary(rng, 25, "ka");
  const auto vb = vocabulary(rng, 25, "zu");
  std::uniform_int_distribution<std::size_t> pick(0, 24);
  std::uniform_int_distribution<std::size_t> sentence_len(6, 14);
  TwoTopicDocument doc;
  auto emit = [&](const std::vector<std::string>& vocab, std::size_t total) {
    std::size_t done = 0;
    while (done < total) {
      const std::size_t n = std::min(sentence_len(rng), total - done);
      std::string s;
      for (std::size_t i = 0; i < n; ++i) {
        if (!s.empty()) s += ' ';
        s += vocab[pick(rng)];
      }
      s[0] = static_cast<char>(s[0] - 'a' + 'A');
      doc.text += s + ". ";
      done += n;
    }
  };
  emit(va, len_a);
  doc.junction = len_a;
  emit(vb, len_b);
  return doc;
}

/// Separable fact/opinion sentences: facts report numbers with past-tense
/// reporting verbs, opinions use first person and polar adjectives.
inline std::vector<threadsum::LabeledText> fact_opinion_set(std::mt19937_64& rng, std::size_t n) {
  static const std::vector<std::string> subjects = {
      "the council", "the company", "the survey", "the museum", "the station", "the agency",
      "the report", "the factory", "the school", "the hospital", "the airline", "the library"};
  static const std::vector<std::string> verbs = {"reported", "recorded", "announced", "measured",
                                                 "published", "counted", "listed", "confirmed"};
  static const std::vector<std::string> objects = {"visitors", "units", "passengers", "cases",
                                                   "books", "students", "flights", "tonnes"};
  static const std::vector<std::string> openers = {"I think", "I feel", "I believe", "Honestly I find",
                                                   "In my opinion", "I really think"};
  static const std::vector<std::string> things = {"this phone", "the new album", "that film",
                                                  "the food there", "his latest book", "this game",
                                                  "the service", "the design"};
  static const std::vector<std::string> adjectives = {
      "amazing", "terrible", "wonderful", "awful", "brilliant", "horrible", "fantastic",
      "pathetic", "gorgeous", "ugly", "superb", "useless"};
  auto any = [&](const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  std::uniform_int_distribution<int> number(2, 9999);
  std::uniform_int_distribution<int> year(1990, 2020);
  std::vector<threadsum::LabeledText> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      std::string s = any(subjects) + " " + any(verbs) + " " + std::to_string(number(rng)) + " " +
                      any(objects) + " in " + std::to_string(year(rng)) + ".";
      s[0] = 'T';
      out.push_back({s, threadsum::TileKind::Fact});
    } else {
      out.push_back({any(openers) + " " + any(things) + " is " + any(adjectives) + " and I " +
                         (i % 4 == 1 ? "love" : "hate") + " it.",
                     threadsum::TileKind::Opinion});
    }
  }
  return out;
}

/// Ten instances whose references are neutral facts; each thread mixes
/// factual answers (restating the reference) with strongly polar distractor
/// answers that share vocabulary among themselves.
inline std::vector<threadsum::SummaryInstance> adversarial_corpus() {
  struct Topic {
    std::string name, question;
    std::vector<std::string> facts;
  };
  const std::vector<Topic> topics = {
      {"kettle", "How does an electric kettle work?",
       {"An electric kettle heats water with a metal element in the base.",
        "A thermostat switches the element off when the water reaches boiling point.",
        "Limescale builds up on the element in areas with hard water.",
        "Descaling with citric acid removes the deposits in about an hour."}},
      {"bridge", "How are suspension bridges built?",
       {"Suspension bridges hang the deck from vertical cables called hangers.",
        "The hangers attach to main cables draped between two tall towers.",
        "The main cables are anchored in massive concrete blocks at each end.",
        "Engineers spin the main cables from thousands of thin steel wires."}},
      {"vaccine", "How do vaccines train the immune system?",
       {"Vaccines expose the immune system to a harmless piece of a pathogen.",
        "White blood cells produce antibodies that recognise that specific piece.",
        "Memory cells remain in the body for years after the first exposure.",
        "A later infection triggers a faster response from those memory cells."}},
      {"tides", "What causes ocean tides?",
       {"Tides are caused mainly by the gravitational pull of the moon.",
        "The sun adds a smaller pull that strengthens or weakens the tides.",
        "Spring tides happen when the sun and moon line up at new moon.",
        "Most coasts see two high tides and two low tides every day."}},
      {"compost", "How does composting work?",
       {"Compost forms when microbes break down kitchen scraps and garden waste.",
        "The heap needs a mix of green nitrogen material and brown carbon material.",
        "Turning the heap adds oxygen and speeds up the decomposition.",
        "Finished compost is dark and crumbly and smells like forest soil."}},
      {"solar", "How do solar panels make electricity?",
       {"Solar panels contain silicon cells that release electrons in sunlight.",
        "The moving electrons form a direct current inside each cell.",
        "An inverter converts the direct current into alternating current for the house.",
        "Panels facing south at a steep angle collect the most energy in winter."}},
      {"bees", "How do bees make honey?",
       {"Worker bees collect nectar from flowers and store it in a honey stomach.",
        "Back at the hive the nectar is passed between bees and mixed with enzymes.",
        "Bees fan their wings to evaporate water from the nectar in open cells.",
        "The cells are sealed with wax once the honey is thick enough."}},
      {"glass", "How is glass made?",
       {"Glass is made by melting sand, soda ash and limestone in a furnace.",
        "The furnace reaches temperatures above fifteen hundred degrees.",
        "Float glass is produced by pouring molten glass onto a bath of tin.",
        "The sheet cools slowly in an annealing oven to remove internal stress."}},
      {"radar", "How does weather radar work?",
       {"Weather radar sends out pulses of microwave energy from a rotating dish.",
        "Raindrops and hail reflect part of the energy back to the antenna.",
        "The delay of each echo gives the distance to the precipitation.",
        "The strength of the echo indicates how heavy the rain is falling."}},
      {"yeast", "Why does bread dough rise?",
       {"Bread rises because yeast ferments sugars in the flour.",
        "Fermentation releases carbon dioxide gas into the dough.",
        "Gluten strands trap the gas bubbles and the dough expands.",
        "Baking kills the yeast and sets the structure of the loaf."}},
  };
  const std::vector<std::string> rants = {
      "I absolutely love my {t} and I think it is the best, most amazing {t} ever made.",
      "Honestly I hate this {t}, it is terrible, awful and the worst {t} I have ever seen.",
      "I think the {t} is amazing, brilliant and wonderful and I love it so much.",
      "My {t} is horrible and useless, I hate it and I think it is a total scam."};
  std::vector<threadsum::SummaryInstance> out;
  for (std::size_t k = 0; k < topics.size(); ++k) {
    const Topic& t = topics[k];
    threadsum::SummaryInstance inst;
    inst.id = "adv-" + t.name;
    inst.question = t.question;
    inst.category = "Science";
    for (const auto& f : t.facts) {
      if (!inst.reference.empty()) inst.reference += ' ';
      inst.reference += f;
    }
    inst.candidates.push_back(t.facts[0] + " " + t.facts[1]);
    for (std::size_t r = 0; r < rants.size(); ++r) {
      std::string s = rants[r];
      for (auto pos = s.find("{t}"); pos != std::string::npos; pos = s.find("{t}"))
        s.replace(pos, 3, t.name);
      inst.candidates.push_back(s + " " + s);
    }
    inst.candidates.push_back(t.facts[2] + " " + t.facts[3]);
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace synth
