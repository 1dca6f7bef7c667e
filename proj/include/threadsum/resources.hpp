#pragma once

#include <string>
#include <string_view>
#include <vector>

// Resource files compiled into the library (see resources/).
namespace threadsum::resources {

extern const std::string_view stopwords;
extern const std::string_view noun_lexicon;
extern const std::string_view sentiment_lexicon;
extern const std::string_view fact_opinion_training;

/// Non-empty, non-comment ('#') lines with surrounding whitespace trimmed.
std::vector<std::string> lines(std::string_view text);

}  // namespace threadsum::resources
