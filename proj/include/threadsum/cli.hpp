#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "threadsum/corpus.hpp"
#include "threadsum/opinio.hpp"
#include "threadsum/summarize.hpp"

namespace threadsum::cli {

/// Every tunable the pipeline exposes, addressable as flat key=value pairs.
struct RunConfig {
  FilterConfig filter;
  SummaryConfig summary;
  OpinioConfig opinio;
  ClassifierSpec classifier;
  std::uint64_t seed = 0;
};

/// Sets one key. Throws std::invalid_argument on an unknown key or a value
/// that does not parse.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Reads `key=value` lines ('#' comments and blank lines allowed).
void apply_config_text(RunConfig& config, std::string_view text);

/// All keys with their effective values, sorted by key; doubles are printed
/// with enough digits to read back exactly.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

/// Throws std::invalid_argument when any section is out of range.
void validate(const RunConfig& config);

inline constexpr std::string_view kAlgorithms[] = {"lexrank", "textrank", "sumbasic", "klsum",
                                                   "opiniosumm"};

/// Command-line entry point. Returns 0 on success, 1 on usage errors and 2 on
/// data errors; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace threadsum::cli
