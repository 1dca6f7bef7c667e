#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "threadsum/corpus.hpp"
#include "threadsum/error.hpp"

using namespace threadsum;

namespace {

std::string words(std::size_t n, const std::string& w = "lorem") {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::vector<ParsedRecord> parse(const std::string& xml) {
  std::istringstream in(xml);
  return parse_l6(in);
}

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(THREADSUM_TEST_DATA) + "/" + name, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

QuestionThread sized_thread(std::size_t answers, std::size_t best_words, std::size_t answer_words) {
  QuestionThread t;
  t.id = "t";
  t.subject = "Question?";
  t.best_answer = words(best_words, "best");
  for (std::size_t i = 0; i < answers; ++i) t.answers.push_back(words(answer_words, "other"));
  t.language = "en-us";
  return t;
}

constexpr const char* kThreeRecords = R"(<?xml version="1.0" encoding="UTF-8"?>
<ystfeed>
<vespaadd><document type="wisdom"><uri>1</uri><subject>First?</subject><content>Body</content>
<bestanswer>Best one.&lt;br /&gt;Line two.</bestanswer>
<nbestanswers><answer_item>Best one.&lt;br /&gt;Line two.</answer_item><answer_item>Other one.</answer_item></nbestanswers>
<maincat>Home</maincat><subcat>Garden</subcat><language>en-us</language><date>1</date></document></vespaadd>
<vespaadd><document type="wisdom"><uri>2</uri><subject>Second?</subject><nbestanswers><answer_item>x</answer_item></nbestanswers></document></vespaadd>
<vespaadd><document type="wisdom"><uri>3</uri><subject>Third?</subject><bestanswer>B &amp; C</bestanswer><qlang>fr</qlang></document></vespaadd>
</ystfeed>
)";

}  // namespace

TEST(L6Reader, ParsesRecordsAndSkipsMalformed) {
  const auto records = parse(kThreeRecords);
  ASSERT_EQ(records.size(), 3u);
  const auto& first = std::get<QuestionThread>(records[0]);
  EXPECT_EQ(first.id, "1");
  EXPECT_EQ(first.subject, "First?");
  EXPECT_EQ(first.content, "Body");
  EXPECT_EQ(first.best_answer, "Best one.\nLine two.");
  EXPECT_EQ(first.answers, std::vector<std::string>{"Other one."});
  EXPECT_EQ(first.maincat, "Home");
  EXPECT_EQ(first.subcat, "Garden");
  EXPECT_EQ(first.language, "en-us");
  const auto& bad = std::get<MalformedRecord>(records[1]);
  EXPECT_EQ(bad.id, "2");
  const auto& third = std::get<QuestionThread>(records[2]);
  EXPECT_EQ(third.best_answer, "B & C");
  EXPECT_EQ(third.language, "fr");
}

TEST(L6Reader, PullInterfaceMatchesParse) {
  std::istringstream in(kThreeRecords);
  L6Reader reader(in);
  std::size_t n = 0;
  while (reader.next()) ++n;
  EXPECT_EQ(n, 3u);
  EXPECT_FALSE(reader.next());
}

TEST(L6Reader, WithoutEnclosingRoot) {
  const auto records = parse(
      "<vespaadd><document><uri>a</uri><subject>S</subject><bestanswer>B</bestanswer></document></vespaadd>\n"
      "<vespaadd><document><uri>b</uri><subject>S</subject><bestanswer>B</bestanswer></document></vespaadd>\n");
  EXPECT_EQ(records.size(), 2u);
}

TEST(L6Reader, EmptyInput) { EXPECT_TRUE(parse("").empty()); }

TEST(L6Reader, BrokenXmlIsDataError) {
  EXPECT_THROW(parse("<ystfeed><vespaadd><document><uri>1</uri></vespaadd>"), DataError);
}

TEST(L6Reader, IpodThread) {
  const auto records = parse(fixture("ipod_thread.xml"));
  ASSERT_EQ(records.size(), 1u);
  const auto& t = std::get<QuestionThread>(records[0]);
  EXPECT_EQ(t.subject, "Why should I buy a IPOD?");
  EXPECT_EQ(t.answers.size(), 6u);
  EXPECT_EQ(t.maincat, "Consumer Electronics");
}

TEST(Filter, Thresholds) {
  EXPECT_TRUE(filter_thread(sized_thread(5, 100, 40), FilterConfig{}).accepted);
  EXPECT_EQ(*filter_thread(sized_thread(4, 100, 60), FilterConfig{}).reason, RejectReason::TooFewAnswers);
  EXPECT_EQ(*filter_thread(sized_thread(5, 99, 60), FilterConfig{}).reason, RejectReason::BestAnswerTooShort);
  EXPECT_EQ(*filter_thread(sized_thread(5, 100, 39), FilterConfig{}).reason,
            RejectReason::CandidatesTooShort);
  auto french = sized_thread(5, 100, 40);
  french.language = "fr";
  EXPECT_EQ(*filter_thread(french, FilterConfig{}).reason, RejectReason::NonEnglish);
}

TEST(Filter, FirstFailureWins) {
  EXPECT_EQ(*filter_thread(sized_thread(1, 10, 1), FilterConfig{}).reason, RejectReason::TooFewAnswers);
}

TEST(Reference, Priority) {
  const auto s = analyze("How did Steve and Paul buy the phone from Apple?");
  ASSERT_EQ(s.size(), 1u);
  // paragraph start 1 + three proper nouns + one common noun + question word
  EXPECT_DOUBLE_EQ(sentence_priority(s[0]), 1 + 3 + 0.25 + 1);
  const auto later = analyze("First one. Just do it.");
  EXPECT_DOUBLE_EQ(sentence_priority(later[1]), 0.0);
}

TEST(Reference, ShortAnswerVerbatim) {
  EXPECT_EQ(build_reference("Short answer.  Really short.", 100), "Short answer.  Really short.");
}

TEST(Reference, PrefersHighPrioritySentences) {
  const std::string best = words(6, "plain") + ". Why does Apple sell iPods? " + words(5, "filler") + ".";
  EXPECT_EQ(build_reference(best, 5), "Why does Apple sell iPods?");
  EXPECT_EQ(build_reference(best, 8), "plain plain plain plain plain plain. Why does");
}

TEST(Reference, IpodContract) {
  const auto records = parse(fixture("ipod_thread.xml"));
  const auto& t = std::get<QuestionThread>(records[0]);
  const std::string ref = build_reference(t.best_answer, 100);
  EXPECT_EQ(word_count(ref), 100u);
  EXPECT_TRUE(oracle::ordered_subsequence(split_sentences(ref), split_sentences(t.best_answer)));
  EXPECT_NE(ref.find("Other MP3 players come with software"), std::string::npos);
  EXPECT_NE(ref.find("If it dies within the first year"), std::string::npos);
}

TEST(Reference, ContractOnRandomAnswers) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> len(3, 25);
  std::uniform_int_distribution<int> count(5, 20);
  for (int trial = 0; trial < 50; ++trial) {
    std::string best;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) best += (i % 4 == 0 ? "Why " : "Tom ") + words(len(rng), "word") + ". ";
    const std::string ref = build_reference(best, 100);
    if (word_count(best) >= 100) EXPECT_EQ(word_count(ref), 100u);
    EXPECT_TRUE(oracle::ordered_subsequence(split_sentences(ref), split_sentences(best)));
  }
}

TEST(Correlation, Examples) {
  QuestionThread t;
  t.best_answer = "cat dog";
  t.answers = {"cat", "dog"};
  const auto scores = cumulative_correlation(t);
  ASSERT_EQ(scores.size(), 3u);
  EXPECT_NEAR(scores[0].score, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(scores[1].score, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(scores[2].score, std::sqrt(0.5), 1e-12);
  EXPECT_TRUE(validate_unique_best(t));

  t.answers = {"cat dog", "fish"};
  EXPECT_FALSE(validate_unique_best(t));
}

TEST(Support, Example) {
  const std::vector<std::string> cands = {"cats eat fish daily", "birds sing"};
  const auto support = reference_support("Cats eat fish. Dogs chase cars.", cands);
  ASSERT_EQ(support.size(), 2u);
  const double a = std::log(1.5), b = std::log(3.0);
  EXPECT_NEAR(support[0], std::sqrt(3.0) * a / std::sqrt(3 * a * a + b * b), 1e-12);
  EXPECT_EQ(support[1], 0.0);
  EXPECT_FALSE(check_reference_support("Cats eat fish. Dogs chase cars.", cands, 0.5, 0));
  EXPECT_TRUE(check_reference_support("Cats eat fish. Dogs chase cars.", cands, 0.5, 1));
}

TEST(Pipeline, FixtureDecisions) {
  const std::map<std::string, std::optional<RejectReason>> expected = {
      {"q-tomato", std::nullopt},
      {"q-laptop", RejectReason::TooFewAnswers},
      {"q-guitar", std::nullopt},
      {"q-coffee", RejectReason::BestAnswerTooShort},
      {"q-battery", std::nullopt},
      {"q-houseplants", RejectReason::CandidatesTooShort},
      {"q-sourdough", std::nullopt},
      {"q-photo", RejectReason::NotUniqueBest},
      {"q-marathon", std::nullopt},
      {"q-bike", RejectReason::ReferenceUnsupported},
      {"q-budget", std::nullopt},
      {"q-puppy", std::nullopt},
  };
  for (const auto& r : parse(fixture("filter_fixture.xml"))) {
    const auto& t = std::get<QuestionThread>(r);
    const auto result = process_thread(t, FilterConfig{});
    EXPECT_EQ(result.outcome.reason, expected.at(t.id)) << t.id;
    EXPECT_EQ(result.instance.has_value(), result.outcome.accepted) << t.id;
    if (result.instance) {
      EXPECT_EQ(result.instance->candidates.size(), t.answers.size());
      EXPECT_EQ(result.instance->category, t.maincat);
    }
  }
}

TEST(Pipeline, IpodRejectedAsNotUniqueBest) {
  const auto records = parse(fixture("ipod_thread.xml"));
  const auto& t = std::get<QuestionThread>(records[0]);
  EXPECT_EQ(process_thread(t, FilterConfig{}).outcome.reason, RejectReason::NotUniqueBest);
}

TEST(Corpus, JsonRoundTrip) {
  SummaryInstance inst;
  inst.id = "q\"1";
  inst.question = "Why?\nBecause \\ \"quotes\" and caf\xc3\xa9";
  inst.reference = "Ref.";
  inst.candidates = {"a", "b\tc"};
  inst.category = "Home";
  const std::string line = to_json_line(inst);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const auto back = instance_from_json(line);
  EXPECT_EQ(back.id, inst.id);
  EXPECT_EQ(back.question, inst.question);
  EXPECT_EQ(back.reference, inst.reference);
  EXPECT_EQ(back.candidates, inst.candidates);
  EXPECT_EQ(back.category, inst.category);
}

TEST(Corpus, BadLineIsDataError) {
  std::istringstream in("{\"id\":\"x\"}\nnot json\n");
  EXPECT_THROW(read_corpus(in), DataError);
}

TEST(Corpus, BuildIsIndependentOfJobs) {
  const std::string xml = fixture("filter_fixture.xml");
  std::string baseline;
  for (int jobs : {1, 2, 8}) {
    std::istringstream in(xml);
    std::ostringstream out;
    const auto stats = build_corpus(in, FilterConfig{}, out, jobs);
    EXPECT_EQ(stats.threads, 7u);
    EXPECT_EQ(stats.records_read, 12u);
    if (jobs == 1) baseline = out.str();
    else EXPECT_EQ(out.str(), baseline);
  }
}

TEST(Corpus, EmptyInputStats) {
  std::istringstream in("");
  std::ostringstream out;
  const auto stats = build_corpus(in, FilterConfig{}, out, 1);
  EXPECT_EQ(stats.threads, 0u);
  EXPECT_TRUE(out.str().empty());
  std::ostringstream report;
  write_stats(stats, report);
  EXPECT_EQ(report.str(),
            "threads: 0\nanswers: 0\nanswers_per_thread: 0.000\nwords_per_answer: 0.000\n"
            "words_per_reference: 0.000\n");
}

TEST(Corpus, StatisticsMatchInstances) {
  SummaryInstance a;
  a.reference = words(4);
  a.candidates = {words(2), words(6)};
  SummaryInstance b;
  b.reference = words(2);
  b.candidates = {words(4)};
  const std::vector<SummaryInstance> corpus = {a, b};
  const auto stats = corpus_statistics(corpus);
  EXPECT_EQ(stats.threads, 2u);
  EXPECT_EQ(stats.answers, 3u);
  EXPECT_DOUBLE_EQ(stats.answers_per_thread, 1.5);
  EXPECT_DOUBLE_EQ(stats.words_per_answer, 4.0);
  EXPECT_DOUBLE_EQ(stats.words_per_reference, 3.0);
}
