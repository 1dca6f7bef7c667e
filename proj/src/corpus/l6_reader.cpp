#include <expat.h>

#include <array>
#include <deque>
#include <string>
#include <string_view>

#include "threadsum/corpus.hpp"
#include "threadsum/error.hpp"

namespace threadsum {
namespace {

constexpr std::size_t kChunk = 1 << 16;
constexpr std::string_view kOpenRoot = "<threadsum-stream>";
constexpr std::string_view kCloseRoot = "</threadsum-stream>";

enum class Field { None, Uri, Subject, Content, BestAnswer, Answer, MainCat, SubCat, Language, QLang, Date };

Field field_for(std::string_view name, bool in_nbest) {
  if (in_nbest) return name == "answer_item" ? Field::Answer : Field::None;
  if (name == "uri") return Field::Uri;
  if (name == "subject") return Field::Subject;
  if (name == "content") return Field::Content;
  if (name == "bestanswer") return Field::BestAnswer;
  if (name == "maincat") return Field::MainCat;
  if (name == "subcat") return Field::SubCat;
  if (name == "language") return Field::Language;
  if (name == "qlang") return Field::QLang;
  if (name == "date") return Field::Date;
  return Field::None;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

// L6 bodies carry escaped HTML line breaks; after entity decoding they show
// up as literal tags.
std::string clean_text(std::string s) {
  replace_all(s, "<br />", "\n");
  replace_all(s, "<br/>", "\n");
  replace_all(s, "<br>", "\n");
  replace_all(s, "\r\n", "\n");
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

struct L6Reader::Impl {
  std::istream& in;
  XML_Parser parser = nullptr;
  std::deque<ParsedRecord> ready;
  bool started = false;
  bool finished = false;
  std::size_t ordinal = 0;

  // Per-document state.
  bool in_document = false;
  int document_depth = 0;
  int depth = 0;
  bool in_nbest = false;
  Field field = Field::None;
  int field_depth = 0;
  std::string text;
  QuestionThread current;
  bool has_subject = false;
  bool has_best = false;
  std::string qlang;

  explicit Impl(std::istream& s) : in(s) {
    parser = XML_ParserCreate("UTF-8");
    XML_SetUserData(parser, this);
    XML_SetElementHandler(parser, &Impl::on_start, &Impl::on_end);
    XML_SetCharacterDataHandler(parser, &Impl::on_text);
  }
  ~Impl() { XML_ParserFree(parser); }

  static void on_start(void* self, const XML_Char* name, const XML_Char**) {
    static_cast<Impl*>(self)->start(name);
  }
  static void on_end(void* self, const XML_Char* name) { static_cast<Impl*>(self)->end(name); }
  static void on_text(void* self, const XML_Char* s, int len) {
    auto* impl = static_cast<Impl*>(self);
    if (impl->field != Field::None) impl->text.append(s, static_cast<std::size_t>(len));
  }

  void start(std::string_view name) {
    ++depth;
    if (!in_document) {
      if (name == "document") {
        in_document = true;
        document_depth = depth;
        current = QuestionThread{};
        has_subject = has_best = false;
        qlang.clear();
        in_nbest = false;
      }
      return;
    }
    if (field != Field::None) return;  // nested markup inside a field
    if (depth == document_depth + 1 && name == "nbestanswers") {
      in_nbest = true;
      return;
    }
    const bool direct = depth == document_depth + 1;
    const bool answer_level = in_nbest && depth == document_depth + 2;
    if (!direct && !answer_level) return;
    field = field_for(name, answer_level);
    if (field != Field::None) {
      field_depth = depth;
      text.clear();
    }
  }

  void end(std::string_view name) {
    if (in_document && field != Field::None && depth == field_depth) store();
    if (in_document && in_nbest && depth == document_depth + 1 && name == "nbestanswers")
      in_nbest = false;
    if (in_document && depth == document_depth) finish_document();
    --depth;
  }

  void store() {
    std::string value = clean_text(std::move(text));
    text.clear();
    switch (field) {
      case Field::Uri: current.id = value; break;
      case Field::Subject:
        current.subject = value;
        has_subject = !value.empty();
        break;
      case Field::Content: current.content = value; break;
      case Field::BestAnswer:
        current.best_answer = value;
        has_best = !value.empty();
        break;
      case Field::Answer:
        if (!value.empty()) current.answers.push_back(value);
        break;
      case Field::MainCat: current.maincat = value; break;
      case Field::SubCat: current.subcat = value; break;
      case Field::Language: current.language = value; break;
      case Field::QLang: qlang = value; break;
      case Field::Date: current.date = value; break;
      case Field::None: break;
    }
    field = Field::None;
  }

  void finish_document() {
    in_document = false;
    ++ordinal;
    if (current.id.empty()) current.id = "t" + std::to_string(ordinal);
    if (current.language.empty()) current.language = qlang;
    if (!has_subject || !has_best) {
      std::string missing = !has_subject ? "subject" : "bestanswer";
      ready.emplace_back(MalformedRecord{current.id, "missing " + missing});
      return;
    }
    // The dump repeats the best answer inside nbestanswers.
    std::erase(current.answers, current.best_answer);
    ready.emplace_back(std::move(current));
  }

  void feed(std::string_view bytes, bool last) {
    if (XML_Parse(parser, bytes.data(), static_cast<int>(bytes.size()), last) == XML_STATUS_ERROR) {
      throw DataError("XML error at line " + std::to_string(XML_GetCurrentLineNumber(parser)) +
                      ": " + XML_ErrorString(XML_GetErrorCode(parser)));
    }
  }

  // Drops a BOM and a leading XML declaration so the stream can sit under the
  // synthetic root element.
  void begin() {
    started = true;
    std::string head;
    std::array<char, 4096> buf{};
    auto read_more = [&] {
      in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
      head.append(buf.data(), static_cast<std::size_t>(in.gcount()));
      return in.gcount() > 0;
    };
    read_more();
    std::size_t pos = head.rfind("\xEF\xBB\xBF", 0) == 0 ? 3 : 0;
    const auto first = head.find_first_not_of(" \t\r\n", pos);
    if (first != std::string::npos && head.compare(first, 5, "<?xml") == 0) {
      while (head.find("?>", first) == std::string::npos && read_more()) {
      }
      const auto close = head.find("?>", first);
      if (close == std::string::npos) throw DataError("unterminated XML declaration");
      pos = close + 2;
    }
    feed(kOpenRoot, false);
    feed(std::string_view(head).substr(pos), false);
  }

  void pump() {
    if (!started) begin();
    std::array<char, kChunk> buf{};
    while (ready.empty() && !finished) {
      in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
      const auto got = static_cast<std::size_t>(in.gcount());
      if (got > 0) feed(std::string_view(buf.data(), got), false);
      if (got == 0 || !in) {
        feed(kCloseRoot, true);
        finished = true;
      }
    }
  }
};

L6Reader::L6Reader(std::istream& in) : impl_(std::make_unique<Impl>(in)) {}
L6Reader::~L6Reader() = default;

std::optional<ParsedRecord> L6Reader::next() {
  if (impl_->ready.empty()) impl_->pump();
  if (impl_->ready.empty()) return std::nullopt;
  ParsedRecord r = std::move(impl_->ready.front());
  impl_->ready.pop_front();
  return r;
}

std::vector<ParsedRecord> parse_l6(std::istream& in) {
  std::vector<ParsedRecord> out;
  L6Reader reader(in);
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

}  // namespace threadsum
