#include <cctype>
#include <charconv>

#include "sumfree/error.hpp"
#include "sumfree/proof.hpp"

namespace sumfree::proof {

namespace {

enum class TokKind { Word, Number, Symbol };

struct Token {
  TokKind kind;
  std::string text;
  std::size_t column;  // 1-based
  std::uint64_t value = 0;
};

struct Line {
  std::size_t number;  // 1-based
  std::string raw;     // comment stripped
  std::vector<Token> tokens;
};

[[noreturn]] void fail(const std::string& message, const std::string& token, std::size_t line, std::size_t column) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message, token,
                   line, column);
}

std::vector<Token> tokenize(std::string_view text, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      Token t{TokKind::Number, std::string(text.substr(start, i - start)), start + 1};
      const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
      if (ec != std::errc{}) fail("number out of range", t.text, line_no, t.column);
      out.push_back(std::move(t));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '-' || text[i] == '_' || text[i] == '.')) {
        ++i;
      }
      out.push_back({TokKind::Word, std::string(text.substr(start, i - start)), start + 1});
    } else if (std::string_view("{},;+=").find(c) != std::string_view::npos) {
      out.push_back({TokKind::Symbol, std::string(1, c), start + 1});
      ++i;
    } else {
      fail(std::string("unexpected character '") + c + "'", std::string(1, c), line_no, start + 1);
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : universe_(record_set()) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      auto tokens = tokenize(raw, line_no);
      if (!tokens.empty()) lines_.push_back({line_no, std::string(raw), std::move(tokens)});
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    last_line_ = line_no;
  }

  ProofScript parse() {
    if (lines_.empty()) fail("empty script; expected 'case NAME'", "", 1, 1);
    ProofScript script;

    const Line& head = next();
    expect_keyword(head, 0, "case");
    if (head.tokens.size() < 2) fail("'case' needs a name", "case", head.number, head.tokens[0].column);
    script.name = rest_of_line(head, 1);

    if (at_end()) fail("expected 'c-size K'", "", last_line_, 1);
    const Line& size_line = next();
    expect_keyword(size_line, 0, "c-size");
    cursor_ = {&size_line, 1};
    const Token& k = number_token();
    if (k.value > 9) fail("c-size must be between 0 and 9", k.text, size_line.number, k.column);
    script.c_size = static_cast<int>(k.value);
    expect_line_end();

    parse_block(script.hypothesis, script.steps, /*nested=*/false);
    return script;
  }

 private:
  struct Cursor {
    const Line* line = nullptr;
    std::size_t index = 0;
  };

  bool at_end() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() { return lines_[pos_++]; }

  static std::string rest_of_line(const Line& line, std::size_t token_index) {
    const std::size_t col = line.tokens[token_index].column;
    std::string s = line.raw.substr(col - 1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  }

  static void expect_keyword(const Line& line, std::size_t index, std::string_view word) {
    const Token& t = line.tokens[index];
    if (t.kind != TokKind::Word || t.text != word) {
      fail("expected '" + std::string(word) + "', found '" + t.text + "'", t.text, line.number, t.column);
    }
  }

  const Token& token() {
    if (cursor_.index >= cursor_.line->tokens.size()) {
      fail("unexpected end of line", "", cursor_.line->number, cursor_.line->raw.size() + 1);
    }
    return cursor_.line->tokens[cursor_.index++];
  }

  const Token& number_token() {
    const Token& t = token();
    if (t.kind != TokKind::Number) fail("expected a number, found '" + t.text + "'", t.text, cursor_.line->number, t.column);
    return t;
  }

  void expect_word(std::string_view word) {
    const Token& t = token();
    if (t.kind != TokKind::Word || t.text != word) {
      fail("expected '" + std::string(word) + "', found '" + t.text + "'", t.text, cursor_.line->number, t.column);
    }
  }

  void expect_symbol(char symbol) {
    const Token& t = token();
    if (t.kind != TokKind::Symbol || t.text[0] != symbol) {
      fail(std::string("expected '") + symbol + "', found '" + t.text + "'", t.text, cursor_.line->number, t.column);
    }
  }

  bool peek_symbol(char symbol) const {
    return cursor_.index < cursor_.line->tokens.size() && cursor_.line->tokens[cursor_.index].kind == TokKind::Symbol &&
           cursor_.line->tokens[cursor_.index].text[0] == symbol;
  }

  void expect_line_end() {
    if (cursor_.index < cursor_.line->tokens.size()) {
      const Token& t = cursor_.line->tokens[cursor_.index];
      fail("unexpected '" + t.text + "' at end of line", t.text, cursor_.line->number, t.column);
    }
  }

  Element element() {
    const Token& t = number_token();
    if (t.value > 64 || !universe_.contains(static_cast<Element>(t.value))) {
      fail(t.text + " is not an element of the 28-element set", t.text, cursor_.line->number, t.column);
    }
    return static_cast<Element>(t.value);
  }

  int column_index() {
    const Token& t = number_token();
    if (t.value < 1 || t.value > 13) fail("column must be between 1 and 13", t.text, cursor_.line->number, t.column);
    return static_cast<int>(t.value);
  }

  Triple triple() {
    const Token& first = cursor_.index < cursor_.line->tokens.size() ? cursor_.line->tokens[cursor_.index]
                                                                      : cursor_.line->tokens.back();
    Triple t;
    t.a = element();
    expect_symbol('+');
    t.b = element();
    expect_symbol('=');
    t.c = element();
    if (t.a + t.b != t.c) {
      fail(format_triple(t) + " does not add up", format_triple(t), cursor_.line->number, first.column);
    }
    return t;
  }

  std::vector<Triple> triples() {
    std::vector<Triple> out{triple()};
    while (peek_symbol(',')) {
      expect_symbol(',');
      out.push_back(triple());
    }
    return out;
  }

  MutexGroup group() {
    MutexGroup g;
    expect_word("columns");
    expect_symbol('{');
    g.columns.push_back(column_index());
    while (peek_symbol(',')) {
      expect_symbol(',');
      g.columns.push_back(column_index());
    }
    expect_symbol('}');
    expect_word("min");
    g.min_dead = static_cast<int>(number_token().value);
    expect_word("by");
    g.justification = triples();
    return g;
  }

  // Reads a block's leading assumptions and its steps. Nested blocks stop
  // before their 'end' line.
  void parse_block(std::vector<Literal>& hypothesis, std::vector<ProofStep>& steps, bool nested) {
    bool derived = false;
    while (!at_end()) {
      const Line& line = peek();
      const Token& kw = line.tokens[0];
      if (kw.kind != TokKind::Word) fail("expected a keyword, found '" + kw.text + "'", kw.text, line.number, kw.column);
      if (kw.text == "end") {
        if (!nested) fail("'end' without 'begin'", kw.text, line.number, kw.column);
        return;
      }
      next();
      cursor_ = {&line, 1};
      const SourceLoc loc{line.number, kw.column};

      if (kw.text == "assume-in" || kw.text == "assume-out") {
        if (derived) fail("assumptions must precede derived steps", kw.text, line.number, kw.column);
        hypothesis.push_back({element(), kw.text == "assume-in"});
        expect_line_end();
        continue;
      }
      derived = true;

      if (kw.text == "exclude") {
        ExcludeBySum s;
        s.element = element();
        expect_word("by");
        s.triple = triple();
        expect_line_end();
        steps.push_back({loc, s});
      } else if (kw.text == "force-in") {
        ForceInColumn s;
        s.element = element();
        expect_word("column");
        s.column = column_index();
        expect_line_end();
        steps.push_back({loc, s});
      } else if (kw.text == "dead") {
        expect_word("column");
        DeadColumn s{column_index()};
        expect_line_end();
        steps.push_back({loc, s});
      } else if (kw.text == "mutex-dead") {
        MutexDead s;
        s.groups.push_back(group());
        while (peek_symbol(';')) {
          expect_symbol(';');
          s.groups.push_back(group());
        }
        expect_line_end();
        steps.push_back({loc, s});
      } else if (kw.text == "contradiction") {
        Contradiction s;
        if (cursor_.index < line.tokens.size()) {
          expect_word("by");
          s.triple = triple();
        }
        expect_line_end();
        steps.push_back({loc, s});
      } else if (kw.text == "split") {
        expect_line_end();
        steps.push_back({loc, parse_split(line)});
        if (!at_end() && !(nested && peek().tokens[0].text == "end")) {
          const Line& after = peek();
          fail("a split must be the last step of its block", after.tokens[0].text, after.number,
               after.tokens[0].column);
        }
      } else {
        fail("unknown keyword '" + kw.text + "'", kw.text, line.number, kw.column);
      }
    }
    if (nested) fail("missing 'end'", "", last_line_, 1);
  }

  Split parse_split(const Line& split_line) {
    Split split;
    while (!at_end() && peek().tokens[0].text == "branch") {
      const Line& header = next();
      Branch b;
      b.loc = {header.number, header.tokens[0].column};
      b.label = header.tokens.size() > 1 ? rest_of_line(header, 1) : "branch " + std::to_string(split.branches.size() + 1);
      if (at_end()) fail("expected 'begin'", "", last_line_, 1);
      const Line& begin = next();
      expect_keyword(begin, 0, "begin");
      if (begin.tokens.size() > 1) fail("unexpected text after 'begin'", begin.tokens[1].text, begin.number, begin.tokens[1].column);
      parse_block(b.hypothesis, b.steps, /*nested=*/true);
      const Line& end = next();
      if (end.tokens.size() > 1) fail("unexpected text after 'end'", end.tokens[1].text, end.number, end.tokens[1].column);
      split.branches.push_back(std::move(b));
    }
    if (split.branches.empty()) fail("'split' needs at least one branch", "split", split_line.number, split_line.tokens[0].column);
    return split;
  }

  NumSet universe_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
  Cursor cursor_;
};

}  // namespace

std::string format_triple(const Triple& t) {
  return std::to_string(t.a) + "+" + std::to_string(t.b) + "=" + std::to_string(t.c);
}

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::AssumeIn: return "assume-in";
    case StepKind::AssumeOut: return "assume-out";
    case StepKind::ExcludeBySum: return "exclude";
    case StepKind::ForceInColumn: return "force-in";
    case StepKind::DeadColumn: return "dead column";
    case StepKind::MutexDead: return "mutex-dead";
    case StepKind::Split: return "split";
    case StepKind::Contradiction: return "contradiction";
  }
  return "?";
}

ProofScript parse_script(std::string_view text) { return Parser(text).parse(); }

}  // namespace sumfree::proof
