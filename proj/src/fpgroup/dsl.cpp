#include <cctype>
#include <sstream>

#include "holoforge/error.hpp"
#include "holoforge/fpgroup.hpp"

namespace holoforge {

namespace {

enum class Tok { kName, kInt, kCaret, kStar, kLParen, kRParen, kComma, kMinus, kColon, kSep, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (ch == '\n' || ch == ';') {
      out.push_back({Tok::kSep, std::string(1, ch), line, col});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Tok::kName, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::kInt, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (ch) {
      case '^': kind = Tok::kCaret; break;
      case '*': kind = Tok::kStar; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case ',': kind = Tok::kComma; break;
      case '-': kind = Tok::kMinus; break;
      case ':': kind = Tok::kColon; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    out.push_back({kind, std::string(1, ch), line, col});
    advance(1);
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::kName: return "name";
    case Tok::kInt: return "integer";
    case Tok::kCaret: return "'^'";
    case Tok::kStar: return "'*'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kComma: return "','";
    case Tok::kMinus: return "'-'";
    case Tok::kColon: return "':'";
    case Tok::kSep: return "end of statement";
    case Tok::kEnd: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<std::string>* names)
      : toks_(std::move(toks)), names_(names) {}

  Presentation presentation() {
    Presentation p;
    bool have_gens = false;
    skip_seps();
    while (peek().kind != Tok::kEnd) {
      const Token& kw = peek();
      if (kw.kind != Tok::kName || peek(1).kind != Tok::kColon)
        fail("expected 'gens:' or 'rels:'", kw);
      next();
      next();
      if (kw.text == "gens") {
        if (have_gens) fail("generators declared twice", kw);
        have_gens = true;
        gens_statement(p);
      } else if (kw.text == "rels") {
        if (!have_gens) fail("'rels:' before 'gens:'", kw);
        names_ = &p.names;
        rels_statement(p);
      } else {
        fail("unknown keyword '" + kw.text + "'", kw);
      }
      if (peek().kind != Tok::kSep && peek().kind != Tok::kEnd)
        fail(std::string("unexpected ") + describe(peek().kind), peek());
      skip_seps();
    }
    if (!have_gens) fail("missing 'gens:'", peek());
    return p;
  }

  Word single_word() {
    Word w = word();
    if (peek().kind != Tok::kEnd) fail(std::string("unexpected ") + describe(peek().kind), peek());
    return w;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }
  const Token& expect(Tok kind) {
    if (peek().kind != kind)
      fail(std::string("expected ") + describe(kind) + ", found " + describe(peek().kind), peek());
    return next();
  }
  void skip_seps() {
    while (peek().kind == Tok::kSep) next();
  }

  void gens_statement(Presentation& p) {
    while (peek().kind == Tok::kName || peek().kind == Tok::kComma) {
      const Token& t = next();
      if (t.kind == Tok::kComma) continue;
      for (const auto& n : p.names)
        if (n == t.text) fail("duplicate generator '" + t.text + "'", t);
      p.names.push_back(t.text);
    }
  }

  void rels_statement(Presentation& p) {
    if (peek().kind == Tok::kSep) {
      // Relators may start on the line after the keyword.
      std::size_t k = 0;
      while (peek(k).kind == Tok::kSep) ++k;
      if (peek(k).kind == Tok::kEnd ||
          (peek(k).kind == Tok::kName && peek(k + 1).kind == Tok::kColon))
        return;
      skip_seps();
    }
    if (peek().kind == Tok::kEnd) return;
    p.relators.push_back(word());
    while (peek().kind == Tok::kComma) {
      next();
      // A trailing comma continues the list on the next line.
      skip_seps();
      p.relators.push_back(word());
    }
  }

  bool starts_atom() const {
    Tok k = peek().kind;
    return k == Tok::kName || k == Tok::kLParen || (k == Tok::kInt && peek().text == "1");
  }

  Word word() {
    if (!starts_atom()) fail(std::string("expected a word, found ") + describe(peek().kind), peek());
    Word w = factor();
    for (;;) {
      if (peek().kind == Tok::kStar) {
        next();
        w = w * factor();
      } else if (starts_atom()) {
        w = w * factor();
      } else {
        return w;
      }
    }
  }

  std::int64_t integer() {
    const Token& t = expect(Tok::kInt);
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      fail("integer out of range", t);
    }
  }

  // '^' followed by -k, k, or (k) / (-k)
  std::optional<std::int64_t> exponent() {
    if (peek().kind == Tok::kInt) return integer();
    if (peek().kind == Tok::kMinus) {
      next();
      return -integer();
    }
    if (peek().kind == Tok::kLParen) {
      std::size_t k = 1;
      bool neg = false;
      if (peek(k).kind == Tok::kMinus) {
        neg = true;
        ++k;
      }
      if (peek(k).kind == Tok::kInt && peek(k + 1).kind == Tok::kRParen) {
        next();
        if (neg) next();
        std::int64_t v = integer();
        expect(Tok::kRParen);
        return neg ? -v : v;
      }
    }
    return std::nullopt;
  }

  Word factor() {
    Word base = atom();
    if (peek().kind != Tok::kCaret) return base;
    next();
    if (auto e = exponent()) return base.pow(*e);
    if (!starts_atom())
      fail(std::string("expected exponent, found ") + describe(peek().kind), peek());
    return base.conjugate(atom());
  }

  Word atom() {
    const Token& t = peek();
    if (t.kind == Tok::kInt) {
      next();
      return Word();
    }
    if (t.kind == Tok::kName) {
      next();
      for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == t.text) return Word::generator(static_cast<std::uint32_t>(i));
      throw ParseError("undeclared generator '" + t.text + "'", t.line, t.column,
                       ErrorCode::kUndeclaredGenerator);
    }
    expect(Tok::kLParen);
    Word u = word();
    if (peek().kind == Tok::kComma) {
      next();
      Word v = word();
      expect(Tok::kRParen);
      return Word::commutator(u, v);
    }
    expect(Tok::kRParen);
    return u;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::vector<std::string>* names_;
};

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::vector<std::string> none;
  Parser parser(tokenize(text), &none);
  return parser.presentation();
}

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  Parser parser(tokenize(text), &names);
  return parser.single_word();
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& s : w.syllables()) {
    if (!first) os << '*';
    first = false;
    os << names.at(s.gen);
    if (s.exp != 1) os << '^' << s.exp;
  }
  return os.str();
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "gens:";
  for (const auto& n : p.names) os << ' ' << n;
  os << "\nrels:";
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    os << (i ? ", " : " ") << format_word(p.relators[i], p.names);
  os << '\n';
  return os.str();
}

}  // namespace holoforge
