#include <apolar/parse.hpp>

#include <algorithm>
#include <cctype>

namespace apolar {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : InputError(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < s.size();) {
    const char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    const std::size_t start = i;
    Tok kind;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      kind = Tok::Int;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      kind = Tok::Ident;
    } else {
      switch (c) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '^': kind = Tok::Caret; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      ++i;
    }
    out.push_back({kind, std::string(s.substr(start, i - start)), line, col});
    col += i - start;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, VarTable table) : toks_(std::move(toks)), table_(std::move(table)) {}

  Poly parse() {
    Poly p = expr();
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  Poly expr() {
    const bool neg = accept(Tok::Minus);
    Poly acc = term();
    if (neg) acc = negate(acc);
    while (true) {
      if (accept(Tok::Plus)) {
        acc = add(acc, term());
      } else if (accept(Tok::Minus)) {
        acc = subtract(acc, term());
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    while (accept(Tok::Star)) acc = multiply(acc, factor());
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (!accept(Tok::Caret)) return base;
    if (peek().kind != Tok::Int) fail("expected a natural number exponent, got " + describe(peek()));
    const Token& t = next();
    if (t.text.size() > 4) throw ParseError("exponent too large", t.line, t.column);
    return power(base, static_cast<unsigned>(std::stoul(t.text)));
  }

  Poly atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        next();
        Rational q(Integer(t.text));
        if (accept(Tok::Slash)) {
          if (peek().kind != Tok::Int) fail("expected a denominator, got " + describe(peek()));
          const Token& den = next();
          Integer dv(den.text);
          if (dv == 0) throw ParseError("zero denominator", den.line, den.column);
          q /= dv;
        }
        return Poly::constant(table_, Ring::Primal, q);
      }
      case Tok::Ident: {
        next();
        auto idx = table_.index_of(t.text);
        if (!idx) throw ParseError("unknown variable '" + t.text + "'", t.line, t.column);
        return Poly::variable(table_, Ring::Primal, *idx);
      }
      case Tok::LParen: {
        next();
        Poly inner = expr();
        if (!accept(Tok::RParen)) fail("expected ')', got " + describe(peek()));
        return inner;
      }
      default:
        fail("expected a number, variable or '(', got " + describe(t));
    }
  }

  std::vector<Token> toks_;
  VarTable table_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> collect_identifiers(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) {
    if (t.kind == Tok::Ident && std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
  }
  return out;
}

Poly parse_poly(std::string_view text, const VarTable& table) {
  return Parser(tokenize(text), table).parse();
}

Poly parse_poly(std::string_view text, const std::optional<std::vector<std::string>>& vars) {
  auto toks = tokenize(text);
  VarTable table(vars ? *vars : collect_identifiers(text));
  return Parser(std::move(toks), std::move(table)).parse();
}

}  // namespace apolar
