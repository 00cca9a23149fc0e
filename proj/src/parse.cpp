#include "lpimod/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "lpimod/lpi.hpp"
#include "lpimod/syntax.hpp"

namespace lpimod {

namespace {

enum class Tok {
  Ident,
  Lambda,
  Bang,
  Colon,
  Dot,
  Arrow,       // ->
  LongArrow,   // -->
  TildeArrow,  // ~>
  LParen,
  RParen,
  Comma,
  LBracket,
  RBracket,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Lambda: return "'\\'";
    case Tok::Bang: return "'!'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::LongArrow: return "'-->'";
    case Tok::TildeArrow: return "'~>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (i < text.size() && text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    int tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), tl, tc});
      bump(j - i);
      continue;
    }
    switch (c) {
      case '\\': out.push_back({Tok::Lambda, "\\", tl, tc}); bump(1); continue;
      case '!': out.push_back({Tok::Bang, "!", tl, tc}); bump(1); continue;
      case ':': out.push_back({Tok::Colon, ":", tl, tc}); bump(1); continue;
      case '.': out.push_back({Tok::Dot, ".", tl, tc}); bump(1); continue;
      case '(': out.push_back({Tok::LParen, "(", tl, tc}); bump(1); continue;
      case ')': out.push_back({Tok::RParen, ")", tl, tc}); bump(1); continue;
      case ',': out.push_back({Tok::Comma, ",", tl, tc}); bump(1); continue;
      case '[': out.push_back({Tok::LBracket, "[", tl, tc}); bump(1); continue;
      case ']': out.push_back({Tok::RBracket, "]", tl, tc}); bump(1); continue;
      case '-':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          out.push_back({Tok::LongArrow, "-->", tl, tc});
          bump(3);
          continue;
        }
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", tl, tc});
          bump(2);
          continue;
        }
        throw ParseError("stray '-'", tl, tc);
      case '~':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::TildeArrow, "~>", tl, tc});
          bump(2);
          continue;
        }
        throw ParseError("stray '~'", tl, tc);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  SymbolTable symbols;

  const Token& peek() const { return toks[pos]; }
  Token next() { return toks[pos++]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token expect(Tok k) {
    if (!at(k))
      throw ParseError(std::string("expected ") + tok_name(k) + ", found " +
                           tok_name(peek().kind),
                       peek().line, peek().col);
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }

  bool is_sort(const std::string& id) const {
    return symbols.spec && symbols.spec->has_sort(id);
  }
  bool is_const(const std::string& id) const { return symbols.sig && symbols.sig->declares(id); }

  // Binder variables stay free variables while parsing; the *_named
  // constructors close the body on the way out, so shadowing resolves itself.
  TermPtr term0() {
    if (at(Tok::Lambda) || at(Tok::Bang)) {
      bool lambda = next().kind == Tok::Lambda;
      Token name = expect(Tok::Ident);
      if (is_sort(name.text))
        throw ParseError("binder name `" + name.text + "` collides with a sort", name.line,
                         name.col);
      if (is_const(name.text))
        throw ParseError("binder name `" + name.text + "` collides with a constant", name.line,
                         name.col);
      expect(Tok::Colon);
      TermPtr ann = term1();
      expect(Tok::Dot);
      TermPtr body = term0();
      return lambda ? abs_named(name.text, ann, body) : prod_named(name.text, ann, body);
    }
    return term1();
  }

  TermPtr term1() {
    TermPtr lhs = term2();
    if (at(Tok::Arrow)) {
      next();
      return arrow(lhs, term0());
    }
    return lhs;
  }

  TermPtr term2() {
    TermPtr t = term3();
    while (at(Tok::Ident) || at(Tok::LParen)) t = app(t, term3());
    return t;
  }

  TermPtr term3() {
    if (at(Tok::Ident)) {
      Token id = next();
      if (is_sort(id.text)) return sort(id.text);
      if (is_const(id.text)) return constant(id.text);
      return var(id.text);
    }
    if (at(Tok::LParen)) {
      next();
      TermPtr t = term0();
      expect(Tok::RParen);
      return t;
    }
    fail(std::string("expected a term, found ") + tok_name(peek().kind));
  }
};

}  // namespace

TermPtr parse_term(std::string_view text, const SymbolTable& symbols) {
  Parser p{lex(text), 0, symbols};
  TermPtr t = p.term0();
  if (!p.at(Tok::End)) p.fail(std::string("trailing ") + tok_name(p.peek().kind));
  return t;
}

Specification parse_spec(std::string_view text) {
  Parser p{lex(text), 0, {}};
  Specification spec;
  while (!p.at(Tok::End)) {
    Token kw = p.expect(Tok::Ident);
    if (kw.text == "sort") {
      Token s = p.expect(Tok::Ident);
      if (spec.has_sort(s.text))
        throw ParseError("duplicate sort `" + s.text + "`", s.line, s.col);
      spec.sorts.push_back(s.text);
    } else if (kw.text == "axiom") {
      Token s1 = p.expect(Tok::Ident);
      p.expect(Tok::Colon);
      Token s2 = p.expect(Tok::Ident);
      if (spec.axioms.count(s1.text))
        throw ParseError("duplicate axiom for `" + s1.text + "`", s1.line, s1.col);
      spec.axioms.emplace(s1.text, s2.text);
    } else if (kw.text == "rule") {
      p.expect(Tok::LParen);
      Token s1 = p.expect(Tok::Ident);
      p.expect(Tok::Comma);
      Token s2 = p.expect(Tok::Ident);
      p.expect(Tok::RParen);
      p.expect(Tok::TildeArrow);
      Token s3 = p.expect(Tok::Ident);
      if (spec.rules.count({s1.text, s2.text}))
        throw ParseError("duplicate rule for (" + s1.text + ", " + s2.text + ")", s1.line,
                         s1.col);
      spec.rules.emplace(std::make_pair(s1.text, s2.text), s3.text);
    } else {
      throw ParseError("expected sort, axiom, or rule, found `" + kw.text + "`", kw.line,
                       kw.col);
    }
  }
  return spec;
}

Signature parse_signature(std::string_view text) {
  Signature sig;
  Parser p{lex(text), 0, {&lpi_base_spec(), &sig}};
  int rule_count = 0;
  while (!p.at(Tok::End)) {
    if (p.at(Tok::LBracket)) {
      p.next();
      Context delta;
      if (!p.at(Tok::RBracket)) {
        for (;;) {
          Token name = p.expect(Tok::Ident);
          if (p.is_sort(name.text) || p.is_const(name.text))
            throw ParseError("rule variable `" + name.text + "` collides with a declared name",
                             name.line, name.col);
          if (delta.contains(name.text))
            throw ParseError("duplicate rule variable `" + name.text + "`", name.line, name.col);
          p.expect(Tok::Colon);
          delta.push(name.text, p.term0());
          if (!p.at(Tok::Comma)) break;
          p.next();
        }
      }
      p.expect(Tok::RBracket);
      TermPtr lhs = p.term0();
      p.expect(Tok::LongArrow);
      TermPtr rhs = p.term0();
      p.expect(Tok::Dot);
      ++rule_count;
      sig.rules.push_back({"rule" + std::to_string(rule_count), delta, lhs, rhs});
    } else {
      Token name = p.expect(Tok::Ident);
      if (p.is_sort(name.text))
        throw ParseError("constant `" + name.text + "` collides with a sort", name.line,
                         name.col);
      if (sig.declares(name.text))
        throw ParseError("duplicate declaration of `" + name.text + "`", name.line, name.col);
      p.expect(Tok::Colon);
      TermPtr type = p.term0();
      p.expect(Tok::Dot);
      sig.decls.push(name.text, type);
    }
  }
  return sig;
}

Context parse_context(std::string_view text, const SymbolTable& symbols) {
  Parser p{lex(text), 0, symbols};
  Context ctx;
  while (!p.at(Tok::End)) {
    Token name = p.expect(Tok::Ident);
    if (p.is_sort(name.text))
      throw ParseError("context name `" + name.text + "` collides with a sort", name.line,
                       name.col);
    if (p.is_const(name.text))
      throw ParseError("context name `" + name.text + "` collides with a constant", name.line,
                       name.col);
    if (ctx.contains(name.text))
      throw ParseError("duplicate context entry `" + name.text + "`", name.line, name.col);
    p.expect(Tok::Colon);
    ctx.push(name.text, p.term0());
    p.expect(Tok::Dot);
  }
  return ctx;
}

}  // namespace lpimod
