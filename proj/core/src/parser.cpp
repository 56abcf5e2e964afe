#include <cctype>

#include "odfkit/syntax.hpp"

namespace odfkit {

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  explicit Lexer(const std::string& str) : s(str) {}

  void skipWs() {
    while (pos < s.size()) {
      if (std::isspace((unsigned char)s[pos])) {
        ++pos;
      } else if (s[pos] == '#') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool eof() {
    skipWs();
    return pos >= s.size();
  }

  char peek() {
    skipWs();
    return pos < s.size() ? s[pos] : '\0';
  }

  bool tryConsume(const std::string& tok) {
    skipWs();
    if (s.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skipWs();
    if (pos >= s.size() || s[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  std::string ident() {
    skipWs();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum((unsigned char)s[pos]) || s[pos] == '_' || s[pos] == '\''))
      ++pos;
    if (pos == start) throw ParseError("expected identifier", pos);
    return s.substr(start, pos - start);
  }

  unsigned nat() {
    skipWs();
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == start) throw ParseError("expected number", pos);
    return (unsigned)std::stoul(s.substr(start, pos - start));
  }
};

struct Parser {
  Lexer lex;
  const Signature& sig;

  Parser(const std::string& text, const Signature& s) : lex(text), sig(s) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    if (!lex.eof()) throw ParseError("trailing input", lex.pos);
    unsigned counter = 0;
    std::set<std::string> taken;
    return freshenBound(f, counter, taken);
  }

  FormulaPtr formula() {
    char c = lex.peek();
    if (c == '!') {
      lex.expect('!');
      return fNot(formula());
    }
    if (c == '(') {
      lex.expect('(');
      FormulaPtr a = formula();
      FormulaPtr r;
      if (lex.tryConsume("&")) {
        r = fAnd(a, formula());
      } else if (lex.tryConsume("|")) {
        r = fOr(a, formula());
      } else if (lex.tryConsume("<->")) {
        FormulaPtr b = formula();
        r = fAnd(fOr(fNot(a), b), fOr(fNot(b), a));
      } else if (lex.tryConsume("->")) {
        r = fOr(fNot(a), formula());
      } else {
        throw ParseError("expected connective", lex.pos);
      }
      lex.expect(')');
      return r;
    }
    // Quantifiers. "E" / "A" followed by variables and '.', or counting.
    size_t save = lex.pos;
    if (lex.tryConsume("E>=") || (lex.pos = save, lex.tryConsume("E<="))) {
      bool ge = lex.s[lex.pos - 1] == '=' && lex.s[lex.pos - 2] == '>';
      unsigned n = lex.nat();
      std::string v = lex.ident();
      lex.expect('.');
      FormulaPtr body = formula();
      return ge ? fCountGe(n, v, body) : fCountLe(n, v, body);
    }
    lex.pos = save;
    std::string word = lex.ident();
    if ((word == "E" || word == "A")) {
      std::vector<std::string> vars;
      vars.push_back(lex.ident());
      while (lex.peek() != '.') vars.push_back(lex.ident());
      lex.expect('.');
      FormulaPtr body = formula();
      return word == "E" ? fExists(vars, body) : fForall(vars, body);
    }
    if (word == "true") return fTrue();
    if (word == "false") return fFalse();
    // Atom: word is a predicate / relation / eq.
    if (word == "eq") {
      lex.expect('(');
      std::string a = lex.ident();
      lex.expect(',');
      std::string b = lex.ident();
      lex.expect(')');
      return fEq(a, b);
    }
    Rel r;
    if (relFromName(word, r)) {
      lex.expect('(');
      std::string a = lex.ident();
      lex.expect(',');
      std::string b = lex.ident();
      lex.expect(')');
      return fNav(r, a, b);
    }
    if (!sig.hasUnary(word))
      throw ParseError("undeclared predicate '" + word + "'", lex.pos);
    lex.expect('(');
    std::string a = lex.ident();
    if (lex.peek() == ',')
      throw ParseError("arity mismatch: unary predicate '" + word + "'", lex.pos);
    lex.expect(')');
    return fAtom(word, a);
  }
};

struct ModalParser {
  Lexer lex;
  const Signature& sig;

  ModalParser(const std::string& text, const Signature& s) : lex(text), sig(s) {}

  ModalPtr parse() {
    ModalPtr f = formula();
    if (!lex.eof()) throw ParseError("trailing input", lex.pos);
    return f;
  }

  Dir direction() {
    static const std::pair<const char*, Dir> dirs[] = {
        {"down+", Dir::downPlus}, {"down", Dir::down},
        {"up+", Dir::upPlus},     {"up", Dir::up},
        {"right+", Dir::rightPlus}, {"right", Dir::right},
        {"left+", Dir::leftPlus}, {"left", Dir::left},
    };
    for (auto& [n, d] : dirs)
      if (lex.tryConsume(n)) return d;
    throw ParseError("expected direction", lex.pos);
  }

  ModalPtr formula() {
    char c = lex.peek();
    if (c == '!') {
      lex.expect('!');
      return mNot(formula());
    }
    if (c == '<') {
      lex.expect('<');
      Dir d = direction();
      lex.expect('>');
      return mDiamond(d, formula());
    }
    if (c == '[') {
      lex.expect('[');
      Dir d = direction();
      lex.expect(']');
      return mBox(d, formula());
    }
    if (c == '(') {
      lex.expect('(');
      ModalPtr a = formula();
      ModalPtr r;
      if (lex.tryConsume("&"))
        r = mAnd(a, formula());
      else if (lex.tryConsume("|"))
        r = mOr(a, formula());
      else
        throw ParseError("expected connective", lex.pos);
      lex.expect(')');
      return r;
    }
    std::string word = lex.ident();
    if (word == "true") return mTrue();
    if (word == "false") return mFalse();
    if (!sig.hasUnary(word))
      throw ParseError("undeclared proposition '" + word + "'", lex.pos);
    return mProp(word);
  }
};

}  // namespace

FormulaPtr parseFormula(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  return p.parse();
}

ModalPtr parseModal(const std::string& text, const Signature& sig) {
  ModalParser p(text, sig);
  return p.parse();
}

}  // namespace odfkit
