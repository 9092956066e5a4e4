#include "definiens/syntax.hpp"

#include <cctype>
#include <optional>

#include "definiens/error.hpp"

namespace definiens {

std::string_view resultTypeName(ResultType kind) {
  switch (kind) {
    case ResultType::VarsOnly:
      return "vars_only";
    case ResultType::Final:
      return "final";
    case ResultType::Trace:
      return "trace";
  }
  return "?";
}

namespace {

enum class Tok {
  Ident,
  Var,
  Int,
  String,
  Equals,
  Hash,
  Comma,
  Dot,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Bar,
  Colon,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipBlank();
      if (at_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back({Tok::End, "", endPos()});
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const { return at_ + ahead < src_.size() ? src_[at_ + ahead] : '\0'; }

  void advance() {
    if (src_[at_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++at_;
  }

  void skipBlank() {
    while (at_ < src_.size()) {
      const char c = src_[at_];
      if (c == '%') {
        while (at_ < src_.size() && src_[at_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  // Errors at end of input point at the last character so that the position
  // stays inside the text.
  SourcePos endPos() const {
    if (src_.empty()) return {1, 1};
    std::size_t line = 1, col = 0;
    std::size_t last_line = 1, last_col = 1;
    for (char c : src_) {
      if (c == '\n') {
        last_line = line;
        last_col = col + 1;
        ++line;
        col = 0;
      } else {
        ++col;
        last_line = line;
        last_col = col;
      }
    }
    return {last_line, last_col};
  }

  Token next() {
    const SourcePos pos{line_, col_};
    const char c = peek();
    auto single = [&](Tok kind) {
      advance();
      return Token{kind, std::string(1, c), pos};
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = at_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      std::string text(src_.substr(start, at_ - start));
      return {isVariableName(text) ? Tok::Var : Tok::Ident, std::move(text), pos};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = at_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        throw ParseError("malformed number", pos.line, pos.column, std::string(src_.substr(start, at_ - start + 1)));
      }
      return {Tok::Int, std::string(src_.substr(start, at_ - start)), pos};
    }
    if (c == '"' || c == '\'') {
      advance();
      std::string text;
      while (at_ < src_.size() && peek() != c && peek() != '\n') {
        text.push_back(peek());
        advance();
      }
      if (peek() != c) throw ParseError("unterminated string", pos.line, pos.column, std::string(1, c));
      advance();
      return {Tok::String, std::move(text), pos};
    }
    switch (c) {
      case '=':
        return single(Tok::Equals);
      case '#':
        return single(Tok::Hash);
      case ',':
        return single(Tok::Comma);
      case '(':
        return single(Tok::LParen);
      case ')':
        return single(Tok::RParen);
      case '{':
        return single(Tok::LBrace);
      case '}':
        return single(Tok::RBrace);
      case '[':
        return single(Tok::LBracket);
      case ']':
        return single(Tok::RBracket);
      case '|':
        return single(Tok::Bar);
      case ':':
        return single(Tok::Colon);
      case '.': {
        const char after = peek(1);
        if (after == '\0' || after == '%' || std::isspace(static_cast<unsigned char>(after))) return single(Tok::Dot);
        throw ParseError("'.' must be followed by whitespace or end of input", pos.line, pos.column, ".");
      }
      default:
        throw ParseError("unexpected character", pos.line, pos.column, std::string(1, c));
    }
  }

  std::string_view src_;
  std::size_t at_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

std::string_view describe(Tok kind) {
  switch (kind) {
    case Tok::Ident:
      return "identifier";
    case Tok::Var:
      return "variable";
    case Tok::Int:
      return "integer";
    case Tok::String:
      return "string";
    case Tok::Equals:
      return "'='";
    case Tok::Hash:
      return "'#'";
    case Tok::Comma:
      return "','";
    case Tok::Dot:
      return "'.'";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::LBrace:
      return "'{'";
    case Tok::RBrace:
      return "'}'";
    case Tok::LBracket:
      return "'['";
    case Tok::RBracket:
      return "']'";
    case Tok::Bar:
      return "'|'";
    case Tok::Colon:
      return "':'";
    case Tok::End:
      return "end of input";
  }
  return "token";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  std::vector<SourceItem> program() {
    std::vector<SourceItem> items;
    while (!at(Tok::End)) {
      if (isHeader("definition")) {
        items.emplace_back(dataSection());
      } else if (isHeader("method")) {
        items.emplace_back(methodSection());
      } else {
        fail("expected 'definition <name>.' or 'method <name>.' section header");
      }
    }
    return items;
  }

  QueryExpr query() {
    QueryExpr q;
    q.methodName = expect(Tok::Ident, "method name").text;
    if (at(Tok::LParen)) q.args = refList();
    const Token open = expect(Tok::LBrace, "'{'");
    if (!at(Tok::RBrace)) q.initialState = stateEquations();
    close(Tok::RBrace, open);
    expect(Tok::Dot, "'.'");
    return q;
  }

  Directive directive() {
    const Token word = expect(Tok::Ident, "directive");
    Directive d;
    if (word.text == "halt") {
      d = HaltDirective{};
    } else if (word.text == "restype") {
      const Token open = expect(Tok::LParen, "'('");
      const Token kind = expect(Tok::Ident, "result type");
      if (kind.text == "vars_only") {
        d = ResTypeDirective{ResultType::VarsOnly};
      } else if (kind.text == "final") {
        d = ResTypeDirective{ResultType::Final};
      } else if (kind.text == "trace") {
        d = ResTypeDirective{ResultType::Trace};
      } else {
        throw ParseError("unknown result type (expected vars_only, final or trace)", kind.pos.line,
                         kind.pos.column, kind.text);
      }
      close(Tok::RParen, open);
    } else if (word.text == "load") {
      const Token open = expect(Tok::LParen, "'('");
      if (!at(Tok::String) && !at(Tok::Ident)) fail("expected a path");
      d = LoadDirective{take().text};
      close(Tok::RParen, open);
    } else {
      throw ParseError("unknown directive", word.pos.line, word.pos.column, word.text);
    }
    expect(Tok::Dot, "'.'");
    return d;
  }

  Term termOnly() { return term(); }
  Condition conditionOnly() { return condition(); }

  void finish() {
    if (!at(Tok::End)) fail("unexpected trailing input");
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }
  bool at(Tok kind) const { return cur().kind == kind; }
  bool atIdent(std::string_view text) const { return at(Tok::Ident) && cur().text == text; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, cur().pos.line, cur().pos.column, cur().text);
  }

  Token expect(Tok kind, std::string_view what) {
    if (!at(kind)) fail("expected " + std::string(what) + ", found " + std::string(describe(cur().kind)));
    return take();
  }

  // Reports a missing closer at the bracket that opened the group.
  void close(Tok kind, const Token& open) {
    if (at(kind)) {
      take();
      return;
    }
    throw ParseError("unclosed '" + open.text + "' (expected " + std::string(describe(kind)) + ", found " +
                         std::string(describe(cur().kind)) + ")",
                     open.pos.line, open.pos.column, open.text);
  }

  bool isHeader(std::string_view keyword) const {
    return atIdent(keyword) && ahead(1).kind == Tok::Ident &&
           (ahead(2).kind == Tok::Dot || ahead(2).kind == Tok::LParen);
  }

  bool atSectionBoundary() const { return at(Tok::End) || isHeader("definition") || isHeader("method"); }

  DataDefinitionDecl dataSection() {
    DataDefinitionDecl decl;
    decl.pos = take().pos;
    decl.name = expect(Tok::Ident, "definition name").text;
    expect(Tok::Dot, "'.'");
    while (!atSectionBoundary()) {
      decl.equationPos.push_back(cur().pos);
      decl.equations.push_back(dataEquation());
    }
    return decl;
  }

  Equation dataEquation() {
    if (at(Tok::Var)) fail("equation head must not be a variable");
    if (atIdent("true") && ahead(1).kind != Tok::LParen) fail("'true' cannot be defined");
    Term head = term();
    Condition body;
    if (at(Tok::Equals)) {
      take();
      body = condition();
    }
    expect(Tok::Dot, "'.' ending the equation");
    return {std::move(head), simplify(body)};
  }

  MethodDefinitionDecl methodSection() {
    MethodDefinitionDecl decl;
    decl.pos = take().pos;
    decl.name = expect(Tok::Ident, "method name").text;
    if (at(Tok::LParen)) {
      const Token open = take();
      do {
        if (!decl.params.empty()) take();
        const Token p = expect(Tok::Var, "definition parameter");
        for (const auto& existing : decl.params) {
          if (existing == p.text) throw ParseError("duplicate parameter", p.pos.line, p.pos.column, p.text);
        }
        decl.params.push_back(p.text);
      } while (at(Tok::Comma));
      close(Tok::RParen, open);
    }
    expect(Tok::Dot, "'.'");
    while (!atSectionBoundary()) {
      decl.equationPos.push_back(cur().pos);
      decl.equations.push_back(methodEquation(decl.name));
    }
    return decl;
  }

  MethodEquation methodEquation(const std::string& method) {
    const Token head = expect(Tok::Ident, "method equation head");
    if (head.text != method) {
      throw ParseError("equation head must be the method name '" + method + "'", head.pos.line, head.pos.column,
                       head.text);
    }
    expect(Tok::Equals, "'='");
    MethodEquation eq{head.text, steps(), Guard::always()};
    if (at(Tok::Hash)) {
      take();
      eq.guard = guard();
    }
    expect(Tok::Dot, "'.' ending the equation");
    return eq;
  }

  std::vector<Step> steps() {
    const Token open = expect(Tok::LBracket, "'[' starting a step sequence");
    std::vector<Step> out;
    if (!at(Tok::RBracket)) {
      out.push_back(step());
      while (at(Tok::Comma)) {
        take();
        out.push_back(step());
      }
    }
    close(Tok::RBracket, open);
    return out;
  }

  std::optional<Side> sidePrefix() const {
    if (!at(Tok::Ident) || ahead(1).kind != Tok::Colon) return std::nullopt;
    if (cur().text == "r") return Side::Right;
    if (cur().text == "l") return Side::Left;
    return std::nullopt;
  }

  Step step() {
    if (auto side = sidePrefix()) {
      const Token s = take();
      if (*side == Side::Left) {
        throw ParseError("left-side computation steps are not supported", s.pos.line, s.pos.column, s.text);
      }
      take();
      return SideStep{Side::Right, ref()};
    }
    MethodWord word{expect(Tok::Ident, "method word or r:<definition>").text, {}};
    if (at(Tok::LParen)) word.args = refList();
    return word;
  }

  std::string ref() {
    if (!at(Tok::Ident) && !at(Tok::Var)) fail("expected a definition name or parameter");
    return take().text;
  }

  std::vector<std::string> refList() {
    const Token open = expect(Tok::LParen, "'('");
    std::vector<std::string> out{ref()};
    while (at(Tok::Comma)) {
      take();
      out.push_back(ref());
    }
    close(Tok::RParen, open);
    return out;
  }

  Guard guard() {
    if (atIdent("some") || atIdent("all")) {
      const bool some = take().text == "some";
      Guard inner = predicate();
      return some ? Guard::some(std::move(inner)) : Guard::all(std::move(inner));
    }
    return predicate();
  }

  Guard predicate() {
    if (atIdent("not") && ahead(1).kind == Tok::LParen) {
      take();
      const Token open = take();
      Guard inner = predicate();
      close(Tok::RParen, open);
      return Guard::negation(std::move(inner));
    }
    auto side = sidePrefix();
    if (!side) fail("expected a guard: some/all, not(...), r:matches(...) or l:matches(...)");
    take();
    take();
    if (!atIdent("matches")) fail("expected 'matches'");
    take();
    const Token open = expect(Tok::LParen, "'('");
    Condition pattern = condition();
    close(Tok::RParen, open);
    return Guard::sideMatches(*side, std::move(pattern));
  }

  // condition := item {',' item}
  Condition condition() {
    std::vector<Condition> items{conditionItem()};
    while (at(Tok::Comma)) {
      take();
      items.push_back(conditionItem());
    }
    return simplify(Condition::conjunction(std::move(items)));
  }

  Condition conditionItem() {
    if (at(Tok::LParen)) {
      const Token open = take();
      Condition inner = condition();
      close(Tok::RParen, open);
      return inner;
    }
    if (atIdent("true") && ahead(1).kind != Tok::LParen) {
      take();
      return Condition::truth();
    }
    return Condition::atom(term());
  }

  // Equations inside braces are comma separated, as are conjunction items; an
  // item directly followed by '=' starts the next equation.
  std::vector<StateEquation> stateEquations() {
    std::vector<StateEquation> out;
    Condition left = conditionItem();
    while (true) {
      expect(Tok::Equals, "'=' in state equation");
      std::vector<Condition> right{conditionItem()};
      std::optional<Condition> next_left;
      while (at(Tok::Comma)) {
        take();
        Condition item = conditionItem();
        if (at(Tok::Equals)) {
          next_left = std::move(item);
          break;
        }
        right.push_back(std::move(item));
      }
      out.push_back({simplify(left), simplify(Condition::conjunction(std::move(right)))});
      if (!next_left) break;
      left = std::move(*next_left);
    }
    return out;
  }

  Term term() {
    if (at(Tok::Var)) {
      std::string name = take().text;
      // Each anonymous variable is distinct.
      if (name == "_") name = "_" + std::to_string(++anonymous_);
      return Term::variable(std::move(name));
    }
    if (at(Tok::Int)) return Term::constant(take().text);
    if (at(Tok::LBracket)) return list();
    if (at(Tok::Ident)) {
      std::string functor = take().text;
      if (!at(Tok::LParen)) return Term::constant(std::move(functor));
      const Token open = take();
      std::vector<Term> args{term()};
      while (at(Tok::Comma)) {
        take();
        args.push_back(term());
      }
      close(Tok::RParen, open);
      return Term::compound(std::move(functor), std::move(args));
    }
    fail("expected a term, found " + std::string(describe(cur().kind)));
  }

  Term list() {
    const Token open = take();
    if (at(Tok::RBracket)) {
      take();
      return Term::nil();
    }
    std::vector<Term> items{term()};
    while (at(Tok::Comma)) {
      take();
      items.push_back(term());
    }
    std::optional<Term> tail;
    if (at(Tok::Bar)) {
      take();
      tail = term();
    }
    close(Tok::RBracket, open);
    return Term::list(std::move(items), std::move(tail));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t anonymous_ = 0;
};

void printTerm(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Constant:
      out += t.name();
      return;
    case Term::Kind::Compound:
      break;
  }
  if (t.isCons()) {
    out += '[';
    Term cur = t;
    bool first = true;
    while (cur.isCons()) {
      if (!first) out += ',';
      first = false;
      printTerm(cur.args()[0], out);
      cur = cur.args()[1];
    }
    if (!cur.isNil()) {
      out += '|';
      printTerm(cur, out);
    }
    out += ']';
    return;
  }
  out += t.name();
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    printTerm(t.args()[i], out);
  }
  out += ')';
}

std::string printStateSide(const Condition& c, bool left) {
  const Condition s = simplify(c);
  return left && s.isConjunction() ? "(" + print(s) + ")" : print(s);
}

}  // namespace

std::vector<SourceItem> parseProgram(std::string_view text) {
  Parser p(text);
  return p.program();
}

QueryExpr parseQuery(std::string_view text) {
  Parser p(text);
  QueryExpr q = p.query();
  p.finish();
  return q;
}

Directive parseDirective(std::string_view text) {
  Parser p(text);
  Directive d = p.directive();
  p.finish();
  return d;
}

Term parseTerm(std::string_view text) {
  Parser p(text);
  Term t = p.termOnly();
  p.finish();
  return t;
}

Condition parseCondition(std::string_view text) {
  Parser p(text);
  Condition c = p.conditionOnly();
  p.finish();
  return c;
}

bool looksLikeDirective(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t j = i;
  while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
  const std::string_view word = text.substr(i, j - i);
  return word == "restype" || word == "load" || word == "halt";
}

std::string print(const Term& t) {
  std::string out;
  printTerm(t, out);
  return out;
}

std::string print(const Condition& c) {
  switch (c.kind()) {
    case Condition::Kind::True:
      return std::string(kTrueName);
    case Condition::Kind::Atom:
      return print(c.term());
    case Condition::Kind::Conjunction:
      break;
  }
  std::string out;
  for (const Condition& item : c.items()) {
    if (!out.empty()) out += ", ";
    out += item.isConjunction() ? "(" + print(item) + ")" : print(item);
  }
  return out;
}

std::string print(const Equation& e) {
  const Condition body = simplify(e.body);
  if (body.isTrue()) return print(e.head) + ".";
  return print(e.head) + " = " + print(body) + ".";
}

std::string print(const Step& s) {
  if (const auto* side = std::get_if<SideStep>(&s)) {
    return std::string(side->side == Side::Right ? "r:" : "l:") + side->definition;
  }
  const auto& word = std::get<MethodWord>(s);
  std::string out = word.name;
  if (!word.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < word.args.size(); ++i) {
      if (i) out += ',';
      out += word.args[i];
    }
    out += ')';
  }
  return out;
}

std::string print(const Guard& g) {
  switch (g.kind()) {
    case Guard::Kind::Always:
      return "";
    case Guard::Kind::Some:
      return "some " + print(g.inner());
    case Guard::Kind::All:
      return "all " + print(g.inner());
    case Guard::Kind::Not:
      return "not(" + print(g.inner()) + ")";
    case Guard::Kind::SideMatches:
      return std::string(g.side() == Side::Right ? "r:" : "l:") + "matches(" + print(g.pattern()) + ")";
  }
  return "";
}

std::string print(const MethodEquation& e) {
  std::string out = e.head + " = [";
  for (std::size_t i = 0; i < e.body.size(); ++i) {
    if (i) out += ", ";
    out += print(e.body[i]);
  }
  out += ']';
  if (e.guard.kind() != Guard::Kind::Always) out += " # " + print(e.guard);
  return out + ".";
}

std::string print(const std::vector<StateEquation>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += printStateSide(s[i].left, true) + " = " + printStateSide(s[i].right, false);
  }
  return out + "}";
}

std::string print(const StateDefinition& s) { return print(s.equations()); }

std::string print(const SourceItem& item) {
  std::string out;
  if (const auto* data = std::get_if<DataDefinitionDecl>(&item)) {
    out = "definition " + data->name + ".\n\n";
    for (const auto& eq : data->equations) out += print(eq) + "\n";
    return out;
  }
  const auto& method = std::get<MethodDefinitionDecl>(item);
  out = "method " + method.name;
  if (!method.params.empty()) {
    out += '(';
    for (std::size_t i = 0; i < method.params.size(); ++i) {
      if (i) out += ',';
      out += method.params[i];
    }
    out += ')';
  }
  out += ".\n\n";
  for (const auto& eq : method.equations) out += print(eq) + "\n";
  return out;
}

std::string print(const std::vector<SourceItem>& program) {
  std::string out;
  for (const auto& item : program) {
    if (!out.empty()) out += "\n";
    out += print(item);
  }
  return out;
}

std::string print(const QueryExpr& q) {
  std::string out = q.methodName;
  if (!q.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < q.args.size(); ++i) {
      if (i) out += ',';
      out += q.args[i];
    }
    out += ')';
  }
  return out + print(q.initialState) + ".";
}

std::string print(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : s) {
    if (!first) out += ", ";
    first = false;
    out += var + " = " + print(value);
  }
  return out + "}";
}

}  // namespace definiens
