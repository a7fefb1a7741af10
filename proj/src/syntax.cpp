#include "omqa/syntax.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "omqa/error.hpp"

namespace omqa {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Bar, Colon, Equals, Arrow, Semicolon, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation where;
};

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Bar: return "'|'";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::Semicolon: return "';'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  SourceLocation loc;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
    ++i;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    SourceLocation start = loc;
    if (isIdentChar(c)) {
      std::size_t begin = i;
      while (i < text.size() && isIdentChar(text[i])) advance();
      out.push_back({Tok::Ident, std::string(text.substr(begin, i - begin)), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      case '|': kind = Tok::Bar; break;
      case ':': kind = Tok::Colon; break;
      case '=': kind = Tok::Equals; break;
      case ';': kind = Tok::Semicolon; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          advance();
          kind = Tok::Arrow;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    advance();
    out.push_back({kind, std::string(1, c), start});
  }
  out.push_back({Tok::End, "", loc});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool atKeyword(const char* word) const { return at(Tok::Ident) && peek().text == word; }

  Token expect(Tok kind) {
    if (!at(kind))
      throw ParseError(std::string("expected ") + describe(kind) + ", found " +
                           (at(Tok::End) ? std::string("end of input") : "'" + peek().text + "'"),
                       peek().where);
    return tokens_[pos_++];
  }

  bool accept(Tok kind) {
    if (!at(kind)) return false;
    ++pos_;
    return true;
  }

  Term term(bool allowNulls) {
    Token t = expect(Tok::Ident);
    char c = t.text.front();
    if (c == '_') {
      if (!allowNulls) throw ParseError("labelled null " + t.text + " is not allowed here", t.where);
      if (t.text.size() == 1) throw ParseError("labelled null needs a name", t.where);
      return Term::null(t.text.substr(1));
    }
    if (std::isupper(static_cast<unsigned char>(c))) return Term::variable(t.text);
    return Term::constant(t.text);
  }

  Atom atom(bool allowNulls) {
    Token name = expect(Tok::Ident);
    if (name.text.front() == '_') throw ParseError("relation names cannot start with '_'", name.where);
    expect(Tok::LParen);
    Atom a{name.text, {}};
    a.args.push_back(term(allowNulls));
    while (accept(Tok::Comma)) a.args.push_back(term(allowNulls));
    expect(Tok::RParen);
    return a;
  }

  /// `exists X, Y :` prefix; returns nullopt when absent.
  std::optional<std::vector<Token>> quantifier() {
    if (!atKeyword("exists")) return std::nullopt;
    ++pos_;
    std::vector<Token> vars;
    do {
      Token v = expect(Tok::Ident);
      if (!std::isupper(static_cast<unsigned char>(v.text.front())))
        throw ParseError("quantified name " + v.text + " must be a variable", v.where);
      vars.push_back(v);
    } while (accept(Tok::Comma));
    expect(Tok::Colon);
    return vars;
  }

  std::size_t position() const { return pos_; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

class ArityTracker {
 public:
  explicit ArityTracker(const Schema* schema) : schema_(schema) {}

  void check(const Atom& a, SourceLocation where) {
    if (schema_) {
      auto info = schema_->find(a.relation);
      if (!info) throw ParseError("relation " + a.relation + " is not declared", where);
      if (info->arity != a.args.size())
        throw ParseError("arity mismatch for " + a.relation + ": expected " +
                             std::to_string(info->arity) + ", got " + std::to_string(a.args.size()),
                         where);
      return;
    }
    auto [it, inserted] = seen_.emplace(a.relation, a.args.size());
    if (!inserted && it->second != a.args.size())
      throw ParseError("arity mismatch for " + a.relation + ": expected " +
                           std::to_string(it->second) + ", got " + std::to_string(a.args.size()),
                       where);
  }

 private:
  const Schema* schema_;
  std::map<std::string, std::size_t> seen_;
};

Instance parseFacts(std::string_view text, const Schema* schema, bool allowNulls) {
  Parser p(text);
  ArityTracker arity(schema);
  Instance out;
  while (!p.at(Tok::End)) {
    SourceLocation where = p.peek().where;
    Atom a = p.atom(allowNulls);
    for (const auto& t : a.args)
      if (t.isVariable()) throw ParseError("variable " + t.name + " in a fact", where);
    arity.check(a, where);
    p.expect(Tok::Dot);
    out.insert(std::move(a));
  }
  return out;
}

CQ parseDisjunct(Parser& p) {
  SourceLocation where = p.peek().where;
  auto declared = p.quantifier();
  std::set<std::string> bound;
  if (declared)
    for (const auto& v : *declared) bound.insert(v.text);
  if (!p.at(Tok::Ident)) throw ParseError("empty conjunct", p.peek().where);
  CQ cq;
  do {
    SourceLocation atomAt = p.peek().where;
    Atom a = p.atom(false);
    for (const auto& t : a.args)
      if (t.isVariable() && !bound.count(t.name))
        throw ParseError("free variable " + t.name + " (queries must be boolean)", atomAt);
    cq.atoms.push_back(std::move(a));
  } while (p.accept(Tok::Comma));
  (void)where;
  return cq;
}

UCQ parseOneQuery(Parser& p) {
  std::vector<CQ> disjuncts;
  disjuncts.push_back(parseDisjunct(p));
  while (p.accept(Tok::Bar)) disjuncts.push_back(parseDisjunct(p));
  ArityTracker arity(nullptr);
  for (const auto& d : disjuncts)
    for (const auto& a : d.atoms) arity.check(a, p.peek().where);
  return UCQ(std::move(disjuncts));
}

DED parseRule(Parser& p) {
  std::vector<Atom> body;
  std::set<Term> bodyVars;
  do {
    SourceLocation where = p.peek().where;
    if (p.peek(1).kind == Tok::Equals || p.peek(1).kind == Tok::Comma ||
        p.peek(1).kind == Tok::Arrow)
      throw ParseError("equality or bare term in rule body", where);
    Atom a = p.atom(false);
    for (const auto& t : a.args)
      if (t.isVariable()) bodyVars.insert(t);
    body.push_back(std::move(a));
  } while (p.accept(Tok::Comma));
  p.expect(Tok::Arrow);

  std::vector<HeadDisjunct> heads;
  if (p.atKeyword("false") && p.peek(1).kind == Tok::Dot) {
    p.expect(Tok::Ident);
    p.expect(Tok::Dot);
    return DED(std::move(body), {});
  }
  do {
    SourceLocation where = p.peek().where;
    auto declared = p.quantifier();
    HeadDisjunct head;
    if (!p.at(Tok::Ident)) throw ParseError("empty head disjunct", p.peek().where);
    do {
      if (p.peek(1).kind == Tok::LParen) {
        head.atoms.push_back(p.atom(false));
      } else {
        Term lhs = p.term(false);
        p.expect(Tok::Equals);
        Term rhs = p.term(false);
        head.equalities.push_back({lhs, rhs});
      }
    } while (p.accept(Tok::Comma));
    if (declared) {
      std::set<Term> listed;
      for (const auto& v : *declared) {
        Term t = Term::variable(v.text);
        if (bodyVars.count(t))
          throw ParseError("frontier violation: " + v.text + " is quantified in the head but occurs in the body",
                           v.where);
        listed.insert(t);
      }
      for (const auto& v : head.variables())
        if (!bodyVars.count(v) && !listed.count(v))
          throw ParseError("frontier violation: head variable " + v.name +
                               " occurs neither in the body nor in the quantifier",
                           where);
    }
    heads.push_back(std::move(head));
  } while (p.accept(Tok::Bar));
  p.expect(Tok::Dot);
  return DED(std::move(body), std::move(heads));
}

}  // namespace

Database parseDatabase(std::string_view text, const Schema* schema) {
  return parseFacts(text, schema, false);
}

Instance parseInstance(std::string_view text, const Schema* schema) {
  return parseFacts(text, schema, true);
}

UCQ parseQuery(std::string_view text) {
  Parser p(text);
  UCQ q = parseOneQuery(p);
  p.accept(Tok::Dot);
  p.expect(Tok::End);
  return q;
}

std::vector<UCQ> parseQueries(std::string_view text) {
  Parser p(text);
  std::vector<UCQ> out;
  while (!p.at(Tok::End)) {
    out.push_back(parseOneQuery(p));
    p.expect(Tok::Dot);
  }
  return out;
}

Program parseProgram(std::string_view text) {
  Parser p(text);
  Program out;
  ArityTracker arity(nullptr);
  while (!p.at(Tok::End)) {
    SourceLocation where = p.peek().where;
    DED rule = parseRule(p);
    for (const auto& a : rule.body()) arity.check(a, where);
    for (const auto& h : rule.heads())
      for (const auto& a : h.atoms) arity.check(a, where);
    out.push_back(std::move(rule));
  }
  return out;
}

BoundFunction parseBound(std::string_view text) {
  Parser p(text);
  auto number = [&]() -> std::size_t {
    Token t = p.expect(Tok::Ident);
    std::size_t value = 0;
    for (char c : t.text) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("expected a non-negative integer, found '" + t.text + "'", t.where);
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
  };
  std::vector<std::size_t> table;
  bool hasTable = false;
  if (p.atKeyword("table")) {
    p.expect(Tok::Ident);
    hasTable = true;
    while (p.at(Tok::Ident)) table.push_back(number());
    p.expect(Tok::Semicolon);
  }
  if (!p.atKeyword("affine")) throw ParseError("expected 'affine'", p.peek().where);
  SourceLocation where = p.peek().where;
  p.expect(Tok::Ident);
  std::size_t a = number();
  std::size_t b = number();
  p.expect(Tok::End);
  try {
    return hasTable ? BoundFunction::table(std::move(table), a, b) : BoundFunction::affine(a, b);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), where);
  }
}

std::vector<Instance> parseBundle(std::string_view text, bool allowNulls) {
  std::vector<Instance> out;
  std::string current;
  bool sawSeparator = false;
  std::size_t lineNo = 0;
  std::size_t sectionStart = 1;
  auto flush = [&] {
    try {
      out.push_back(parseFacts(current, nullptr, allowNulls));
    } catch (const ParseError& e) {
      auto loc = e.location();
      loc.line += sectionStart - 1;
      std::string msg = e.what();
      throw ParseError(msg.substr(msg.find(": ") + 2), loc);
    }
    current.clear();
  };
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.rfind("---", 0) == 0) {
      if (sawSeparator) flush();
      else current.clear();
      sawSeparator = true;
      sectionStart = lineNo + 1;
      continue;
    }
    current += line;
    current += '\n';
  }
  if (sawSeparator) flush();
  else if (!current.empty()) flush();
  return out;
}

std::string serialize(const Instance& instance) {
  std::string out;
  for (const auto& f : instance) out += toString(f) + ".\n";
  return out;
}

std::string serialize(const UCQ& query) { return toString(query) + "\n"; }

std::string serialize(const Program& program) { return toString(program); }

std::string serialize(const BoundFunction& bound) { return toString(bound) + "\n"; }

std::string serializeBundle(const std::vector<Instance>& instances) {
  std::string out;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    out += "--- instance " + std::to_string(k + 1) + " ---\n";
    out += serialize(instances[k]);
  }
  return out;
}

}  // namespace omqa
