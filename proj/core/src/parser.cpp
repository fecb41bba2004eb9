#include "teamcheck/dependency.hpp"
#include "teamcheck/syntax.hpp"

#include <cctype>

namespace teamcheck {

namespace {

enum class Tok {
  Ident, LParen, RParen, Comma, Semi, Dot,
  Eq, Neq, AndOp, OrOp, Tilde, Bang, At, Dollar, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { scan(); }
  const std::vector<Token>& tokens() const { return toks_; }

 private:
  void scan() {
    std::size_t i = 0;
    const std::size_t n = s_.size();
    while (i < n) {
      char c = s_[i];
      if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
      std::size_t start = i;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < n && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
        toks_.push_back({Tok::Ident, s_.substr(i, j - i), start});
        i = j;
        continue;
      }
      switch (c) {
        case '(': toks_.push_back({Tok::LParen, "(", start}); ++i; break;
        case ')': toks_.push_back({Tok::RParen, ")", start}); ++i; break;
        case ',': toks_.push_back({Tok::Comma, ",", start}); ++i; break;
        case ';': toks_.push_back({Tok::Semi, ";", start}); ++i; break;
        case '.': toks_.push_back({Tok::Dot, ".", start}); ++i; break;
        case '~': toks_.push_back({Tok::Tilde, "~", start}); ++i; break;
        case '@': toks_.push_back({Tok::At, "@", start}); ++i; break;
        case '$': toks_.push_back({Tok::Dollar, "$", start}); ++i; break;
        case '=': toks_.push_back({Tok::Eq, "=", start}); ++i; break;
        case '!':
          // `!=` is inequality unless it opens a complemented functional
          // dependence atom `!=(...)`.
          if (i + 1 < n && s_[i + 1] == '=' && !(i + 2 < n && s_[i + 2] == '(')) {
            toks_.push_back({Tok::Neq, "!=", start});
            i += 2;
          } else {
            toks_.push_back({Tok::Bang, "!", start});
            ++i;
          }
          break;
        case '/':
          if (i + 1 < n && s_[i + 1] == '\\') {
            toks_.push_back({Tok::AndOp, "/\\", start});
            i += 2;
          } else {
            throw ParseError("stray '/'", start);
          }
          break;
        case '\\':
          if (i + 1 < n && s_[i + 1] == '/') {
            toks_.push_back({Tok::OrOp, "\\/", start});
            i += 2;
          } else {
            throw ParseError("stray '\\'", start);
          }
          break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
    }
    toks_.push_back({Tok::End, "", n});
  }

  const std::string& s_;
  std::vector<Token> toks_;
};

bool is_keyword(const std::string& w) {
  return w == "exists" || w == "forall" || w == "dia" || w == "lor" ||
         w == "top" || w == "bot" || w == "atom" || is_builtin_dep_name(w) ||
         w == "ind" || w == "inc" || w == "exc";
}

class Parser {
 public:
  Parser(const std::string& text, const DependencyRegistry& registry, bool tilde0)
      : lexer_(text), registry_(registry), tilde0_(tilde0) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

 private:
  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + ahead;
    const auto& ts = lexer_.tokens();
    return i < ts.size() ? ts[i] : ts.back();
  }
  Token next() { return lexer_.tokens()[pos_ < lexer_.tokens().size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind == k) { ++pos_; return true; }
    return false;
  }
  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) throw ParseError("expected " + what, peek().pos);
    return next();
  }

  FormulaPtr formula() { return lor(); }

  FormulaPtr lor() {
    FormulaPtr f = tensor();
    while (peek().kind == Tok::Ident && peek().text == "lor") {
      next();
      f = Formula::global_or(f, tensor());
    }
    return f;
  }

  FormulaPtr tensor() {
    FormulaPtr f = conjunction();
    while (accept(Tok::OrOp)) f = Formula::tensor(f, conjunction());
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = unary();
    while (accept(Tok::AndOp)) f = Formula::conj(f, unary());
    return f;
  }

  FormulaPtr unary() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      std::size_t at = t.pos;
      next();
      FormulaPtr child = unary();
      if (tilde0_ && child->kind != FormulaKind::Literal &&
          child->kind != FormulaKind::DepAtom)
        throw ParseError("~ may only be applied to literals and dependency atoms", at);
      return Formula::contra(child);
    }
    if (t.kind == Tok::Ident && t.text == "dia") {
      next();
      return Formula::diamond(unary());
    }
    if (t.kind == Tok::Ident && (t.text == "exists" || t.text == "forall")) {
      bool ex = t.text == "exists";
      next();
      std::vector<std::string> vars;
      while (peek().kind == Tok::Ident && !is_keyword(peek().text))
        vars.push_back(next().text);
      if (vars.empty()) throw ParseError("quantifier needs at least one variable", t.pos);
      expect(Tok::Dot, "'.' after quantified variables");
      for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
          if (vars[i] == vars[j])
            throw ParseError("quantifier tuple repeats variable " + vars[i], t.pos);
      FormulaPtr body = formula();
      return ex ? Formula::exists(vars, body) : Formula::forall(vars, body);
    }
    if (t.kind == Tok::LParen) {
      next();
      FormulaPtr f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return atom();
  }

  FormulaPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang: {
        next();
        const Token& a = peek();
        if (a.kind == Tok::Eq && peek(1).kind == Tok::LParen)
          return dep_atom_tail("dep", true);
        if (a.kind == Tok::Ident && is_builtin_dep_name(a.text) &&
            peek(1).kind == Tok::LParen)
          return dep_atom_tail(a.text, true);
        if (a.kind == Tok::Ident && a.text == "atom") return registered_atom(true);
        if (a.kind == Tok::Ident && peek(1).kind == Tok::LParen)
          return relation_literal(false);
        throw ParseError("'!' must prefix a relation or dependency atom", t.pos);
      }
      case Tok::Eq:
        if (peek(1).kind == Tok::LParen) return dep_atom_tail("dep", false);
        throw ParseError("unexpected '='", t.pos);
      case Tok::Ident: {
        if (t.text == "top") { next(); return Formula::top(); }
        if (t.text == "bot") { next(); return Formula::bottom(); }
        if (is_builtin_dep_name(t.text) && peek(1).kind == Tok::LParen)
          return dep_atom_tail(t.text, false);
        if (t.text == "atom") return registered_atom(false);
        if (is_keyword(t.text))
          throw ParseError("unexpected keyword '" + t.text + "'", t.pos);
        if (peek(1).kind == Tok::LParen) return relation_literal(true);
        return equality();
      }
      case Tok::Dollar:
        return equality();
      default:
        throw ParseError("expected an atom", t.pos);
    }
  }

  Term term() {
    if (accept(Tok::Dollar)) {
      Token id = expect(Tok::Ident, "constant name after '$'");
      return Term::constant(id.text);
    }
    Token id = expect(Tok::Ident, "a variable");
    if (is_keyword(id.text))
      throw ParseError("keyword '" + id.text + "' cannot be a term", id.pos);
    return Term::var(id.text);
  }

  FormulaPtr equality() {
    Term a = term();
    bool positive;
    if (accept(Tok::Eq))
      positive = true;
    else if (accept(Tok::Neq))
      positive = false;
    else
      throw ParseError("expected '=' or '!='", peek().pos);
    Term b = term();
    return Formula::eq(std::move(a), std::move(b), positive);
  }

  FormulaPtr relation_literal(bool positive) {
    Token name = expect(Tok::Ident, "relation name");
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (peek().kind != Tok::RParen) {
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
    }
    expect(Tok::RParen, "')'");
    return Formula::rel(name.text, std::move(args), positive);
  }

  // Variables only; `$c` and nested terms are rejected here.
  std::vector<std::vector<std::string>> groups() {
    std::vector<std::vector<std::string>> gs(1);
    expect(Tok::LParen, "'('");
    while (peek().kind != Tok::RParen) {
      if (accept(Tok::Semi)) {
        gs.emplace_back();
        continue;
      }
      if (accept(Tok::Comma)) continue;
      Token id = peek();
      if (id.kind == Tok::Dollar)
        throw ParseError("dependency atoms apply to variables, not constants", id.pos);
      if (id.kind != Tok::Ident || is_keyword(id.text))
        throw ParseError("expected a variable in dependency atom", id.pos);
      next();
      gs.back().push_back(id.text);
    }
    expect(Tok::RParen, "')'");
    return gs;
  }

  FormulaPtr finish_dep(DepAtomNode d, std::size_t at) {
    if (accept(Tok::At)) {
      Token p = expect(Tok::Ident, "predicate name after '@'");
      d.relativized_to = p.text;
    }
    validate_dep(d, at);
    return Formula::dep_atom(std::move(d));
  }

  FormulaPtr dep_atom_tail(const std::string& name, bool complemented) {
    std::size_t at = peek().pos;
    next();  // '=' or the builtin keyword
    DepAtomNode d;
    d.name = name;
    d.complemented = complemented;
    d.groups = groups();
    return finish_dep(std::move(d), at);
  }

  FormulaPtr registered_atom(bool complemented) {
    std::size_t at = peek().pos;
    if (complemented) { /* '!' already consumed */ }
    expect(Tok::Ident, "'atom'");
    Token name = expect(Tok::Ident, "dependency name after 'atom'");
    DepAtomNode d;
    d.name = name.text;
    d.complemented = complemented;
    d.groups = groups();
    return finish_dep(std::move(d), at);
  }

  void validate_dep(const DepAtomNode& d, std::size_t at) {
    auto ngroups = d.groups.size();
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, at); };
    if (d.name == "dep") {
      if (ngroups != 2) fail("=(xs;ys) needs exactly two groups");
    } else if (d.name == "ind") {
      if (ngroups != 3) fail("ind(xs;ys;zs) needs exactly three groups");
    } else if (d.name == "inc" || d.name == "exc") {
      if (ngroups != 2) fail(d.name + "(xs;ys) needs exactly two groups");
      if (d.groups[0].size() != d.groups[1].size())
        fail(d.name + " needs groups of equal length");
    } else if (is_builtin_dep_name(d.name)) {
      if (ngroups != 1) fail(d.name + " takes a single variable group");
    } else {
      auto dep = registry_.find(d.name);
      if (!dep) fail("unknown dependency name: " + d.name);
      if (ngroups != 1) fail("registered atoms take a single variable group");
      if (dep->arity() != d.arity())
        fail("dependency " + d.name + " has arity " + std::to_string(dep->arity()) +
             ", got " + std::to_string(d.arity()) + " arguments");
    }
  }

  Lexer lexer_;
  const DependencyRegistry& registry_;
  bool tilde0_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const DependencyRegistry& registry,
                         bool tilde0_mode) {
  return Parser(text, registry, tilde0_mode).parse();
}

}  // namespace teamcheck
