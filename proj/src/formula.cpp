#include "redukt/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace redukt {

namespace {

Formula make(FormulaKind k, std::string name = {}, std::vector<Term> terms = {},
             std::vector<Formula> kids = {}) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->name = std::move(name);
  n->terms = std::move(terms);
  n->children = std::move(kids);
  return n;
}

bool is_quantifier(FormulaKind k) { return k == FormulaKind::Forall || k == FormulaKind::Exists; }

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

}  // namespace

// ---------------------------------------------------------------- construction

Formula f_true() {
  static const Formula t = make(FormulaKind::True);
  return t;
}

Formula f_false() {
  static const Formula f = make(FormulaKind::False);
  return f;
}

Formula atom(std::string rel, std::vector<Term> args) {
  return make(FormulaKind::Atom, std::move(rel), std::move(args));
}

Formula atom(std::string rel, const std::vector<std::string>& vars) {
  std::vector<Term> t;
  for (const auto& v : vars) t.push_back(Term::variable(v));
  return atom(std::move(rel), std::move(t));
}

Formula equal(Term a, Term b) { return make(FormulaKind::Equal, {}, {std::move(a), std::move(b)}); }

Formula equal(const std::string& a, const std::string& b) {
  return equal(Term::variable(a), Term::variable(b));
}

Formula not_equal(const std::string& a, const std::string& b) { return negate(equal(a, b)); }

Formula negate(Formula f) { return make(FormulaKind::Not, {}, {}, {std::move(f)}); }

Formula conj(std::vector<Formula> fs) {
  if (fs.size() == 1) return fs[0];
  return make(FormulaKind::And, {}, {}, std::move(fs));
}

Formula disj(std::vector<Formula> fs) {
  if (fs.size() == 1) return fs[0];
  return make(FormulaKind::Or, {}, {}, std::move(fs));
}

Formula implies(Formula a, Formula b) {
  return make(FormulaKind::Implies, {}, {}, {std::move(a), std::move(b)});
}

Formula iff(Formula a, Formula b) {
  return make(FormulaKind::Iff, {}, {}, {std::move(a), std::move(b)});
}

Formula forall(std::string v, Formula body) {
  return make(FormulaKind::Forall, std::move(v), {}, {std::move(body)});
}

Formula exists(std::string v, Formula body) {
  return make(FormulaKind::Exists, std::move(v), {}, {std::move(body)});
}

Formula forall(const std::vector<std::string>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = forall(*it, body);
  return body;
}

Formula exists(const std::vector<std::string>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = exists(*it, body);
  return body;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->terms != b->terms ||
      a->children.size() != b->children.size())
    return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!structurally_equal(a->children[i], b->children[i])) return false;
  return true;
}

// ---------------------------------------------------------------- s-expressions

namespace {

std::string term_text(const Term& t) {
  return t.is_constant() ? std::to_string(t.value) : t.var;
}

void sexpr(const Formula& f, std::string& out) {
  auto kids = [&](const char* op) {
    out += "(";
    out += op;
    for (const auto& c : f->children) {
      out += " ";
      sexpr(c, out);
    }
    out += ")";
  };
  switch (f->kind) {
    case FormulaKind::True: out += "true"; return;
    case FormulaKind::False: out += "false"; return;
    case FormulaKind::Atom:
      out += "(" + f->name;
      for (const auto& t : f->terms) out += " " + term_text(t);
      out += ")";
      return;
    case FormulaKind::Equal:
      out += "(= " + term_text(f->terms[0]) + " " + term_text(f->terms[1]) + ")";
      return;
    case FormulaKind::Not: kids("not"); return;
    case FormulaKind::And: kids("and"); return;
    case FormulaKind::Or: kids("or"); return;
    case FormulaKind::Implies: kids("implies"); return;
    case FormulaKind::Iff: kids("iff"); return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f->kind == FormulaKind::Forall ? "(forall " : "(exists ";
      out += f->name + " ";
      sexpr(f->children[0], out);
      out += ")";
      return;
  }
}

bool is_integer(const std::string& s) {
  std::size_t i = (s.size() > 1 && s[0] == '-') ? 1 : 0;
  return i < s.size() && std::all_of(s.begin() + i, s.end(), [](char c) {
           return std::isdigit(static_cast<unsigned char>(c));
         });
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> r = {"forall", "exists", "not",  "and",  "or",
                                          "implies", "iff",   "true", "false", "="};
  return r;
}

class SexprParser {
 public:
  explicit SexprParser(const std::string& text) { tokenize(text); }

  Formula parse() {
    Formula f = formula();
    if (pos_ != toks_.size()) parse_error("trailing input after formula");
    return f;
  }

 private:
  void tokenize(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
      if (c == '(' || c == ')') { toks_.emplace_back(1, c); ++i; continue; }
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' &&
             s[j] != ')')
        ++j;
      toks_.push_back(s.substr(i, j - i));
      i = j;
    }
  }

  const std::string& next() {
    if (pos_ >= toks_.size()) parse_error("unexpected end of formula");
    return toks_[pos_++];
  }

  void expect(const char* t) {
    if (next() != t) parse_error(std::string("expected '") + t + "'");
  }

  std::string identifier() {
    const std::string& t = next();
    if (t == "(" || t == ")" || is_integer(t) || reserved().count(t))
      parse_error("expected a variable, got '" + t + "'");
    return t;
  }

  Term term() {
    const std::string& t = next();
    if (t == "(" || t == ")" || reserved().count(t)) parse_error("expected a term, got '" + t + "'");
    if (is_integer(t)) return Term::constant(std::stoi(t));
    return Term::variable(t);
  }

  Formula formula() {
    const std::string t = next();
    if (t == "true") return f_true();
    if (t == "false") return f_false();
    if (t != "(") parse_error("expected '(' or a constant, got '" + t + "'");
    const std::string op = next();
    if (op == "(" || op == ")") parse_error("expected an operator");
    Formula f;
    if (op == "forall" || op == "exists") {
      std::string v = identifier();
      Formula body = formula();
      f = op == "forall" ? forall(v, body) : exists(v, body);
    } else if (op == "=") {
      Term a = term();
      Term b = term();
      f = equal(a, b);
    } else if (op == "not") {
      f = negate(formula());
    } else if (op == "and" || op == "or") {
      std::vector<Formula> kids;
      while (pos_ < toks_.size() && toks_[pos_] != ")") kids.push_back(formula());
      f = make(op == "and" ? FormulaKind::And : FormulaKind::Or, {}, {}, std::move(kids));
    } else if (op == "implies" || op == "iff") {
      Formula a = formula();
      Formula b = formula();
      f = op == "implies" ? implies(a, b) : iff(a, b);
    } else {
      if (is_integer(op) || reserved().count(op)) parse_error("bad relation symbol '" + op + "'");
      std::vector<Term> args;
      while (pos_ < toks_.size() && toks_[pos_] != ")") args.push_back(term());
      f = atom(op, std::move(args));
    }
    expect(")");
    return f;
  }

  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- infix

enum class Tok { Ident, Int, LParen, RParen, Comma, Dot, Not, And, Or, Implies, Iff, Eq, Neq, Lt, End };

struct Token {
  Tok kind;
  std::string text;
};

class InfixParser {
 public:
  explicit InfixParser(const std::string& text) { tokenize(text); }

  Formula parse() {
    Formula f = iff_level();
    if (peek().kind != Tok::End) parse_error("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  void tokenize(const std::string& s) {
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t len) {
      toks_.push_back({k, s.substr(i, len)});
      i += len;
    };
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
      if (s.compare(i, 3, "<->") == 0) { push(Tok::Iff, 3); continue; }
      if (s.compare(i, 2, "->") == 0) { push(Tok::Implies, 2); continue; }
      if (s.compare(i, 2, "!=") == 0) { push(Tok::Neq, 2); continue; }
      switch (c) {
        case '(': push(Tok::LParen, 1); continue;
        case ')': push(Tok::RParen, 1); continue;
        case ',': push(Tok::Comma, 1); continue;
        case '.': push(Tok::Dot, 1); continue;
        case '!': push(Tok::Not, 1); continue;
        case '&': push(Tok::And, 1); continue;
        case '|': push(Tok::Or, 1); continue;
        case '=': push(Tok::Eq, 1); continue;
        case '<': push(Tok::Lt, 1); continue;
        default: break;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        push(Tok::Int, j - i);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
          ++j;
        push(Tok::Ident, j - i);
        continue;
      }
      parse_error(std::string("unexpected character '") + c + "'");
    }
    toks_.push_back({Tok::End, "end of input"});
  }

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) parse_error(std::string("expected ") + what + ", got '" + peek().text + "'");
  }

  Formula iff_level() {
    Formula f = implies_level();
    while (accept(Tok::Iff)) f = iff(f, implies_level());
    return f;
  }

  Formula implies_level() {
    Formula f = or_level();
    if (accept(Tok::Implies)) return implies(f, implies_level());
    return f;
  }

  Formula or_level() {
    std::vector<Formula> kids = {and_level()};
    while (accept(Tok::Or)) kids.push_back(and_level());
    return kids.size() == 1 ? kids[0] : make(FormulaKind::Or, {}, {}, std::move(kids));
  }

  Formula and_level() {
    std::vector<Formula> kids = {unary()};
    while (accept(Tok::And)) kids.push_back(unary());
    return kids.size() == 1 ? kids[0] : make(FormulaKind::And, {}, {}, std::move(kids));
  }

  Formula unary() {
    if (accept(Tok::Not)) return negate(unary());
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
      bool all = take().text == "forall";
      std::vector<std::string> vars;
      do {
        const Token v = take();
        if (v.kind != Tok::Ident || is_keyword(v.text)) parse_error("expected a variable after quantifier");
        vars.push_back(v.text);
      } while (accept(Tok::Comma));
      Formula body = accept(Tok::Dot) ? iff_level() : unary();
      return all ? forall(vars, body) : exists(vars, body);
    }
    return primary();
  }

  static bool is_keyword(const std::string& s) {
    return s == "forall" || s == "exists" || s == "true" || s == "false";
  }

  Term term() {
    Token t = take();
    if (t.kind == Tok::Int) return Term::constant(std::stoi(t.text));
    if (t.kind == Tok::Ident && !is_keyword(t.text)) return Term::variable(t.text);
    parse_error("expected a term, got '" + t.text + "'");
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      Formula f = iff_level();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident && t.text == "true") { take(); return f_true(); }
    if (t.kind == Tok::Ident && t.text == "false") { take(); return f_false(); }
    if (t.kind == Tok::Ident && peek(1).kind == Tok::LParen) {
      std::string rel = take().text;
      take();
      std::vector<Term> args;
      if (!accept(Tok::RParen)) {
        do args.push_back(term());
        while (accept(Tok::Comma));
        expect(Tok::RParen, "')'");
      }
      return atom(rel, std::move(args));
    }
    Term a = term();
    Token op = take();
    Term b = term();
    switch (op.kind) {
      case Tok::Eq: return equal(a, b);
      case Tok::Neq: return negate(equal(a, b));
      case Tok::Lt: return atom("<", {a, b});
      default: parse_error("expected '=', '!=' or '<', got '" + op.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Forall:
    case FormulaKind::Exists: return 0;
    default: return 5;
  }
}

bool is_infix_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string infix(const Formula& f);

std::string wrapped(const Formula& f, int min_prec) {
  std::string s = infix(f);
  return precedence(f) < min_prec ? "(" + s + ")" : s;
}

std::string infix(const Formula& f) {
  auto join = [&](const char* op, int prec) {
    if (f->children.empty()) return std::string(f->kind == FormulaKind::And ? "true" : "false");
    std::string s;
    for (std::size_t i = 0; i < f->children.size(); ++i) {
      if (i) s += op;
      // Nested same-level operators are bracketed so the tree shape survives.
      s += wrapped(f->children[i], prec + 1);
    }
    return f->children.size() == 1 ? "(" + s + ")" : s;
  };
  switch (f->kind) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::Atom: {
      if (f->name == "<" && f->terms.size() == 2)
        return term_text(f->terms[0]) + " < " + term_text(f->terms[1]);
      if (!is_infix_name(f->name))
        throw Error(ErrorCode::ParseError, "relation " + f->name + " has no infix form");
      std::string s = f->name + "(";
      for (std::size_t i = 0; i < f->terms.size(); ++i)
        s += (i ? "," : "") + term_text(f->terms[i]);
      return s + ")";
    }
    case FormulaKind::Equal:
      return term_text(f->terms[0]) + " = " + term_text(f->terms[1]);
    case FormulaKind::Not: {
      const Formula& c = f->children[0];
      if (c->kind == FormulaKind::Equal)
        return term_text(c->terms[0]) + " != " + term_text(c->terms[1]);
      return "!" + wrapped(c, 5);
    }
    case FormulaKind::And: return join(" & ", 4);
    case FormulaKind::Or: return join(" | ", 3);
    case FormulaKind::Implies:
      return wrapped(f->children[0], 3) + " -> " + wrapped(f->children[1], 2);
    case FormulaKind::Iff:
      return wrapped(f->children[0], 2) + " <-> " + wrapped(f->children[1], 2);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return std::string(f->kind == FormulaKind::Forall ? "forall " : "exists ") + f->name +
             ". " + infix(f->children[0]);
  }
  return {};
}

}  // namespace

std::string to_sexpr(const Formula& f) {
  std::string out;
  sexpr(f, out);
  return out;
}

Formula parse_sexpr(const std::string& text) { return SexprParser(text).parse(); }

std::string to_infix(const Formula& f) { return infix(f); }

Formula parse_infix(const std::string& text) { return InfixParser(text).parse(); }

Formula parse_formula(const std::string& text) {
  try {
    return parse_sexpr(text);
  } catch (const Error&) {
    return parse_infix(text);
  }
}

// ---------------------------------------------------------------- syntax queries

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::vector<std::string> bound;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    for (const auto& t : g->terms) {
      if (t.is_constant()) continue;
      if (std::find(bound.begin(), bound.end(), t.var) != bound.end()) continue;
      if (seen.insert(t.var).second) out.push_back(t.var);
    }
    if (is_quantifier(g->kind)) bound.push_back(g->name);
    for (const auto& c : g->children) walk(c);
    if (is_quantifier(g->kind)) bound.pop_back();
  };
  walk(f);
  return out;
}

int quantifier_count(const Formula& f) {
  int n = is_quantifier(f->kind) ? 1 : 0;
  for (const auto& c : f->children) n += quantifier_count(c);
  return n;
}

bool is_quantifier_free(const Formula& f) { return quantifier_count(f) == 0; }

void check_schema(const Formula& f, const Schema& schema) {
  if (f->kind == FormulaKind::Atom) {
    auto r = schema.find(f->name);
    if (!r) throw Error(ErrorCode::SchemaMismatch, "relation " + f->name + " not in schema");
    if (static_cast<int>(f->terms.size()) != schema[*r].arity)
      throw Error(ErrorCode::SchemaMismatch,
                  "relation " + f->name + " used with " + std::to_string(f->terms.size()) +
                      " arguments, arity " + std::to_string(schema[*r].arity));
  }
  for (const auto& c : f->children) check_schema(c, schema);
}

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& names) {
  std::function<Formula(const Formula&, const std::set<std::string>&)> go =
      [&](const Formula& g, const std::set<std::string>& bound) -> Formula {
    switch (g->kind) {
      case FormulaKind::True:
      case FormulaKind::False: return g;
      case FormulaKind::Atom:
      case FormulaKind::Equal: {
        bool changed = false;
        std::vector<Term> ts = g->terms;
        for (auto& t : ts) {
          if (t.is_constant() || bound.count(t.var)) continue;
          auto it = names.find(t.var);
          if (it != names.end()) {
            t.var = it->second;
            changed = true;
          }
        }
        return changed ? make(g->kind, g->name, std::move(ts)) : g;
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        auto b = bound;
        b.insert(g->name);
        Formula body = go(g->children[0], b);
        return body == g->children[0] ? g : make(g->kind, g->name, {}, {body});
      }
      default: {
        std::vector<Formula> kids;
        bool changed = false;
        for (const auto& c : g->children) {
          kids.push_back(go(c, bound));
          changed |= kids.back() != c;
        }
        return changed ? make(g->kind, {}, {}, std::move(kids)) : g;
      }
    }
  };
  return go(f, {});
}

// ---------------------------------------------------------------- normal forms

namespace {

Formula nnf_of(const Formula& f, bool neg) {
  switch (f->kind) {
    case FormulaKind::True: return neg ? f_false() : f;
    case FormulaKind::False: return neg ? f_true() : f;
    case FormulaKind::Atom:
    case FormulaKind::Equal: return neg ? negate(f) : f;
    case FormulaKind::Not: return nnf_of(f->children[0], !neg);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f->children) kids.push_back(nnf_of(c, neg));
      bool is_and = (f->kind == FormulaKind::And) != neg;
      return make(is_and ? FormulaKind::And : FormulaKind::Or, {}, {}, std::move(kids));
    }
    case FormulaKind::Implies: {
      // a -> b  ==  !a | b
      Formula a = nnf_of(f->children[0], !neg), b = nnf_of(f->children[1], neg);
      return make(neg ? FormulaKind::And : FormulaKind::Or, {}, {}, {a, b});
    }
    case FormulaKind::Iff: {
      const Formula &a = f->children[0], &b = f->children[1];
      Formula both = make(FormulaKind::And, {}, {}, {nnf_of(a, false), nnf_of(b, neg)});
      Formula neither = make(FormulaKind::And, {}, {}, {nnf_of(a, true), nnf_of(b, !neg)});
      return make(FormulaKind::Or, {}, {}, {both, neither});
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool all = (f->kind == FormulaKind::Forall) != neg;
      return make(all ? FormulaKind::Forall : FormulaKind::Exists, f->name, {},
                  {nnf_of(f->children[0], neg)});
    }
  }
  return f;
}

// Renames bound variables apart from each other and from the free ones.
Formula rename_apart(const Formula& f) {
  std::set<std::string> used;
  for (const auto& v : free_variables(f)) used.insert(v);
  std::function<Formula(const Formula&, const std::map<std::string, std::string>&)> go =
      [&](const Formula& g, const std::map<std::string, std::string>& env) -> Formula {
    if (is_quantifier(g->kind)) {
      std::string v = g->name;
      if (used.count(v)) {
        int i = 1;
        while (used.count(g->name + "_" + std::to_string(i))) ++i;
        v = g->name + "_" + std::to_string(i);
      }
      used.insert(v);
      auto e = env;
      e[g->name] = v;
      return make(g->kind, v, {}, {go(g->children[0], e)});
    }
    if (g->kind == FormulaKind::Atom || g->kind == FormulaKind::Equal) {
      std::vector<Term> ts = g->terms;
      for (auto& t : ts) {
        if (t.is_constant()) continue;
        auto it = env.find(t.var);
        if (it != env.end()) t.var = it->second;
      }
      return make(g->kind, g->name, std::move(ts));
    }
    std::vector<Formula> kids;
    for (const auto& c : g->children) kids.push_back(go(c, env));
    return make(g->kind, g->name, {}, std::move(kids));
  };
  return go(f, {});
}

using Prefix = std::vector<std::pair<bool, std::string>>;

Formula pull(const Formula& f, Prefix& prefix, PrenexPreference pref) {
  if (is_quantifier(f->kind)) {
    prefix.emplace_back(f->kind == FormulaKind::Forall, f->name);
    return pull(f->children[0], prefix, pref);
  }
  if (f->kind != FormulaKind::And && f->kind != FormulaKind::Or) return f;
  std::vector<Prefix> parts(f->children.size());
  std::vector<Formula> kids;
  for (std::size_t i = 0; i < f->children.size(); ++i)
    kids.push_back(pull(f->children[i], parts[i], pref));
  std::vector<std::size_t> at(parts.size(), 0);
  const bool first = pref == PrenexPreference::ForallFirst;
  while (true) {
    bool has_first = false, has_any = false;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (at[i] < parts[i].size()) {
        has_any = true;
        has_first |= parts[i][at[i]].first == first;
      }
    if (!has_any) break;
    const bool q = has_first ? first : !first;
    for (std::size_t i = 0; i < parts.size(); ++i)
      while (at[i] < parts[i].size() && parts[i][at[i]].first == q) prefix.push_back(parts[i][at[i]++]);
  }
  return make(f->kind, {}, {}, std::move(kids));
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_of(f, false); }

Formula PrenexForm::formula() const {
  Formula f = matrix;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    f = it->first ? forall(it->second, f) : exists(it->second, f);
  return f;
}

PrenexForm prenex(const Formula& f, PrenexPreference pref) {
  PrenexForm p;
  p.matrix = pull(rename_apart(nnf(f)), p.prefix, pref);
  return p;
}

const char* to_string(FragmentTag t) {
  switch (t) {
    case FragmentTag::QuantifierFree: return "QuantifierFree";
    case FragmentTag::ExistsStar: return "ExistsStar";
    case FragmentTag::ForallExists: return "ForallExists";
    case FragmentTag::General: return "General";
  }
  return "?";
}

FragmentTag fragment(const Formula& f) {
  bool any_forall = false, any_exists = false, forall_under_exists = false;
  std::function<void(const Formula&, bool)> walk = [&](const Formula& g, bool under_exists) {
    if (g->kind == FormulaKind::Forall) {
      any_forall = true;
      forall_under_exists |= under_exists;
    }
    if (g->kind == FormulaKind::Exists) {
      any_exists = true;
      under_exists = true;
    }
    for (const auto& c : g->children) walk(c, under_exists);
  };
  walk(nnf(f), false);
  if (!any_forall && !any_exists) return FragmentTag::QuantifierFree;
  if (!any_forall) return FragmentTag::ExistsStar;
  if (!forall_under_exists) return FragmentTag::ForallExists;
  return FragmentTag::General;
}

int small_model_bound(const Formula& phi) {
  int n = static_cast<int>(free_variables(phi).size());
  for (const auto& [is_forall, v] : prenex(negate(phi), PrenexPreference::ExistsFirst).prefix)
    n += !is_forall;
  return std::max(1, n);
}

}  // namespace redukt
