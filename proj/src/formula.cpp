#include "ccel/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ccel {

bool Signature::has_pred(const std::string& n) const {
  return std::find(preds.begin(), preds.end(), n) != preds.end();
}

bool Signature::has_equiv(const std::string& n) const {
  if (n == "eq" || n == "full") return true;
  for (const auto& e : equivs)
    if (e.name == n) return true;
  return false;
}

bool Signature::equiv_convex(const std::string& n) const {
  if (n == "eq" || n == "full") return true;
  for (const auto& e : equivs)
    if (e.name == n) return e.convex;
  return false;
}

std::vector<std::string> Signature::convex_equiv_names() const {
  std::vector<std::string> out{"full"};
  for (const auto& e : equivs)
    if (e.convex) out.push_back(e.name);
  out.push_back("eq");
  return out;
}

namespace {
FormulaPtr node(Formula f) { return std::make_shared<Formula>(std::move(f)); }
}  // namespace

FormulaPtr Formula::truth(bool value) {
  Formula f;
  f.kind = value ? Kind::True : Kind::False;
  return node(std::move(f));
}
FormulaPtr Formula::less(std::string a, std::string b) {
  Formula f;
  f.kind = Kind::Less;
  f.v0 = std::move(a);
  f.v1 = std::move(b);
  return node(std::move(f));
}
FormulaPtr Formula::var_eq(std::string a, std::string b) {
  Formula f;
  f.kind = Kind::VarEq;
  f.v0 = std::move(a);
  f.v1 = std::move(b);
  return node(std::move(f));
}
FormulaPtr Formula::pred(std::string name, std::string v) {
  Formula f;
  f.kind = Kind::Pred;
  f.name = std::move(name);
  f.v0 = std::move(v);
  return node(std::move(f));
}
FormulaPtr Formula::equiv(std::string name, std::string a, std::string b) {
  Formula f;
  f.kind = Kind::Equiv;
  f.name = std::move(name);
  f.v0 = std::move(a);
  f.v1 = std::move(b);
  return node(std::move(f));
}
FormulaPtr Formula::s_rel(std::string name, int shift, std::string base,
                          std::string member) {
  Formula f;
  f.kind = Kind::SRel;
  f.name = std::move(name);
  f.shift = shift;
  f.v0 = std::move(base);
  f.v1 = std::move(member);
  return node(std::move(f));
}
FormulaPtr Formula::s_cmp(SCmpKind cmp, std::string name, int shift,
                          std::string elem, std::string base) {
  Formula f;
  f.kind = Kind::SCmp;
  f.cmp = cmp;
  f.name = std::move(name);
  f.shift = shift;
  f.v0 = std::move(elem);
  f.v1 = std::move(base);
  return node(std::move(f));
}
FormulaPtr Formula::negate(FormulaPtr a) {
  Formula f;
  f.kind = Kind::Not;
  f.lhs = std::move(a);
  return node(std::move(f));
}
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Kind::And;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Kind::Or;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Kind::Implies;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return node(std::move(f));
}
FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
  Formula f;
  f.kind = Kind::Exists;
  f.name = std::move(var);
  f.lhs = std::move(body);
  return node(std::move(f));
}
FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
  Formula f;
  f.kind = Kind::Forall;
  f.name = std::move(var);
  f.lhs = std::move(body);
  return node(std::move(f));
}

FormulaPtr Formula::conj_all(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return truth(true);
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}
FormulaPtr Formula::disj_all(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return truth(false);
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

bool Formula::is_atom() const {
  switch (kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Less:
    case Kind::VarEq:
    case Kind::Pred:
    case Kind::Equiv:
    case Kind::SRel:
    case Kind::SCmp:
      return true;
    default:
      return false;
  }
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->shift != b->shift ||
      a->cmp != b->cmp || a->v0 != b->v0 || a->v1 != b->v1)
    return false;
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

namespace {
void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  if (!f) return;
  using K = Formula::Kind;
  switch (f->kind) {
    case K::True:
    case K::False:
      return;
    case K::Less:
    case K::VarEq:
    case K::Equiv:
    case K::SRel:
    case K::SCmp:
      if (!bound.count(f->v0)) out.insert(f->v0);
      if (!bound.count(f->v1)) out.insert(f->v1);
      return;
    case K::Pred:
      if (!bound.count(f->v0)) out.insert(f->v0);
      return;
    case K::Not:
      collect_free(f->lhs, bound, out);
      return;
    case K::And:
    case K::Or:
    case K::Implies:
      collect_free(f->lhs, bound, out);
      collect_free(f->rhs, bound, out);
      return;
    case K::Exists:
    case K::Forall: {
      bool was = bound.count(f->name) > 0;
      bound.insert(f->name);
      collect_free(f->lhs, bound, out);
      if (!was) bound.erase(f->name);
      return;
    }
  }
}

void collect_all_vars(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (!f->v0.empty()) out.insert(f->v0);
  if (!f->v1.empty()) out.insert(f->v1);
  if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall)
    out.insert(f->name);
  collect_all_vars(f->lhs, out);
  collect_all_vars(f->rhs, out);
}
}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

int quantifier_depth(const FormulaPtr& f) {
  if (!f) return 0;
  int sub = std::max(quantifier_depth(f->lhs), quantifier_depth(f->rhs));
  if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall)
    return sub + 1;
  return sub;
}

int max_shift_magnitude(const FormulaPtr& f) {
  if (!f) return 0;
  int m = std::max(max_shift_magnitude(f->lhs), max_shift_magnitude(f->rhs));
  if (f->kind == Formula::Kind::SRel || f->kind == Formula::Kind::SCmp)
    m = std::max(m, f->shift >= 0 ? f->shift : -f->shift);
  return m;
}

std::string fresh_var(const std::vector<FormulaPtr>& around, const std::string& stem) {
  std::set<std::string> used;
  for (const auto& f : around) collect_all_vars(f, used);
  for (int i = 0;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

namespace {
FormulaPtr subst(const FormulaPtr& f, std::map<std::string, std::string> env) {
  if (!f) return f;
  using K = Formula::Kind;
  auto ren = [&env](const std::string& v) {
    auto it = env.find(v);
    return it == env.end() ? v : it->second;
  };
  switch (f->kind) {
    case K::True:
    case K::False:
      return f;
    case K::Less:
      return Formula::less(ren(f->v0), ren(f->v1));
    case K::VarEq:
      return Formula::var_eq(ren(f->v0), ren(f->v1));
    case K::Pred:
      return Formula::pred(f->name, ren(f->v0));
    case K::Equiv:
      return Formula::equiv(f->name, ren(f->v0), ren(f->v1));
    case K::SRel:
      return Formula::s_rel(f->name, f->shift, ren(f->v0), ren(f->v1));
    case K::SCmp:
      return Formula::s_cmp(f->cmp, f->name, f->shift, ren(f->v0), ren(f->v1));
    case K::Not:
      return Formula::negate(subst(f->lhs, env));
    case K::And:
      return Formula::conj(subst(f->lhs, env), subst(f->rhs, env));
    case K::Or:
      return Formula::disj(subst(f->lhs, env), subst(f->rhs, env));
    case K::Implies:
      return Formula::implies(subst(f->lhs, env), subst(f->rhs, env));
    case K::Exists:
    case K::Forall: {
      std::string bv = f->name;
      // Rename the binder when a substitution target collides with it.
      bool collision = false;
      for (const auto& [from, to] : env)
        if (to == bv && from != bv) collision = true;
      std::map<std::string, std::string> inner = env;
      inner.erase(bv);
      if (collision) {
        std::string nb = fresh_var({f}, bv);
        inner[bv] = nb;
        bv = nb;
      }
      FormulaPtr body = subst(f->lhs, inner);
      return f->kind == K::Exists ? Formula::exists(bv, body)
                                  : Formula::forall(bv, body);
    }
  }
  return f;
}
}  // namespace

FormulaPtr substitute_free(const FormulaPtr& f,
                           const std::vector<std::pair<std::string, std::string>>& renames) {
  std::map<std::string, std::string> env(renames.begin(), renames.end());
  return subst(f, std::move(env));
}

// --- parser ---------------------------------------------------------------

namespace {

struct Token {
  enum class Type { Ident, Int, Sym, End };
  Type type;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_])))
      ++i_;
    tok_.pos = i_;
    if (i_ >= text_.size()) {
      tok_.type = Token::Type::End;
      tok_.text.clear();
      return;
    }
    char c = text_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        ++j;
      tok_ = {Token::Type::Ident, std::string(text_.substr(i_, j - i_)), i_};
      i_ = j;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[i_ + 1])))) {
      std::size_t j = i_ + 1;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j])))
        ++j;
      tok_ = {Token::Type::Int, std::string(text_.substr(i_, j - i_)), i_};
      i_ = j;
      return;
    }
    // multi-char symbols first
    for (std::string_view sym : {"<=", "->"}) {
      if (text_.substr(i_).rfind(sym, 0) == 0) {
        tok_ = {Token::Type::Sym, std::string(sym), i_};
        i_ += sym.size();
        return;
      }
    }
    tok_ = {Token::Type::Sym, std::string(1, c), i_};
    ++i_;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  Token tok_;
};

// Operand of a comparison: a plain variable or a shifted class term.
struct Operand {
  bool is_s_term = false;
  std::string var;    // variable, or the S-term argument
  std::string equiv;  // S-term only
  int shift = 0;
  std::size_t pos = 0;
};

class Parser {
public:
  Parser(std::string_view text, const Signature& sig) : lex_(text), sig_(sig) {}

  FormulaPtr parse() {
    FormulaPtr f = implication();
    if (lex_.peek().type != Token::Type::End)
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& msg, std::size_t pos) {
    throw ParseError(msg, pos);
  }

  bool at_sym(const std::string& s) {
    return lex_.peek().type == Token::Type::Sym && lex_.peek().text == s;
  }
  bool at_ident(const std::string& s) {
    return lex_.peek().type == Token::Type::Ident && lex_.peek().text == s;
  }
  Token expect_sym(const std::string& s) {
    if (!at_sym(s)) fail("expected '" + s + "'", lex_.peek().pos);
    return lex_.take();
  }

  FormulaPtr implication() {
    FormulaPtr l = disjunction();
    if (at_sym("->")) {
      lex_.take();
      return Formula::implies(l, implication());
    }
    return l;
  }

  FormulaPtr disjunction() {
    FormulaPtr l = conjunction();
    while (at_sym("|")) {
      lex_.take();
      l = Formula::disj(l, conjunction());
    }
    return l;
  }

  FormulaPtr conjunction() {
    FormulaPtr l = unary();
    while (at_sym("&")) {
      lex_.take();
      l = Formula::conj(l, unary());
    }
    return l;
  }

  FormulaPtr unary() {
    if (at_sym("!")) {
      lex_.take();
      return Formula::negate(unary());
    }
    if (at_ident("exists") || at_ident("forall")) {
      bool ex = lex_.peek().text == "exists";
      lex_.take();
      Token v = lex_.take();
      if (v.type != Token::Type::Ident || !is_variable(v.text))
        fail("expected a variable after quantifier", v.pos);
      expect_sym(".");
      FormulaPtr body = implication();
      return ex ? Formula::exists(v.text, body) : Formula::forall(v.text, body);
    }
    return atom_or_group();
  }

  bool is_variable(const std::string& name) const {
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])))
      return false;
    for (char c : name)
      if (!std::islower(static_cast<unsigned char>(c)) &&
          !std::isdigit(static_cast<unsigned char>(c)))
        return false;
    return name != "exists" && name != "forall" && name != "true" &&
           name != "false";
  }

  FormulaPtr atom_or_group() {
    const Token& t = lex_.peek();
    if (at_sym("(")) {
      lex_.take();
      FormulaPtr f = implication();
      expect_sym(")");
      return f;
    }
    if (at_ident("true")) {
      lex_.take();
      return Formula::truth(true);
    }
    if (at_ident("false")) {
      lex_.take();
      return Formula::truth(false);
    }
    if (t.type != Token::Type::Ident)
      fail("expected an atom", t.pos);

    // Applied name: P(x), E(x,y), or an S-term.
    if (t.text == "S") {
      Operand s = s_term();
      return finish_comparison_with_s_lhs(s);
    }
    Token id = lex_.take();
    if (at_sym("(")) return application(id);
    if (!is_variable(id.text)) fail("unknown symbol '" + id.text + "'", id.pos);
    // Plain variable: must start a comparison.
    Operand l;
    l.var = id.text;
    l.pos = id.pos;
    return finish_comparison_with_var_lhs(l);
  }

  // S[equiv,shift](...) -- one argument yields a comparison operand, two
  // arguments a membership atom handled by the caller via `two_arg`.
  Operand s_term() {
    Token s = lex_.take();  // 'S'
    expect_sym("[");
    Token name = lex_.take();
    if (name.type != Token::Type::Ident)
      fail("expected an equivalence name", name.pos);
    if (!sig_.has_equiv(name.text))
      fail("unknown symbol '" + name.text + "'", name.pos);
    if (!sig_.equiv_convex(name.text))
      fail("successor atom over non-convex equivalence '" + name.text + "'",
           name.pos);
    expect_sym(",");
    Token num = lex_.take();
    if (num.type != Token::Type::Int)
      fail("expected an integer shift", num.pos);
    expect_sym("]");
    expect_sym("(");
    Token a0 = lex_.take();
    if (a0.type != Token::Type::Ident || !is_variable(a0.text))
      fail("expected a variable", a0.pos);
    Operand op;
    op.is_s_term = true;
    op.equiv = name.text;
    op.shift = std::stoi(num.text);
    op.var = a0.text;
    op.pos = s.pos;
    if (at_sym(",")) {
      lex_.take();
      Token a1 = lex_.take();
      if (a1.type != Token::Type::Ident || !is_variable(a1.text))
        fail("expected a variable", a1.pos);
      expect_sym(")");
      two_arg_ = Formula::s_rel(op.equiv, op.shift, a0.text, a1.text);
      return op;
    }
    expect_sym(")");
    return op;
  }

  FormulaPtr finish_comparison_with_s_lhs(const Operand& s) {
    if (two_arg_) {
      FormulaPtr f = two_arg_;
      two_arg_ = nullptr;
      return f;
    }
    // S[...](y) < x  |  S[...](y) <= x
    bool strict;
    if (at_sym("<")) {
      strict = true;
    } else if (at_sym("<=")) {
      strict = false;
    } else {
      fail("expected '<' or '<=' after class term", lex_.peek().pos);
    }
    lex_.take();
    Operand r = operand();
    if (r.is_s_term)
      fail("cannot compare two class terms", r.pos);
    return Formula::s_cmp(strict ? SCmpKind::AboveStrict : SCmpKind::AboveEq,
                          s.equiv, s.shift, r.var, s.var);
  }

  FormulaPtr finish_comparison_with_var_lhs(const Operand& l) {
    if (at_sym("=")) {
      lex_.take();
      Operand r = operand();
      if (r.is_s_term) fail("cannot equate a variable with a class term", r.pos);
      return Formula::var_eq(l.var, r.var);
    }
    bool strict;
    if (at_sym("<")) {
      strict = true;
    } else if (at_sym("<=")) {
      strict = false;
    } else {
      fail("expected a comparison operator", lex_.peek().pos);
    }
    lex_.take();
    Operand r = operand();
    if (r.is_s_term)
      return Formula::s_cmp(strict ? SCmpKind::BelowStrict : SCmpKind::BelowEq,
                            r.equiv, r.shift, l.var, r.var);
    if (!strict)
      fail("'<=' between plain variables is not an atom; use '<' or '='",
           r.pos);
    return Formula::less(l.var, r.var);
  }

  Operand operand() {
    const Token& t = lex_.peek();
    if (t.type != Token::Type::Ident) fail("expected an operand", t.pos);
    if (t.text == "S") {
      Operand s = s_term();
      if (two_arg_) fail("membership atom cannot be a comparison operand", t.pos);
      return s;
    }
    Token id = lex_.take();
    if (!is_variable(id.text)) fail("unknown symbol '" + id.text + "'", id.pos);
    Operand op;
    op.var = id.text;
    op.pos = id.pos;
    return op;
  }

  FormulaPtr application(const Token& id) {
    expect_sym("(");
    Token a0 = lex_.take();
    if (a0.type != Token::Type::Ident || !is_variable(a0.text))
      fail("expected a variable", a0.pos);
    if (at_sym(",")) {
      lex_.take();
      Token a1 = lex_.take();
      if (a1.type != Token::Type::Ident || !is_variable(a1.text))
        fail("expected a variable", a1.pos);
      expect_sym(")");
      if (!sig_.has_equiv(id.text))
        fail("unknown symbol '" + id.text + "'", id.pos);
      return Formula::equiv(id.text, a0.text, a1.text);
    }
    expect_sym(")");
    if (!sig_.has_pred(id.text))
      fail("unknown symbol '" + id.text + "'", id.pos);
    return Formula::pred(id.text, a0.text);
  }

  Lexer lex_;
  const Signature& sig_;
  FormulaPtr two_arg_;
};

int precedence(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::Implies:
      return 1;
    case K::Exists:
    case K::Forall:
      return 1;  // body extends maximally, like an implication tail
    case K::Or:
      return 2;
    case K::And:
      return 3;
    default:
      return 5;  // atoms and Not render self-delimited
  }
}

void render(const FormulaPtr& f, int parent_prec, std::string& out) {
  using K = Formula::Kind;
  int prec = precedence(f->kind);
  bool parens = prec < parent_prec;
  if (parens) out += "(";
  switch (f->kind) {
    case K::True:
      out += "true";
      break;
    case K::False:
      out += "false";
      break;
    case K::Less:
      out += f->v0 + " < " + f->v1;
      break;
    case K::VarEq:
      out += f->v0 + " = " + f->v1;
      break;
    case K::Pred:
      out += f->name + "(" + f->v0 + ")";
      break;
    case K::Equiv:
      out += f->name + "(" + f->v0 + ", " + f->v1 + ")";
      break;
    case K::SRel:
      out += "S[" + f->name + "," + std::to_string(f->shift) + "](" + f->v0 +
             ", " + f->v1 + ")";
      break;
    case K::SCmp: {
      std::string term =
          "S[" + f->name + "," + std::to_string(f->shift) + "](" + f->v1 + ")";
      switch (f->cmp) {
        case SCmpKind::BelowStrict:
          out += f->v0 + " < " + term;
          break;
        case SCmpKind::BelowEq:
          out += f->v0 + " <= " + term;
          break;
        case SCmpKind::AboveStrict:
          out += term + " < " + f->v0;
          break;
        case SCmpKind::AboveEq:
          out += term + " <= " + f->v0;
          break;
      }
      break;
    }
    case K::Not: {
      out += "!";
      // Applications are self-delimited; everything else gets parentheses.
      if (f->lhs->kind == K::Pred || f->lhs->kind == K::Equiv ||
          f->lhs->kind == K::SRel || f->lhs->kind == K::True ||
          f->lhs->kind == K::False) {
        render(f->lhs, 0, out);
      } else {
        out += "(";
        render(f->lhs, 0, out);
        out += ")";
      }
      break;
    }
    case K::And:
      render(f->lhs, 3, out);
      out += " & ";
      render(f->rhs, 4, out);
      break;
    case K::Or:
      render(f->lhs, 2, out);
      out += " | ";
      render(f->rhs, 3, out);
      break;
    case K::Implies:
      render(f->lhs, 2, out);
      out += " -> ";
      render(f->rhs, 1, out);
      break;
    case K::Exists:
    case K::Forall:
      out += (f->kind == K::Exists ? "exists " : "forall ");
      out += f->name + ". ";
      render(f->lhs, 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  return p.parse();
}

std::string render_formula(const FormulaPtr& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

}  // namespace ccel
