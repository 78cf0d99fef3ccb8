#include "symflux/parser.hpp"

#include <cctype>
#include <optional>

namespace symflux {

namespace {

enum class Tok { Int, Ident, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  SourcePos pos;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {  // comment to end of line
      size_t n = 0;
      while (i + n < text.size() && text[i + n] != '\n') ++n;
      advance(n);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourcePos start = pos;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t n = 0;
      while (i + n < text.size() && std::isdigit(static_cast<unsigned char>(text[i + n]))) ++n;
      out.push_back({Tok::Int, text.substr(i, n), start});
      advance(n);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t n = 0;
      while (i + n < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + n])) || text[i + n] == '_'))
        ++n;
      out.push_back({Tok::Ident, text.substr(i, n), start});
      advance(n);
      continue;
    }
    static const std::string punct = "+-*/^()[]{},=";
    if (punct.find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), start});
      advance(1);
      continue;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  Problem parse_problem() {
    Problem p;
    if (!at_ident("pde")) throw ParseError(peek().pos, "problem must start with a 'pde' declaration");
    parse_pde(p);
    while (peek().kind != Tok::End) {
      if (at_ident("scheme"))
        parse_scheme(p);
      else if (at_ident("hint"))
        parse_hint(p);
      else if (at_ident("option"))
        parse_option(p);
      else
        throw ParseError(peek().pos, "expected 'scheme', 'hint' or 'option', got '" +
                                         peek().text + "'");
    }
    return p;
  }

  Expr parse_standalone_expression() {
    Expr e = parse_expr();
    if (peek().kind != Tok::End)
      throw ParseError(peek().pos, "unexpected trailing input '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t j = idx_ + ahead;
    return j < tokens_.size() ? tokens_[j] : tokens_.back();
  }
  const Token& next() { return tokens_[idx_ < tokens_.size() - 1 ? idx_++ : idx_]; }
  bool at_ident(const std::string& s) const {
    return peek().kind == Tok::Ident && peek().text == s;
  }
  bool at_punct(char c) const { return peek().kind == Tok::Punct && peek().text[0] == c; }
  void expect_punct(char c, const std::string& what) {
    if (!at_punct(c)) throw ParseError(peek().pos, "expected '" + std::string(1, c) + "' " + what);
    next();
  }
  long expect_int(long lo, long hi, const std::string& what) {
    if (peek().kind != Tok::Int) throw ParseError(peek().pos, "expected integer " + what);
    SourcePos pos = peek().pos;
    long v;
    try {
      v = std::stol(next().text);
    } catch (const std::exception&) {
      throw ParseError(pos, "integer literal out of range");
    }
    if (v < lo || v > hi)
      throw ParseError(pos, what + " must lie in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
    return v;
  }

  // ---- declarations ----

  void parse_pde(Problem& p) {
    next();  // pde
    if (!(peek().kind == Tok::Ident && peek().text == "u_t"))
      throw ParseError(peek().pos, "pde declaration must read 'pde u_t = <expression>'");
    next();
    expect_punct('=', "after u_t");
    SourcePos at = peek().pos;
    p.pde_rhs = parse_expr();
    for (Symbol s : p.pde_rhs.support()) {
      if (s.is_sample())
        throw ParseError(at, "grid samples are not allowed in the pde right-hand side");
      if (s.is_jet() && s.jet_t() > 0)
        throw ParseError(at, "the pde right-hand side must not contain t-derivatives");
      if (s == sym_h() || s == sym_tau())
        throw ParseError(at, "step sizes h and tau are not allowed in the pde right-hand side");
    }
  }

  void parse_scheme(Problem& p) {
    SourcePos at = peek().pos;
    next();  // scheme
    if (peek().kind != Tok::Ident) throw ParseError(peek().pos, "expected a scheme name");
    std::string name = next().text;
    for (const auto& s : p.schemes)
      if (s.name == name) throw ParseError(at, "duplicate scheme '" + name + "'");
    expect_punct('{', "after the scheme name");
    SourcePos body = peek().pos;
    Expr stencil = parse_expr();
    expect_punct('=', "after the scheme expression");
    if (!(peek().kind == Tok::Int && peek().text == "0"))
      throw ParseError(peek().pos, "a scheme must be declared equal to 0");
    next();
    expect_punct('}', "closing the scheme");
    bool sampled = false;
    for (Symbol s : stencil.support()) {
      if (s.is_sample()) sampled = true;
      if (s.is_jet())
        throw ParseError(body, "derivatives are not allowed in a scheme; use grid samples");
      if (s == sym_u())
        throw ParseError(body, "grid functions must be sampled: write u[0,0], not u");
    }
    if (!sampled) throw ParseError(body, "scheme contains no grid samples");
    p.schemes.push_back({name, stencil, at});
  }

  void parse_hint(Problem& p) {
    SourcePos at = peek().pos;
    next();  // hint
    if (peek().kind != Tok::Ident) throw ParseError(peek().pos, "expected a component name");
    std::string slot_text = peek().text;
    std::optional<InfSlot> slot;
    for (InfSlot s : kAllSlots)
      if (slot_text == slot_name(s)) slot = s;
    if (!slot)
      throw ParseError(peek().pos,
                       "unknown component '" + slot_text +
                           "' (expected xi1, xi2, eta, zeta1, zeta2 or chi)");
    next();
    if (!at_ident("depends")) throw ParseError(peek().pos, "expected 'depends'");
    next();
    expect_punct('(', "after 'depends'");
    std::set<Symbol> deps;
    while (!at_punct(')')) {
      if (peek().kind != Tok::Ident) throw ParseError(peek().pos, "expected a variable name");
      SourcePos vp = peek().pos;
      Symbol v = base_symbol(next().text, vp);
      deps.insert(v);
      if (at_punct(',')) next();
    }
    next();  // ')'
    const std::set<Symbol> allowed = default_dependencies(*slot, true);
    for (Symbol v : deps)
      if (!allowed.count(v))
        throw ParseError(at, std::string(slot_name(*slot)) + " may not depend on " + v.name() +
                                 "; hints can only restrict the default dependencies");
    if (p.hints.count(*slot)) throw ParseError(at, "duplicate hint for " + slot_text);
    p.hints[*slot] = deps;
  }

  void parse_option(Problem& p) {
    SourcePos at = peek().pos;
    next();  // option
    if (peek().kind != Tok::Ident) throw ParseError(peek().pos, "expected an option name");
    std::string name = next().text;
    expect_punct('=', "after the option name");
    if (name == "taylor_order") {
      if (p.options.taylor_order) throw ParseError(at, "duplicate option taylor_order");
      p.options.taylor_order = static_cast<int>(expect_int(1, 8, "taylor_order"));
    } else if (name == "ansatz_degree") {
      if (p.options.ansatz_degree) throw ParseError(at, "duplicate option ansatz_degree");
      p.options.ansatz_degree = static_cast<int>(expect_int(0, 8, "ansatz_degree"));
    } else if (name == "error_levels") {
      p.options.error_levels = static_cast<int>(expect_int(1, 3, "error_levels"));
    } else {
      throw ParseError(at, "unknown option '" + name + "'");
    }
  }

  Symbol base_symbol(const std::string& name, SourcePos pos) {
    if (name == "x") return sym_x();
    if (name == "t") return sym_t();
    if (name == "u") return sym_u();
    if (name == "nu") return sym_nu();
    if (name == "h") return sym_h();
    if (name == "tau") return sym_tau();
    throw ParseError(pos, "unknown variable '" + name + "'");
  }

  // ---- expressions ----

  Expr parse_expr() {
    Expr e = parse_term();
    while (at_punct('+') || at_punct('-')) {
      bool plus = next().text[0] == '+';
      Expr rhs = parse_term();
      e = plus ? e + rhs : e - rhs;
    }
    return e;
  }

  Expr parse_term() {
    Expr e = parse_unary();
    while (at_punct('*') || at_punct('/')) {
      bool mul = peek().text[0] == '*';
      SourcePos at = next().pos;
      Expr rhs = parse_unary();
      if (mul) {
        e = e * rhs;
      } else {
        auto inv = rhs.inverse();
        if (!inv)
          throw ParseError(at,
                           "division is only defined by nonzero constants times powers of h and tau");
        e = e * *inv;
      }
    }
    return e;
  }

  Expr parse_unary() {
    if (at_punct('-')) {
      next();
      return -parse_unary();
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (!at_punct('^')) return base;
    SourcePos at = next().pos;
    long sign = 1;
    if (at_punct('-')) {
      next();
      sign = -1;
    }
    long k = sign * expect_int(0, 64, "exponent");
    try {
      return base.pow(static_cast<int>(k));
    } catch (const std::domain_error&) {
      throw ParseError(at, "negative powers apply only to constants times h/tau monomials");
    }
  }

  Expr parse_atom() {
    const Token& tk = peek();
    if (tk.kind == Tok::Int) {
      long v = expect_int(0, 1000000000L, "literal");
      return Expr::constant(v);
    }
    if (at_punct('(')) {
      next();
      Expr e = parse_expr();
      expect_punct(')', "to close the parenthesis");
      return e;
    }
    if (tk.kind != Tok::Ident)
      throw ParseError(tk.pos, "expected a number, variable or parenthesised expression");
    std::string name = next().text;
    if (name == "u" && at_punct('[')) return parse_sample(tk.pos);
    if (name.rfind("u_", 0) == 0 && name.size() > 2) {
      int a = 0, b = 0;
      for (size_t k = 2; k < name.size(); ++k) {
        if (name[k] == 'x')
          ++a;
        else if (name[k] == 't')
          ++b;
        else
          throw ParseError(tk.pos, "malformed derivative '" + name + "'");
      }
      return Expr::sym(Symbol::jet(a, b));
    }
    return Expr::sym(base_symbol(name, tk.pos));
  }

  Expr parse_sample(SourcePos at) {
    expect_punct('[', "opening the sample");
    long p2;
    {
      long sign = 1;
      if (at_punct('-')) {
        next();
        sign = -1;
      }
      long num = expect_int(0, 1000, "sample offset");
      long den = 1;
      if (at_punct('/')) {
        next();
        den = expect_int(1, 2, "offset denominator");
        if (den != 2) throw ParseError(at, "offset denominator must be 2");
      }
      p2 = sign * num * (den == 2 ? 1 : 2);
    }
    expect_punct(',', "between sample offsets");
    long q;
    {
      long sign = 1;
      if (at_punct('-')) {
        next();
        sign = -1;
      }
      q = sign * expect_int(0, 1000, "time offset");
    }
    expect_punct(']', "closing the sample");
    return Expr::sym(Symbol::sample(static_cast<int>(p2), static_cast<int>(q)));
  }

  std::vector<Token> tokens_;
  size_t idx_ = 0;
};

}  // namespace

Problem parse_problem(const std::string& text) { return Parser(text).parse_problem(); }

Expr parse_expression(const std::string& text) {
  return Parser(text).parse_standalone_expression();
}

}  // namespace symflux
