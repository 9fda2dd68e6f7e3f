#include "mlayers/spec.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mlayers/utf8.hpp"

namespace mlayers {

namespace {

bool is_keyword(std::string_view w) {
  return w == "op" || w == "eq" || w == "normalizer" || w == "atoms" || w == "layer";
}

struct Loc {
  std::size_t line = 1;
  std::size_t col = 1;
};

/// Character cursor over UTF-8 text with '#' line comments.
class Cursor {
public:
  explicit Cursor(std::string_view text) : text_(text) {}

  [[nodiscard]] std::size_t pos() const noexcept { return pos_; }
  [[nodiscard]] bool eof() const noexcept { return pos_ >= text_.size(); }
  [[nodiscard]] std::string_view rest() const noexcept { return text_.substr(pos_); }

  void skip_ws() {
    while (!eof()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (!eof() && text_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  [[nodiscard]] char32_t peek() const noexcept {
    if (eof()) return 0;
    std::size_t len = 0;
    return utf8::decode(text_, pos_, len);
  }

  char32_t next() {
    std::size_t len = 0;
    const char32_t c = utf8::decode(text_, pos_, len);
    pos_ += len;
    return c;
  }

  void advance(std::size_t bytes) { pos_ += bytes; }

  [[nodiscard]] Loc loc(std::size_t at) const {
    Loc l;
    for (std::size_t i = 0; i < at && i < text_.size();) {
      std::size_t len = 0;
      const char32_t c = utf8::decode(text_, i, len);
      i += len;
      if (c == '\n') {
        ++l.line;
        l.col = 1;
      } else {
        ++l.col;
      }
    }
    return l;
  }
  [[nodiscard]] Loc loc() const { return loc(pos_); }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    const auto l = loc(at);
    throw ParseError(msg, l.line, l.col);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  bool accept(std::string_view s) {
    skip_ws();
    if (rest().substr(0, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'" + found());
  }

  /// Identifier at the cursor, or empty.
  std::string ident() {
    skip_ws();
    if (!utf8::is_ident_start(peek())) return {};
    const std::size_t start = pos_;
    next();
    while (!eof() && (utf8::is_ident_char(peek()) || peek() == '\'')) next();
    return std::string(text_.substr(start, pos_ - start));
  }

  /// Looks at the word after the cursor without consuming it.
  [[nodiscard]] std::string peek_word() const {
    Cursor c = *this;
    return c.ident();
  }

  std::string number() {
    skip_ws();
    const std::size_t start = pos_;
    while (!eof() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string quoted() {
    skip_ws();
    const std::size_t start = pos_;
    if (eof() || text_[pos_] != '"') return {};
    ++pos_;
    std::string out;
    while (!eof() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      if (text_[pos_] == '\n') fail("unterminated string", start);
      out += text_[pos_++];
    }
    if (eof()) fail("unterminated string", start);
    ++pos_;
    if (out.empty()) fail("empty operation name", start);
    return out;
  }

  [[nodiscard]] std::string found() const {
    if (eof()) return ", found end of input";
    std::size_t len = 0;
    utf8::decode(text_, pos_, len);
    return ", found '" + std::string(text_.substr(pos_, len)) + "'";
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Terms

struct Node {
  bool is_name = false;  // identifier not resolved to an operation
  std::string name;
  std::optional<ParamExpr> param;
  std::vector<Node> args;
  std::size_t at = 0;
};

struct TermContext {
  const Signature& sig;
  const std::map<std::string, int>& precedence;
  const std::map<std::string, std::string>* unavailable = nullptr;  // op name -> reason
  bool param_vars = true;      // equations: parameter expressions; programs: literals
  bool statement = false;      // a ';' before a keyword or '}' ends the statement
};

class TermParser {
public:
  TermParser(Cursor& c, const TermContext& ctx) : c_(c), ctx_(ctx) {}

  Node expr(int min_prec = 0) {
    Node lhs = primary();
    for (;;) {
      c_.skip_ws();
      const std::size_t at = c_.pos();
      const OpSymbol* op = infix_op();
      if (!op) {
        stray();
        break;
      }
      const int prec = precedence(op->name);
      if (prec < min_prec) break;
      c_.advance(op->name.size());
      Node n{false, op->name, std::nullopt, {}, at};
      if (op->parameterized) n.param = bracket_param(op->name);
      else if (c_.accept("[")) c_.fail("operation '" + op->name + "' takes no parameter", at);
      n.args.push_back(std::move(lhs));
      n.args.push_back(expr(prec + 1));
      lhs = std::move(n);
    }
    return lhs;
  }

private:
  int precedence(const std::string& op) const {
    auto it = ctx_.precedence.find(op);
    return it == ctx_.precedence.end() ? 0 : it->second;
  }

  /// Longest operation name of the signature starting at the cursor whose
  /// text is symbolic (identifier names are only used in call syntax).
  const OpSymbol* symbolic_op(bool binary_only) {
    const auto rest = c_.rest();
    const OpSymbol* best = nullptr;
    for (const auto& op : ctx_.sig.ops()) {
      if (utf8::is_identifier(op.name) || (binary_only && op.arity != 2)) continue;
      if (rest.substr(0, op.name.size()) == op.name && (!best || op.name.size() > best->name.size())) best = &op;
    }
    if (!best && ctx_.unavailable)
      for (const auto& [name, why] : *ctx_.unavailable)
        if (!utf8::is_identifier(name) && rest.substr(0, name.size()) == name) c_.fail(why);
    return best;
  }

  const OpSymbol* infix_op() {
    if (c_.eof()) return nullptr;
    const char32_t ch = c_.peek();
    if (ch == ')' || ch == ',' || ch == '=' || ch == ']' || ch == '}') return nullptr;
    if (ctx_.statement && ch == ';' && ends_statement()) return nullptr;
    return symbolic_op(true);
  }

  /// Fails on text that can neither continue nor end a term.
  void stray() {
    if (c_.eof()) return;
    const char32_t ch = c_.peek();
    if (ch == ')' || ch == ',' || ch == '=' || ch == ']' || ch == '}' || ch == ';') return;
    std::size_t len = 0;
    utf8::decode(c_.rest(), 0, len);
    if (utf8::is_ident_char(ch) || ch == '(' || ch == '"' || ch == '[')
      c_.fail("expected an operation between terms, found '" + std::string(c_.rest().substr(0, len)) + "'");
    c_.fail("undeclared operation '" + std::string(c_.rest().substr(0, len)) + "'");
  }

  bool ends_statement() const {
    Cursor look = c_;
    look.advance(1);
    look.skip_ws();
    if (look.eof() || look.peek() == '}') return true;
    return is_keyword(look.peek_word());
  }

  ParamExpr bracket_param(const std::string& op) {
    const std::size_t at = c_.pos();
    if (!c_.accept("[")) c_.fail("operation '" + op + "' needs a parameter in brackets", at);
    ParamExpr p = ctx_.param_vars ? param_sum() : param_literal();
    c_.expect("]");
    return p;
  }

  ParamExpr param_literal() {
    c_.skip_ws();
    const std::size_t at = c_.pos();
    std::string num = c_.number();
    if (num.empty()) c_.fail("expected a rational literal" + c_.found());
    if (c_.accept("/")) {
      std::string den = c_.number();
      if (den.empty()) c_.fail("expected a denominator" + c_.found());
      if (den.find_first_not_of('0') == std::string::npos) c_.fail("zero denominator", at);
      num += "/" + den;
    } else if (num != "0" && num != "1") {
      c_.fail("rational literal '" + num + "' needs an explicit denominator", at);
    }
    const Rational r = Rational::parse(num);
    if (!r.in_unit_interval()) c_.fail("parameter " + r.str() + " is not in [0,1]", at);
    return ParamExpr::constant(r);
  }

  ParamExpr param_sum() {
    ParamExpr l = param_product();
    for (;;) {
      if (c_.accept("+")) l = ParamExpr::binary(ParamExpr::Op::Add, l, param_product());
      else if (c_.accept("-")) l = ParamExpr::binary(ParamExpr::Op::Sub, l, param_product());
      else return l;
    }
  }

  ParamExpr param_product() {
    ParamExpr l = param_atom();
    for (;;) {
      if (c_.accept("*")) l = ParamExpr::binary(ParamExpr::Op::Mul, l, param_atom());
      else if (c_.accept("/")) l = ParamExpr::binary(ParamExpr::Op::Div, l, param_atom());
      else return l;
    }
  }

  ParamExpr param_atom() {
    if (c_.accept("(")) {
      ParamExpr e = param_sum();
      c_.expect(")");
      return e;
    }
    if (c_.accept("-")) return ParamExpr::negate(param_atom());
    std::string num = c_.number();
    if (!num.empty()) return ParamExpr::constant(Rational::parse(num));
    std::string name = c_.ident();
    if (name.empty()) c_.fail("expected a parameter expression" + c_.found());
    return ParamExpr::var(name);
  }

  Node call(const OpSymbol& op, std::size_t at) {
    Node n{false, op.name, std::nullopt, {}, at};
    c_.skip_ws();
    if (op.parameterized) n.param = bracket_param(op.name);
    else if (c_.peek() == '[') c_.fail("operation '" + op.name + "' takes no parameter");
    if (c_.accept("(")) {
      c_.skip_ws();
      if (c_.peek() != ')') {
        n.args.push_back(expr());
        while (c_.accept(",")) n.args.push_back(expr());
      }
      c_.expect(")");
    }
    if (n.args.size() != op.arity)
      c_.fail("operation '" + op.name + "' expects " + std::to_string(op.arity) + " argument(s), got " +
                  std::to_string(n.args.size()),
              at);
    return n;
  }

  const OpSymbol& declared(const std::string& name, std::size_t at) {
    if (const auto* op = ctx_.sig.find(name)) return *op;
    if (ctx_.unavailable)
      if (auto it = ctx_.unavailable->find(name); it != ctx_.unavailable->end()) c_.fail(it->second, at);
    c_.fail("undeclared operation '" + name + "'", at);
  }

  Node primary() {
    c_.skip_ws();
    const std::size_t at = c_.pos();
    if (c_.eof()) c_.fail("expected a term, found end of input");
    if (c_.accept("(")) {
      Node n = expr();
      c_.expect(")");
      return n;
    }
    if (c_.peek() == '"') {
      std::string name = c_.quoted();
      return call(declared(name, at), at);
    }
    if (utf8::is_ident_start(c_.peek())) {
      std::string name = c_.ident();
      if (is_keyword(name)) c_.fail("unexpected keyword '" + name + "'", at);
      const OpSymbol* op = ctx_.sig.find(name);
      Cursor look = c_;
      look.skip_ws();
      const bool applied = look.peek() == '(' || look.peek() == '[';
      if (!op && applied) op = &declared(name, at);
      if (op) return call(*op, at);
      if (ctx_.unavailable)
        if (auto it = ctx_.unavailable->find(name); it != ctx_.unavailable->end()) c_.fail(it->second, at);
      return Node{true, name, std::nullopt, {}, at};
    }
    if (c_.peek() >= '0' && c_.peek() <= '9') {
      // numerals name constants, e.g. "0"
      std::string num = c_.number();
      return call(declared(num, at), at);
    }
    if (const OpSymbol* op = symbolic_op(false)) {
      c_.advance(op->name.size());
      return call(*op, at);
    }
    std::size_t len = 0;
    utf8::decode(c_.rest(), 0, len);
    c_.fail("undeclared operation '" + std::string(c_.rest().substr(0, len)) + "'");
  }

  Cursor& c_;
  const TermContext& ctx_;
};

Term to_term(const Node& n, std::vector<std::string>& context) {
  if (n.is_name) {
    auto it = std::find(context.begin(), context.end(), n.name);
    if (it != context.end()) return Term::var(static_cast<std::size_t>(it - context.begin()));
    context.push_back(n.name);
    return Term::var(context.size() - 1);
  }
  std::vector<Term> args;
  for (const auto& a : n.args) args.push_back(to_term(a, context));
  return Term::app(n.name, std::move(args), n.param);
}

Value to_value(const Node& n, const Cursor& c, const std::vector<std::string>& atoms) {
  if (n.is_name) {
    if (std::find(atoms.begin(), atoms.end(), n.name) == atoms.end()) c.fail("unbound atom '" + n.name + "'", n.at);
    return Value::leaf(Value::atom(n.name));
  }
  std::vector<Value> args;
  for (const auto& a : n.args) args.push_back(to_value(a, c, atoms));
  std::optional<Rational> p;
  if (n.param) p = n.param->eval({});
  return Value::app(n.name, p, std::move(args));
}

Equation equation(Cursor& c, const TermContext& ctx) {
  TermParser tp(c, ctx);
  const std::size_t at = c.pos();
  Node l = tp.expr();
  c.expect("=");
  Node r = tp.expr();
  std::vector<std::string> context;
  Term lt = to_term(l, context);
  Term rt = to_term(r, context);
  Equation e{std::move(context), std::move(lt), std::move(rt)};
  try {
    validate(e, ctx.sig);
  } catch (const SignatureError& err) {
    c.fail(err.what(), at);
  }
  return e;
}

std::map<std::string, int> default_precedence(const Signature& sig) {
  // earlier binary operations bind tighter
  std::map<std::string, int> out;
  int p = 100;
  for (const auto& op : sig.ops())
    if (op.arity == 2) {
      out[op.name] = p;
      p -= 10;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Files

struct LayerDraft {
  std::string name;
  Signature sig;
  std::vector<Equation> eqs;
  std::optional<NormalizerKind> kind;
  std::size_t kind_at = 0;
  std::size_t at = 0;
};

class SpecParser {
public:
  explicit SpecParser(std::string_view text) : c_(text) {}

  SpecFile run() {
    for (;;) {
      c_.skip_ws();
      if (c_.eof()) break;
      const std::size_t at = c_.pos();
      const std::string word = c_.ident();
      if (word == "atoms") atoms();
      else if (word == "layer") layer(at);
      else c_.fail("expected 'atoms' or 'layer'" + (word.empty() ? c_.found() : ", found '" + word + "'"), at);
    }
    if (out_.layers.empty()) c_.fail("at least one inner seed required");
    for (const auto& a : out_.atoms)
      for (const auto& l : out_.layers)
        if (l.theory.signature.find(a)) c_.fail("atom '" + a + "' is also an operation of layer '" + l.name + "'", atoms_at_);
    return std::move(out_);
  }

private:
  void atoms() {
    atoms_at_ = c_.pos();
    for (;;) {
      c_.skip_ws();
      const std::size_t at = c_.pos();
      std::string a = c_.ident();
      if (a.empty()) break;
      if (is_keyword(a)) c_.fail("'" + a + "' is a keyword", at);
      if (std::find(out_.atoms.begin(), out_.atoms.end(), a) != out_.atoms.end())
        c_.fail("atom '" + a + "' declared twice", at);
      out_.atoms.push_back(a);
    }
    c_.expect(";");
  }

  void layer(std::size_t at) {
    LayerDraft d;
    d.at = at;
    c_.skip_ws();
    const std::size_t name_at = c_.pos();
    d.name = c_.ident();
    if (d.name.empty()) c_.fail("expected a layer name" + c_.found());
    for (const auto& l : out_.layers)
      if (l.name == d.name) c_.fail("layer '" + d.name + "' declared twice", name_at);
    c_.expect("{");
    for (;;) {
      if (c_.accept("}")) break;
      c_.skip_ws();
      const std::size_t st = c_.pos();
      const std::string word = c_.ident();
      if (word == "op") op(d);
      else if (word == "eq") eq(d);
      else if (word == "normalizer") normalizer(d);
      else if (c_.eof()) c_.fail("unterminated layer '" + d.name + "'", at);
      else c_.fail("expected 'op', 'eq', 'normalizer' or '}'" + (word.empty() ? c_.found() : ", found '" + word + "'"), st);
    }
    finish(std::move(d));
  }

  void op(LayerDraft& d) {
    c_.skip_ws();
    const std::size_t at = c_.pos();
    std::string name = c_.quoted();
    if (name.empty()) name = c_.ident();
    if (name.empty()) c_.fail("expected an operation name" + c_.found());
    if (is_keyword(name)) c_.fail("'" + name + "' is a keyword", at);
    if (name.find_first_of(" \t\n()[],=\"") != std::string::npos)
      c_.fail("operation names may not contain blanks, brackets, ',', '=' or quotes", at);
    if (owner_.count(name)) c_.fail("operation '" + name + "' already declared in layer '" + owner_[name] + "'", at);
    c_.expect(":");
    const std::size_t ar_at = c_.pos();
    const std::string arity = c_.number();
    if (arity.empty()) c_.fail("expected an arity" + c_.found());
    OpSymbol sym{name, std::stoul(arity), false};
    if (sym.arity > 8) c_.fail("arity " + arity + " is too large", ar_at);
    std::optional<int> prec;
    for (;;) {
      const std::string w = c_.peek_word();
      if (w == "param") {
        c_.ident();
        sym.parameterized = true;
      } else if (w == "prec") {
        c_.ident();
        const std::string n = c_.number();
        if (n.empty()) c_.fail("expected a precedence" + c_.found());
        prec = std::stoi(n);
      } else {
        break;
      }
    }
    c_.expect(";");
    d.sig.add(sym);
    owner_[name] = d.name;
    if (sym.arity == 2) out_.precedence[name] = prec.value_or(100 - 10 * static_cast<int>(out_.layers.size()));
  }

  void eq(LayerDraft& d) {
    std::map<std::string, std::string> elsewhere;
    for (const auto& [name, layer] : owner_)
      if (layer != d.name) elsewhere[name] = "operation '" + name + "' belongs to layer '" + layer + "'";
    TermContext ctx{d.sig, out_.precedence, &elsewhere, true, true};
    d.eqs.push_back(equation(c_, ctx));
    c_.expect(";");
  }

  void normalizer(LayerDraft& d) {
    c_.skip_ws();
    d.kind_at = c_.pos();
    const std::string name = c_.ident();
    auto k = parse_normalizer(name);
    if (!k) c_.fail("unknown normalizer '" + name + "'", d.kind_at);
    if (d.kind) c_.fail("layer '" + d.name + "' already names a normalizer", d.kind_at);
    d.kind = k;
    c_.expect(";");
  }

  void finish(LayerDraft d) {
    Theory th{std::move(d.sig), std::move(d.eqs)};
    NormalizerKind kind = NormalizerKind::Generic;
    if (d.kind) {
      kind = *d.kind;
      if (kind != NormalizerKind::Generic && !match_template(th, kind))
        c_.fail("the equations of layer '" + d.name + "' do not match the " + normalizer_name(kind) + " template",
                d.kind_at);
    } else if (auto r = recognize(th)) {
      kind = r->kind;
    }
    const auto role = out_.layers.empty() ? LayerRole::InnerSeed : LayerRole::Outer;
    out_.layers.push_back(LayerSpec{std::move(d.name), std::move(th), kind, role});
  }

  Cursor c_;
  SpecFile out_;
  std::map<std::string, std::string> owner_;
  std::size_t atoms_at_ = 0;
};

std::string quote(const std::string& op) {
  std::string s = "\"";
  for (char ch : op) {
    if (ch == '"' || ch == '\\') s += '\\';
    s += ch;
  }
  return s + "\"";
}

}  // namespace

SpecFile parse_spec(std::string_view text) { return SpecParser(text).run(); }

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(e, path);
  }
}

Equation parse_equation(std::string_view text, const Signature& sig, const std::map<std::string, int>& precedence) {
  Cursor c(text);
  const auto prec = precedence.empty() ? default_precedence(sig) : precedence;
  TermContext ctx{sig, prec, nullptr, true, false};
  Equation e = equation(c, ctx);
  c.skip_ws();
  if (!c.eof()) c.fail("unexpected text after the equation" + c.found());
  return e;
}

Value parse_program(std::string_view text, const Signature& sig, const std::vector<std::string>& atoms,
                    const std::map<std::string, int>& precedence,
                    const std::map<std::string, std::string>* unavailable) {
  Cursor c(text);
  const auto prec = precedence.empty() ? default_precedence(sig) : precedence;
  TermContext ctx{sig, prec, unavailable, false, false};
  TermParser tp(c, ctx);
  Node n = tp.expr();
  c.skip_ws();
  if (!c.eof()) c.fail("unexpected text after the program" + c.found());
  return to_value(n, c, atoms);
}

std::string format_spec(const SpecFile& spec) {
  std::string out;
  if (!spec.atoms.empty()) {
    out += "atoms";
    for (const auto& a : spec.atoms) out += " " + a;
    out += ";\n\n";
  }
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& l = spec.layers[i];
    if (i) out += "\n";
    out += "layer " + l.name + " {\n";
    for (const auto& op : l.theory.signature.ops()) {
      out += "  op " + quote(op.name) + " : " + std::to_string(op.arity);
      if (op.parameterized) out += " param";
      if (auto it = spec.precedence.find(op.name);
          it != spec.precedence.end() && it->second != 100 - 10 * static_cast<int>(i))
        out += " prec " + std::to_string(it->second);
      out += ";\n";
    }
    for (const auto& e : l.theory.equations) out += "  eq " + to_string(e) + ";\n";
    out += "  normalizer " + std::string(normalizer_name(l.normalizer)) + ";\n}\n";
  }
  return out;
}

}  // namespace mlayers
