#include "mlayers/theory.hpp"

#include <algorithm>
#include <set>

#include "mlayers/utf8.hpp"

namespace mlayers {

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<OpSymbol> ops) {
  for (auto& op : ops) add(std::move(op));
}

void Signature::add(OpSymbol op) {
  if (find(op.name)) throw SignatureError("duplicate operation '" + op.name + "'");
  if (op.name.empty()) throw SignatureError("empty operation name");
  ops_.push_back(std::move(op));
}

const OpSymbol* Signature::find(std::string_view name) const noexcept {
  for (const auto& op : ops_)
    if (op.name == name) return &op;
  return nullptr;
}

const OpSymbol& Signature::at(std::string_view name) const {
  if (const auto* op = find(name)) return *op;
  throw SignatureError("unknown operation '" + std::string(name) + "'");
}

Signature Signature::merged(const Signature& other) const {
  Signature out = *this;
  for (const auto& op : other.ops_) {
    if (const auto* mine = out.find(op.name)) {
      if (!(*mine == op)) throw SignatureError("conflicting declarations of '" + op.name + "'");
      continue;
    }
    out.ops_.push_back(op);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ParamExpr

struct ParamExpr::Node {
  Op op = Op::Const;
  Rational value;
  std::string name;
  std::vector<ParamExpr> kids;
};

ParamExpr ParamExpr::constant(Rational r) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = r;
  return ParamExpr(std::move(n));
}

ParamExpr ParamExpr::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->name = std::move(name);
  return ParamExpr(std::move(n));
}

ParamExpr ParamExpr::binary(Op op, ParamExpr l, ParamExpr r) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->kids = {std::move(l), std::move(r)};
  return ParamExpr(std::move(n));
}

ParamExpr ParamExpr::negate(ParamExpr e) {
  auto n = std::make_shared<Node>();
  n->op = Op::Neg;
  n->kids = {std::move(e)};
  return ParamExpr(std::move(n));
}

ParamExpr::Op ParamExpr::op() const noexcept { return node_->op; }
const Rational& ParamExpr::value() const { return node_->value; }
const std::string& ParamExpr::name() const { return node_->name; }

std::optional<Rational> ParamExpr::eval(const std::map<std::string, Rational>& env) const {
  const auto& n = *node_;
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: {
      auto it = env.find(n.name);
      if (it == env.end()) throw SignatureError("unbound parameter '" + n.name + "'");
      return it->second;
    }
    case Op::Neg: {
      auto v = n.kids[0].eval(env);
      if (!v) return std::nullopt;
      return -*v;
    }
    default: break;
  }
  auto l = n.kids[0].eval(env);
  auto r = n.kids[1].eval(env);
  if (!l || !r) return std::nullopt;
  switch (n.op) {
    case Op::Add: return *l + *r;
    case Op::Sub: return *l - *r;
    case Op::Mul: return *l * *r;
    case Op::Div:
      if (r->is_zero()) return std::nullopt;
      return *l / *r;
    default: return std::nullopt;
  }
}

void ParamExpr::collect_vars(std::vector<std::string>& out) const {
  if (node_->op == Op::Var) {
    if (std::find(out.begin(), out.end(), node_->name) == out.end()) out.push_back(node_->name);
    return;
  }
  for (const auto& k : node_->kids) k.collect_vars(out);
}

ParamExpr ParamExpr::renamed(const std::map<std::string, std::string>& names) const {
  const auto& n = *node_;
  switch (n.op) {
    case Op::Const: return *this;
    case Op::Var: {
      auto it = names.find(n.name);
      return it == names.end() ? *this : var(it->second);
    }
    case Op::Neg: return negate(n.kids[0].renamed(names));
    default: return binary(n.op, n.kids[0].renamed(names), n.kids[1].renamed(names));
  }
}

namespace {

int precedence(ParamExpr::Op op) {
  switch (op) {
    case ParamExpr::Op::Add:
    case ParamExpr::Op::Sub: return 1;
    case ParamExpr::Op::Mul:
    case ParamExpr::Op::Div: return 2;
    case ParamExpr::Op::Neg: return 3;
    default: return 4;
  }
}

}  // namespace

std::string ParamExpr::str() const {
  const auto& n = *node_;
  switch (n.op) {
    case Op::Const: return n.value.str();
    case Op::Var: return n.name;
    case Op::Neg: {
      std::string inner = n.kids[0].str();
      if (precedence(n.kids[0].op()) < 3) inner = "(" + inner + ")";
      return "-" + inner;
    }
    default: break;
  }
  const char* sym = n.op == Op::Add ? "+" : n.op == Op::Sub ? "-" : n.op == Op::Mul ? "*" : "/";
  int p = precedence(n.op);
  std::string l = n.kids[0].str();
  std::string r = n.kids[1].str();
  if (precedence(n.kids[0].op()) < p) l = "(" + l + ")";
  // right operand of '-' and '/' needs parentheses at equal precedence
  int pr = precedence(n.kids[1].op());
  if (pr < p || (pr == p && (n.op == Op::Sub || n.op == Op::Div))) r = "(" + r + ")";
  return l + sym + r;
}

bool operator==(const ParamExpr& a, const ParamExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.value == y.value && x.name == y.name && x.kids == y.kids;
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  bool is_var = false;
  std::size_t index = 0;
  std::string op;
  std::optional<ParamExpr> param;
  std::vector<Term> args;
  std::size_t depth = 0;
  std::size_t size = 1;
};

Term Term::var(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->index = index;
  return Term(std::move(n));
}

Term Term::app(std::string op, std::vector<Term> args, std::optional<ParamExpr> param) {
  auto n = std::make_shared<Node>();
  n->op = std::move(op);
  n->param = std::move(param);
  n->args = std::move(args);
  std::size_t d = 0;
  std::size_t s = 1;
  for (const auto& a : n->args) {
    d = std::max(d, a.depth() + 1);
    s += a.size();
  }
  n->depth = n->args.empty() ? 0 : d;
  n->size = s;
  return Term(std::move(n));
}

bool Term::is_var() const noexcept { return node_->is_var; }

std::size_t Term::var_index() const {
  if (!node_->is_var) throw SignatureError("term is not a variable");
  return node_->index;
}

const std::string& Term::op() const { return node_->op; }
const std::optional<ParamExpr>& Term::param() const { return node_->param; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::depth() const noexcept { return node_->depth; }
std::size_t Term::size() const noexcept { return node_->size; }

Term Term::substitute(std::span<const Term> map) const {
  if (is_var()) {
    if (node_->index >= map.size()) throw SignatureError("substitution does not cover variable");
    return map[node_->index];
  }
  std::vector<Term> out;
  out.reserve(node_->args.size());
  for (const auto& a : node_->args) out.push_back(a.substitute(map));
  return app(node_->op, std::move(out), node_->param);
}

Term Term::renamed(std::span<const std::size_t> var_map) const {
  if (is_var()) return var(var_map[node_->index]);
  std::vector<Term> out;
  for (const auto& a : node_->args) out.push_back(a.renamed(var_map));
  return app(node_->op, std::move(out), node_->param);
}

Term Term::rename_params(const std::map<std::string, std::string>& names) const {
  if (is_var()) return *this;
  std::vector<Term> out;
  for (const auto& a : node_->args) out.push_back(a.rename_params(names));
  std::optional<ParamExpr> p;
  if (node_->param) p = node_->param->renamed(names);
  return app(node_->op, std::move(out), std::move(p));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.is_var == y.is_var && x.index == y.index && x.op == y.op && x.param == y.param && x.args == y.args;
}

std::vector<std::string> Equation::param_vars() const {
  std::vector<std::string> out;
  auto walk = [&](auto&& self, const Term& t) -> void {
    if (t.is_var()) return;
    if (t.param()) t.param()->collect_vars(out);
    for (const auto& a : t.args()) self(self, a);
  };
  walk(walk, lhs);
  walk(walk, rhs);
  return out;
}

// ---------------------------------------------------------------------------
// Variable analysis

std::vector<std::size_t> args(const Term& t) {
  std::vector<std::size_t> out;
  auto walk = [&](auto&& self, const Term& u) -> void {
    if (u.is_var()) {
      out.push_back(u.var_index());
      return;
    }
    for (const auto& a : u.args()) self(self, a);
  };
  walk(walk, t);
  return out;
}

std::vector<std::size_t> vars(const Term& t) {
  std::vector<std::size_t> out;
  for (auto i : args(t))
    if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
  return out;
}

std::vector<std::size_t> prepare_indices(const Term& t, std::size_t context_size) {
  auto out = args(t);
  for (auto i : out)
    if (i >= context_size) throw SignatureError("variable #" + std::to_string(i) + " is not in the context");
  return out;
}

const char* class_name(SyntacticClass c) noexcept {
  switch (c) {
    case SyntacticClass::Linear: return "LINEAR";
    case SyntacticClass::Balanced: return "BALANCED";
    case SyntacticClass::AffineSafe: return "AFFINE_SAFE";
    case SyntacticClass::General: return "GENERAL";
  }
  return "?";
}

SyntacticClass classify(const Equation& e) {
  auto l = args(e.lhs);
  auto r = args(e.rhs);
  std::set<std::size_t> ls(l.begin(), l.end());
  std::set<std::size_t> rs(r.begin(), r.end());
  bool same_vars = ls == rs;
  bool no_dup = ls.size() == l.size() && rs.size() == r.size();
  if (same_vars && no_dup) return SyntacticClass::Linear;
  if (same_vars) return SyntacticClass::Balanced;
  if (no_dup) return SyntacticClass::AffineSafe;
  return SyntacticClass::General;
}

void validate(const Term& t, const Signature& sig, std::size_t context_size, bool allow_param_vars) {
  if (t.is_var()) {
    if (t.var_index() >= context_size) throw SignatureError("variable outside the equation context");
    return;
  }
  const OpSymbol* op = sig.find(t.op());
  if (!op) throw SignatureError("unknown operation '" + t.op() + "'");
  if (op->arity != t.args().size())
    throw SignatureError("operation '" + op->name + "' expects " + std::to_string(op->arity) + " arguments, got " +
                         std::to_string(t.args().size()));
  if (op->parameterized != t.param().has_value())
    throw SignatureError(op->parameterized ? "operation '" + op->name + "' needs a parameter"
                                           : "operation '" + op->name + "' takes no parameter");
  if (t.param()) {
    std::vector<std::string> pv;
    t.param()->collect_vars(pv);
    if (!pv.empty() && !allow_param_vars)
      throw SignatureError("parameter expressions are only allowed inside equations");
    if (pv.empty()) {
      auto v = t.param()->eval({});
      if (!v || !v->in_unit_interval())
        throw SignatureError("parameter of '" + op->name + "' must lie in [0,1]");
    }
  }
  for (const auto& a : t.args()) validate(a, sig, context_size, allow_param_vars);
}

void validate(const Equation& e, const Signature& sig) {
  validate(e.lhs, sig, e.context.size(), true);
  validate(e.rhs, sig, e.context.size(), true);
}

void validate(const Theory& th) {
  for (const auto& e : th.equations) validate(e, th.signature);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool infix(const Term& t) { return !t.is_var() && t.args().size() == 2 && !utf8::is_identifier(t.op()); }

std::string op_label(const Term& t) {
  std::string s = t.op();
  if (t.param()) s += "[" + t.param()->str() + "]";
  return s;
}

std::string var_name(std::size_t i, std::span<const std::string> ctx) {
  return i < ctx.size() ? ctx[i] : "v" + std::to_string(i);
}

}  // namespace

std::string to_string(const Term& t, std::span<const std::string> context) {
  if (t.is_var()) return var_name(t.var_index(), context);
  if (infix(t)) {
    auto side = [&](const Term& a) {
      std::string s = to_string(a, context);
      return infix(a) ? "(" + s + ")" : s;
    };
    return side(t.args()[0]) + " " + op_label(t) + " " + side(t.args()[1]);
  }
  std::string s = op_label(t);
  if (t.args().empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) s += ", ";
    s += to_string(t.args()[i], context);
  }
  return s + ")";
}

std::string to_string(const Equation& e) { return to_string(e.lhs, e.context) + " = " + to_string(e.rhs, e.context); }

namespace {

std::string oriented_form(const Term& l, const Term& r, std::size_t context_size) {
  std::vector<std::size_t> order = args(l);
  for (auto i : args(r)) order.push_back(i);
  std::vector<std::size_t> map(context_size, 0);
  std::vector<bool> seen(context_size, false);
  std::size_t next = 0;
  for (auto i : order) {
    if (!seen[i]) {
      seen[i] = true;
      map[i] = next++;
    }
  }
  for (std::size_t i = 0; i < context_size; ++i)
    if (!seen[i]) map[i] = next++;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < context_size; ++i) names.push_back("v" + std::to_string(i));

  Equation tmp{names, l.renamed(map), r.renamed(map)};
  std::map<std::string, std::string> pnames;
  std::size_t k = 0;
  for (const auto& p : tmp.param_vars()) pnames[p] = "π" + std::to_string(k++);
  return to_string(tmp.lhs.rename_params(pnames), names) + " = " + to_string(tmp.rhs.rename_params(pnames), names);
}

}  // namespace

std::string canonical_form(const Equation& e) {
  std::string a = oriented_form(e.lhs, e.rhs, e.context.size());
  std::string b = oriented_form(e.rhs, e.lhs, e.context.size());
  return std::min(a, b);
}

bool same_equations(std::span<const Equation> a, std::span<const Equation> b) {
  if (a.size() != b.size()) return false;
  std::multiset<std::string> x;
  std::multiset<std::string> y;
  for (const auto& e : a) x.insert(canonical_form(e));
  for (const auto& e : b) y.insert(canonical_form(e));
  return x == y;
}

Equation normalize_context(const Equation& e) {
  std::vector<std::size_t> order = vars(e.lhs);
  for (auto i : vars(e.rhs))
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  std::vector<std::size_t> map(e.context.size(), 0);
  std::vector<std::string> context;
  for (std::size_t k = 0; k < order.size(); ++k) {
    map[order[k]] = k;
    context.push_back(e.context[order[k]]);
  }
  return Equation{std::move(context), e.lhs.renamed(map), e.rhs.renamed(map)};
}

}  // namespace mlayers
