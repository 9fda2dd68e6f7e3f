#include "mlayers/render.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>

#include "mlayers/utf8.hpp"

namespace mlayers {

namespace {

constexpr std::string_view kBagOpen = "⟨⟨";
constexpr std::string_view kBagClose = "⟩⟩";

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void canonical_into(const Value& v, std::string& out);

void join_canonical(std::span<const Value> items, std::string& out) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    canonical_into(items[i], out);
  }
}

void canonical_into(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Kind::Atom: out += v.name(); return;
    case Kind::Tuple:
      if (v.size() == 0) {
        out += '*';
        return;
      }
      out += '(';
      join_canonical(v.items(), out);
      out += ')';
      return;
    case Kind::Word:
      out += '[';
      join_canonical(v.items(), out);
      out += ']';
      return;
    case Kind::Set:
      out += '{';
      join_canonical(v.items(), out);
      out += '}';
      return;
    case Kind::Bag:
      out += kBagOpen;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        canonical_into(v[i], out);
        if (v.counts()[i] != 1) out += ": " + std::to_string(v.counts()[i]);
      }
      out += kBagClose;
      return;
    case Kind::Dist:
      out += '(';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        canonical_into(v[i], out);
        out += ": " + v.weights()[i].str();
      }
      out += ')';
      return;
    case Kind::Leaf:
      out += '\'';
      canonical_into(v.child(), out);
      return;
    case Kind::App:
      out += quote(v.name());
      if (v.param()) out += "[" + v.param()->str() + "]";
      out += '(';
      join_canonical(v.items(), out);
      out += ')';
      return;
  }
}

class LiteralParser {
public:
  explicit LiteralParser(std::string_view s) : s_(s) {}

  Value parse_all() {
    Value v = parse_value();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("literal parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool is_special(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == '(' || c == ')' || c == '[' ||
           c == ']' || c == '{' || c == '}' || c == ':' || c == '\'' || c == '"';
  }

  std::string atom_token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !is_special(s_[pos_]) && s_.substr(pos_, kBagClose.size()) != kBagClose) ++pos_;
    if (pos_ == start) fail("expected a value");
    return std::string(s_.substr(start, pos_ - start));
  }

  Rational rational_token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' ||
                                s_[pos_] == '-'))
      ++pos_;
    try {
      return Rational::parse(s_.substr(start, pos_ - start));
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  std::vector<Value> list_until(std::string_view close) {
    std::vector<Value> out;
    if (accept(close)) return out;
    do {
      out.push_back(parse_value());
    } while (accept(","));
    expect(close);
    return out;
  }

  Value parse_value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept(kBagOpen)) {
      std::vector<std::pair<Value, std::uint64_t>> entries;
      if (accept(kBagClose)) return Value::bag({});
      do {
        Value v = parse_value();
        std::uint64_t n = 1;
        if (accept(":")) {
          Rational r = rational_token();
          if (r.den() != 1 || r.num() < 1) fail("bag multiplicity must be a positive integer");
          n = static_cast<std::uint64_t>(r.num());
        }
        entries.emplace_back(std::move(v), n);
      } while (accept(","));
      expect(kBagClose);
      return Value::bag(std::move(entries));
    }
    char c = s_[pos_];
    if (c == '*' && (pos_ + 1 == s_.size() || is_special(s_[pos_ + 1]) || s_.substr(pos_ + 1, 3) == "⟩")) {
      ++pos_;
      return Value::unit();
    }
    if (c == '[') {
      ++pos_;
      return Value::word(list_until("]"));
    }
    if (c == '{') {
      ++pos_;
      return Value::set(list_until("}"));
    }
    if (c == '\'') {
      ++pos_;
      return Value::leaf(parse_value());
    }
    if (c == '"') return parse_app();
    if (c == '(') {
      ++pos_;
      Value first = parse_value();
      if (accept(":")) {
        std::vector<std::pair<Value, Rational>> entries;
        entries.emplace_back(std::move(first), rational_token());
        while (accept(",")) {
          Value v = parse_value();
          expect(":");
          entries.emplace_back(std::move(v), rational_token());
        }
        expect(")");
        try {
          return Value::dist(std::move(entries));
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
      }
      std::vector<Value> items{std::move(first)};
      while (accept(",")) items.push_back(parse_value());
      expect(")");
      return Value::tuple(std::move(items));
    }
    return Value::atom(atom_token());
  }

  Value parse_app() {
    ++pos_;  // opening quote
    std::string name;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated operation name");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("dangling escape");
        c = s_[pos_++];
      }
      name += c;
    }
    std::optional<Rational> param;
    if (accept("[")) {
      param = rational_token();
      expect("]");
    }
    expect("(");
    return Value::app(std::move(name), param, list_until(")"));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

const Value& strip_leaf(const Value& v) { return v.is(Kind::Leaf) ? strip_leaf(v.child()) : v; }

bool is_infix_binary(const Value& v) { return v.is(Kind::App) && v.size() == 2 && !utf8::is_identifier(v.name()); }

void pretty_into(const Value& v, std::string& out);

void join_pretty(std::span<const Value> items, std::string& out) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    pretty_into(items[i], out);
  }
}

void pretty_operand(const Value& v, std::string& out) {
  const Value& s = strip_leaf(v);
  if (is_infix_binary(s)) {
    out += '(';
    pretty_into(s, out);
    out += ')';
  } else {
    pretty_into(s, out);
  }
}

void pretty_into(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Kind::Atom: out += v.name(); return;
    case Kind::Tuple:
      if (v.size() == 0) {
        out += '*';
        return;
      }
      out += '(';
      join_pretty(v.items(), out);
      out += ')';
      return;
    case Kind::Word: {
      if (v.size() == 0) {
        out += "ε";
        return;
      }
      bool compact = true;
      for (const auto& it : v.items()) {
        const Value& s = strip_leaf(it);
        if (!s.is(Kind::Atom) || utf8::length(s.name()) != 1) compact = false;
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i && !compact) out += "·";
        pretty_into(v[i], out);
      }
      return;
    }
    case Kind::Set:
      out += '{';
      join_pretty(v.items(), out);
      out += '}';
      return;
    case Kind::Bag:
      out += kBagOpen;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        pretty_into(v[i], out);
        if (v.counts()[i] != 1) out += ": " + std::to_string(v.counts()[i]);
      }
      out += kBagClose;
      return;
    case Kind::Dist:
      out += '(';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        pretty_into(v[i], out);
        out += ": " + v.weights()[i].str();
      }
      out += ')';
      return;
    case Kind::Leaf: pretty_into(v.child(), out); return;
    case Kind::App: {
      std::string op = v.name();
      if (v.param()) op += "[" + v.param()->str() + "]";
      if (is_infix_binary(v)) {
        pretty_operand(v[0], out);
        out += " " + op + " ";
        pretty_operand(v[1], out);
        return;
      }
      out += op;
      if (v.size() > 0) {
        out += '(';
        join_pretty(v.items(), out);
        out += ')';
      }
      return;
    }
  }
}

}  // namespace

std::string canonical(const Value& v) {
  std::string out;
  canonical_into(v, out);
  return out;
}

Value parse_literal(std::string_view text) { return LiteralParser(text).parse_all(); }

std::string pretty(const Value& v) {
  std::string out;
  pretty_into(v, out);
  return out;
}

std::string pretty_lines(const Value& v) {
  if (!v.is(Kind::Dist)) return pretty(v) + "\n";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += pretty(v[i]) + ": " + v.weights()[i].str() + "\n";
  return out;
}

}  // namespace mlayers
