#include "mlayers/monad.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mlayers {

void Bound::validate() const {
  if (maxWordLen == 0 || maxSetSize == 0 || maxMultiplicity == 0 || maxTermDepth == 0)
    throw std::invalid_argument("bounds must be at least 1");
  if (probGrid.empty()) throw std::invalid_argument("probability grid is empty");
  for (const auto& r : probGrid) {
    if (!r.in_unit_interval()) throw std::invalid_argument("grid value " + r.str() + " outside [0,1]");
    if (std::find(probGrid.begin(), probGrid.end(), Rational(1) - r) == probGrid.end())
      throw std::invalid_argument("grid not closed under 1-r (missing " + (Rational(1) - r).str() + ")");
  }
}

std::string Bound::describe() const {
  std::string grid;
  for (std::size_t i = 0; i < probGrid.size(); ++i) grid += (i ? "," : "") + probGrid[i].str();
  return "maxWordLen=" + std::to_string(maxWordLen) + " maxSetSize=" + std::to_string(maxSetSize) +
         " maxMultiplicity=" + std::to_string(maxMultiplicity) + " probGrid={" + grid +
         "} maxTermDepth=" + std::to_string(maxTermDepth);
}

Bound shrunk(const Bound& b) {
  Bound s = b;
  s.maxWordLen = std::min<std::size_t>(b.maxWordLen, 2);
  s.maxSetSize = std::min<std::size_t>(b.maxSetSize, 2);
  s.maxMultiplicity = 1;
  s.probGrid = {Rational(0), Rational(1, 2), Rational(1)};
  s.maxTermDepth = 1;
  return s;
}

namespace {

constexpr std::uint64_t kSaturated = std::uint64_t(1) << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kSaturated, a + b); }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

void guard(const std::string& what, std::uint64_t count, const Bound& b) {
  if (count > b.ceiling) throw BoundExceeded(what, count);
}

std::uint64_t count_subsets(std::size_t n, std::size_t s) {
  std::uint64_t total = 0, c = 1;
  for (std::size_t k = 0; k <= std::min(n, s); ++k) {
    total = sat_add(total, c);
    c = sat_mul(c, n - k) / (k + 1);
  }
  return total;
}

std::uint64_t count_words(std::size_t n, std::size_t len) {
  std::uint64_t total = 0, p = 1;
  for (std::size_t k = 0; k <= len; ++k) {
    total = sat_add(total, p);
    p = sat_mul(p, n);
  }
  return total;
}

std::uint64_t count_bags(std::size_t n, std::size_t size, std::size_t mult) {
  std::vector<std::uint64_t> ways(size + 1, 0);  // ways[t]: vectors so far with total t
  ways[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next(size + 1, 0);
    for (std::size_t t = 0; t <= size; ++t)
      for (std::size_t m = 0; m <= mult && t + m <= size; ++m) next[t + m] = sat_add(next[t + m], ways[t]);
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total = sat_add(total, w);
  return total;
}

std::uint64_t count_dists(std::size_t n, std::span<const Rational> grid) {
  std::map<Rational, std::uint64_t> ways{{Rational(0), 1}};
  for (std::size_t i = 0; i < n; ++i) {
    std::map<Rational, std::uint64_t> next;
    for (const auto& [s, c] : ways)
      for (const auto& g : grid)
        if (s + g <= Rational(1)) next[s + g] = sat_add(next[s + g], c);
    ways = std::move(next);
  }
  auto it = ways.find(Rational(1));
  return it == ways.end() ? 0 : it->second;
}

std::vector<Rational> descending(std::span<const Rational> grid) {
  std::vector<Rational> g(grid.begin(), grid.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::reverse(g.begin(), g.end());
  return g;
}

// ---------------------------------------------------------------------------

class WordMonad final : public Monad {
public:
  std::string name() const override { return "free-monoid"; }
  Value unit(const Value& x) const override { return Value::word({x}); }
  Value map(const ElemFn& f, const Value& tx) const override {
    std::vector<Value> out;
    out.reserve(tx.size());
    for (const auto& x : tx.items()) out.push_back(f(x));
    return Value::word(std::move(out));
  }
  Value mult(const Value& ttx) const override {
    std::vector<Value> out;
    for (const auto& w : ttx.items())
      for (const auto& x : w.items()) out.push_back(x);
    return Value::word(std::move(out));
  }
  Value fubini(const Value&, const Value&) const override {
    throw InnerOnlyMonad("the free monoid monad has no Fubini transformation; it can only be an inner layer");
  }
  bool inner_only() const override { return true; }
  std::vector<Value> enumerate(std::span<const Value> carrier, const Bound& b) const override {
    guard("words", count_words(carrier.size(), b.maxWordLen), b);
    std::vector<Value> out{Value::word({})};
    std::vector<std::vector<Value>> level{{}};
    for (std::size_t len = 1; len <= b.maxWordLen && !carrier.empty(); ++len) {
      std::vector<std::vector<Value>> next;
      for (const auto& w : level)
        for (const auto& x : carrier) {
          auto v = w;
          v.push_back(x);
          out.push_back(Value::word(v));
          next.push_back(std::move(v));
        }
      level = std::move(next);
    }
    return out;
  }
};

class SetMonad final : public Monad {
public:
  std::string name() const override { return "powerset"; }
  Value unit(const Value& x) const override { return Value::set({x}); }
  Value map(const ElemFn& f, const Value& tx) const override {
    std::vector<Value> out;
    out.reserve(tx.size());
    for (const auto& x : tx.items()) out.push_back(f(x));
    return Value::set(std::move(out));
  }
  Value mult(const Value& ttx) const override {
    std::vector<Value> out;
    for (const auto& s : ttx.items())
      for (const auto& x : s.items()) out.push_back(x);
    return Value::set(std::move(out));
  }
  Value fubini(const Value& tx, const Value& ty) const override {
    std::vector<Value> out;
    out.reserve(tx.size() * ty.size());
    for (const auto& x : tx.items())
      for (const auto& y : ty.items()) out.push_back(Value::pair(x, y));
    return Value::set(std::move(out));
  }
  std::vector<Value> enumerate(std::span<const Value> carrier, const Bound& b) const override {
    guard("subsets", count_subsets(carrier.size(), b.maxSetSize), b);
    std::vector<Value> out;
    const std::size_t n = carrier.size();
    for (std::size_t k = 0; k <= std::min(n, b.maxSetSize); ++k) {
      std::vector<std::size_t> idx(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        std::vector<Value> items;
        for (auto i : idx) items.push_back(carrier[i]);
        out.push_back(Value::set(std::move(items)));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return out;
  }
  bool truncated() const override { return false; }
};

class BagMonad final : public Monad {
public:
  std::string name() const override { return "multiset"; }
  Value unit(const Value& x) const override { return Value::bag({{x, 1}}); }
  Value map(const ElemFn& f, const Value& tx) const override {
    std::vector<std::pair<Value, std::uint64_t>> out;
    for (std::size_t i = 0; i < tx.size(); ++i) out.emplace_back(f(tx[i]), tx.counts()[i]);
    return Value::bag(std::move(out));
  }
  Value mult(const Value& ttx) const override {
    std::vector<std::pair<Value, std::uint64_t>> out;
    for (std::size_t i = 0; i < ttx.size(); ++i) {
      const Value& inner = ttx[i];
      for (std::size_t j = 0; j < inner.size(); ++j)
        out.emplace_back(inner[j], ttx.counts()[i] * inner.counts()[j]);
    }
    return Value::bag(std::move(out));
  }
  Value fubini(const Value& tx, const Value& ty) const override {
    std::vector<std::pair<Value, std::uint64_t>> out;
    for (std::size_t i = 0; i < tx.size(); ++i)
      for (std::size_t j = 0; j < ty.size(); ++j)
        out.emplace_back(Value::pair(tx[i], ty[j]), tx.counts()[i] * ty.counts()[j]);
    return Value::bag(std::move(out));
  }
  std::vector<Value> enumerate(std::span<const Value> carrier, const Bound& b) const override {
    guard("multisets", count_bags(carrier.size(), b.maxSetSize, b.maxMultiplicity), b);
    std::vector<Value> out;
    const std::size_t n = carrier.size();
    std::vector<std::uint64_t> counts(n, 0);
    for (std::size_t total = 0; total <= b.maxSetSize; ++total) {
      // multiplicity vectors with the given total, first position descending
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i == n) {
          if (left != 0) return;
          std::vector<std::pair<Value, std::uint64_t>> entries;
          for (std::size_t j = 0; j < n; ++j)
            if (counts[j]) entries.emplace_back(carrier[j], counts[j]);
          out.push_back(Value::bag(std::move(entries)));
          return;
        }
        for (std::size_t m = std::min(left, b.maxMultiplicity) + 1; m-- > 0;) {
          counts[i] = m;
          rec(i + 1, left - m);
        }
        counts[i] = 0;
      };
      if (n == 0 && total > 0) break;
      rec(0, total);
    }
    return out;
  }
};

class DistMonad final : public Monad {
public:
  std::string name() const override { return "distribution"; }
  Value unit(const Value& x) const override { return Value::dirac(x); }
  Value map(const ElemFn& f, const Value& tx) const override {
    std::vector<std::pair<Value, Rational>> out;
    for (std::size_t i = 0; i < tx.size(); ++i) out.emplace_back(f(tx[i]), tx.weights()[i]);
    return Value::dist(std::move(out));
  }
  Value mult(const Value& ttx) const override {
    std::vector<std::pair<Value, Rational>> out;
    for (std::size_t i = 0; i < ttx.size(); ++i) {
      const Value& inner = ttx[i];
      for (std::size_t j = 0; j < inner.size(); ++j) out.emplace_back(inner[j], ttx.weights()[i] * inner.weights()[j]);
    }
    return Value::dist(std::move(out));
  }
  Value fubini(const Value& tx, const Value& ty) const override {
    std::vector<std::pair<Value, Rational>> out;
    for (std::size_t i = 0; i < tx.size(); ++i)
      for (std::size_t j = 0; j < ty.size(); ++j)
        out.emplace_back(Value::pair(tx[i], ty[j]), tx.weights()[i] * ty.weights()[j]);
    return Value::dist(std::move(out));
  }
  std::vector<Value> enumerate(std::span<const Value> carrier, const Bound& b) const override {
    guard("distributions", count_dists(carrier.size(), b.probGrid), b);
    std::vector<Value> out;
    const auto grid = descending(b.probGrid);
    const std::size_t n = carrier.size();
    std::vector<Rational> w(n);
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational left) {
      if (i == n) {
        if (!left.is_zero()) return;
        std::vector<std::pair<Value, Rational>> entries;
        for (std::size_t j = 0; j < n; ++j)
          if (!w[j].is_zero()) entries.emplace_back(carrier[j], w[j]);
        out.push_back(Value::dist(std::move(entries)));
        return;
      }
      for (const auto& g : grid) {
        if (g > left) continue;
        w[i] = g;
        rec(i + 1, left - g);
      }
    };
    rec(0, Rational(1));
    return out;
  }
};

class TermMonad final : public Monad {
public:
  explicit TermMonad(Signature sig) : sig_(std::move(sig)) {}
  std::string name() const override { return "free-term"; }
  Value unit(const Value& x) const override { return Value::leaf(x); }
  Value map(const ElemFn& f, const Value& tx) const override { return map_leaves(tx, f); }
  Value mult(const Value& ttx) const override {
    return graft(ttx, [](const Value& t) { return t; });
  }
  Value fubini(const Value&, const Value&) const override {
    throw InnerOnlyMonad("the free term monad has no Fubini transformation; it can only be an inner layer");
  }
  bool inner_only() const override { return true; }
  std::vector<Value> enumerate(std::span<const Value> carrier, const Bound& b) const override {
    return enumerate_terms(sig_, carrier, b);
  }

private:
  Signature sig_;
};

}  // namespace

MonadPtr free_monoid() {
  static const MonadPtr m = std::make_shared<WordMonad>();
  return m;
}
MonadPtr fin_powerset() {
  static const MonadPtr m = std::make_shared<SetMonad>();
  return m;
}
MonadPtr multiset() {
  static const MonadPtr m = std::make_shared<BagMonad>();
  return m;
}
MonadPtr fin_distribution() {
  static const MonadPtr m = std::make_shared<DistMonad>();
  return m;
}
MonadPtr free_term_monad(Signature sig) { return std::make_shared<TermMonad>(std::move(sig)); }

Value fubini_k(const Monad& t, std::span<const Value> values) {
  if (values.empty()) return t.unit(Value::unit());
  if (values.size() == 1) return values[0];
  Value acc = t.fubini(values[0], values[1]);
  for (std::size_t i = 2; i < values.size(); ++i) {
    acc = t.map(
        [](const Value& p) {
          std::vector<Value> items(p[0].items().begin(), p[0].items().end());
          items.push_back(p[1]);
          return Value::tuple(std::move(items));
        },
        t.fubini(acc, values[i]));
  }
  return acc;
}

std::vector<Value> tuple_components(const Value& x, std::size_t k) {
  if (k == 0) return {};
  if (k == 1) return {x};
  return {x.items().begin(), x.items().end()};
}

std::vector<Value> enumerate_terms(const Signature& sig, std::span<const Value> carrier, const Bound& b) {
  std::vector<Value> all;
  std::vector<std::size_t> depth_start;  // all[depth_start[d]..] have depth d
  auto params_for = [&](const OpSymbol& op) {
    std::vector<std::optional<Rational>> ps;
    if (!op.parameterized) return std::vector<std::optional<Rational>>{std::nullopt};
    for (const auto& r : b.probGrid) ps.emplace_back(r);
    return ps;
  };
  depth_start.push_back(0);
  for (const auto& x : carrier) all.push_back(Value::leaf(x));
  for (const auto& op : sig.ops())
    if (op.arity == 0)
      for (const auto& p : params_for(op)) all.push_back(Value::app(op.name, p, {}));
  for (std::size_t d = 1; d <= b.maxTermDepth; ++d) {
    const std::size_t prev_begin = depth_start.back();
    const std::size_t prev_end = all.size();
    depth_start.push_back(prev_end);
    for (const auto& op : sig.ops()) {
      if (op.arity == 0) continue;
      for (const auto& p : params_for(op)) {
        std::vector<std::size_t> idx(op.arity, 0);
        while (true) {
          bool fresh = false;
          for (auto i : idx) fresh = fresh || (i >= prev_begin && i < prev_end);
          if (fresh) {
            std::vector<Value> args;
            for (auto i : idx) args.push_back(all[i]);
            all.push_back(Value::app(op.name, p, std::move(args)));
            if (all.size() > b.ceiling) throw BoundExceeded("terms", all.size());
          }
          std::size_t k = op.arity;
          while (k > 0 && ++idx[k - 1] == prev_end) idx[--k] = 0;
          if (k == 0) break;
        }
      }
    }
  }
  return all;
}

void collect_leaves(const Value& term, std::vector<Value>& out) {
  if (term.is(Kind::Leaf)) {
    out.push_back(term.child());
    return;
  }
  for (const auto& a : term.items()) collect_leaves(a, out);
}

Value map_leaves(const Value& term, const ElemFn& f) {
  if (term.is(Kind::Leaf)) return Value::leaf(f(term.child()));
  std::vector<Value> args;
  args.reserve(term.size());
  for (const auto& a : term.items()) args.push_back(map_leaves(a, f));
  return Value::app(term.name(), term.param(), std::move(args));
}

Value graft(const Value& term, const ElemFn& f) {
  if (term.is(Kind::Leaf)) return f(term.child());
  std::vector<Value> args;
  args.reserve(term.size());
  for (const auto& a : term.items()) args.push_back(graft(a, f));
  return Value::app(term.name(), term.param(), std::move(args));
}

Value term_value(const Term& t, std::span<const Value> valuation, const std::map<std::string, Rational>& params) {
  if (t.is_var()) return Value::leaf(valuation[t.var_index()]);
  std::vector<Value> args;
  for (const auto& a : t.args()) args.push_back(term_value(a, valuation, params));
  std::optional<Rational> p;
  if (t.param()) {
    p = t.param()->eval(params);
    if (!p) throw SignatureError("parameter expression divides by zero");
  }
  return Value::app(t.op(), p, std::move(args));
}

}  // namespace mlayers
