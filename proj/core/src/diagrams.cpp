#include "mlayers/diagrams.hpp"

#include "mlayers/render.hpp"

namespace mlayers {

namespace {

std::string fragment_of(const Monad& t, std::span<const Value> carrier, const Bound& b) {
  return t.name() + " on |X|=" + std::to_string(carrier.size()) + " " + b.describe();
}

Value swap(const Value& p) { return Value::pair(p[1], p[0]); }

Bound tiny(const Bound& b) {
  Bound s = shrunk(b);
  s.maxWordLen = 1;
  s.maxSetSize = std::min<std::size_t>(b.maxSetSize, 2);
  return s;
}

}  // namespace

CheckOutcome check_diagram(std::string name, std::string fragment, std::span<const std::vector<Value>> inputs,
                           const std::function<Value(std::span<const Value>)>& lhs,
                           const std::function<Value(std::span<const Value>)>& rhs) {
  CheckOutcome out{std::move(name), true, 0, std::move(fragment), std::nullopt};
  for (const auto& in : inputs) {
    ++out.inputs;
    Value l = lhs(in);
    Value r = rhs(in);
    if (l != r) {
      out.ok = false;
      out.witness = DiagramWitness{in, l, r};
      return out;
    }
  }
  return out;
}

std::vector<std::vector<Value>> tuples(std::span<const Value> xs, std::size_t k) {
  std::vector<std::vector<Value>> out;
  if (k > 0 && xs.empty()) return out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<Value> t;
    t.reserve(k);
    for (auto i : idx) t.push_back(xs[i]);
    out.push_back(std::move(t));
    std::size_t j = k;
    while (j > 0 && ++idx[j - 1] == xs.size()) idx[--j] = 0;
    if (j == 0) break;
  }
  return out;
}

std::vector<Value> enumerate_fitting(const Monad& t, std::span<const Value> carrier, std::span<const Bound> bounds,
                                     std::size_t limit) {
  std::size_t last = 0;
  for (const auto& b : bounds) {
    Bound capped = b;
    capped.ceiling = std::min(b.ceiling, limit);
    try {
      auto vs = t.enumerate(carrier, capped);
      if (vs.size() <= limit) return vs;
      last = vs.size();
    } catch (const BoundExceeded& e) {
      last = e.count();
    }
  }
  throw BoundExceeded(t.name() + " nested enumeration", last);
}

std::vector<Bound> nested_bounds(const Bound& b) { return {shrunk(b), tiny(b)}; }

std::vector<Value> enumerate_sampled(const Monad& t, std::span<const Value> base, std::span<const Bound> bounds,
                                     std::size_t limit) {
  for (auto n = base.size();; n = (n + 1) / 2) {
    try {
      return enumerate_fitting(t, base.first(n), bounds, limit);
    } catch (const BoundExceeded&) {
      if (n <= 1) throw;
    }
  }
}

std::vector<CheckOutcome> check_monad_laws(const Monad& t, std::span<const Value> carrier, const Bound& b) {
  std::vector<CheckOutcome> out;
  const auto tx = t.enumerate(carrier, b);
  std::vector<std::vector<Value>> singles;
  for (const auto& v : tx) singles.push_back({v});
  const auto frag = fragment_of(t, carrier, b);
  out.push_back(check_diagram(
      "left-unit", frag, singles, [&](auto in) { return t.mult(t.unit(in[0])); }, [](auto in) { return in[0]; }));
  out.push_back(check_diagram(
      "right-unit", frag, singles,
      [&](auto in) { return t.mult(t.map([&](const Value& x) { return t.unit(x); }, in[0])); },
      [](auto in) { return in[0]; }));

  const auto nb = nested_bounds(b);
  auto l1 = enumerate_fitting(t, carrier, nb, 200);
  auto l2 = enumerate_sampled(t, l1, nb, 2000);
  auto l3 = enumerate_sampled(t, l2, nb, 20000);
  std::vector<std::vector<Value>> tttx;
  for (const auto& v : l3) tttx.push_back({v});
  out.push_back(check_diagram(
      "associativity", frag + " (TTTX: " + std::to_string(l3.size()) + " values)", tttx,
      [&](auto in) { return t.mult(t.mult(in[0])); },
      [&](auto in) { return t.mult(t.map([&](const Value& x) { return t.mult(x); }, in[0])); }));
  return out;
}

CheckOutcome check_mm1(const Monad& t, std::span<const Value> carrier, const Bound& b) {
  return check_diagram(
      "MM.1", fragment_of(t, carrier, b), tuples(carrier, 2),
      [&](auto in) { return t.fubini(t.unit(in[0]), t.unit(in[1])); },
      [&](auto in) { return t.unit(Value::pair(in[0], in[1])); });
}

CheckOutcome check_mm2(const Monad& t, std::span<const Value> carrier, const Bound& b) {
  const auto nb = nested_bounds(b);
  auto l1 = enumerate_fitting(t, carrier, nb, 200);
  auto l2 = enumerate_fitting(t, l1, nb, 200);
  return check_diagram(
      "MM.2", fragment_of(t, carrier, b) + " (TTX: " + std::to_string(l2.size()) + " values)", tuples(l2, 2),
      [&](auto in) {
        auto inner = t.fubini(in[0], in[1]);
        return t.mult(t.map([&](const Value& p) { return t.fubini(p[0], p[1]); }, inner));
      },
      [&](auto in) { return t.fubini(t.mult(in[0]), t.mult(in[1])); });
}

std::vector<CheckOutcome> check_mf(const Monad& t, std::span<const Value> carrier, const Bound& b) {
  const auto tx = t.enumerate(carrier, b);
  const auto frag = fragment_of(t, carrier, b);
  std::vector<std::vector<Value>> singles;
  for (const auto& v : tx) singles.push_back({v});
  const Value one = t.unit(Value::unit());
  std::vector<CheckOutcome> out;
  out.push_back(check_diagram(
      "MF.1", frag, singles,
      [&](auto in) { return t.map([](const Value& p) { return p[1]; }, t.fubini(one, in[0])); },
      [](auto in) { return in[0]; }));
  out.push_back(check_diagram(
      "MF.2", frag, singles,
      [&](auto in) { return t.map([](const Value& p) { return p[0]; }, t.fubini(in[0], one)); },
      [](auto in) { return in[0]; }));
  std::vector<Value> small = tx;
  if (small.size() > 40) small = enumerate_fitting(t, carrier, nested_bounds(b), 40);
  out.push_back(check_diagram(
      "MF.3", frag, tuples(small, 3),
      [&](auto in) {
        return t.map([](const Value& p) { return Value::pair(p[0][0], Value::pair(p[0][1], p[1])); },
                     t.fubini(t.fubini(in[0], in[1]), in[2]));
      },
      [&](auto in) { return t.fubini(in[0], t.fubini(in[1], in[2])); }));
  return out;
}

CheckOutcome check_sym(const Monad& t, std::span<const Value> carrier, const Bound& b) {
  const auto tx = t.enumerate(carrier, b);
  return check_diagram(
      "SYM", fragment_of(t, carrier, b), tuples(tx, 2),
      [&](auto in) { return t.map(swap, t.fubini(in[0], in[1])); },
      [&](auto in) { return t.fubini(in[1], in[0]); });
}

Value FiniteFunction::operator()(const Value& x) const {
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (domain[i] == x) return codomain[image[i]];
  throw std::out_of_range("value outside the function's domain");
}

std::string FiniteFunction::describe() const {
  std::string s = "{";
  for (std::size_t i = 0; i < domain.size(); ++i)
    s += (i ? ", " : "") + canonical(domain[i]) + "↦" + canonical(codomain[image[i]]);
  return s + "}";
}

std::vector<FiniteFunction> small_functions(std::size_t max_size) {
  std::vector<FiniteFunction> out;
  for (std::size_t m = 1; m <= max_size; ++m)
    for (std::size_t n = 1; n <= max_size; ++n) {
      auto dom = numbered_carrier(m);
      // codomain atoms are primed so that f is never accidentally the identity on values
      std::vector<Value> cod;
      for (std::size_t j = 0; j < n; ++j) cod.push_back(Value::atom(std::to_string(j) + "'"));
      std::vector<std::size_t> img(m, 0);
      while (true) {
        out.push_back({dom, cod, img});
        std::size_t j = m;
        while (j > 0 && ++img[j - 1] == n) img[--j] = 0;
        if (j == 0) break;
      }
    }
  return out;
}

std::vector<CheckOutcome> check_monad_naturality(const Monad& t, const Bound& b, std::size_t max_size) {
  CheckOutcome unit_nat{"unit-naturality", true, 0, t.name() + " functions between carriers of size <= " +
                                                        std::to_string(max_size), std::nullopt};
  CheckOutcome mult_nat{"mult-naturality", true, 0, unit_nat.fragment, std::nullopt};
  const auto nb = nested_bounds(b);
  for (const auto& f : small_functions(max_size)) {
    ElemFn fn = [&](const Value& x) { return f(x); };
    if (unit_nat.ok) {
      std::vector<std::vector<Value>> in;
      for (const auto& x : f.domain) in.push_back({x});
      auto r = check_diagram(
          "unit-naturality", "", in, [&](auto v) { return t.map(fn, t.unit(v[0])); },
          [&](auto v) { return t.unit(fn(v[0])); });
      unit_nat.inputs += r.inputs;
      if (!r.ok) {
        unit_nat.ok = false;
        unit_nat.witness = r.witness;
        unit_nat.fragment += "; f=" + f.describe();
      }
    }
    if (mult_nat.ok) {
      auto l1 = enumerate_fitting(t, f.domain, nb, 200);
      auto l2 = enumerate_fitting(t, l1, nb, 2000);
      std::vector<std::vector<Value>> in;
      for (const auto& v : l2) in.push_back({v});
      auto r = check_diagram(
          "mult-naturality", "", in, [&](auto v) { return t.map(fn, t.mult(v[0])); },
          [&](auto v) { return t.mult(t.map([&](const Value& inner) { return t.map(fn, inner); }, v[0])); });
      mult_nat.inputs += r.inputs;
      if (!r.ok) {
        mult_nat.ok = false;
        mult_nat.witness = r.witness;
        mult_nat.fragment += "; f=" + f.describe();
      }
    }
  }
  return {unit_nat, mult_nat};
}

CheckOutcome check_fubini_naturality(const Monad& t, const Bound& b, std::size_t max_size) {
  CheckOutcome out{"fubini-naturality", true, 0,
                   t.name() + " functions between carriers of size <= " + std::to_string(max_size), std::nullopt};
  const auto fs = small_functions(max_size);
  for (const auto& f : fs)
    for (const auto& g : fs) {
      auto tx = t.enumerate(f.domain, b);
      auto ty = t.enumerate(g.domain, b);
      std::vector<std::vector<Value>> in;
      for (const auto& u : tx)
        for (const auto& v : ty) in.push_back({u, v});
      auto r = check_diagram(
          "fubini-naturality", "", in,
          [&](auto v) {
            return t.map([&](const Value& p) { return Value::pair(f(p[0]), g(p[1])); }, t.fubini(v[0], v[1]));
          },
          [&](auto v) {
            return t.fubini(t.map([&](const Value& x) { return f(x); }, v[0]),
                            t.map([&](const Value& y) { return g(y); }, v[1]));
          });
      out.inputs += r.inputs;
      if (!r.ok) {
        out.ok = false;
        out.witness = r.witness;
        out.fragment += "; f=" + f.describe() + " g=" + g.describe();
        return out;
      }
    }
  return out;
}

}  // namespace mlayers
