#pragma once

#include <random>
#include <string>
#include <vector>

#include "mlayers/theory.hpp"
#include "mlayers/value.hpp"

namespace mlayers::testing {

inline Term V(std::size_t i) { return Term::var(i); }
inline Term B(const std::string& op, Term a, Term b) { return Term::app(op, {std::move(a), std::move(b)}); }
inline Term C(const std::string& op) { return Term::constant(op); }

inline Equation E(std::vector<std::string> ctx, Term l, Term r) { return Equation{std::move(ctx), std::move(l), std::move(r)}; }

inline Value A(const char* name) { return Value::atom(name); }
inline Value W(std::initializer_list<const char*> xs) {
  std::vector<Value> v;
  for (auto x : xs) v.push_back(Value::atom(x));
  return Value::word(v);
}
inline Value S(std::vector<Value> xs) { return Value::set(std::move(xs)); }
inline Value D(std::vector<std::pair<Value, Rational>> e) { return Value::dist(std::move(e)); }
inline Value M(std::vector<std::pair<Value, std::uint64_t>> e) { return Value::bag(std::move(e)); }
inline Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

/// Random term over binary ops {"•","∘"}, constant "e" and `nvars` variables.
inline Term random_term(std::mt19937& rng, std::size_t depth, std::size_t nvars) {
  std::uniform_int_distribution<int> pick(0, 3);
  int k = depth == 0 ? pick(rng) % 2 : pick(rng);
  if (k == 0) return Term::var(std::uniform_int_distribution<std::size_t>(0, nvars - 1)(rng));
  if (k == 1) return C("e");
  const char* op = k == 2 ? "•" : "∘";
  return B(op, random_term(rng, depth - 1, nvars), random_term(rng, depth - 1, nvars));
}

}  // namespace mlayers::testing
