#pragma once

#include <string>
#include <string_view>

#include "mlayers/value.hpp"

namespace mlayers {

/// Self-describing literal syntax; parse_literal(canonical(v)) == v.
///
///   atom        a   0   x1
///   unit        *
///   tuple       (a, b)
///   word        [a, b]   []
///   set         {a, b}   {}
///   bag         ⟨⟨a: 2, b⟩⟩          multiplicity shown when > 1
///   dist        (a: 1/2, b: 1/2)
///   leaf        'a
///   app         ";"('a, 'b)   "⊕"[1/2]('a, 'b)   "skip"()
std::string canonical(const Value& v);

/// Throws std::invalid_argument with the offending offset.
Value parse_literal(std::string_view text);

/// Human-oriented rendering used by the program evaluator.
///
/// Words over single-character atoms are concatenated ("ab", "ε" for the
/// empty word), leaves are transparent and symbolic binary operations print
/// infix. Equal values always render identically.
std::string pretty(const Value& v);

/// Top-level evaluator output: distributions become one "value: p/q" line
/// per support point, everything else is a single pretty line.
std::string pretty_lines(const Value& v);

}  // namespace mlayers
