#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mlayers/pipeline.hpp"

namespace mlayers {

/// A parsed `.layers` file.
///
///   atoms a b c;
///   layer seq {
///     op ";" : 2;
///     op "skip" : 0;
///     eq x ; (y ; z) = (x ; y) ; z;
///     normalizer monoid;
///   }
///
/// The first layer is the inner seed, the rest are outer layers in order.
/// `op "⊕" : 2 param;` declares a parameterized operation and
/// `op "+" : 2 prec 5;` overrides the binding strength of an infix operation.
struct SpecFile {
  std::vector<std::string> atoms;
  std::vector<LayerSpec> layers;
  /// Binding strength of each binary operation; larger binds tighter.
  std::map<std::string, int> precedence;
};

/// Throws ParseError carrying the line and column of the first error.
SpecFile parse_spec(std::string_view text);

/// Reads and parses a file; ParseError messages are prefixed by the path.
SpecFile load_spec(const std::string& path);

/// Parses an equation over a signature, e.g. "p ; (q + r) = (p ; q) + (p ; r)".
/// Identifiers that are not constants of sig become variables. Without a
/// precedence map, earlier binary operations of sig bind tighter.
Equation parse_equation(std::string_view text, const Signature& sig, const std::map<std::string, int>& precedence = {});

/// Parses a closed program into a term value whose leaves hold atoms.
/// Parameters must be rational literals; every identifier must be a declared
/// atom or constant. Operations named in `unavailable` fail with the mapped
/// message at their location.
Value parse_program(std::string_view text, const Signature& sig, const std::vector<std::string>& atoms,
                    const std::map<std::string, int>& precedence = {},
                    const std::map<std::string, std::string>* unavailable = nullptr);

/// Renders a spec back to the `.layers` syntax; parse_spec(format_spec(s)) == s.
std::string format_spec(const SpecFile& spec);

}  // namespace mlayers
