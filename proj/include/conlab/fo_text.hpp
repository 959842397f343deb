#pragma once
// Canonical concrete syntax for first-order formulas.
//
//   term    := 0 | S(term) | (term+term) | (term*term) | exp(term,term) | x<nat>
//   formula := term=term | term<term | bot | top | ~formula
//            | (formula & formula) | (formula | formula) | (formula -> formula)
//            | forall x<nat> formula | exists x<nat> formula
//            | forall x<nat> < term formula | exists x<nat> < term formula
//
// print is canonical (one rendering per formula) and parse accepts arbitrary
// whitespace between tokens; parse(print(f)) is structurally equal to f.
#include <conlab/fo.hpp>
#include <string>
#include <string_view>

namespace conlab::fo_text {

inline constexpr size_t kDefaultPrintCap = size_t(1) << 20;

// Throws ResourceError when the rendering would exceed max_chars (numeral
// runs expand to nested S applications) or when f contains an
// unmaterialized numeral.
std::string print(const fo::TermPtr& t, size_t max_chars = kDefaultPrintCap);
std::string print(const fo::FormulaPtr& f, size_t max_chars = kDefaultPrintCap);

// Reader-facing rendering that never fails on numerals: a run kept as the
// code of a formula comes out as quote[<formula>], and a concrete run
// longer than 12 comes out in decimal. Not re-parseable.
std::string print_display(const fo::TermPtr& t, size_t max_chars = kDefaultPrintCap);
std::string print_display(const fo::FormulaPtr& f, size_t max_chars = kDefaultPrintCap);

// Throw ParseError with the offending offset on malformed input.
fo::TermPtr parse_term(std::string_view text);
fo::FormulaPtr parse_formula(std::string_view text);

} // namespace conlab::fo_text
