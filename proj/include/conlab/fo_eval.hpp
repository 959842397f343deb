#pragma once
// Decides closed formulas whose quantifiers are all bounded, by direct
// computation over arbitrary-precision naturals. Refuses (ResourceError)
// rather than guesses when a value, exponent or loop would exceed the
// limits, so a returned truth value is always exact.
#include <conlab/fo.hpp>

namespace conlab::fo_eval {

struct Limits {
    unsigned max_value_bits = 512;    // any intermediate above this aborts
    uint64_t max_steps = 1'000'000;   // node visits plus loop iterations
};

// pre: t closed
BigNat evaluate_term(const fo::TermPtr& t, Limits limits = {});

// pre: f closed and free of unbounded quantifiers (throws Error otherwise).
// Equality of structurally identical terms short-circuits to true, so
// sentences comparing a non-materialized numeral with itself still decide.
bool evaluate_bounded(const fo::FormulaPtr& f, Limits limits = {});

} // namespace conlab::fo_eval
